#include "mira/cognitive_cycle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mira {

namespace {

namespace module {
constexpr std::string_view environment = "Environment";
constexpr std::string_view sensory = "SensoryMemory";
constexpr std::string_view pam = "PerceptualAssociativeMemory";
constexpr std::string_view declarative = "DeclarativeMemory";
constexpr std::string_view workspace = "Workspace";
constexpr std::string_view attention = "AttentionCodelets";
constexpr std::string_view global = "GlobalWorkspace";
constexpr std::string_view procedural = "ProceduralMemory";
}  // namespace module

void emit(CycleTrace* trace, int step, std::string_view name, std::string_view from, std::string_view to,
          std::size_t payload) {
    if (trace) trace->push_back({step, name, from, to, payload});
}

struct Tally {
    MovieId movie;
    std::int64_t sum;
    std::int64_t count;
};

}  // namespace

void validate(const CycleConfig& config) {
    if (config.k == 0) throw std::invalid_argument("cycle config: k must be >= 1");
    if (config.n_similar == 0) throw std::invalid_argument("cycle config: n_similar must be >= 1");
}

Stimulus sense(std::int64_t user_id) {
    if (user_id <= 0) throw InvalidStimulusError("invalid stimulus: user id " + std::to_string(user_id));
    return Stimulus{UserId{user_id}};
}

WorkspaceHistogram build_histogram(const std::vector<SimilarUser>& similar, const Catalog& catalog,
                                   const ClusterModel& model, const UserHistory& main_history) {
    WorkspaceHistogram histogram;
    for (const auto& neighbour : similar) {
        for (const auto& [movie, value] : neighbour.history.ratings) {
            if (main_history.ratings.contains(movie)) continue;
            auto [it, inserted] = histogram.entries.try_emplace(movie);
            if (inserted) {
                const auto a = model.assignments.find(movie);
                it->second.cluster = a != model.assignments.end()
                                         ? a->second
                                         : assign_cluster(genre_vector(catalog.at(movie)), model);
            }
            it->second.ratings.push_back(value);
        }
    }
    return histogram;
}

WorkspaceHistogram attend(const WorkspaceHistogram& histogram, std::size_t user_cluster) {
    WorkspaceHistogram attended;
    for (const auto& [movie, entry] : histogram.entries) {
        if (entry.cluster == user_cluster) attended.entries.emplace_hint(attended.entries.end(), movie, entry);
    }
    return attended;
}

CompetitionResult compete(const WorkspaceHistogram& attended, std::size_t n) {
    std::vector<Tally> tallies;
    tallies.reserve(attended.entries.size());
    for (const auto& [movie, entry] : attended.entries) {
        if (entry.ratings.empty()) continue;
        const auto sum = std::accumulate(entry.ratings.begin(), entry.ratings.end(), std::int64_t{0});
        tallies.push_back({movie, sum, static_cast<std::int64_t>(entry.ratings.size())});
    }
    // Compare means as exact fractions.
    const auto better = [](const Tally& a, const Tally& b) {
        const auto lhs = a.sum * b.count;
        const auto rhs = b.sum * a.count;
        if (lhs != rhs) return lhs > rhs;
        return a.movie < b.movie;
    };
    const auto keep = std::min(n, tallies.size());
    std::partial_sort(tallies.begin(), tallies.begin() + static_cast<std::ptrdiff_t>(keep), tallies.end(), better);

    CompetitionResult result;
    result.winners.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        result.winners.push_back(
            {tallies[i].movie, static_cast<double>(tallies[i].sum) / static_cast<double>(tallies[i].count)});
    }
    return result;
}

std::string cluster_label(const Centroid& centroid, double threshold) {
    std::string label;
    for (std::size_t g = 0; g < kGenreCount; ++g) {
        if (centroid[g] < threshold) continue;
        if (!label.empty()) label += '/';
        label += kGenreNames[g];
    }
    if (label.empty()) {
        const auto top = std::max_element(centroid.begin(), centroid.end()) - centroid.begin();
        label = kGenreNames[static_cast<std::size_t>(top)];
    }
    return label;
}

RecommendationList prepare(const CompetitionResult& result, const Catalog& catalog, std::size_t user_cluster,
                           const ClusterModel& model, double label_threshold) {
    if (user_cluster >= model.centroids.size()) {
        throw std::invalid_argument("prepare: cluster index " + std::to_string(user_cluster) + " out of range");
    }
    RecommendationList list;
    list.cluster_label = cluster_label(model.centroids[user_cluster], label_threshold);
    list.items.reserve(result.winners.size());
    std::size_t rank = 0;
    for (const auto& w : result.winners) {
        const auto* movie = catalog.find(w.movie);
        if (!movie) {
            throw IntegrityError("competition winner " + std::to_string(w.movie.value) + " is not in the catalog");
        }
        list.items.push_back({++rank, w.movie, movie->title, w.mean_rating});
    }
    return list;
}

RecommendationList run_cycle(const RatingsStore& store, const Catalog& catalog, const ClusterModel& model,
                             const CycleConfig& config, std::int64_t user_id, CycleTrace* trace) {
    validate(config);
    if (model.k != config.k || model.seed != config.seed) {
        throw std::invalid_argument("run_cycle: cluster model was fit with k=" + std::to_string(model.k) +
                                    ", seed=" + std::to_string(model.seed) + " but the cycle asks for k=" +
                                    std::to_string(config.k) + ", seed=" + std::to_string(config.seed));
    }

    // 1-2: the stimulus reaches sensory memory and is passed on to PAM.
    const auto stimulus = sense(user_id);
    emit(trace, 1, "stimulus identification", module::environment, module::sensory, 1);
    emit(trace, 2, "user id sending", module::sensory, module::pam, 1);

    // 3-5: PAM fetches the user's data and routes it to the workspace.
    emit(trace, 3, "user data request", module::pam, module::declarative, 1);
    const auto history = fetch_user(store, stimulus.user);
    emit(trace, 4, "user data sending", module::declarative, module::pam, history.ratings.size());
    emit(trace, 5, "user data routing", module::pam, module::workspace, history.ratings.size());

    // 6-7: the workspace asks declarative memory for similar users.
    emit(trace, 6, "similar users request", module::workspace, module::declarative, config.n_similar);
    const auto similar = top_n_similar(store, stimulus.user, config.n_similar);
    emit(trace, 7, "similar users sending", module::declarative, module::workspace, similar.size());

    // 8: histogram of the neighbours' unwatched movies.
    const auto histogram = build_histogram(similar, catalog, model, history);
    emit(trace, 8, "histogram generation", module::workspace, module::attention, histogram.entries.size());

    // 9: attention codelets keep the user's cluster.
    const auto cluster = user_cluster(history, catalog, model);
    const auto attended = attend(histogram, cluster);
    emit(trace, 9, "cluster identification", module::attention, module::global, attended.entries.size());

    // 10: rating competition.
    const auto result = compete(attended, config.n_recommendations);
    emit(trace, 10, "movie competition", module::global, module::procedural, result.winners.size());

    // 11-12: titles and label, then the ranked list goes out.
    auto list = prepare(result, catalog, cluster, model, config.label_threshold);
    list.user = stimulus.user;
    emit(trace, 11, "movie preparation", module::procedural, module::procedural, list.items.size());
    emit(trace, 12, "recommendation commit", module::procedural, module::environment, list.items.size());
    return list;
}

}  // namespace mira
