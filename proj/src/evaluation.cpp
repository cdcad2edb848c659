#include "mira/evaluation.hpp"

#include <algorithm>
#include <array>

#include "mira/baseline.hpp"
#include "mira/genre_clustering.hpp"

namespace mira {

PrecisionReport make_report(const CycleConfig& config, std::map<UserId, double> per_user) {
    PrecisionReport report{config, std::move(per_user), 0.0};
    if (!report.per_user.empty()) {
        double sum = 0.0;
        for (const auto& [user, p] : report.per_user) sum += p;
        report.mean_precision = sum / static_cast<double>(report.per_user.size());
    }
    return report;
}

PreferredGenres preferred_genres(const UserHistory& history, const Catalog& catalog) {
    std::array<std::size_t, kGenreCount> liked{};
    std::array<std::size_t, kGenreCount> rated{};
    for (const auto& [movie_id, value] : history.ratings) {
        const auto& movie = catalog.at(movie_id);
        for (std::size_t g = 0; g < kGenreCount; ++g) {
            if (!movie.genres.test(g)) continue;
            ++rated[g];
            if (value >= kLikedThreshold) ++liked[g];
        }
    }
    std::vector<std::size_t> order;
    for (std::size_t g = 0; g < kGenreCount; ++g) {
        if (liked[g] > 0) order.push_back(g);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (liked[a] != liked[b]) return liked[a] > liked[b];
        if (rated[a] != rated[b]) return rated[a] > rated[b];
        return kGenreNames[a] < kGenreNames[b];
    });
    if (order.size() > kPreferredGenreCount) order.resize(kPreferredGenreCount);

    PreferredGenres preferred{history.user, {}};
    for (auto g : order) preferred.genres.push_back(genre_at(g));
    return preferred;
}

double precision(const RecommendationList& recs, const PreferredGenres& preferred, const Catalog& catalog) {
    if (recs.items.empty()) return 0.0;
    GenreSet wanted;
    for (auto g : preferred.genres) wanted.set(genre_index(g));
    std::size_t correct = 0;
    for (const auto& item : recs.items) {
        if ((catalog.at(item.movie).genres & wanted).any()) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(recs.items.size());
}

std::vector<UserId> top_raters(const RatingsStore& store, std::size_t count) {
    std::vector<std::pair<std::size_t, UserId>> users;
    users.reserve(store.user_count());
    for (const auto& [user, row] : store.by_user()) users.emplace_back(row.size(), user);
    const auto keep = std::min(count, users.size());
    std::partial_sort(users.begin(), users.begin() + static_cast<std::ptrdiff_t>(keep), users.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                      });
    std::vector<UserId> out;
    for (std::size_t i = 0; i < keep; ++i) out.push_back(users[i].second);
    return out;
}

void require_users(const RatingsStore& store, const std::vector<UserId>& users) {
    for (const auto user : users) {
        if (!store.contains_user(user)) throw NotFoundError("unknown user " + std::to_string(user.value));
    }
}

GridReport run_grid(const RatingsStore& store, const Catalog& catalog, const std::vector<UserId>& users,
                    const std::vector<std::size_t>& ks, const std::vector<std::size_t>& n_similars,
                    std::size_t n_recs, std::uint64_t seed) {
    require_users(store, users);

    std::map<UserId, PreferredGenres> preferred;
    for (const auto user : users) preferred.emplace(user, preferred_genres(fetch_user(store, user), catalog));

    GridReport grid;
    grid.users = users;
    for (const auto k : ks) {
        const auto model = fit_catalog_model(catalog, k, seed);
        for (const auto n_similar : n_similars) {
            CycleConfig config;
            config.k = k;
            config.n_similar = n_similar;
            config.n_recommendations = n_recs;
            config.seed = seed;
            std::map<UserId, double> per_user;
            for (const auto user : users) {
                const auto recs = run_cycle(store, catalog, model, config, user.value);
                per_user[user] = precision(recs, preferred.at(user), catalog);
            }
            grid.cells[GridKey{k, n_similar}] = make_report(config, std::move(per_user));
        }
    }
    return grid;
}

ModelComparison compare_models(const RatingsStore& store, const Catalog& catalog, const std::vector<UserId>& users,
                               const CycleConfig& config, const Recommender& mira, const Recommender& baseline) {
    require_users(store, users);
    std::map<UserId, double> mira_scores;
    std::map<UserId, double> baseline_scores;
    for (const auto user : users) {
        const auto preferred = preferred_genres(fetch_user(store, user), catalog);
        mira_scores[user] = precision(mira(user), preferred, catalog);
        baseline_scores[user] = precision(baseline(user), preferred, catalog);
    }
    return {make_report(config, std::move(mira_scores)), make_report(config, std::move(baseline_scores))};
}

ModelComparison compare_models(const RatingsStore& store, const Catalog& catalog, const std::vector<UserId>& users,
                               const CycleConfig& config) {
    validate(config);
    require_users(store, users);
    const auto model = fit_catalog_model(catalog, config.k, config.seed);
    const Recommender mira = [&](UserId user) { return run_cycle(store, catalog, model, config, user.value); };
    const Recommender baseline = [&](UserId user) {
        return baseline_recommend(store, catalog, user, config.n_recommendations, config.n_similar);
    };
    return compare_models(store, catalog, users, config, mira, baseline);
}

SessionEvaluation evaluate_session(const RatingsStore& store_with_session, const Catalog& catalog,
                                   UserId session_user, const CycleConfig& config) {
    validate(config);
    const auto history = fetch_user(store_with_session, session_user);
    const auto model = fit_catalog_model(catalog, config.k, config.seed);
    SessionEvaluation eval;
    eval.recommendations = run_cycle(store_with_session, catalog, model, config, session_user.value);
    eval.preferred = preferred_genres(history, catalog);
    eval.report = make_report(config, {{session_user, precision(eval.recommendations, eval.preferred, catalog)}});
    return eval;
}

}  // namespace mira
