#include "mira/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "mira/text.hpp"

namespace mira {

using nlohmann::ordered_json;

ordered_json config_to_json(const CycleConfig& config) {
    return ordered_json{
        {"k", config.k},
        {"n_similar", config.n_similar},
        {"n_recommendations", config.n_recommendations},
        {"seed", config.seed},
    };
}

ordered_json recommendations_to_json(const RecommendationList& list, const CycleConfig& config) {
    ordered_json items = ordered_json::array();
    for (const auto& item : list.items) {
        items.push_back({
            {"rank", item.rank},
            {"movie_id", item.movie.value},
            {"title", item.title},
            {"mean_rating", item.mean_rating},
        });
    }
    return ordered_json{
        {"user_id", list.user.value},
        {"cluster_label", list.cluster_label},
        {"config", config_to_json(config)},
        {"items", std::move(items)},
    };
}

std::string format_table(const RecommendationList& list) {
    std::ostringstream out;
    out << "user " << list.user.value << " | cluster: " << list.cluster_label << " | " << list.items.size()
        << " recommendations\n";
    char row[96];
    std::snprintf(row, sizeof row, "%4s  %8s  %6s  %s\n", "rank", "movie_id", "rating", "title");
    out << row;
    for (const auto& item : list.items) {
        std::snprintf(row, sizeof row, "%4zu  %8lld  %6.3f  ", item.rank, static_cast<long long>(item.movie.value),
                      item.mean_rating);
        out << row << text::truncate_utf8(item.title, kTableTitleWidth) << '\n';
    }
    return out.str();
}

ordered_json cluster_model_to_json(const ClusterModel& model) {
    ordered_json centroids = ordered_json::array();
    for (const auto& c : model.centroids) centroids.push_back(c);
    ordered_json assignments = ordered_json::object();
    for (const auto& [movie, cluster] : model.assignments) assignments[std::to_string(movie.value)] = cluster;
    return ordered_json{
        {"k", model.k},
        {"seed", model.seed},
        {"centroids", std::move(centroids)},
        {"assignments", std::move(assignments)},
    };
}

ordered_json report_to_json(const PrecisionReport& report) {
    ordered_json per_user = ordered_json::array();
    for (const auto& [user, p] : report.per_user) per_user.push_back({{"user_id", user.value}, {"precision", p}});
    return ordered_json{
        {"config", config_to_json(report.config)},
        {"mean_precision", report.mean_precision},
        {"per_user", std::move(per_user)},
    };
}

ordered_json grid_to_json(const GridReport& grid) {
    ordered_json users = ordered_json::array();
    for (const auto u : grid.users) users.push_back(u.value);
    ordered_json cells = ordered_json::array();
    for (const auto& [key, report] : grid.cells) {
        ordered_json cell{{"k", key.k}, {"n_similar", key.n_similar}};
        const auto body = report_to_json(report);
        for (const auto& [name, value] : body.items()) cell[name] = value;
        cells.push_back(std::move(cell));
    }
    return ordered_json{{"users", std::move(users)}, {"cells", std::move(cells)}};
}

ordered_json comparison_to_json(const ModelComparison& comparison) {
    return ordered_json{
        {"mira", report_to_json(comparison.mira)},
        {"baseline", report_to_json(comparison.baseline)},
    };
}

ordered_json session_to_json(const SessionEvaluation& session, const CycleConfig& config) {
    ordered_json genres = ordered_json::array();
    for (const auto g : session.preferred.genres) genres.push_back(genre_name(g));
    return ordered_json{
        {"user_id", session.preferred.user.value},
        {"preferred_genres", std::move(genres)},
        {"precision", session.report.mean_precision},
        {"recommendations", recommendations_to_json(session.recommendations, config)},
    };
}

void write_grid_csv(std::ostream& out, const GridReport& grid) {
    out << "k,n_similar,user_id,precision\n";
    for (const auto& [key, report] : grid.cells) {
        for (const auto& [user, p] : report.per_user) {
            out << key.k << ',' << key.n_similar << ',' << user.value << ',' << text::format_double(p) << '\n';
        }
        out << key.k << ',' << key.n_similar << ",MEAN," << text::format_double(report.mean_precision) << '\n';
    }
}

void write_comparison_csv(std::ostream& out, const ModelComparison& comparison) {
    out << "model,user_id,precision\n";
    const auto rows = [&](const char* name, const PrecisionReport& report) {
        for (const auto& [user, p] : report.per_user) {
            out << name << ',' << user.value << ',' << text::format_double(p) << '\n';
        }
        out << name << ",MEAN," << text::format_double(report.mean_precision) << '\n';
    };
    rows("mira", comparison.mira);
    rows("baseline", comparison.baseline);
}

ordered_json manifest_to_json(const RunManifest& manifest) {
    return ordered_json{
        {"command", manifest.command},
        {"arguments", manifest.arguments},
        {"config", config_to_json(manifest.config)},
        {"movies", manifest.movies_path},
        {"ratings", manifest.ratings_path},
        {"output", manifest.output_path},
        {"tool_version", manifest.tool_version},
    };
}

}  // namespace mira
