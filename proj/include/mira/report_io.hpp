#pragma once

// JSON / CSV / table renderings of recommendation lists, cluster models and
// evaluation reports, plus the run manifest written next to every output.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mira/cognitive_cycle.hpp"
#include "mira/evaluation.hpp"
#include "mira/genre_clustering.hpp"

namespace mira {

inline constexpr std::size_t kTableTitleWidth = 60;

// {k, n_similar, n_recommendations, seed}
nlohmann::ordered_json config_to_json(const CycleConfig& config);

// {user_id, cluster_label, config, items:[{rank, movie_id, title, mean_rating}]}
nlohmann::ordered_json recommendations_to_json(const RecommendationList& list, const CycleConfig& config);

// Fixed-width table; titles cut at 60 characters.
std::string format_table(const RecommendationList& list);

// {k, seed, centroids, assignments:{movie_id: index}}
nlohmann::ordered_json cluster_model_to_json(const ClusterModel& model);

nlohmann::ordered_json report_to_json(const PrecisionReport& report);
nlohmann::ordered_json grid_to_json(const GridReport& grid);
nlohmann::ordered_json comparison_to_json(const ModelComparison& comparison);
nlohmann::ordered_json session_to_json(const SessionEvaluation& session, const CycleConfig& config);

// Header "k,n_similar,user_id,precision"; each cell ends with a
// "k,n_similar,MEAN,value" row.
void write_grid_csv(std::ostream& out, const GridReport& grid);

// Header "model,user_id,precision"; each model ends with a MEAN row.
void write_comparison_csv(std::ostream& out, const ModelComparison& comparison);

struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    CycleConfig config;
    std::string movies_path;
    std::string ratings_path;
    std::string output_path;
    std::string tool_version;
};

nlohmann::ordered_json manifest_to_json(const RunManifest& manifest);

}  // namespace mira
