#pragma once

// One MIRA cognitive cycle: a user id enters through sensory memory, is
// routed by perceptual associative memory (PAM) to declarative memory, the
// workspace builds a histogram of similar users' movies, attention codelets
// keep the user's genre cluster, the global workspace runs the rating
// competition and procedural memory prepares the ranked list.
//
// Sensory memory and PAM hold no state in this model; they are routers.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mira/core.hpp"
#include "mira/dataset.hpp"
#include "mira/declarative_memory.hpp"
#include "mira/genre_clustering.hpp"

namespace mira {

struct Stimulus {
    UserId user;
};

struct HistogramEntry {
    std::vector<int> ratings;  // one per similar user who watched the movie
    std::size_t cluster = 0;
    bool operator==(const HistogramEntry&) const = default;
};

struct WorkspaceHistogram {
    std::map<MovieId, HistogramEntry> entries;
    bool operator==(const WorkspaceHistogram&) const = default;
};

struct Winner {
    MovieId movie;
    double mean_rating{};
    bool operator==(const Winner&) const = default;
};

struct CompetitionResult {
    std::vector<Winner> winners;
    bool operator==(const CompetitionResult&) const = default;
};

struct RecommendationItem {
    std::size_t rank = 0;
    MovieId movie;
    std::string title;
    double mean_rating{};
    bool operator==(const RecommendationItem&) const = default;
};

struct RecommendationList {
    UserId user;
    std::string cluster_label;
    std::vector<RecommendationItem> items;
    bool operator==(const RecommendationList&) const = default;
};

inline constexpr double kDefaultLabelThreshold = 0.5;

struct CycleConfig {
    std::size_t k = 8;
    std::size_t n_similar = 10;
    std::size_t n_recommendations = 40;
    std::uint64_t seed = 42;
    // Centroid weight a genre needs to appear in the cluster label.
    double label_threshold = kDefaultLabelThreshold;

    bool operator==(const CycleConfig&) const = default;
};

// Throws std::invalid_argument when k or n_similar is zero.
void validate(const CycleConfig& config);

// One message between modules, recorded when a trace is requested.
struct CycleMessage {
    int step = 0;
    std::string_view name;
    std::string_view from;
    std::string_view to;
    std::size_t payload = 0;  // number of items carried
};

using CycleTrace = std::vector<CycleMessage>;

// Sensory memory. Throws InvalidStimulusError for ids <= 0.
Stimulus sense(std::int64_t user_id);

/// Workspace: every movie watched by a similar user and not by the main
/// user, with all similar-user ratings of it and its cluster.
WorkspaceHistogram build_histogram(const std::vector<SimilarUser>& similar, const Catalog& catalog,
                                   const ClusterModel& model, const UserHistory& main_history);

// Attention codelets: the entries in `user_cluster`.
WorkspaceHistogram attend(const WorkspaceHistogram& histogram, std::size_t user_cluster);

/// Global workspace: the `n` entries with the highest mean rating; equal
/// means are ordered by ascending movie id.
CompetitionResult compete(const WorkspaceHistogram& attended, std::size_t n);

/// Genres whose centroid weight reaches `threshold`, joined by "/"; when none
/// do, the genre with the largest weight.
std::string cluster_label(const Centroid& centroid, double threshold = kDefaultLabelThreshold);

// Procedural memory. Throws IntegrityError for a winner missing from the
// catalog.
RecommendationList prepare(const CompetitionResult& result, const Catalog& catalog, std::size_t user_cluster,
                           const ClusterModel& model, double label_threshold = kDefaultLabelThreshold);

/// The full twelve-step cycle for one user. `model` must have been fit with
/// config.k and config.seed. Appends the message flow to `trace` if given.
RecommendationList run_cycle(const RatingsStore& store, const Catalog& catalog, const ClusterModel& model,
                             const CycleConfig& config, std::int64_t user_id, CycleTrace* trace = nullptr);

}  // namespace mira
