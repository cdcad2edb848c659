#pragma once

// Genre-precision metric, the (k, similar users) experiment grid, the
// cycle-vs-baseline comparison and single-user session evaluation.
//
// A user's preferred genres are the (up to) six genres carried by the most
// movies they rated 4 or 5. A recommended movie counts as correct when it has
// at least one preferred genre; precision is correct / recommended.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mira/cognitive_cycle.hpp"
#include "mira/dataset.hpp"
#include "mira/declarative_memory.hpp"

namespace mira {

inline constexpr std::size_t kPreferredGenreCount = 6;
inline constexpr int kLikedThreshold = 4;

struct PreferredGenres {
    UserId user;
    std::vector<Genre> genres;  // ranking order
    bool operator==(const PreferredGenres&) const = default;
};

struct PrecisionReport {
    CycleConfig config;
    std::map<UserId, double> per_user;
    double mean_precision = 0.0;
    bool operator==(const PrecisionReport&) const = default;
};

// Computes mean_precision from per_user (0 when empty).
PrecisionReport make_report(const CycleConfig& config, std::map<UserId, double> per_user);

struct GridKey {
    std::size_t k = 0;
    std::size_t n_similar = 0;
    auto operator<=>(const GridKey&) const = default;
};

struct GridReport {
    std::vector<UserId> users;
    std::map<GridKey, PrecisionReport> cells;
    bool operator==(const GridReport&) const = default;
};

struct ModelComparison {
    PrecisionReport mira;
    PrecisionReport baseline;
};

struct SessionEvaluation {
    RecommendationList recommendations;
    PreferredGenres preferred;
    PrecisionReport report;
};

using Recommender = std::function<RecommendationList(UserId)>;

/// Genres ranked by the number of movies rated >= 4 that carry them; ties
/// go to the genre with more ratings of any value, then to the
/// alphabetically first name. Genres with no liked movie are left out.
PreferredGenres preferred_genres(const UserHistory& history, const Catalog& catalog);

// 0 for an empty list.
double precision(const RecommendationList& recs, const PreferredGenres& preferred, const Catalog& catalog);

// The `count` users with the most ratings, ties to the lower id.
std::vector<UserId> top_raters(const RatingsStore& store, std::size_t count);

// Throws NotFoundError naming the first listed user absent from the store.
void require_users(const RatingsStore& store, const std::vector<UserId>& users);

/// One K-Means fit per k (shared by every user and neighbour count in that
/// row), one cycle per (k, n_similar, user).
GridReport run_grid(const RatingsStore& store, const Catalog& catalog, const std::vector<UserId>& users,
                    const std::vector<std::size_t>& ks, const std::vector<std::size_t>& n_similars,
                    std::size_t n_recs, std::uint64_t seed);

// Scores two arbitrary recommenders with the same metric and users.
ModelComparison compare_models(const RatingsStore& store, const Catalog& catalog, const std::vector<UserId>& users,
                               const CycleConfig& config, const Recommender& mira, const Recommender& baseline);

// The cognitive cycle against baseline_recommend with matching list length
// and neighbour count.
ModelComparison compare_models(const RatingsStore& store, const Catalog& catalog, const std::vector<UserId>& users,
                               const CycleConfig& config);

SessionEvaluation evaluate_session(const RatingsStore& store_with_session, const Catalog& catalog,
                                   UserId session_user, const CycleConfig& config);

}  // namespace mira
