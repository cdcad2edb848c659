#pragma once

// Comparison target for the cycle: user-based collaborative filtering with
// cosine neighbours and a similarity-weighted mean rating prediction.

#include <cstddef>
#include <string_view>
#include <vector>

#include "mira/cognitive_cycle.hpp"
#include "mira/dataset.hpp"
#include "mira/declarative_memory.hpp"

namespace mira {

inline constexpr std::string_view kBaselineLabel = "baseline";

struct PredictedRating {
    MovieId movie;
    double predicted{};
};

/// Weighted mean of the neighbours' ratings of `movie`. Falls back to the
/// movie's mean over all raters when no neighbour with positive similarity
/// rated it, then to the mean of every rating. Clamped to [1,5].
PredictedRating predict_rating(const std::vector<SimilarUser>& neighbours, const RatingsStore& store,
                               MovieId movie);

// Uses the `n_neighbors` users most similar to `user`.
PredictedRating predict_rating(const RatingsStore& store, UserId user, MovieId movie, std::size_t n_neighbors);

/// Top `n_recs` unwatched movies rated by at least one neighbour, ordered by
/// predicted rating descending then movie id ascending.
RecommendationList baseline_recommend(const RatingsStore& store, const Catalog& catalog, UserId user,
                                      std::size_t n_recs, std::size_t n_neighbors);

}  // namespace mira
