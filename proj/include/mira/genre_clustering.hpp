#pragma once

// Binary genre vectors and a seeded K-Means (k-means++ initialisation,
// Lloyd iterations, best of several starts) over them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "mira/core.hpp"
#include "mira/dataset.hpp"
#include "mira/declarative_memory.hpp"

namespace mira {

using GenreVector = std::array<std::uint8_t, kGenreCount>;
using Centroid = std::array<double, kGenreCount>;

inline constexpr std::size_t kMaxLloydIterations = 300;
// Independent k-means++ starts drawn from one seeded stream; the lowest
// final cost wins, earliest start on ties.
inline constexpr std::size_t kKMeansRestarts = 10;

struct ClusterModel {
    std::size_t k = 0;
    std::vector<Centroid> centroids;
    std::map<MovieId, std::size_t> assignments;
    std::uint64_t seed = 0;
    // Assignment passes performed by the winning start.
    std::size_t iterations_run = 0;
    // Total within-cluster squared distance after each assignment pass of
    // the winning start.
    std::vector<double> cost_history;

    double cost() const { return cost_history.empty() ? 0.0 : cost_history.back(); }
};

GenreVector genre_vector(const Movie& movie);

double squared_distance(const GenreVector& v, const Centroid& c);

/// Throws InfeasibleError when k is 0 or exceeds the number of distinct
/// vectors. Identical inputs give a bit-identical model.
ClusterModel fit_kmeans(const std::map<MovieId, GenreVector>& vectors, std::size_t k, std::uint64_t seed);

// Fits on every movie in the catalog.
ClusterModel fit_catalog_model(const Catalog& catalog, std::size_t k, std::uint64_t seed);

// Nearest centroid; ties go to the lowest index.
std::size_t assign_cluster(const GenreVector& v, const ClusterModel& model);

/// Cluster the user most likely watches: the most frequent cluster among
/// movies rated >= 4 (all movies if none are), ties broken by the higher
/// mean rating inside the tied clusters and then by the lower index.
std::size_t user_cluster(const UserHistory& history, const Catalog& catalog, const ClusterModel& model);

}  // namespace mira
