#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mira/dataset.hpp"
#include "mira/declarative_memory.hpp"
#include "mira/evaluation.hpp"
#include "mira/genre_clustering.hpp"

namespace mira::testing {

// Twelve movies in two well separated genre groups:
//   1-6  Action-led (Action, Action|Thriller, Action|Sci-Fi, Action|Adventure)
//   7-12 Drama/Romance
Catalog toy_catalog();

// Six users over toy_catalog(); user 1 is the traced main user.
//   u1: 1:5 2:4 7:2
//   u2: 1:5 2:5 3:4 4:5 8:3
//   u3: 1:4 3:5 5:4 9:5
//   u4: 7:5 8:5 9:4 10:5
//   u5: 1:5 2:4 6:3 11:4
//   u6: 10:4 11:5 12:5
RatingsStore toy_store(const Catalog& catalog);

std::string toy_movies_text();
std::string toy_ratings_text();

UserHistory history(std::int64_t user, std::map<std::int64_t, int> ratings);

Movie movie(std::int64_t id, std::string title, std::vector<Genre> genres);

// Deterministic MovieLens-format corpus with genre-correlated tastes, large
// enough for realistic cycles (hundreds of movies, dozens of users).
struct SyntheticCorpus {
    std::string movies;
    std::string ratings;
    std::size_t movie_count = 0;
    std::size_t rating_count = 0;
    std::size_t user_count = 0;
};

SyntheticCorpus synthetic_corpus(std::uint64_t seed, std::size_t movies = 400, std::size_t users = 60);

// Writes movies.dat / ratings.dat under `dir`.
void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

// A fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::string slurp(const std::filesystem::path& path);

// --- independent oracles ------------------------------------------------------

namespace oracle {

// Dense vectors over the union of both histories' movie ids, then the
// textbook dot / (|a| |b|).
double cosine(const UserHistory& a, const UserHistory& b);

// Every pairwise similarity against `user`, fully sorted.
std::vector<std::pair<UserId, double>> ranked_neighbours(const RatingsStore& store, UserId user);

// Sorts all 18 genres by (liked count desc, rated count desc, name asc) and
// keeps the first six with a nonzero liked count.
std::vector<Genre> preferred_genres(const UserHistory& history, const Catalog& catalog);

double precision(const std::vector<MovieId>& recs, const std::vector<Genre>& preferred, const Catalog& catalog);

// Within-cluster squared distance of a labelled partition (cluster means
// recomputed from the labels).
double partition_cost(const std::vector<GenreVector>& points, const std::vector<std::size_t>& labels, std::size_t k);

// Minimum partition_cost over all k^n labellings with every cluster
// non-empty.
double optimal_partition_cost(const std::vector<GenreVector>& points, std::size_t k);

}  // namespace oracle

}  // namespace mira::testing
