#pragma once

// Long-term memory of the cycle: user histories and cosine-similar users.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "mira/core.hpp"
#include "mira/dataset.hpp"

namespace mira {

struct UserHistory {
    UserId user;
    std::map<MovieId, int> ratings;
    bool operator==(const UserHistory&) const = default;
};

struct SimilarUser {
    UserId user;
    double similarity{};
    UserHistory history;
};

// Throws NotFoundError for a user with no ratings in the store.
UserHistory fetch_user(const RatingsStore& store, UserId user);

/// Cosine of the angle between two rating vectors over the union of their
/// movies, unrated entries counting as 0. Disjoint histories give 0.
double cosine_similarity(const UserHistory& a, const UserHistory& b);

/// Same measure on dense vectors of equal length; 0 if either is all-zero.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// The `n` users most similar to `user` (excluding `user`), sorted by
/// similarity descending then user id ascending. Every other user in the
/// store is a candidate, zero-overlap users included.
std::vector<SimilarUser> top_n_similar(const RatingsStore& store, UserId user, std::size_t n);

}  // namespace mira
