#include "mira/declarative_memory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mira {

namespace {

// Both cosine paths funnel through here so that the indexed scan in
// top_n_similar and the pairwise function agree bit for bit. Integer inputs
// keep the sums exact.
double cosine_from_sums(std::int64_t dot, std::int64_t sq_a, std::int64_t sq_b) {
    if (dot == 0 || sq_a == 0 || sq_b == 0) return 0.0;
    return static_cast<double>(dot) /
           (std::sqrt(static_cast<double>(sq_a)) * std::sqrt(static_cast<double>(sq_b)));
}

std::int64_t squared_norm(const std::map<MovieId, int>& ratings) {
    std::int64_t s = 0;
    for (const auto& [m, v] : ratings) s += static_cast<std::int64_t>(v) * v;
    return s;
}

}  // namespace

UserHistory fetch_user(const RatingsStore& store, UserId user) {
    const auto row = store.user_ratings(user);
    if (row.empty()) throw NotFoundError("unknown user " + std::to_string(user.value));
    UserHistory h{user, {}};
    for (const auto& e : row) h.ratings.emplace_hint(h.ratings.end(), e.movie, e.value);
    return h;
}

double cosine_similarity(const UserHistory& a, const UserHistory& b) {
    std::int64_t dot = 0;
    auto ia = a.ratings.begin();
    auto ib = b.ratings.begin();
    while (ia != a.ratings.end() && ib != b.ratings.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += static_cast<std::int64_t>(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return cosine_from_sums(dot, squared_norm(a.ratings), squared_norm(b.ratings));
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine_similarity: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<SimilarUser> top_n_similar(const RatingsStore& store, UserId user, std::size_t n) {
    const auto query = store.user_ratings(user);
    if (query.empty()) throw NotFoundError("unknown user " + std::to_string(user.value));

    std::int64_t query_sq = 0;
    std::unordered_map<std::int64_t, std::int64_t> dots;
    for (const auto& q : query) {
        query_sq += static_cast<std::int64_t>(q.value) * q.value;
        for (const auto& r : store.movie_ratings(q.movie)) {
            if (r.user != user) dots[r.user.value] += static_cast<std::int64_t>(q.value) * r.value;
        }
    }

    struct Candidate {
        double similarity;
        UserId user;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(store.user_count());
    for (const auto& [other, row] : store.by_user()) {
        if (other == user) continue;
        std::int64_t sq = 0;
        for (const auto& e : row) sq += static_cast<std::int64_t>(e.value) * e.value;
        const auto it = dots.find(other.value);
        const std::int64_t dot = it == dots.end() ? 0 : it->second;
        candidates.push_back({cosine_from_sums(dot, query_sq, sq), other});
    }

    const auto keep = std::min(n, candidates.size());
    const auto better = [](const Candidate& a, const Candidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.user < b.user;
    };
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), better);

    std::vector<SimilarUser> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back({candidates[i].user, candidates[i].similarity, fetch_user(store, candidates[i].user)});
    }
    return out;
}

}  // namespace mira
