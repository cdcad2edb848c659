#include "mira/genre_clustering.hpp"

#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace mira {

namespace {

// mt19937_64's output sequence is fixed by the standard; the standard
// distributions are not, so uniform draws are built by hand.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

Centroid to_centroid(const GenreVector& v) {
    Centroid c{};
    for (std::size_t i = 0; i < kGenreCount; ++i) c[i] = v[i];
    return c;
}

struct Assignment {
    std::vector<std::size_t> labels;
    double cost = 0.0;
};

Assignment assign_all(const std::vector<GenreVector>& points, const std::vector<Centroid>& centroids) {
    Assignment a;
    a.labels.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t label = 0;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = squared_distance(points[i], centroids[c]);
            if (d < best) {
                best = d;
                label = c;
            }
        }
        a.labels[i] = label;
        a.cost += best;
    }
    return a;
}

std::vector<Centroid> seed_plus_plus(const std::vector<GenreVector>& points, std::size_t k, SeededUniform& rng) {
    const auto n = points.size();
    std::vector<Centroid> centroids;
    centroids.reserve(k);
    const auto first = std::min(n - 1, static_cast<std::size_t>(rng.next() * static_cast<double>(n)));
    centroids.push_back(to_centroid(points[first]));

    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(points[i], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (double d : nearest) total += d;
        const double target = rng.next() * total;
        double cumulative = 0.0;
        std::size_t chosen = n;
        std::size_t last_positive = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (nearest[i] <= 0.0) continue;
            last_positive = i;
            cumulative += nearest[i];
            if (cumulative > target) {
                chosen = i;
                break;
            }
        }
        if (chosen == n) chosen = last_positive;  // rounding at the top end
        centroids.push_back(to_centroid(points[chosen]));
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(points[i], centroids.back()));
        }
    }
    return centroids;
}

// Means of the assigned points. An empty cluster is moved onto the point
// farthest from every surviving centroid, one empty cluster at a time.
std::vector<Centroid> update_centroids(const std::vector<GenreVector>& points,
                                       const std::vector<std::size_t>& labels, std::size_t k) {
    std::vector<Centroid> sums(k, Centroid{});
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto& s = sums[labels[i]];
        for (std::size_t g = 0; g < kGenreCount; ++g) s[g] += points[i][g];
        ++counts[labels[i]];
    }
    std::vector<Centroid> live;
    std::vector<std::size_t> empty;
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            empty.push_back(c);
            continue;
        }
        for (auto& x : sums[c]) x /= static_cast<double>(counts[c]);
        live.push_back(sums[c]);
    }
    for (const auto c : empty) {
        double farthest = -1.0;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& centroid : live) d = std::min(d, squared_distance(points[i], centroid));
            if (d > farthest) {
                farthest = d;
                pick = i;
            }
        }
        sums[c] = to_centroid(points[pick]);
        live.push_back(sums[c]);
    }
    return sums;
}

struct LloydRun {
    std::vector<Centroid> centroids;
    std::vector<std::size_t> labels;
    std::vector<double> cost_history;
};

LloydRun lloyd(const std::vector<GenreVector>& points, std::vector<Centroid> centroids, std::size_t k) {
    LloydRun run;
    run.centroids = std::move(centroids);
    for (std::size_t pass = 1; pass <= kMaxLloydIterations; ++pass) {
        auto assignment = assign_all(points, run.centroids);
        run.cost_history.push_back(assignment.cost);
        const bool converged = assignment.labels == run.labels;
        run.labels = std::move(assignment.labels);
        if (converged || pass == kMaxLloydIterations) break;
        run.centroids = update_centroids(points, run.labels, k);
    }
    return run;
}

}  // namespace

GenreVector genre_vector(const Movie& movie) {
    GenreVector v{};
    for (std::size_t i = 0; i < kGenreCount; ++i) v[i] = movie.genres.test(i) ? 1 : 0;
    return v;
}

double squared_distance(const GenreVector& v, const Centroid& c) {
    double d = 0.0;
    for (std::size_t i = 0; i < kGenreCount; ++i) {
        const double diff = static_cast<double>(v[i]) - c[i];
        d += diff * diff;
    }
    return d;
}

ClusterModel fit_kmeans(const std::map<MovieId, GenreVector>& vectors, std::size_t k, std::uint64_t seed) {
    if (k == 0) throw InfeasibleError("k-means needs k >= 1");
    std::vector<MovieId> ids;
    std::vector<GenreVector> points;
    ids.reserve(vectors.size());
    points.reserve(vectors.size());
    std::set<GenreVector> distinct;
    for (const auto& [id, v] : vectors) {
        ids.push_back(id);
        points.push_back(v);
        distinct.insert(v);
    }
    if (distinct.size() < k) {
        throw InfeasibleError("k-means with k=" + std::to_string(k) + " needs at least " + std::to_string(k) +
                              " distinct genre vectors, found " + std::to_string(distinct.size()));
    }

    SeededUniform rng(seed);
    ClusterModel model;
    LloydRun best;
    for (std::size_t run = 0; run < kKMeansRestarts; ++run) {
        auto candidate = lloyd(points, seed_plus_plus(points, k, rng), k);
        if (run == 0 || candidate.cost_history.back() < best.cost_history.back()) best = std::move(candidate);
    }

    model.k = k;
    model.seed = seed;
    model.centroids = std::move(best.centroids);
    model.iterations_run = best.cost_history.size();
    model.cost_history = std::move(best.cost_history);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        model.assignments.emplace_hint(model.assignments.end(), ids[i], best.labels[i]);
    }
    return model;
}

ClusterModel fit_catalog_model(const Catalog& catalog, std::size_t k, std::uint64_t seed) {
    std::map<MovieId, GenreVector> vectors;
    for (const auto& [id, movie] : catalog.movies()) vectors.emplace_hint(vectors.end(), id, genre_vector(movie));
    return fit_kmeans(vectors, k, seed);
}

std::size_t assign_cluster(const GenreVector& v, const ClusterModel& model) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t label = 0;
    for (std::size_t c = 0; c < model.centroids.size(); ++c) {
        const double d = squared_distance(v, model.centroids[c]);
        if (d < best) {
            best = d;
            label = c;
        }
    }
    return label;
}

std::size_t user_cluster(const UserHistory& history, const Catalog& catalog, const ClusterModel& model) {
    if (history.ratings.empty()) throw std::invalid_argument("user_cluster: empty history");
    bool any_liked = false;
    for (const auto& [movie, value] : history.ratings) any_liked = any_liked || value >= 4;

    // Tied clusters have equal counts, so the higher mean is the higher sum.
    std::vector<std::size_t> counts(model.k, 0);
    std::vector<std::int64_t> sums(model.k, 0);
    for (const auto& [movie, value] : history.ratings) {
        if (any_liked && value < 4) continue;
        const auto it = model.assignments.find(movie);
        const auto c = it != model.assignments.end() ? it->second : assign_cluster(genre_vector(catalog.at(movie)), model);
        ++counts[c];
        sums[c] += value;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < model.k; ++c) {
        if (counts[c] > counts[best] || (counts[c] == counts[best] && sums[c] > sums[best])) best = c;
    }
    return best;
}

}  // namespace mira
