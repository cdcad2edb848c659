#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "mira/genre_clustering.hpp"

using namespace mira;
using namespace mira::testing;

namespace {

GenreVector bits(std::initializer_list<std::size_t> on) {
    GenreVector v{};
    for (auto i : on) v[i] = 1;
    return v;
}

std::map<MovieId, GenreVector> as_map(const std::vector<GenreVector>& points) {
    std::map<MovieId, GenreVector> m;
    for (std::size_t i = 0; i < points.size(); ++i) m[MovieId{static_cast<std::int64_t>(i + 1)}] = points[i];
    return m;
}

std::vector<std::size_t> labels_of(const ClusterModel& model) {
    std::vector<std::size_t> out;
    for (const auto& [id, c] : model.assignments) out.push_back(c);
    return out;
}

ClusterModel hand_model(std::vector<Centroid> centroids, std::map<std::int64_t, std::size_t> assignments) {
    ClusterModel m;
    m.k = centroids.size();
    m.centroids = std::move(centroids);
    for (const auto& [id, c] : assignments) m.assignments[MovieId{id}] = c;
    return m;
}

}  // namespace

TEST_CASE("genre_vector") {
    const auto action = genre_vector(movie(1, "A", {Genre::Action}));
    CHECK(action == bits({0}));

    Movie all{MovieId{2}, "All", {}};
    all.genres.set();
    GenreVector ones;
    ones.fill(1);
    CHECK(genre_vector(all) == ones);

    const auto toy = genre_vector(movie(1, "Toy Story (1995)", {Genre::Animation, Genre::Childrens, Genre::Comedy}));
    CHECK(toy == bits({2, 3, 4}));
}

TEST_CASE("fit_kmeans: k equals the number of distinct vectors") {
    const std::vector<GenreVector> pts = {bits({0}), bits({1}), bits({0}), bits({7, 13}), bits({1})};
    const auto model = fit_kmeans(as_map(pts), 3, 1);
    CHECK(model.cost() == 0.0);
    std::set<Centroid> centroids(model.centroids.begin(), model.centroids.end());
    CHECK(centroids.size() == 3);
}

TEST_CASE("fit_kmeans: k = 1 gives the componentwise mean") {
    const std::vector<GenreVector> pts = {bits({0}), bits({0, 1}), bits({1, 2}), bits({7})};
    const auto model = fit_kmeans(as_map(pts), 1, 9);
    REQUIRE(model.centroids.size() == 1);
    CHECK(model.centroids[0][0] == 0.5);
    CHECK(model.centroids[0][1] == 0.5);
    CHECK(model.centroids[0][2] == 0.25);
    CHECK(model.centroids[0][7] == 0.25);
    CHECK(model.centroids[0][3] == 0.0);
}

TEST_CASE("fit_kmeans: six hand-built vectors, k = 2, against every 2-partition") {
    // Two obvious groups: action-ish {0,15,14} and drama-ish {7,13}.
    const std::vector<GenreVector> pts = {bits({0}), bits({0, 15}), bits({0, 14}),
                                          bits({7}), bits({7, 13}), bits({13})};
    const double optimum = oracle::optimal_partition_cost(pts, 2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto model = fit_kmeans(as_map(pts), 2, seed);
        CHECK(model.cost() == doctest::Approx(optimum).epsilon(1e-12));
        const auto labels = labels_of(model);
        CHECK(labels[0] == labels[1]);
        CHECK(labels[1] == labels[2]);
        CHECK(labels[3] == labels[4]);
        CHECK(labels[4] == labels[5]);
        CHECK(labels[0] != labels[3]);
    }
}

TEST_CASE("fit_kmeans: infeasible requests") {
    const std::vector<GenreVector> pts = {bits({0}), bits({0}), bits({1})};
    CHECK_THROWS_AS(fit_kmeans(as_map(pts), 3, 0), InfeasibleError);
    CHECK_THROWS_AS(fit_kmeans(as_map(pts), 0, 0), InfeasibleError);
    CHECK_THROWS_AS(fit_kmeans({}, 1, 0), InfeasibleError);
}

TEST_CASE("fit_kmeans: invariants on random instances") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t dims = 2 + rng() % 17;
        const std::size_t n = 2 + rng() % 60;
        std::vector<GenreVector> pts(n);
        for (auto& p : pts) {
            for (std::size_t g = 0; g < dims; ++g) p[g] = (rng() % 3 == 0) ? 1 : 0;
        }
        const std::set<GenreVector> distinct(pts.begin(), pts.end());
        const std::size_t k = 1 + rng() % std::min<std::size_t>(distinct.size(), 8);
        const auto vectors = as_map(pts);
        const auto seed = rng();
        const auto model = fit_kmeans(vectors, k, seed);

        CHECK(model.k == k);
        CHECK(model.centroids.size() == k);
        CHECK(model.iterations_run == model.cost_history.size());
        CHECK(model.iterations_run <= kMaxLloydIterations);
        for (std::size_t i = 1; i < model.cost_history.size(); ++i) {
            CHECK(model.cost_history[i] <= model.cost_history[i - 1]);
        }
        for (const auto& c : model.centroids) {
            for (double x : c) {
                CHECK(x >= 0.0);
                CHECK(x <= 1.0);
            }
        }
        // Assignment consistency and nearest-centroid invariant.
        for (const auto& [id, label] : model.assignments) {
            CHECK(assign_cluster(vectors.at(id), model) == label);
        }
        // Fixed point: recomputed means reproduce the centroids.
        std::vector<Centroid> sums(k, Centroid{});
        std::vector<int> counts(k, 0);
        for (const auto& [id, label] : model.assignments) {
            for (std::size_t g = 0; g < kGenreCount; ++g) sums[label][g] += vectors.at(id)[g];
            ++counts[label];
        }
        for (std::size_t c = 0; c < k; ++c) {
            REQUIRE(counts[c] > 0);
            for (std::size_t g = 0; g < kGenreCount; ++g) {
                CHECK(sums[c][g] / counts[c] == doctest::Approx(model.centroids[c][g]).epsilon(1e-12));
            }
        }
        // Determinism.
        const auto again = fit_kmeans(vectors, k, seed);
        CHECK(again.centroids == model.centroids);
        CHECK(again.assignments == model.assignments);
        CHECK(again.cost_history == model.cost_history);
    }
}

TEST_CASE("assign_cluster") {
    Centroid a{}, b{}, c{};
    a[0] = 1.0;
    b[7] = 1.0;
    c[7] = 0.5;
    c[13] = 0.5;
    const auto model = hand_model({a, b, c}, {});

    CHECK(assign_cluster(bits({0}), model) == 0);
    CHECK(assign_cluster(bits({7}), model) == 1);

    // {7,13}: distances 3, 1, 0.5 -> cluster 2.
    const auto v = bits({7, 13});
    CHECK(squared_distance(v, a) == 3.0);
    CHECK(squared_distance(v, b) == 1.0);
    CHECK(squared_distance(v, c) == 0.5);
    CHECK(assign_cluster(v, model) == 2);

    // {0,7} is at distance 1 from both a and b; the lower index wins.
    CHECK(assign_cluster(bits({0, 7}), model) == 0);

    const auto single = hand_model({a}, {});
    CHECK(assign_cluster(bits({5, 6}), single) == 0);
}

TEST_CASE("user_cluster") {
    Centroid a{}, b{};
    a[0] = 1.0;
    b[7] = 1.0;
    Catalog catalog;
    for (std::int64_t id = 1; id <= 6; ++id) {
        catalog.add(movie(id, "m" + std::to_string(id), {id <= 3 ? Genre::Action : Genre::Drama}));
    }
    const auto model = hand_model({a, b}, {{1, 0}, {2, 0}, {3, 0}, {4, 1}, {5, 1}, {6, 1}});

    CHECK(user_cluster(history(1, {{1, 5}, {2, 3}}), catalog, model) == 0);
    // One liked movie in cluster 0, two in cluster 1.
    CHECK(user_cluster(history(1, {{1, 5}, {4, 5}, {5, 4}}), catalog, model) == 1);
    // Frequency tie: cluster 0 mean 4.0, cluster 1 mean 5.0.
    CHECK(user_cluster(history(1, {{1, 4}, {4, 5}}), catalog, model) == 1);
    CHECK(user_cluster(history(1, {{1, 5}, {4, 4}}), catalog, model) == 0);
    // Full tie: lower index.
    CHECK(user_cluster(history(1, {{1, 4}, {4, 4}}), catalog, model) == 0);
    // Nothing rated >= 4: all movies count. Cluster 1 has more.
    CHECK(user_cluster(history(1, {{1, 3}, {4, 2}, {5, 1}}), catalog, model) == 1);
    // Low ratings are ignored once something is liked.
    CHECK(user_cluster(history(1, {{1, 4}, {4, 3}, {5, 3}, {6, 3}}), catalog, model) == 0);
}

TEST_CASE("catalog model covers every movie") {
    const auto catalog = toy_catalog();
    const auto model = fit_catalog_model(catalog, 2, 42);
    CHECK(model.assignments.size() == catalog.size());
    // The two genre groups separate.
    const auto action = model.assignments.at(MovieId{1});
    for (std::int64_t id = 1; id <= 12; ++id) {
        CHECK((model.assignments.at(MovieId{id}) == action) == (id <= 6));
    }
}
