#include "mira/baseline.hpp"

#include <algorithm>
#include <set>

namespace mira {

namespace {

double movie_mean(const RatingsStore& store, MovieId movie) {
    const auto raters = store.movie_ratings(movie);
    std::int64_t sum = 0;
    for (const auto& r : raters) sum += r.value;
    return static_cast<double>(sum) / static_cast<double>(raters.size());
}

}  // namespace

PredictedRating predict_rating(const std::vector<SimilarUser>& neighbours, const RatingsStore& store,
                               MovieId movie) {
    double weighted = 0.0;
    double weights = 0.0;
    for (const auto& n : neighbours) {
        const auto it = n.history.ratings.find(movie);
        if (it == n.history.ratings.end()) continue;
        weighted += n.similarity * it->second;
        weights += n.similarity;
    }
    double predicted;
    if (weights > 0.0) {
        predicted = weighted / weights;
    } else if (!store.movie_ratings(movie).empty()) {
        predicted = movie_mean(store, movie);
    } else {
        predicted = store.mean_rating();
    }
    return {movie, std::clamp(predicted, 1.0, 5.0)};
}

PredictedRating predict_rating(const RatingsStore& store, UserId user, MovieId movie, std::size_t n_neighbors) {
    return predict_rating(top_n_similar(store, user, n_neighbors), store, movie);
}

RecommendationList baseline_recommend(const RatingsStore& store, const Catalog& catalog, UserId user,
                                      std::size_t n_recs, std::size_t n_neighbors) {
    const auto history = fetch_user(store, user);
    const auto neighbours = top_n_similar(store, user, n_neighbors);

    std::set<MovieId> candidates;
    for (const auto& n : neighbours) {
        for (const auto& [movie, value] : n.history.ratings) {
            if (!history.ratings.contains(movie)) candidates.insert(movie);
        }
    }

    std::vector<PredictedRating> predictions;
    predictions.reserve(candidates.size());
    for (const auto movie : candidates) predictions.push_back(predict_rating(neighbours, store, movie));

    const auto keep = std::min(n_recs, predictions.size());
    std::partial_sort(predictions.begin(), predictions.begin() + static_cast<std::ptrdiff_t>(keep),
                      predictions.end(), [](const PredictedRating& a, const PredictedRating& b) {
                          if (a.predicted != b.predicted) return a.predicted > b.predicted;
                          return a.movie < b.movie;
                      });

    RecommendationList list;
    list.user = user;
    list.cluster_label = std::string(kBaselineLabel);
    for (std::size_t i = 0; i < keep; ++i) {
        const auto& p = predictions[i];
        list.items.push_back({i + 1, p.movie, catalog.at(p.movie).title, p.predicted});
    }
    return list;
}

}  // namespace mira
