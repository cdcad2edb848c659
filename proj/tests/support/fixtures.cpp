#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace mira::testing {

namespace {

using G = Genre;

struct ToyMovie {
    std::int64_t id;
    const char* title;
    std::vector<Genre> genres;
};

const std::vector<ToyMovie>& toy_movies() {
    static const std::vector<ToyMovie> movies = {
        {1, "Alpha (1990)", {G::Action}},
        {2, "Bravo (1991)", {G::Action, G::Thriller}},
        {3, "Charlie (1992)", {G::Action, G::SciFi}},
        {4, "Delta (1993)", {G::Action}},
        {5, "Echo (1994)", {G::Action, G::Thriller}},
        {6, "Foxtrot (1995)", {G::Action, G::Adventure}},
        {7, "Golf (1996)", {G::Drama}},
        {8, "Hotel (1997)", {G::Drama, G::Romance}},
        {9, "India (1998)", {G::Romance}},
        {10, "Juliet (1999)", {G::Drama}},
        {11, "Kilo (2000)", {G::Drama, G::Romance}},
        {12, "Lima (2001)", {G::Drama}},
    };
    return movies;
}

const std::vector<std::tuple<std::int64_t, std::int64_t, int>>& toy_ratings() {
    static const std::vector<std::tuple<std::int64_t, std::int64_t, int>> ratings = {
        {1, 1, 5},  {1, 2, 4},  {1, 7, 2},                                  //
        {2, 1, 5},  {2, 2, 5},  {2, 3, 4},  {2, 4, 5},  {2, 8, 3},          //
        {3, 1, 4},  {3, 3, 5},  {3, 5, 4},  {3, 9, 5},                      //
        {4, 7, 5},  {4, 8, 5},  {4, 9, 4},  {4, 10, 5},                     //
        {5, 1, 5},  {5, 2, 4},  {5, 6, 3},  {5, 11, 4},                     //
        {6, 10, 4}, {6, 11, 5}, {6, 12, 5},
    };
    return ratings;
}

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(next() * n)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace

Movie movie(std::int64_t id, std::string title, std::vector<Genre> genres) {
    Movie m{MovieId{id}, std::move(title), {}};
    for (auto g : genres) m.genres.set(genre_index(g));
    return m;
}

Catalog toy_catalog() {
    Catalog c;
    for (const auto& m : toy_movies()) c.add(movie(m.id, m.title, m.genres));
    return c;
}

RatingsStore toy_store(const Catalog& catalog) {
    std::istringstream in(toy_ratings_text());
    return parse_ratings(in, catalog);
}

std::string toy_movies_text() {
    std::ostringstream out;
    write_movies(out, toy_catalog());
    return out.str();
}

std::string toy_ratings_text() {
    std::ostringstream out;
    std::int64_t ts = 978300000;
    for (const auto& [u, m, v] : toy_ratings()) out << u << "::" << m << "::" << v << "::" << ts++ << '\n';
    return out.str();
}

UserHistory history(std::int64_t user, std::map<std::int64_t, int> ratings) {
    UserHistory h{UserId{user}, {}};
    for (const auto& [m, v] : ratings) h.ratings[MovieId{m}] = v;
    return h;
}

SyntheticCorpus synthetic_corpus(std::uint64_t seed, std::size_t movie_count, std::size_t user_count) {
    Uniform rng(seed);
    // Genre "themes" so that movies cluster and users have coherent tastes.
    const std::vector<std::vector<Genre>> themes = {
        {G::Action, G::Adventure, G::Thriller, G::SciFi, G::War},
        {G::Drama, G::Romance, G::Musical},
        {G::Comedy, G::Childrens, G::Animation, G::Fantasy},
        {G::Crime, G::Thriller, G::FilmNoir, G::Mystery},
        {G::Horror, G::SciFi, G::Thriller},
        {G::Documentary, G::Drama, G::War, G::Western},
    };

    SyntheticCorpus corpus;
    std::ostringstream movies;
    std::vector<std::size_t> movie_theme(movie_count);
    for (std::size_t i = 0; i < movie_count; ++i) {
        const auto theme = rng.below(themes.size());
        movie_theme[i] = theme;
        GenreSet genres;
        genres.set(genre_index(themes[theme][rng.below(themes[theme].size())]));
        const auto extra = rng.below(3);
        for (std::size_t e = 0; e < extra; ++e) {
            genres.set(genre_index(themes[theme][rng.below(themes[theme].size())]));
        }
        if (rng.next() < 0.1) genres.set(rng.below(kGenreCount));
        movies << (i + 1) << "::Synthetic Feature " << (i + 1) << " (" << (1930 + rng.below(70)) << ")::";
        bool first = true;
        for (std::size_t g = 0; g < kGenreCount; ++g) {
            if (!genres.test(g)) continue;
            movies << (first ? "" : "|") << kGenreNames[g];
            first = false;
        }
        movies << '\n';
    }

    std::ostringstream ratings;
    std::int64_t ts = 956703932;
    for (std::size_t u = 0; u < user_count; ++u) {
        const auto favourite = rng.below(themes.size());
        const auto second = rng.below(themes.size());
        const auto n_rated = 20 + rng.below(std::min<std::size_t>(movie_count / 3, 120));
        std::set<std::size_t> picked;
        while (picked.size() < n_rated) {
            // Users mostly watch their favourite themes.
            auto m = rng.below(movie_count);
            if (rng.next() < 0.6) {
                for (int tries = 0; tries < 20 && movie_theme[m] != favourite && movie_theme[m] != second; ++tries) {
                    m = rng.below(movie_count);
                }
            }
            picked.insert(m);
        }
        for (const auto m : picked) {
            double base = movie_theme[m] == favourite ? 4.2 : movie_theme[m] == second ? 3.6 : 2.6;
            base += (rng.next() - 0.5) * 2.4;
            const int value = std::clamp(static_cast<int>(std::lround(base)), 1, 5);
            ratings << (u + 1) << "::" << (m + 1) << "::" << value << "::" << ts++ << '\n';
            ++corpus.rating_count;
        }
    }
    corpus.movies = movies.str();
    corpus.ratings = ratings.str();
    corpus.movie_count = movie_count;
    corpus.user_count = user_count;
    return corpus;
}

void write_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "movies.dat", std::ios::binary) << corpus.movies;
    std::ofstream(dir / "ratings.dat", std::ios::binary) << corpus.ratings;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("mira-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

namespace oracle {

double cosine(const UserHistory& a, const UserHistory& b) {
    std::set<MovieId> ids;
    for (const auto& [m, v] : a.ratings) ids.insert(m);
    for (const auto& [m, v] : b.ratings) ids.insert(m);
    std::vector<double> va, vb;
    for (auto m : ids) {
        va.push_back(a.ratings.contains(m) ? a.ratings.at(m) : 0.0);
        vb.push_back(b.ratings.contains(m) ? b.ratings.at(m) : 0.0);
    }
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        dot += va[i] * vb[i];
        na += va[i] * va[i];
        nb += vb[i] * vb[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / std::sqrt(na * nb);
}

std::vector<std::pair<UserId, double>> ranked_neighbours(const RatingsStore& store, UserId user) {
    const auto me = fetch_user(store, user);
    std::vector<std::pair<UserId, double>> all;
    for (auto other : store.user_ids()) {
        if (other == user) continue;
        all.emplace_back(other, cosine(me, fetch_user(store, other)));
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return std::make_tuple(-a.second, a.first) < std::make_tuple(-b.second, b.first);
    });
    return all;
}

std::vector<Genre> preferred_genres(const UserHistory& history, const Catalog& catalog) {
    struct Row {
        int liked = 0;
        int rated = 0;
        std::string name;
        Genre genre{};
    };
    std::vector<Row> rows;
    for (std::size_t g = 0; g < kGenreCount; ++g) {
        Row r;
        r.genre = genre_at(g);
        r.name = std::string(kGenreNames[g]);
        for (const auto& [m, v] : history.ratings) {
            if (!catalog.at(m).has(r.genre)) continue;
            ++r.rated;
            if (v >= 4) ++r.liked;
        }
        rows.push_back(r);
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::make_tuple(-a.liked, -a.rated, a.name) < std::make_tuple(-b.liked, -b.rated, b.name);
    });
    std::vector<Genre> out;
    for (const auto& r : rows) {
        if (r.liked > 0 && out.size() < 6) out.push_back(r.genre);
    }
    return out;
}

double precision(const std::vector<MovieId>& recs, const std::vector<Genre>& preferred, const Catalog& catalog) {
    if (recs.empty()) return 0.0;
    int correct = 0;
    for (auto m : recs) {
        bool hit = false;
        for (auto g : preferred) hit = hit || catalog.at(m).has(g);
        correct += hit ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(recs.size());
}

double partition_cost(const std::vector<GenreVector>& points, const std::vector<std::size_t>& labels, std::size_t k) {
    std::vector<std::array<double, kGenreCount>> means(k, std::array<double, kGenreCount>{});
    std::vector<int> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t g = 0; g < kGenreCount; ++g) means[labels[i]][g] += points[i][g];
        ++counts[labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        for (auto& x : means[c]) x /= counts[c];
    }
    double cost = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t g = 0; g < kGenreCount; ++g) {
            const double d = points[i][g] - means[labels[i]][g];
            cost += d * d;
        }
    }
    return cost;
}

double optimal_partition_cost(const std::vector<GenreVector>& points, std::size_t k) {
    // Restricted growth strings enumerate each set partition once.
    const auto n = points.size();
    std::vector<std::size_t> labels(n, 0);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            if (used == k) best = std::min(best, partition_cost(points, labels, k));
            return;
        }
        if (used + (n - i) < k) return;
        for (std::size_t c = 0; c <= std::min(used, k - 1); ++c) {
            labels[i] = c;
            rec(i + 1, std::max(used, c + 1));
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace oracle

}  // namespace mira::testing
