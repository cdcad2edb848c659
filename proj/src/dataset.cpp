#include "mira/dataset.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "mira/text.hpp"

namespace mira {

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const noexcept {
        return std::hash<std::int64_t>{}(p.first) * 1000003u ^ std::hash<std::int64_t>{}(p.second);
    }
};

std::int64_t parse_id(std::string_view field, std::size_t line, const char* what) {
    const auto v = text::parse_int(field);
    if (!v || *v <= 0) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return *v;
}

int parse_rating_value(std::string_view field, std::size_t line) {
    const auto v = text::parse_int(field);
    if (!v) throw ParseError(line, "invalid rating '" + std::string(field) + "'");
    if (*v < 1 || *v > 5) {
        throw ParseError(line, "rating " + std::to_string(*v) + " outside [1,5]");
    }
    return static_cast<int>(*v);
}

void require_fields(const std::vector<std::string_view>& fields, std::size_t min, std::size_t max,
                    std::size_t line) {
    if (fields.size() < min || fields.size() > max) {
        std::string expected = std::to_string(min);
        if (max != min) expected += "-" + std::to_string(max);
        throw ParseError(line, "expected " + expected + " fields, found " + std::to_string(fields.size()));
    }
}

// Calls fn(line_view, line_number) for each line; blank lines are errors.
template <class Fn>
void for_each_line(std::istream& source, Fn&& fn) {
    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(source, buffer)) {
        ++line_no;
        const auto line = text::chomp(buffer);
        if (text::trim(line).empty()) throw ParseError(line_no, "blank line");
        fn(line, line_no);
    }
}

std::string join_ids(const std::set<std::int64_t>& ids, std::size_t limit) {
    std::string out;
    std::size_t n = 0;
    for (auto id : ids) {
        if (n == limit) {
            out += ", ... (" + std::to_string(ids.size()) + " total)";
            break;
        }
        if (n++) out += ", ";
        out += std::to_string(id);
    }
    return out;
}

}  // namespace

// --- Catalog ----------------------------------------------------------------

Catalog::Catalog(std::vector<Movie> movies) {
    for (auto& m : movies) add(std::move(m));
}

void Catalog::add(Movie movie) {
    const auto id = movie.id;
    if (!movies_.emplace(id, std::move(movie)).second) {
        throw IntegrityError("duplicate movie id " + std::to_string(id.value));
    }
}

const Movie* Catalog::find(MovieId id) const {
    const auto it = movies_.find(id);
    return it == movies_.end() ? nullptr : &it->second;
}

const Movie& Catalog::at(MovieId id) const {
    if (const auto* m = find(id)) return *m;
    throw IntegrityError("movie " + std::to_string(id.value) + " is not in the catalog");
}

// --- RatingsStore -----------------------------------------------------------

RatingsStore RatingsStore::from_records(std::vector<Rating> records) {
    std::sort(records.begin(), records.end(), [](const Rating& a, const Rating& b) {
        return std::tie(a.user, a.movie) < std::tie(b.user, b.movie);
    });
    RatingsStore store;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.value < 1 || r.value > 5) {
            throw DataError("rating " + std::to_string(r.value) + " outside [1,5] for user " +
                            std::to_string(r.user.value) + ", movie " + std::to_string(r.movie.value));
        }
        if (i > 0 && records[i - 1].user == r.user && records[i - 1].movie == r.movie) {
            throw DataError("duplicate rating for user " + std::to_string(r.user.value) + ", movie " +
                            std::to_string(r.movie.value));
        }
        store.by_user_[r.user].push_back({r.movie, r.value, r.timestamp});
        store.by_movie_[r.movie].push_back({r.user, r.value});
        store.rating_sum_ += r.value;
    }
    store.rating_count_ = records.size();
    return store;
}

std::span<const UserRatingEntry> RatingsStore::user_ratings(UserId user) const {
    const auto it = by_user_.find(user);
    if (it == by_user_.end()) return {};
    return it->second;
}

std::span<const MovieRatingEntry> RatingsStore::movie_ratings(MovieId movie) const {
    const auto it = by_movie_.find(movie);
    if (it == by_movie_.end()) return {};
    return it->second;
}

std::optional<int> RatingsStore::rating(UserId user, MovieId movie) const {
    const auto row = user_ratings(user);
    const auto it = std::lower_bound(row.begin(), row.end(), movie,
                                     [](const UserRatingEntry& e, MovieId m) { return e.movie < m; });
    if (it == row.end() || it->movie != movie) return std::nullopt;
    return it->value;
}

double RatingsStore::mean_rating() const {
    if (rating_count_ == 0) return 0.0;
    return static_cast<double>(rating_sum_) / static_cast<double>(rating_count_);
}

std::vector<UserId> RatingsStore::user_ids() const {
    std::vector<UserId> ids;
    ids.reserve(by_user_.size());
    for (const auto& [id, row] : by_user_) ids.push_back(id);
    return ids;
}

std::vector<Rating> RatingsStore::records() const {
    std::vector<Rating> out;
    out.reserve(rating_count_);
    for (const auto& [user, row] : by_user_) {
        for (const auto& e : row) out.push_back({user, e.movie, e.value, e.timestamp});
    }
    return out;
}

// --- parsers ----------------------------------------------------------------

Catalog parse_movies(std::istream& source) {
    Catalog catalog;
    for_each_line(source, [&](std::string_view line, std::size_t line_no) {
        const auto fields = text::split(line, "::");
        require_fields(fields, 3, 3, line_no);
        Movie movie;
        movie.id = MovieId{parse_id(fields[0], line_no, "movie id")};
        movie.title = text::sanitize_utf8(fields[1]);
        if (fields[2].empty()) throw ParseError(line_no, "empty genre list");
        for (const auto token : text::split(fields[2], "|")) {
            const auto genre = genre_from_name(token);
            if (!genre) throw ParseError(line_no, "unknown genre '" + text::sanitize_utf8(token) + "'");
            movie.genres.set(genre_index(*genre));
        }
        if (catalog.contains(movie.id)) {
            throw ParseError(line_no, "duplicate movie id " + std::to_string(movie.id.value));
        }
        catalog.add(std::move(movie));
    });
    return catalog;
}

RatingsStore parse_ratings(std::istream& source, const Catalog& catalog) {
    std::vector<Rating> records;
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::size_t, PairHash> seen;
    std::set<std::int64_t> dangling;
    for_each_line(source, [&](std::string_view line, std::size_t line_no) {
        const auto fields = text::split(line, "::");
        require_fields(fields, 3, 4, line_no);
        Rating r;
        r.user = UserId{parse_id(fields[0], line_no, "user id")};
        r.movie = MovieId{parse_id(fields[1], line_no, "movie id")};
        r.value = parse_rating_value(fields[2], line_no);
        if (fields.size() == 4) {
            const auto ts = text::parse_int(fields[3]);
            if (!ts) throw ParseError(line_no, "invalid timestamp '" + std::string(fields[3]) + "'");
            r.timestamp = *ts;
        }
        const auto [it, inserted] = seen.emplace(std::pair{r.user.value, r.movie.value}, line_no);
        if (!inserted) {
            throw ParseError(line_no, "duplicate rating for user " + std::to_string(r.user.value) + ", movie " +
                                          std::to_string(r.movie.value) + " (first seen on line " +
                                          std::to_string(it->second) + ")");
        }
        if (!catalog.contains(r.movie)) dangling.insert(r.movie.value);
        records.push_back(r);
    });
    if (!dangling.empty()) {
        throw IntegrityError("ratings reference movie ids missing from the catalog: " + join_ids(dangling, 20));
    }
    return RatingsStore::from_records(std::move(records));
}

std::size_t parse_users(std::istream& source) {
    std::unordered_set<std::int64_t> seen;
    for_each_line(source, [&](std::string_view line, std::size_t line_no) {
        const auto fields = text::split(line, "::");
        require_fields(fields, 5, 5, line_no);
        const auto id = parse_id(fields[0], line_no, "user id");
        if (!seen.insert(id).second) throw ParseError(line_no, "duplicate user id " + std::to_string(id));
    });
    return seen.size();
}

RatingsStore ingest_session_ratings(std::istream& source, const RatingsStore& store, const Catalog& catalog) {
    std::vector<Rating> session;
    std::optional<UserId> session_user;
    std::unordered_set<std::int64_t> movies_seen;
    bool header_seen = false;
    for_each_line(source, [&](std::string_view line, std::size_t line_no) {
        const auto raw = text::split(line, ",");
        std::vector<std::string_view> fields;
        for (auto f : raw) fields.push_back(text::trim(f));
        require_fields(fields, 3, 3, line_no);
        if (!header_seen) {
            if (fields[0] != "user_id" || fields[1] != "movie_id" || fields[2] != "rating") {
                throw ParseError(line_no, "expected header 'user_id,movie_id,rating'");
            }
            header_seen = true;
            return;
        }
        Rating r;
        r.user = UserId{parse_id(fields[0], line_no, "user id")};
        r.movie = MovieId{parse_id(fields[1], line_no, "movie id")};
        r.value = parse_rating_value(fields[2], line_no);
        if (session_user && *session_user != r.user) {
            throw ParseError(line_no, "session file mixes users " + std::to_string(session_user->value) + " and " +
                                          std::to_string(r.user.value));
        }
        session_user = r.user;
        if (!catalog.contains(r.movie)) {
            throw IntegrityError("line " + std::to_string(line_no) + ": movie " + std::to_string(r.movie.value) +
                                 " is not in the catalog");
        }
        if (!movies_seen.insert(r.movie.value).second) {
            throw ParseError(line_no, "duplicate rating for movie " + std::to_string(r.movie.value));
        }
        session.push_back(r);
    });
    if (!header_seen) throw DataError("session file is empty");
    if (session.empty()) throw DataError("session file contains no ratings");
    if (store.contains_user(*session_user)) {
        throw CollisionError("session user " + std::to_string(session_user->value) + " already exists in the store");
    }
    auto records = store.records();
    records.insert(records.end(), session.begin(), session.end());
    return RatingsStore::from_records(std::move(records));
}

// --- writers ----------------------------------------------------------------

void write_movies(std::ostream& out, const Catalog& catalog) {
    for (const auto& [id, movie] : catalog.movies()) {
        out << id.value << "::" << movie.title << "::";
        bool first = true;
        for (std::size_t i = 0; i < kGenreCount; ++i) {
            if (!movie.genres.test(i)) continue;
            if (!first) out << '|';
            out << kGenreNames[i];
            first = false;
        }
        out << '\n';
    }
}

void write_ratings(std::ostream& out, const RatingsStore& store) {
    for (const auto& r : store.records()) {
        out << r.user.value << "::" << r.movie.value << "::" << r.value;
        if (r.timestamp) out << "::" << *r.timestamp;
        out << '\n';
    }
}

}  // namespace mira
