#pragma once

// MovieLens 1M ingestion: the movie catalog, the sparse ratings store, and
// the CSV session files used to add a single volunteer to a store.
//
//   movies.dat   MovieID::Title::Genre1|Genre2|...
//   ratings.dat  UserID::MovieID::Rating::Timestamp   (timestamp optional)
//   users.dat    UserID::Gender::Age::Occupation::Zip (validated, unused)
//   session csv  header "user_id,movie_id,rating", one rating per row
//
// Every non-empty input line either becomes a record or raises a ParseError
// carrying its 1-based line number; blank lines are errors too.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mira/core.hpp"

namespace mira {

struct Movie {
    MovieId id;
    std::string title;
    GenreSet genres;

    bool has(Genre g) const { return genres.test(genre_index(g)); }
    bool operator==(const Movie&) const = default;
};

class Catalog {
public:
    Catalog() = default;
    explicit Catalog(std::vector<Movie> movies);

    // Throws IntegrityError on a repeated id.
    void add(Movie movie);

    bool contains(MovieId id) const { return movies_.contains(id); }
    const Movie* find(MovieId id) const;
    // Throws IntegrityError when the id is absent.
    const Movie& at(MovieId id) const;

    std::size_t size() const { return movies_.size(); }
    bool empty() const { return movies_.empty(); }
    const std::map<MovieId, Movie>& movies() const { return movies_; }

    bool operator==(const Catalog&) const = default;

private:
    std::map<MovieId, Movie> movies_;
};

struct Rating {
    UserId user;
    MovieId movie;
    int value{};
    std::optional<std::int64_t> timestamp;
    bool operator==(const Rating&) const = default;
};

struct UserRatingEntry {
    MovieId movie;
    int value{};
    std::optional<std::int64_t> timestamp;
    bool operator==(const UserRatingEntry&) const = default;
};

struct MovieRatingEntry {
    UserId user;
    int value{};
    bool operator==(const MovieRatingEntry&) const = default;
};

// Immutable after construction. by_user rows are sorted by movie id and
// by_movie rows by user id; the two indexes are exact transposes.
class RatingsStore {
public:
    RatingsStore() = default;

    // Throws DataError on a duplicate (user, movie) pair or a value outside
    // [1,5].
    static RatingsStore from_records(std::vector<Rating> records);

    bool contains_user(UserId user) const { return by_user_.contains(user); }
    std::span<const UserRatingEntry> user_ratings(UserId user) const;
    std::span<const MovieRatingEntry> movie_ratings(MovieId movie) const;
    std::optional<int> rating(UserId user, MovieId movie) const;

    std::size_t user_count() const { return by_user_.size(); }
    std::size_t movie_count() const { return by_movie_.size(); }
    std::size_t rating_count() const { return rating_count_; }

    // Mean of every rating in the store; 0 when empty.
    double mean_rating() const;

    std::vector<UserId> user_ids() const;
    // Sorted by (user, movie).
    std::vector<Rating> records() const;

    const std::map<UserId, std::vector<UserRatingEntry>>& by_user() const { return by_user_; }
    const std::map<MovieId, std::vector<MovieRatingEntry>>& by_movie() const { return by_movie_; }

    bool operator==(const RatingsStore&) const = default;

private:
    std::map<UserId, std::vector<UserRatingEntry>> by_user_;
    std::map<MovieId, std::vector<MovieRatingEntry>> by_movie_;
    std::size_t rating_count_ = 0;
    std::int64_t rating_sum_ = 0;
};

Catalog parse_movies(std::istream& source);

// Ratings must reference movies present in `catalog`.
RatingsStore parse_ratings(std::istream& source, const Catalog& catalog);

// Validates users.dat lines and returns how many were read.
std::size_t parse_users(std::istream& source);

// Returns a copy of `store` extended with the single user named in the
// session file. Throws CollisionError if that user already exists.
RatingsStore ingest_session_ratings(std::istream& source, const RatingsStore& store,
                                    const Catalog& catalog);

// Wire-format writers (inverse of the parsers above).
void write_movies(std::ostream& out, const Catalog& catalog);
void write_ratings(std::ostream& out, const RatingsStore& store);

}  // namespace mira
