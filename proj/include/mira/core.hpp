#pragma once

// Identifiers, the fixed MovieLens genre vocabulary, and the error hierarchy
// shared by every MIRA module.

#include <array>
#include <bitset>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mira {

struct UserId {
    std::int64_t value{};
    auto operator<=>(const UserId&) const = default;
};

struct MovieId {
    std::int64_t value{};
    auto operator<=>(const MovieId&) const = default;
};

inline constexpr std::size_t kGenreCount = 18;

// Order matters: it is the bit order of genre vectors.
enum class Genre : std::uint8_t {
    Action,
    Adventure,
    Animation,
    Childrens,
    Comedy,
    Crime,
    Documentary,
    Drama,
    Fantasy,
    FilmNoir,
    Horror,
    Musical,
    Mystery,
    Romance,
    SciFi,
    Thriller,
    War,
    Western,
};

inline constexpr std::array<std::string_view, kGenreCount> kGenreNames = {
    "Action",  "Adventure", "Animation", "Children's", "Comedy",  "Crime",
    "Documentary", "Drama", "Fantasy",   "Film-Noir",  "Horror",  "Musical",
    "Mystery", "Romance",   "Sci-Fi",    "Thriller",   "War",     "Western",
};

constexpr std::size_t genre_index(Genre g) { return static_cast<std::size_t>(g); }
constexpr Genre genre_at(std::size_t i) { return static_cast<Genre>(i); }
constexpr std::string_view genre_name(Genre g) { return kGenreNames[genre_index(g)]; }

std::optional<Genre> genre_from_name(std::string_view name);

using GenreSet = std::bitset<kGenreCount>;

// --- errors -----------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input data: unreadable files, malformed lines, integrity violations.
class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IntegrityError : public DataError {
public:
    using DataError::DataError;
};

class CollisionError : public DataError {
public:
    using DataError::DataError;
};

class InfeasibleError : public DataError {
public:
    using DataError::DataError;
};

// Bad query: the request names something the data does not contain.
class QueryError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public QueryError {
public:
    using QueryError::QueryError;
};

class InvalidStimulusError : public QueryError {
public:
    using QueryError::QueryError;
};

}  // namespace mira

template <>
struct std::hash<mira::UserId> {
    std::size_t operator()(mira::UserId id) const noexcept { return std::hash<std::int64_t>{}(id.value); }
};

template <>
struct std::hash<mira::MovieId> {
    std::size_t operator()(mira::MovieId id) const noexcept { return std::hash<std::int64_t>{}(id.value); }
};
