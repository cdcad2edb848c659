#include "mira/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "mira/baseline.hpp"
#include "mira/cognitive_cycle.hpp"
#include "mira/dataset.hpp"
#include "mira/evaluation.hpp"
#include "mira/genre_clustering.hpp"
#include "mira/report_io.hpp"
#include "mira/text.hpp"

#ifndef MIRA_VERSION
#define MIRA_VERSION "0.0.0"
#endif

namespace mira::cli {

namespace {

namespace fs = std::filesystem;

struct DatasetPaths {
    std::string movies;
    std::string ratings;
    std::string users;
};

struct Dataset {
    Catalog catalog;
    RatingsStore store;
    std::size_t user_records = 0;
};

struct CycleFlags {
    std::size_t k = 8;
    std::size_t similar = 10;
    std::size_t count = 40;
    std::uint64_t seed = CycleConfig{}.seed;

    CycleConfig config() const {
        CycleConfig c;
        c.k = k;
        c.n_similar = similar;
        c.n_recommendations = count;
        c.seed = seed;
        return c;
    }
};

struct UserSelection {
    std::vector<std::int64_t> users;
    std::size_t top_users = 10;

    std::vector<UserId> resolve(const RatingsStore& store) const {
        if (users.empty()) return top_raters(store, top_users);
        std::vector<UserId> out;
        for (auto u : users) out.push_back(UserId{u});
        return out;
    }
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return in;
}

template <class Parse>
auto parse_file(const std::string& path, Parse&& parse) {
    auto in = open_input(path);
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw DataError(path + ": " + e.what());
    }
}

Dataset load(const DatasetPaths& paths) {
    Dataset d;
    d.catalog = parse_file(paths.movies, [](std::istream& in) { return parse_movies(in); });
    d.store = parse_file(paths.ratings, [&](std::istream& in) { return parse_ratings(in, d.catalog); });
    if (!paths.users.empty()) d.user_records = parse_file(paths.users, [](std::istream& in) { return parse_users(in); });
    return d;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out) throw DataError("failed writing " + path.string());
}

RunManifest manifest_for(const std::string& command, const std::vector<std::string>& args, const CycleConfig& config,
                         const DatasetPaths& paths, const std::string& output) {
    return RunManifest{command, args, config, paths.movies, paths.ratings, output, MIRA_VERSION};
}

// Writes `content` to `out_path`, or to stdout when empty. The manifest
// lands beside the file, or on stderr for stdout output.
void emit(const std::string& content, const std::string& out_path, const RunManifest& manifest, std::ostream& out,
          std::ostream& err) {
    const auto manifest_text = manifest_to_json(manifest).dump(2) + "\n";
    if (out_path.empty()) {
        out << content;
        err << "manifest: " << manifest_to_json(manifest).dump() << '\n';
        return;
    }
    write_text(out_path, content);
    write_text(out_path + ".manifest.json", manifest_text);
}

void add_dataset_options(CLI::App& cmd, DatasetPaths& paths) {
    cmd.add_option("--movies", paths.movies, "movies.dat path")->required();
    cmd.add_option("--ratings", paths.ratings, "ratings.dat path")->required();
    cmd.add_option("--users-file", paths.users, "users.dat path (validated, otherwise unused)");
}

void add_cycle_options(CLI::App& cmd, CycleFlags& flags, const std::string& similar_names = "--similar") {
    cmd.add_option("--k", flags.k, "number of genre clusters")->capture_default_str();
    cmd.add_option(similar_names, flags.similar, "number of similar users")->capture_default_str();
    cmd.add_option("--count", flags.count, "number of recommendations")->capture_default_str();
    cmd.add_option("--seed", flags.seed, "k-means seed")->capture_default_str();
}

void add_user_options(CLI::App& cmd, UserSelection& sel) {
    auto* users = cmd.add_option("--users", sel.users, "comma-separated user ids")->delimiter(',');
    cmd.add_option("--top-users", sel.top_users, "evaluate the N heaviest raters")->capture_default_str()->excludes(users);
}

std::string render(const RecommendationList& list, const CycleConfig& config, const std::string& format) {
    if (format == "json") return recommendations_to_json(list, config).dump(2) + "\n";
    return format_table(list);
}

std::string percent(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v * 100.0 << '%';
    return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"MIRA: cognitive-cycle movie recommender"};
    app.set_version_flag("--version", MIRA_VERSION);
    app.require_subcommand(1);

    DatasetPaths paths;
    CycleFlags flags;
    UserSelection selection;
    std::string format = "table";
    std::string out_path;
    bool trace = false;
    std::int64_t user_id = 0;
    std::string session_path;
    std::vector<std::size_t> ks{5, 6, 7, 8, 9, 10};
    std::vector<std::size_t> similars{5, 10, 20, 30, 40, 50};

    auto* ingest = app.add_subcommand("ingest", "parse and validate a dataset, print counts");
    add_dataset_options(*ingest, paths);

    auto* recommend = app.add_subcommand("recommend", "run one cognitive cycle for a user");
    add_dataset_options(*recommend, paths);
    recommend->add_option("user_id", user_id, "user to recommend for")->required();
    add_cycle_options(*recommend, flags);
    recommend->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    recommend->add_option("--out", out_path, "write the list here instead of stdout");
    recommend->add_flag("--trace", trace, "print the inter-module message flow to stderr");

    auto* experiment = app.add_subcommand("experiment", "precision over a (k, similar users) grid");
    add_dataset_options(*experiment, paths);
    experiment->add_option("--ks", ks, "cluster counts")->delimiter(',')->capture_default_str();
    experiment->add_option("--similars", similars, "similar-user counts")->delimiter(',')->capture_default_str();
    add_user_options(*experiment, selection);
    experiment->add_option("--count", flags.count, "number of recommendations")->capture_default_str();
    experiment->add_option("--seed", flags.seed, "k-means seed")->capture_default_str();
    experiment->add_option("--out", out_path, "output directory")->required();

    auto* compare = app.add_subcommand("compare", "cognitive cycle vs collaborative-filtering baseline");
    add_dataset_options(*compare, paths);
    add_cycle_options(*compare, flags, "--similar,--similars");
    add_user_options(*compare, selection);
    compare->add_option("--out", out_path, "output directory")->required();

    auto* session = app.add_subcommand("rate-session", "add a volunteer's ratings and evaluate their list");
    add_dataset_options(*session, paths);
    session->add_option("session_csv", session_path, "CSV with header user_id,movie_id,rating")->required();
    add_cycle_options(*session, flags);
    session->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    session->add_option("--out", out_path, "write the report here instead of stdout");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kQueryError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        if (*ingest) {
            const auto d = load(paths);
            out << d.catalog.size() << " movies, " << d.store.user_count() << " users, " << d.store.rating_count()
                << " ratings\n";
            if (!paths.users.empty()) out << d.user_records << " user records\n";
            out << "referential integrity: ok\n";
            return kOk;
        }

        if (*recommend) {
            const auto config = flags.config();
            validate(config);
            const auto stimulus = sense(user_id);
            const auto d = load(paths);
            if (!d.store.contains_user(stimulus.user)) {
                throw NotFoundError("unknown user " + std::to_string(user_id));
            }
            const auto model = fit_catalog_model(d.catalog, config.k, config.seed);
            CycleTrace messages;
            const auto list = run_cycle(d.store, d.catalog, model, config, user_id, trace ? &messages : nullptr);
            for (const auto& m : messages) {
                err << "[" << m.step << "] " << m.name << ": " << m.from << " -> " << m.to << " (" << m.payload
                    << ")\n";
            }
            emit(render(list, config, format), out_path, manifest_for(command, args, config, paths, out_path), out, err);
            return kOk;
        }

        if (*experiment) {
            const auto d = load(paths);
            const auto users = selection.resolve(d.store);
            require_users(d.store, users);
            const auto grid = run_grid(d.store, d.catalog, users, ks, similars, flags.count, flags.seed);

            const fs::path dir(out_path);
            fs::create_directories(dir);
            std::ostringstream csv;
            write_grid_csv(csv, grid);
            write_text(dir / "grid.csv", csv.str());
            write_text(dir / "grid.json", grid_to_json(grid).dump(2) + "\n");
            auto manifest = manifest_for(command, args, flags.config(), paths, out_path);
            write_text(dir / "grid.manifest.json", manifest_to_json(manifest).dump(2) + "\n");

            out << "k,n_similar,mean_precision\n";
            for (const auto& [key, report] : grid.cells) {
                out << key.k << ',' << key.n_similar << ',' << percent(report.mean_precision) << '\n';
            }
            return kOk;
        }

        if (*compare) {
            const auto config = flags.config();
            validate(config);
            const auto d = load(paths);
            const auto users = selection.resolve(d.store);
            require_users(d.store, users);
            const auto comparison = compare_models(d.store, d.catalog, users, config);

            const fs::path dir(out_path);
            fs::create_directories(dir);
            std::ostringstream csv;
            write_comparison_csv(csv, comparison);
            write_text(dir / "compare.csv", csv.str());
            write_text(dir / "compare.json", comparison_to_json(comparison).dump(2) + "\n");
            write_text(dir / "compare.manifest.json",
                       manifest_to_json(manifest_for(command, args, config, paths, out_path)).dump(2) + "\n");

            out << "user_id,mira,baseline\n";
            for (const auto& [user, p] : comparison.mira.per_user) {
                out << user.value << ',' << percent(p) << ',' << percent(comparison.baseline.per_user.at(user)) << '\n';
            }
            out << "MEAN," << percent(comparison.mira.mean_precision) << ','
                << percent(comparison.baseline.mean_precision) << '\n';
            return kOk;
        }

        if (*session) {
            const auto config = flags.config();
            validate(config);
            const auto d = load(paths);
            auto in = open_input(session_path);
            RatingsStore extended;
            UserId session_user;
            try {
                extended = ingest_session_ratings(in, d.store, d.catalog);
                for (const auto u : extended.user_ids()) {
                    if (!d.store.contains_user(u)) session_user = u;
                }
            } catch (const ParseError& e) {
                throw DataError(session_path + ": " + e.what());
            }
            const auto eval = evaluate_session(extended, d.catalog, session_user, config);
            std::string content;
            if (format == "json") {
                content = session_to_json(eval, config).dump(2) + "\n";
            } else {
                content = format_table(eval.recommendations);
                content += "preferred genres:";
                for (const auto g : eval.preferred.genres) content += " " + std::string(genre_name(g));
                content += "\nprecision: " + percent(eval.report.mean_precision) + "\n";
            }
            emit(content, out_path, manifest_for(command, args, config, paths, out_path), out, err);
            return kOk;
        }
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kQueryError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const QueryError& e) {
        err << "error: " << e.what() << '\n';
        return kQueryError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kQueryError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kOk;
}

}  // namespace mira::cli
