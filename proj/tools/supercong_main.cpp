// Command-line front end: batch verification of the congruence database,
// WZ certificate checks, proof replay, classical congruence checks, and a
// parser/pretty-printer for .cdb files.
//
// Exit codes: 0 all checks passed (skips allowed), 1 at least one check
// failed, 2 usage, parse, or I/O error.

#include "supercong/supercong.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace supercong;

struct CommonOpts {
    std::string primes = "3..100";
    std::string db_source = "builtin";
    std::string format = "table";
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_db) {
    cmd->add_option("--primes", opts.primes, "prime range A..B (inclusive)")
        ->capture_default_str();
    if (with_db)
        cmd->add_option("--db", opts.db_source, "congruence database: builtin or a .cdb path")
            ->capture_default_str();
    cmd->add_option("--format", opts.format, "output format: table, csv, or json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--jobs", opts.jobs, "parallel workers")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

std::pair<long, long> parse_prime_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--primes", "expected a range like 3..100");
    try {
        long lo = std::stol(text.substr(0, dots));
        long hi = std::stol(text.substr(dots + 2));
        if (lo > hi)
            throw CLI::ValidationError("--primes", "range is empty");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--primes", "expected a range like 3..100");
    }
}

ReportFormat parse_format(const std::string& text) {
    if (text == "csv")
        return ReportFormat::csv;
    if (text == "json")
        return ReportFormat::json;
    return ReportFormat::table;
}

Database load_database(const std::string& source) {
    if (source == "builtin")
        return Database::builtin();
    return Database::from_file(source);
}

int emit(const Report& report, const CommonOpts& opts) {
    std::cout << format_report(report, parse_format(opts.format));
    for (const auto& d : report.diagnostics)
        std::cerr << d << "\n";
    std::cerr << "completed in " << static_cast<long>(report.wall_millis) << " ms\n";
    return report.all_ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of p-adic congruence analogues of "
                 "hypergeometric series, with WZ certificate and proof replay"};
    app.require_subcommand(1);

    CommonOpts verify_opts, certify_opts, replay_opts, classics_opts;
    std::string ids_text;
    bool gamma_diag = false;
    int theorem = 0;
    std::string kinds_text;
    std::string parse_file;

    CLI::App* verify = app.add_subcommand("verify", "check congruences over a prime range");
    add_common(verify, verify_opts, true);
    verify->add_option("--ids", ids_text, "comma-separated statement ids (default: all)");
    verify->add_flag("--gamma-diag", gamma_diag,
                     "report the p-adic-gamma reformulation of A01b to stderr");

    CLI::App* certify = app.add_subcommand("certify", "check the three WZ pair certificates");
    certify->add_option("--format", certify_opts.format, "output format: table, csv, or json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();

    CLI::App* replay = app.add_subcommand("replay", "replay a telescoping proof over primes");
    add_common(replay, replay_opts, false);
    replay->add_option("--theorem", theorem, "theorem to replay: 1, 2, or 3")
        ->required()
        ->check(CLI::Range(1, 3));

    CLI::App* classics =
        app.add_subcommand("classics", "check the classical ingredient congruences");
    add_common(classics, classics_opts, false);
    classics->add_option("--kinds", kinds_text,
                         "comma-separated: wolstenholme,morley,lemma06,expansion06b,"
                         "lehmer45,power2_12n (default: all)");

    CLI::App* parse = app.add_subcommand("parse", "parse a .cdb file and print it canonically");
    parse->add_option("file", parse_file, "path to a .cdb file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // remap CLI11's exit codes onto the 0/1/2 contract (help stays 0)
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(parse)) {
            std::vector<CongruenceSpec> specs = parse_database_file(parse_file);
            std::cout << dsl::serialize(specs);
            std::cerr << "parsed " << specs.size() << " congruence block(s)\n";
            return 0;
        }

        BatchConfig config;
        const CommonOpts* opts = nullptr;
        if (app.got_subcommand(verify)) {
            opts = &verify_opts;
            config.mode = BatchConfig::Mode::verify;
            config.gamma_diagnostic = gamma_diag;
            std::stringstream ss(ids_text);
            std::string id;
            while (std::getline(ss, id, ','))
                if (!id.empty())
                    config.ids.push_back(id);
        } else if (app.got_subcommand(certify)) {
            opts = &certify_opts;
            config.mode = BatchConfig::Mode::certify;
        } else if (app.got_subcommand(replay)) {
            opts = &replay_opts;
            config.mode = BatchConfig::Mode::replay;
            config.theorem = theorem;
        } else {
            opts = &classics_opts;
            config.mode = BatchConfig::Mode::classics;
            std::stringstream ss(kinds_text);
            std::string kind;
            while (std::getline(ss, kind, ',')) {
                if (kind.empty())
                    continue;
                bool known = false;
                for (ClassicKind ck : all_classic_kinds())
                    if (to_string(ck) == kind) {
                        config.kinds.push_back(ck);
                        known = true;
                    }
                if (!known) {
                    std::cerr << "unknown classic kind: " << kind << "\n";
                    return 2;
                }
            }
        }

        if (config.mode != BatchConfig::Mode::certify) {
            auto [lo, hi] = parse_prime_range(opts->primes);
            config.prime_lo = lo;
            config.prime_hi = hi;
        }
        config.jobs = opts->jobs;

        Database db = app.got_subcommand(verify) ? load_database(verify_opts.db_source)
                                                 : Database::builtin();
        return emit(run_batch(db, config), *opts);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
