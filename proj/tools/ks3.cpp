/*
 * ks3 — unital maps on M₃ in the Bloch–Gell-Mann picture: Kadison–Schwarz
 * certification and falsification, CP classification, seeded sweeps.
 *
 * Exit codes: 0 completed, 2 input error, 3 internal numerical failure.
 */
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ks3/cli.hpp"
#include "ks3/error.hpp"
#include "ks3/report.hpp"
#include "ks3/version.hpp"

namespace {

void add_common_flags(CLI::App* sub, ks3::RunConfig* cfg) {
    sub->add_option("--seed", cfg->seed, "RNG seed (default 0)");
    sub->add_option("--budget", cfg->budget, "search restarts (default 200)")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg->tol, "PSD tolerance (default 1e-9)")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg->format, "report format: json | csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg->out_path, "write the report to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unital maps on M3: Kadison-Schwarz certification, falsification, CP classification"};
    app.set_version_flag("--version", std::string(ks3::kVersion));
    app.require_subcommand(1);

    ks3::RunConfig cfg;

    CLI::App* constants = app.add_subcommand("constants", "dump f/d nonzeros, C3, and the spread bound");
    add_common_flags(constants, &cfg);

    CLI::App* decompose = app.add_subcommand("decompose", "Bloch coefficients of an operator file");
    decompose->add_option("input", cfg.input, "operator file {\"d\":3,\"matrix\":3x3 complex}")->required();
    add_common_flags(decompose, &cfg);

    CLI::App* canonical = app.add_subcommand("canonical", "polar canonical form T = R*S with spectrum mu");
    canonical->add_option("input", cfg.input, "map file or catalog:name")->required();
    add_common_flags(canonical, &cfg);

    CLI::App* certify = app.add_subcommand("certify", "analytic Kadison-Schwarz certificate");
    certify->add_option("input", cfg.input, "map file or catalog:name")->required();
    add_common_flags(certify, &cfg);

    CLI::App* search = app.add_subcommand("search", "numerical Kadison-Schwarz violation search");
    search->add_option("input", cfg.input, "map file or catalog:name")->required();
    add_common_flags(search, &cfg);

    CLI::App* classify = app.add_subcommand("classify", "place a map in the hierarchy CP < KS < Pos");
    classify->add_option("input", cfg.input, "map file or catalog:name")->required();
    add_common_flags(classify, &cfg);

    CLI::App* catalog = app.add_subcommand("catalog", "list named maps, or show one serialized");
    catalog->add_option("input", cfg.input, "optional catalog entry, e.g. transposition");
    add_common_flags(catalog, &cfg);

    CLI::App* sweep = app.add_subcommand("sweep", "grid sweep over a diagonal mu family");
    sweep->add_option("--family", cfg.family, "e.g. \"mu=(a,a,a,a,b,b,b,b)\"")->required();
    sweep->add_option("--a", cfg.a_range, "grid start:end:step for symbol a");
    sweep->add_option("--b", cfg.b_range, "grid start:end:step for symbol b");
    add_common_flags(sweep, &cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        const ks3::Report report = ks3::run(command, cfg);
        const std::string bytes = ks3::emit_report(report, cfg.format);
        if (cfg.out_path.empty()) {
            std::cout << bytes;
        } else {
            std::ofstream out(cfg.out_path, std::ios::binary);
            if (!out) throw ks3::IoError("cannot open output file: " + cfg.out_path);
            out << bytes;
            if (!out) throw ks3::IoError("failed writing output file: " + cfg.out_path);
        }
        return 0;
    } catch (const ks3::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ks3::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 3;
    }
}
