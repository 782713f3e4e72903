// nptile: solve for a spectral-gap perturbation of the integers, certify the
// resulting non-periodic tiling, and check tilings of Z.

#include "nptile/cli_io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    namespace cli = nptile::cli;

    CLI::App app{"Non-periodic tilings of the line by a bandlimited function"};
    app.require_subcommand(1);

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "Solve, build the translation set and certify it");
    solve->add_option("--config", config_path, "JSON run configuration")->required();

    std::string which;
    std::string artifacts;
    auto* verify = app.add_subcommand("verify", "Recompute one certificate from saved artifacts");
    verify->add_option("which", which, "gap | tiling | certificate | flc")
        ->required()
        ->check(CLI::IsMember({"gap", "tiling", "certificate", "flc"}));
    verify->add_option("--artifacts", artifacts, "directory holding alpha.csv and report.json")->required();

    std::string zsub;
    std::string instance;
    std::string zset_arg;
    auto* ztile = app.add_subcommand("ztile", "Tilings of Z_N by a tile");
    ztile->add_option("action", zsub, "check | search | period")
        ->required()
        ->check(CLI::IsMember({"check", "search", "period"}));
    ztile->add_option("instance", instance, "instance file")->required();
    auto* zset_opt = ztile->add_option("--set", zset_arg, "candidate residues, e.g. \"0 2 4\"");

    std::string what;
    std::string report_path;
    std::string out_path;
    cli::ExportOptions export_opts;
    std::string export_zset;
    auto* exp = app.add_subcommand("export", "Write plot-ready CSV");
    exp->add_option("what", what, "residual-curve | spectrum | alpha")
        ->required()
        ->check(CLI::IsMember({"residual-curve", "spectrum", "alpha"}));
    auto* report_opt = exp->add_option("--report", report_path, "report.json of a solve run");
    auto* out_opt = exp->add_option("--out", out_path, "output CSV path");
    auto* zset_exp = exp->add_option("--zset", export_zset, "residues of a periodic Z-set (spectrum)");
    exp->add_option("--period", export_opts.period, "period of --zset");
    exp->add_option("--terms", export_opts.terms, "Fejer partial-sum order");
    exp->add_option("--nfreq", export_opts.nfreq, "number of frequencies in [-1/2, 1/2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_code::kParseFailure;
    }

    if (*solve) return cli::cmd_solve(config_path, std::cout, std::cerr);
    if (*verify) return cli::cmd_verify(which, artifacts, std::cout, std::cerr);
    if (*ztile) {
        std::optional<std::string> set;
        if (*zset_opt) set = zset_arg;
        return cli::cmd_ztile(zsub, instance, set, std::cout, std::cerr);
    }
    if (*report_opt) export_opts.report = report_path;
    if (*out_opt) export_opts.out = out_path;
    if (*zset_exp) export_opts.zset = export_zset;
    return cli::cmd_export(what, export_opts, std::cout, std::cerr);
}
