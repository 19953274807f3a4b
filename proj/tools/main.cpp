#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axpir/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"asymmetric X-secure PIR toolkit: grouping search, simulation, "
                 "rate analysis, trade-off regions, and information-theoretic audits"};
    app.require_subcommand(1);

    axpir::cli::GroupOptions group_opt;
    CLI::App* group = app.add_subcommand("group", "search for the maximum link-avoiding grouping");
    group->add_option("scenario", group_opt.scenario_path, "scenario JSON file")->required();
    group->add_option("--json", group_opt.json_path, "write a JSON artifact (- for stdout)");

    axpir::cli::SimulateOptions sim_opt;
    CLI::App* sim = app.add_subcommand("simulate", "run retrieval sessions and measure (alpha, beta)");
    sim->add_option("scenario", sim_opt.scenario_path, "scenario JSON file")->required();
    sim->add_option("--theta", sim_opt.theta, "1-based message to retrieve");
    sim->add_option("--seed", sim_opt.seed, "RNG seed for messages, pads, and draws");
    sim->add_option("--sessions", sim_opt.sessions, "number of sessions to run");
    sim->add_option("--json", sim_opt.json_path, "write a JSON artifact (- for stdout)");
    sim->add_flag("--dump-transcript", sim_opt.dump_transcript, "print full transcripts");

    axpir::cli::RatesOptions rates_opt;
    CLI::App* rates = app.add_subcommand("rates", "achievable rate, upper bound, and capacity");
    rates->add_option("scenario", rates_opt.scenario_path, "scenario JSON file")->required();
    rates->add_option("--collusion", rates_opt.collusion, "collusion tolerance T");
    rates->add_option("--json", rates_opt.json_path, "write a JSON artifact (- for stdout)");
    rates->add_flag("--float", rates_opt.as_float, "print decimals instead of rationals");

    axpir::cli::RegionOptions region_opt;
    CLI::App* region = app.add_subcommand("region", "storage-rate trade-off regions and bounds");
    region->add_option("--theorems", region_opt.theorems,
                       "bound families to combine: t1, t2, c1, c2")
        ->delimiter(',');
    region->add_option("scenario", region_opt.scenario_path,
                       "scenario JSON file (required by t2 and c1)");
    region->add_option("--k", region_opt.k_messages, "message count when no scenario is given");
    region->add_option("--degree", region_opt.degree, "uniform group size for c2");
    region->add_option("--groups", region_opt.group_count, "group count for c2");
    region->add_option("--csv", region_opt.csv_path, "write the region as CSV");
    region->add_option("--json", region_opt.json_path, "write a JSON artifact (- for stdout)");
    region->add_flag("--float", region_opt.as_float, "print decimals instead of rationals");
    region->add_option("--alpha", region_opt.point_alpha, "alpha of a point to test (p or p/q)");
    region->add_option("--beta", region_opt.point_beta, "beta of a point to test (p or p/q)");

    axpir::cli::VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand("verify", "audit correctness, privacy, security, independence");
    verify->add_option("scenario", verify_opt.scenario_path, "scenario JSON file")->required();
    verify->add_option("--checks", verify_opt.checks,
                       "subset of correctness, privacy, security, independence")
        ->delimiter(',');
    verify->add_option("--mode", verify_opt.mode, "exhaustive or sample");
    verify->add_option("--security", verify_opt.security, "rank, exhaustive, or both");
    verify->add_option("--seed", verify_opt.seed, "RNG seed for sampled checks");
    verify->add_option("--samples", verify_opt.samples, "sample count for sampled checks");
    verify->add_option("--fix-coin", verify_opt.fix_coin, "pin the reduced scheme's coin (1 or 2)");
    verify->add_option("--json", verify_opt.json_path, "write the audit reports as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? axpir::cli::kOk : axpir::cli::kBadInvocation;
    }

    if (group->parsed()) return axpir::cli::cmd_group(group_opt, std::cout, std::cerr);
    if (sim->parsed()) return axpir::cli::cmd_simulate(sim_opt, std::cout, std::cerr);
    if (rates->parsed()) return axpir::cli::cmd_rates(rates_opt, std::cout, std::cerr);
    if (region->parsed()) return axpir::cli::cmd_region(region_opt, std::cout, std::cerr);
    if (verify->parsed()) return axpir::cli::cmd_verify(verify_opt, std::cout, std::cerr);
    return axpir::cli::kBadInvocation;
}
