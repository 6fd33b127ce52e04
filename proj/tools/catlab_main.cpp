// catlab — command-line front end over the catlab library.

#include <CLI11.hpp>

#include <iostream>

#include "catlab/cli.hpp"

using catlab::cli::RunConfig;

namespace {

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--state", cfg.state_arg, "State spec: inline JSON or a file path");
    cmd->add_option("--backend", cfg.backend, "Backend: analytic | fock | both")->capture_default_str();
    cmd->add_option("--grid", cfg.grid, "Axis spec: name:min:max:count[,...] or name=value");
    cmd->add_option("--out", cfg.out_path, "Output path (stdout when omitted)");
    cmd->add_option("--format", cfg.format, "Output format: csv | json")->capture_default_str();
    cmd->add_option("--cutoff", cfg.cutoff_override, "Per-mode Fock cutoff override");
    cmd->add_option("--seed", cfg.seed, "Seed for sampled cross-checks")->capture_default_str();
    cmd->add_option("--tolerance", cfg.tolerance, "Cross-check tolerance")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"catlab: hierarchical photonic cat state laboratory"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* pnd = app.add_subcommand("pnd", "Photon number distribution grid");
    add_common_flags(pnd, cfg);
    pnd->add_option("--max-n", cfg.max_n, "Largest photon number per mode")->capture_default_str();

    auto* mandel = app.add_subcommand("mandel", "Per-mode Mandel Q over an alpha sweep");
    add_common_flags(mandel, cfg);
    mandel->add_option("--alpha-min", cfg.alpha_min)->capture_default_str();
    mandel->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
    mandel->add_option("--alpha-step", cfg.alpha_step)->capture_default_str();

    auto* escan = app.add_subcommand("entropy-scan", "Beam-splitter entanglement entropy surface");
    add_common_flags(escan, cfg);
    escan->add_option("--alpha-min", cfg.alpha_min)->capture_default_str();
    escan->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
    escan->add_option("--alpha-count", cfg.alpha_count)->capture_default_str();
    escan->add_option("--theta-min", cfg.theta_min)->capture_default_str();
    escan->add_option("--theta-max", cfg.theta_max)->capture_default_str();
    escan->add_option("--theta-count", cfg.theta_count)->capture_default_str();
    escan->add_flag("--fluctuation", cfg.fluctuation, "Also emit the entanglement fluctuation");

    auto* damp = app.add_subcommand("damp", "Entropy surface under amplitude damping");
    add_common_flags(damp, cfg);
    damp->add_option("--alpha-min", cfg.alpha_min)->capture_default_str();
    damp->add_option("--alpha-max", cfg.alpha_max)->capture_default_str();
    damp->add_option("--alpha-count", cfg.alpha_count)->capture_default_str();
    damp->add_option("--gamma", cfg.gamma, "Damping rate")->capture_default_str();
    damp->add_option("--t-max", cfg.t_max)->capture_default_str();
    damp->add_option("--t-count", cfg.t_count)->capture_default_str();
    damp->add_flag("--fluctuation", cfg.fluctuation, "Also emit the entanglement fluctuation");

    auto* metro = app.add_subcommand("metrology", "Variance maximization and N^rF report");
    add_common_flags(metro, cfg);
    metro->add_option("--algebra", cfg.algebra, "h3 | h4 | sl2")->capture_default_str();
    metro->add_option("--sweep", cfg.sweep, "alpha2:<min>:<max>:<count> sweep with exponent fit");

    auto* circ = app.add_subcommand("circuit", "Generation protocol reports");
    add_common_flags(circ, cfg);
    circ->add_option("--protocol", cfg.protocol, "fig5 | fig6 | direct")->capture_default_str();
    circ->add_option("--alpha", cfg.alpha)->capture_default_str();
    circ->add_option("--eps", cfg.eps)->capture_default_str();
    circ->add_option("--phi", cfg.phi)->capture_default_str();
    circ->add_option("--detect", cfg.detect, "Detected auxiliary mode: 2 | 4")->capture_default_str();

    auto* qf = app.add_subcommand("qfunc", "Husimi Q grid");
    add_common_flags(qf, cfg);

    auto* wig = app.add_subcommand("wigner", "Wigner grid of a reduced mode set");
    add_common_flags(wig, cfg);
    wig->add_option("--modes", cfg.modes, "Kept modes, comma separated")->capture_default_str();

    auto* barg = app.add_subcommand("bargmann", "Bargmann function grid");
    add_common_flags(barg, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return catlab::cli::execute_and_write(cfg, std::cout, std::cerr);
}
