// Command-line front end: analytic bounds/convergence sweeps, Monte-Carlo
// simulation, topology inspection, named experiment presets, and
// plot-script emission.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdnbgp/sdnbgp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

sdnbgp::ExperimentConfig load_config(const std::string& config_path,
                                     const std::vector<std::string>& sets,
                                     const std::string& out_dir) {
    sdnbgp::ExperimentConfig cfg =
        config_path.empty() ? sdnbgp::ExperimentConfig::from_text("", sets)
                            : sdnbgp::ExperimentConfig::from_file(config_path, sets);
    if (!out_dir.empty()) cfg.set_output_dir(out_dir);
    return cfg;
}

void print_outputs(const sdnbgp::CommandResult& res) {
    for (const auto& f : res.outputs) std::cout << f << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BGP convergence under partial routing centralization: "
                 "closed-form bounds and Monte-Carlo validation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, caida_path, preset, results_dir, synth_out;
    std::vector<std::string> sets;
    int synth_n = 12000;
    std::uint64_t synth_seed = 1;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        sub->add_option("-c,--config", config_path, "experiment config file")
            ->required(config_required);
        sub->add_option("-s,--set", sets, "override a config key (section.key=value)");
        sub->add_option("-o,--out", out_dir, "output directory (default: $SDNBGP_OUTPUT_DIR)");
    };

    auto* bounds = app.add_subcommand("bounds", "analytic T_SD bound sweep over k");
    add_common(bounds, true);
    auto* converge =
        app.add_subcommand("converge", "analytic convergence-time sweep over k");
    add_common(converge, true);
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo sweep over k");
    add_common(simulate, true);
    auto* topo = app.add_subcommand("topo-stats", "load a topology and report stats");
    add_common(topo, true);

    auto* repro = app.add_subcommand("reproduce", "run a named preset experiment");
    repro->add_option("preset", preset, "fig3 | fig6 | fig7 | fig8 | table-bounds")->required();
    repro->add_option("--caida", caida_path, "AS-relationship snapshot (fig3/fig8)");
    repro->add_option("-s,--set", sets, "override a config key (section.key=value)");
    repro->add_option("-o,--out", out_dir, "output directory");

    auto* plots = app.add_subcommand("emit-plots", "write plot scripts next to result CSVs");
    plots->add_option("results", results_dir, "results directory")->required();

    auto* synth = app.add_subcommand("synth-asrel",
                                     "write a synthetic AS-relationship file (CAIDA format)");
    synth->add_option("-o,--out", synth_out, "output file")->required();
    synth->add_option("-n", synth_n, "node count (>= 200)");
    synth->add_option("--seed", synth_seed, "generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) {
            print_outputs(sdnbgp::cmd_analytic_bounds(load_config(config_path, sets, out_dir)));
        } else if (converge->parsed()) {
            print_outputs(
                sdnbgp::cmd_analytic_convergence(load_config(config_path, sets, out_dir)));
        } else if (simulate->parsed()) {
            print_outputs(sdnbgp::cmd_simulate(load_config(config_path, sets, out_dir)));
        } else if (topo->parsed()) {
            print_outputs(sdnbgp::cmd_topo_stats(load_config(config_path, sets, out_dir),
                                                 std::cout));
        } else if (repro->parsed()) {
            std::string snapshot = caida_path;
            sdnbgp::fs::path dir(out_dir.empty() ? std::string("results/") + preset : out_dir);
            if (sdnbgp::preset_needs_caida(preset) && snapshot.empty()) {
                // no snapshot given: fall back to the bundled synthetic topology
                sdnbgp::fs::create_directories(dir);
                snapshot = (dir / "synthetic_asrel.txt").string();
                std::ofstream out(snapshot);
                sdnbgp::write_synthetic_asrel(out, synth_n, 42);
                std::cerr << "note: no --caida snapshot given; wrote and used synthetic topology "
                          << snapshot << "\n";
            }
            sdnbgp::ExperimentConfig cfg =
                sdnbgp::ExperimentConfig::from_text(sdnbgp::preset_config(preset, snapshot), sets);
            cfg.set_output_dir(dir.string());
            if (preset == "fig3") {
                print_outputs(sdnbgp::cmd_analytic_bounds(cfg));
            } else if (preset == "fig7") {
                print_outputs(sdnbgp::cmd_analytic_convergence(cfg));
                print_outputs(sdnbgp::cmd_simulate(cfg));
            } else if (preset == "table-bounds") {
                const sdnbgp::AsGraph g = cfg.build_graph();
                sdnbgp::Scenario base;
                base.graph = &g;
                base.bgp = cfg.bgp_model();
                base.trials = cfg.trials();
                base.seed = cfg.seed();
                base.cluster = sdnbgp::ClusterPolicy::strategy(
                    {sdnbgp::ClusterStrategy::Random, 0}, nullptr);
                std::vector<int> ks;
                for (int k : cfg.k_values())
                    if (k > 0) ks.push_back(k);
                const sdnbgp::SweepResult sweep = sdnbgp::normalized_sweep(base, ks);
                sdnbgp::fs::create_directories(dir);
                const auto file = dir / "table_bounds.csv";
                std::ofstream out(file);
                char hdr[96];
                std::snprintf(hdr, sizeof hdr, "# seed=%llu digest=%016llx\n",
                              static_cast<unsigned long long>(cfg.seed()),
                              static_cast<unsigned long long>(cfg.digest()));
                out << hdr;
                sdnbgp::write_table_bounds_csv(sweep, {2, 5}, cfg.bgp_model().mean(), out);
                std::cout << file.string() << "\n";
            } else {
                print_outputs(sdnbgp::cmd_simulate(cfg));
            }
        } else if (plots->parsed()) {
            for (const auto& f : sdnbgp::cmd_emit_plots(results_dir)) std::cout << f << "\n";
        } else if (synth->parsed()) {
            std::ofstream out(synth_out);
            if (!out) throw sdnbgp::Error("cannot open " + synth_out);
            sdnbgp::write_synthetic_asrel(out, synth_n, synth_seed);
            std::cout << synth_out << "\n";
        }
    } catch (const sdnbgp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const sdnbgp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
