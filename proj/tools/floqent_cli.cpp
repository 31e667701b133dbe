// floqent command-line front end: parameter-plane sweeps, spectrum dumps,
// resonance prediction, single-qubit quasi-energies, and backend validation.

#include "floqent/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string format;
    int workers = 0;
    bool resume = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file (JSON)")->required();
    cmd->add_option("--out", flags.out_dir, "output directory (overrides the config)");
    cmd->add_option("--workers", flags.workers, "worker threads (overrides the config)");
    cmd->add_option("--format", flags.format, "csv|json (overrides the config)");
    cmd->add_flag("--resume", flags.resume, "reuse rows already present in results.csv");
    cmd->add_option("--seed", flags.seed, "reserved")->each([&](const std::string&) { flags.seed_set = true; });
}

int run_task(const std::string& task, const CommonFlags& flags) {
    floqent::SweepConfig config;
    try {
        config = floqent::SweepConfig::load(flags.config_path);
        config.task = task;
        if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
        if (flags.workers > 0) config.workers = flags.workers;
        if (!flags.format.empty()) config.format = flags.format;
        if (flags.seed_set) config.seed = flags.seed;
        config.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        const int code = floqent::run_to_disk(config, flags.resume);
        if (code == 3) std::cerr << "numerical failure threshold exceeded; see results.csv status column\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet quasi-energy spectra and entanglement resonances of driven qubits"};
    app.require_subcommand(1);

    const std::vector<std::string> tasks = {"sweep", "spectrum", "predict", "single-qubit", "validate"};
    const std::vector<std::string> descriptions = {
        "parameter-plane sweep: quasi-energies and period-averaged entanglement",
        "quasi-energy spectrum over the grid",
        "resonance corridors from the single-qubit quasi-energy",
        "single-qubit quasi-energy: numeric, RWA, Bessel, and closed forms",
        "Fourier vs monodromy backend agreement",
    };

    std::vector<CommonFlags> flags(tasks.size());
    std::vector<CLI::App*> cmds;
    for (size_t i = 0; i < tasks.size(); ++i) {
        CLI::App* cmd = app.add_subcommand(tasks[i], descriptions[i]);
        add_common(cmd, flags[i]);
        cmds.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    for (size_t i = 0; i < tasks.size(); ++i)
        if (cmds[i]->parsed()) return run_task(tasks[i], flags[i]);
    return 2;
}
