#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magnls/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"magnls: spectral laboratory for the magnetic nonlinear Schrodinger equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> overrides;

    const std::vector<std::string> modes = {"evolve",           "evolve-pauli", "virial-check",
                                            "strichartz-check", "blowup-scan",  "certify-example"};
    for (const std::string& mode : modes) {
        CLI::App* sub = app.add_subcommand(mode);
        sub->add_option("--config", config_path, "JSON experiment description")->required();
        sub->add_option("--out", out_dir, "output directory for artifacts")->required();
        sub->add_option("--seed", seed, "seed for randomized experiment inputs");
        sub->add_option("--override", overrides, "key.path=value config overrides");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();
    return magnls::run(mode, config_path, out_dir, overrides, seed);
}
