#include <string>

#include <CLI11.hpp>

#include "ssqw/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for one-dimensional split-step quantum walks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    const std::pair<const char*, const char*> commands[] = {
        {"simulate", "evolve the configured initial state and record the distribution"},
        {"spectrum", "periodic truncation spectra and the spectral-mapping cross-check"},
        {"birth", "classify the flat eigenspaces and construct their eigenvectors"},
        {"sweep", "compare classification with the closed-form prediction on a grid"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "experiment description (JSON)")
            ->required();
        sub->add_option("--out", out_dir, "output directory (default: current)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // fold CLI11's usage-error codes into exit 1
    }
    return ssqw::cli::run_command(app.get_subcommands().front()->get_name(), config_path,
                                  out_dir);
}
