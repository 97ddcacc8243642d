// Command line front end: single runs and convergence sweeps.
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "afvp/cli_runner.hpp"

namespace {

std::vector<int> parse_levels(const std::string& text)
{
    std::vector<int> levels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            levels.push_back(n);
        } catch (const std::exception&) {
            throw afvp::ConfigError("bad --levels entry '" + item + "'");
        }
    }
    return levels;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"1D1V Vlasov-Poisson with split Active Flux schemes"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_dir;
    bool histopolate = false;
    app.add_option("--output-dir", output_dir, "Override output_dir from the config");
    app.add_flag("--histopolate", histopolate, "Also write histopolated point-value snapshots");

    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "Run one simulation");
    run_cmd->add_option("--config", run_config, "Config file (key = value)")->required();

    std::string conv_config, levels_text;
    int reference = 0;
    auto* conv_cmd = app.add_subcommand("convergence", "Self-convergence sweep against a finer run");
    conv_cmd->add_option("--config", conv_config, "Config file (key = value)")->required();
    conv_cmd->add_option("--levels", levels_text, "Comma separated resolutions, e.g. 16,32,64")->required();
    conv_cmd->add_option("--reference", reference, "Reference resolution")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? afvp::exit_ok : afvp::exit_config;
    }

    try {
        if (*run_cmd) {
            afvp::SimConfig config = afvp::load_config(run_config);
            if (!output_dir.empty()) config.output_dir = output_dir;
            const auto result = afvp::run(config, {histopolate});
            std::cout << "steps=" << result.steps << " dt=" << afvp::format_double(result.dt)
                      << " t=" << afvp::format_double(result.t_final) << " output=" << config.output_dir.string()
                      << '\n';
        } else {
            afvp::SimConfig config = afvp::load_config(conv_config);
            if (!output_dir.empty()) config.output_dir = output_dir;
            const auto table = afvp::convergence(config, parse_levels(levels_text), reference);
            afvp::write_convergence(config, table);
            std::cout << "n,eps_vp,order\n";
            for (const auto& row : table)
                std::cout << row.n << ',' << afvp::format_double(row.eps) << ','
                          << (row.order ? afvp::format_double(*row.order) : "") << '\n';
        }
    } catch (const afvp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return afvp::exit_config;
    } catch (const afvp::CflError& e) {
        std::cerr << "CFL violation: " << e.what() << '\n';
        return afvp::exit_cfl;
    } catch (const afvp::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return afvp::exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return afvp::exit_ok;
}
