#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using namespace lightcone::cli;

int main(int argc, char** argv) {
    CLI::App app{"lightcone: cyclic Guichard nets and Bonnet-type reports"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::filesystem::path> synth_out;
    auto* synth = app.add_subcommand("synth", "synthesize a net from a key = value config");
    synth->add_option("--config", config, "config file")->required();
    synth->add_option("--out", synth_out, "output directory");

    VerifyOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "run the residual suite on an exported net");
    verify->add_option("--in", verify_opts.in, "directory with net.csv and grid.json")->required();
    verify->add_option("--k", verify_opts.k, "ambient curvature or 'auto'");
    verify->add_option("--tol", verify_opts.tol, "tolerance for the Guichard relation");

    BonnetOptions bonnet_opts;
    auto* bonnet = app.add_subcommand("bonnet", "special surfaces of a linear Weingarten family");
    bonnet->add_option("--k", bonnet_opts.k)->required();
    bonnet->add_option("--a1", bonnet_opts.a1)->required();
    bonnet->add_option("--a2", bonnet_opts.a2)->required();
    bonnet->add_option("--eps", bonnet_opts.eps, "1 or i")->required();
    bonnet->add_flag("--json", bonnet_opts.json);

    std::filesystem::path project_in;
    double to_k = 0.0;
    std::optional<std::filesystem::path> project_out;
    auto* project = app.add_subcommand("project", "re-export slice meshes in another space form model");
    project->add_option("--in", project_in)->required();
    project->add_option("--to-k", to_k)->required();
    project->add_option("--out", project_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    if (*synth) return cmd_synth(config, synth_out, std::cout, std::cerr);
    if (*verify) return cmd_verify(verify_opts, std::cout, std::cerr);
    if (*bonnet) return cmd_bonnet(bonnet_opts, std::cout, std::cerr);
    return cmd_project(project_in, to_k, project_out, std::cout, std::cerr);
}
