#include <iostream>

#include <CLI11.hpp>

#include "gwfb/cli.hpp"
#include "gwfb/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spline-like two-channel wavelet filterbanks on graphs"};
    app.require_subcommand(1);

    gwfb::cli::Options opts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--graph", opts.graph_path, "edge-list file");
        cmd->add_option("--coords", opts.coords_path, "per-vertex coordinate file");
        cmd->add_option("--config", opts.config_path, "design config JSON");
        cmd->add_option("--seed", opts.seed, "PRNG seed");
        cmd->add_option("--out", opts.out_dir, "output directory");
    };

    CLI::App* design = app.add_subcommand("design", "solve a filter design and dump responses");
    add_common(design);

    CLI::App* verify = app.add_subcommand("verify", "assemble a bank and check reconstruction");
    add_common(verify);
    verify->add_option("--trials", opts.trials, "number of random test signals");
    verify->add_flag("--legacy-k-identity", opts.legacy_identity,
                     "degree-1 legacy bank with K = I (counterexample mode)");
    verify->add_flag("!--no-zero-dc", opts.zero_dc, "disable zero-DC conjugation");

    CLI::App* decompose = app.add_subcommand("decompose", "multi-resolution decomposition");
    add_common(decompose);
    decompose->add_option("--depth", opts.depth, "number of levels");
    decompose->add_option("--signal", opts.signal_path, "input signal, one value per line");

    CLI::App* denoise = app.add_subcommand("denoise", "hard-threshold denoising");
    add_common(denoise);
    denoise->add_option("--depth", opts.depth, "number of levels");
    denoise->add_option("--signal", opts.signal_path, "noisy input signal")->required();
    denoise->add_option("--reference", opts.reference_path, "clean signal for error reporting");
    denoise->add_option("--sigma", opts.sigma, "noise standard deviation")->required();

    CLI::App* bench = app.add_subcommand("bench", "sampling-strategy ensemble study");
    add_common(bench);
    bench->add_option("--ensemble", opts.ensemble, "graphs per family");
    bench->add_option("--strategies", opts.strategies, "partition strategies to compare");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) return gwfb::cli::run_design(opts);
        if (verify->parsed()) return gwfb::cli::run_verify(opts);
        if (decompose->parsed()) return gwfb::cli::run_decompose(opts);
        if (denoise->parsed()) return gwfb::cli::run_denoise(opts);
        if (bench->parsed()) return gwfb::cli::run_bench(opts);
    } catch (const gwfb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
