// Command-line front end: argv parsing and stream plumbing only; all
// behavior lives in the library (tik/cli.hpp) where it is unit-tested.

#include "tik/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

std::map<std::string, std::string> env_settings() {
    std::map<std::string, std::string> env;
    for (const char* key : {"TIK_FIELD", "TIK_DIM_BOUND"})
        if (const char* v = std::getenv(key)) env[key] = v;
    return env;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound quiver algebra analyzer: torsion classes, "
                 "image-cokernel-extension closed subcategories, wide "
                 "tau-tilting modules, rigid-module mutation."};
    app.require_subcommand(1);

    tik::CliOptions opts;
    std::string out_path;
    std::string path, what = "tors", check, fixture, fixtures_dir = "fixtures";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", opts.field,
                        "coefficient prime p (overrides TIK_FIELD and the file)");
        sub->add_option("--dim-bound", opts.dim_bound,
                        "per-vertex dimension bound (overrides TIK_DIM_BOUND and "
                        "the file)");
        sub->add_option("--max-mult", opts.max_mult,
                        "multiplicity bound for definition-level oracles")
            ->capture_default_str();
        sub->add_option("--jobs", opts.jobs,
                        "worker count (output is identical for any value)")
            ->capture_default_str();
        sub->add_option("--out", out_path, "write output to this file, not stdout");
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "run the full pipeline and emit a JSON report");
    analyze->add_option("path", path, "algebra JSON file")->required();
    add_common(analyze);

    CLI::App* hasse =
        app.add_subcommand("hasse", "emit one Hasse diagram as DOT or JSON");
    hasse->add_option("path", path, "algebra JSON file")->required();
    hasse->add_option("--what", what, "diagram to emit: tors | ice | rigid")
        ->capture_default_str();
    hasse->add_option("--format", opts.format, "dot | json")->capture_default_str();
    add_common(hasse);

    CLI::App* verify =
        app.add_subcommand("verify", "run the frozen fixture expectations");
    verify->add_option("--fixture", fixture, "a2 | a3 | nak | nonnak | all")
        ->required();
    verify
        ->add_option("--fixtures-dir", fixtures_dir,
                     "directory holding the fixture files")
        ->capture_default_str();
    add_common(verify);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "compare definition-level checks with theorem-based enumeration");
    oracle->add_option("path", path, "algebra JSON file")->required();
    oracle->add_option("--check", check, "ice | tors")->required();
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? tik::exit_ok : tik::exit_input_error;
    }

    try {
        opts = tik::apply_env(opts, env_settings());
    } catch (const std::exception& e) {
        std::cerr << "tik: input error: " << e.what() << "\n";
        return tik::exit_input_error;
    }

    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        out_file.open(out_path);
        if (!out_file) {
            std::cerr << "tik: input error: cannot open --out file \"" << out_path
                      << "\"\n";
            return tik::exit_input_error;
        }
        out = &out_file;
    }

    if (analyze->parsed()) return tik::cmd_analyze(path, opts, *out, std::cerr);
    if (hasse->parsed()) return tik::cmd_hasse(path, what, opts, *out, std::cerr);
    if (verify->parsed())
        return tik::cmd_verify(fixture, fixtures_dir, opts, *out, std::cerr);
    return tik::cmd_oracle(path, check, opts, *out, std::cerr);
}
