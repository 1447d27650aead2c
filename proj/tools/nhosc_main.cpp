// nhosc: scenario runner for the non-Hermitian time-dependent oscillator
// library. Subcommands:
//   nhosc run <scenario.json>... --out <dir> [--jobs N]
//   nhosc compare <a.csv> <b.csv>
//   nhosc pt-check <params.json> --window T [--samples N]

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "nhosc/errors.hpp"
#include "nhosc/io.hpp"
#include "nhosc/profiles.hpp"
#include "nhosc/scenario.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"non-Hermitian time-dependent oscillator scenario runner"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute scenario files");
    std::vector<std::string> scenario_paths;
    std::string out_dir = "out";
    int jobs = 1;
    run->add_option("scenarios", scenario_paths, "scenario JSON files")
        ->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "number of scenarios to run concurrently")
        ->check(CLI::PositiveNumber);

    auto* cmp = app.add_subcommand("compare", "compare two wavefunction dumps");
    std::string file_a, file_b;
    cmp->add_option("a", file_a, "dump to test")->required()->check(CLI::ExistingFile);
    cmp->add_option("b", file_b, "reference dump")->required()->check(CLI::ExistingFile);

    auto* ptc = app.add_subcommand("pt-check", "classify the PT symmetry of a parameter set");
    std::string params_path;
    double window = 3.0;
    int samples = 512;
    ptc->add_option("params", params_path, "ParameterSet JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    ptc->add_option("--window", window, "half width T of the test window [-T, T]");
    ptc->add_option("--samples", samples, "number of t > 0 samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const fs::path out_root = out_dir;
            auto run_one = [&](const std::string& path) -> int {
                fs::path dir = out_root;
                if (scenario_paths.size() > 1)
                    dir /= fs::path(path).stem();
                return nhosc::run_scenario(path, dir);
            };

            int worst = 0;
            if (jobs <= 1 || scenario_paths.size() <= 1) {
                for (const auto& p : scenario_paths)
                    worst = std::max(worst, run_one(p));
            } else {
                std::vector<std::future<int>> futures;
                std::size_t next = 0;
                while (next < scenario_paths.size() || !futures.empty()) {
                    while (int(futures.size()) < jobs &&
                           next < scenario_paths.size()) {
                        futures.push_back(std::async(std::launch::async, run_one,
                                                     scenario_paths[next++]));
                    }
                    worst = std::max(worst, futures.front().get());
                    futures.erase(futures.begin());
                }
            }
            return worst;
        }

        if (cmp->parsed()) {
            const nhosc::CompareResult r = nhosc::compare_dumps(file_a, file_b);
            std::cout << "l2_rel=" << nhosc::format_double(r.l2_rel)
                      << " linf_rel=" << nhosc::format_double(r.linf_rel)
                      << " phase_aligned_l2="
                      << nhosc::format_double(r.phase_aligned_l2) << "\n";
            return 0;
        }

        if (ptc->parsed()) {
            std::ifstream in(params_path);
            nhosc::json j;
            in >> j;
            const nhosc::ParameterSet params =
                nhosc::params_from_json(j, {-window, window});
            const nhosc::PTClass pt = nhosc::pt_classify(params, window, samples);
            std::cout << "verdict=" << nhosc::to_string(pt.verdict)
                      << " evidence=" << nhosc::format_double(pt.evidence) << "\n";
            return 0;
        }
    } catch (const nhosc::ConfigError& e) {
        std::cerr << "ConfigError: " << e.what() << "\n";
        return 2;
    } catch (const nhosc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nhosc::json::exception& e) {
        std::cerr << "ConfigError: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
