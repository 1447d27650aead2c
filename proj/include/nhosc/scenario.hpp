#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nhosc/auxiliary.hpp"
#include "nhosc/profiles.hpp"

namespace nhosc {

enum class Task { SolveAux, Evolve, Compare, Energy, RealityScan, PTCheck, Kernel };

Task task_from_string(const std::string& name);
std::string to_string(Task t);

struct AuxConfig {
    std::optional<AuxInitialConditions> init;  // defaults derived from params
    std::optional<double> omega0;              // default omega(t0)
    std::optional<double> m0;                  // default m(t0)
    int mesh_size = 2001;
};

struct GridConfig {
    double center = 0.0;
    double half_width = 10.0;
    int n_points = 4096;
};

struct EvolveConfig {
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-4;
    double snapshot_every = 0.5;
    int initial_mode = 0;
};

struct EnergyConfig {
    int n_max = 1;
    std::vector<double> times;  // defaults to {t0, (t0+t1)/2, t1}
    double dt_fd = 2.5e-3;
};

struct RealityConfig {
    int n_max = 5;
    int t_points = 13;
};

struct PTCheckConfig {
    double window = 3.0;
    int n_samples = 512;
    std::optional<std::string> expect;
};

struct Tolerances {
    double compare_l2 = 1e-4;
    double energy_abs = 1e-6;
    double norm_drift = 1e-8;
    double mehler_rel = 1e-8;
    double inverse_l2 = 1e-6;
};

struct Scenario {
    ParameterSet params;
    AuxConfig aux;
    GridConfig grid;
    EvolveConfig evolve;
    EnergyConfig energy;
    RealityConfig reality;
    PTCheckConfig pt_check;
    Tolerances tolerances;
    std::vector<Task> tasks;
};

/// Parses and validates a scenario file; throws ConfigError on schema
/// violations.
Scenario load_scenario(const std::filesystem::path& path);

/// Executes the scenario tasks in order, writing per-task CSV/JSON artifacts
/// plus a validation.json recording the convention resolutions in effect.
/// Returns 0 on success, 1 on a tolerance breach (TaskFailure printed to
/// stderr), 2 on a configuration error.
int run_scenario(const std::filesystem::path& scenario_path,
                 const std::filesystem::path& out_dir);

struct CompareResult {
    double l2_rel = 0.0;
    double linf_rel = 0.0;
    double phase_aligned_l2 = 0.0;
};

/// L2/Linf relative distances between two wavefunction dumps sharing a grid;
/// the second file is the reference. phase_aligned_l2 removes one global
/// phase by projection before comparing.
CompareResult compare_dumps(const std::filesystem::path& a,
                            const std::filesystem::path& b);

}  // namespace nhosc
