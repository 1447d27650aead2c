#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "nhosc/auxiliary.hpp"
#include "nhosc/grid.hpp"
#include "nhosc/observables.hpp"
#include "nhosc/profiles.hpp"

#include <json.hpp>

namespace nhosc {

using json = nlohmann::json;

// All numeric output is printed with %.17g so identical runs produce
// byte-identical files.
std::string format_double(double v);

json profile_to_json(const TimeProfile& p);
TimeProfile profile_from_json(const json& j);

json params_to_json(const ParameterSet& p);
ParameterSet params_from_json(const json& j, TimeWindow window);

/// FNV-1a over the canonical parameter serialization; stamped into
/// wavefunction sidecars so dumps can be traced to their parameter set.
std::uint64_t parameter_hash(const ParameterSet& p);

void write_aux_csv(const std::filesystem::path& path, const AuxiliarySolution& aux);
void write_aux_header_json(const std::filesystem::path& path,
                           const AuxiliarySolution& aux);

void write_wavefunction_csv(const std::filesystem::path& path,
                            const WavefunctionGrid& psi);
void write_wavefunction_sidecar(const std::filesystem::path& path, double t, int n,
                                std::uint64_t param_hash);
WavefunctionGrid read_wavefunction_csv(const std::filesystem::path& path);

void write_energy_csv(const std::filesystem::path& path, const EnergyReport& report);
void write_energy_summary_json(const std::filesystem::path& path,
                               const EnergyReport& report);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nhosc
