#include "nhosc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nhosc/errors.hpp"

namespace nhosc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json profile_to_json(const TimeProfile& p) {
    json j;
    j["kind"] = p.kind();
    if (const auto* c = p.as_constant()) {
        j["value"] = c->value;
    } else if (const auto* l = p.as_linear()) {
        j["slope"] = l->slope;
        j["intercept"] = l->intercept;
    } else if (const auto* poly = p.as_polynomial()) {
        j["coefficients"] = poly->coefficients;
    } else if (const auto* tab = p.as_tabulated()) {
        j["times"] = tab->times;
        j["values"] = tab->values;
        j["interpolation"] = "cubic";
    }
    return j;
}

TimeProfile profile_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("profile needs a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "constant")
            return TimeProfile::constant(j.at("value").get<double>());
        if (kind == "linear")
            return TimeProfile::linear(j.at("slope").get<double>(),
                                       j.value("intercept", 0.0));
        if (kind == "polynomial")
            return TimeProfile::polynomial(
                j.at("coefficients").get<std::vector<double>>());
        if (kind == "tabulated") {
            if (j.contains("interpolation") &&
                j.at("interpolation").get<std::string>() != "cubic")
                throw ConfigError("only cubic interpolation is supported");
            return TimeProfile::tabulated(j.at("times").get<std::vector<double>>(),
                                          j.at("values").get<std::vector<double>>());
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad profile: ") + e.what());
    }
    throw ConfigError("unknown profile kind: " + kind);
}

json params_to_json(const ParameterSet& p) {
    json j;
    j["mass"] = profile_to_json(p.mass_profile());
    j["omega_sq"] = profile_to_json(p.omega_sq_profile());
    j["lambda"] = profile_to_json(p.lambda_profile());
    j["hbar"] = p.hbar();
    return j;
}

ParameterSet params_from_json(const json& j, TimeWindow window) {
    if (!j.is_object()) throw ConfigError("params must be an object");
    for (const char* key : {"mass", "omega_sq", "lambda"})
        if (!j.contains(key))
            throw ConfigError(std::string("params missing \"") + key + "\"");
    try {
        return ParameterSet(profile_from_json(j.at("mass")),
                            profile_from_json(j.at("omega_sq")),
                            profile_from_json(j.at("lambda")),
                            j.value("hbar", 1.0), window);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad params: ") + e.what());
    }
}

std::uint64_t parameter_hash(const ParameterSet& p) {
    const std::string canon = params_to_json(p).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << content;
}

void write_aux_csv(const std::filesystem::path& path, const AuxiliarySolution& aux) {
    std::ostringstream os;
    os << "t,tau,mu,s,s_dot,eta,eta_dot,Omega_sq,f_tau_integral\n";
    const auto& m = aux.reparam;
    for (std::size_t i = 0; i < m.t_mesh.size(); ++i) {
        os << format_double(m.t_mesh[i]) << ',' << format_double(m.tau_values[i])
           << ',' << format_double(m.mu_values[i]) << ','
           << format_double(aux.s_values[i]) << ','
           << format_double(aux.s_dot_values[i]) << ','
           << format_double(aux.eta_values[i]) << ','
           << format_double(aux.eta_dot_values[i]) << ','
           << format_double(aux.Omega_sq_values[i]) << ','
           << format_double(aux.f_tau_integral_values[i]) << '\n';
    }
    write_text_file(path, os.str());
}

void write_aux_header_json(const std::filesystem::path& path,
                           const AuxiliarySolution& aux) {
    json j;
    j["m0"] = aux.m0;
    j["omega0"] = aux.omega0;
    j["init"] = {{"s0", aux.init.s0},
                 {"s_dot0", aux.init.s_dot0},
                 {"eta0", aux.init.eta0},
                 {"eta_dot0", aux.init.eta_dot0}};
    j["rtol"] = aux.rtol;
    j["atol"] = aux.atol;
    j["t_start"] = aux.t_start();
    j["t_end"] = aux.t_end();
    j["mesh_size"] = aux.reparam.t_mesh.size();
    write_text_file(path, j.dump(2) + "\n");
}

void write_wavefunction_csv(const std::filesystem::path& path,
                            const WavefunctionGrid& psi) {
    std::ostringstream os;
    os << "x,re_psi,im_psi,abs2_psi\n";
    for (int i = 0; i < psi.grid.n_points; ++i) {
        const cplx v = psi.values[i];
        os << format_double(psi.grid.node(i)) << ',' << format_double(v.real())
           << ',' << format_double(v.imag()) << ','
           << format_double(std::norm(v)) << '\n';
    }
    write_text_file(path, os.str());
}

void write_wavefunction_sidecar(const std::filesystem::path& path, double t, int n,
                                std::uint64_t param_hash) {
    json j;
    j["t"] = t;
    j["n"] = n;
    j["parameter_hash"] = param_hash;
    write_text_file(path, j.dump(2) + "\n");
}

WavefunctionGrid read_wavefunction_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("empty dump: " + path.string());

    std::vector<double> xs;
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x, re, im, abs2;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &re, &im, &abs2) != 4)
            throw Error("malformed dump row in " + path.string());
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (xs.size() < 4) throw Error("dump too short: " + path.string());

    WavefunctionGrid out;
    out.grid = {xs.front(), xs.back(), int(xs.size()), 0.0};
    out.values = std::move(vals);
    return out;
}

void write_energy_csv(const std::filesystem::path& path, const EnergyReport& report) {
    std::ostringstream os;
    os << "t,n,re_E,im_E,E_closed_paper,E_closed_derived\n";
    for (const auto& s : report.samples) {
        os << format_double(s.t) << ',' << s.n << ','
           << format_double(s.E.real()) << ',' << format_double(s.E.imag()) << ','
           << format_double(s.E_closed_paper) << ','
           << format_double(s.E_closed_derived) << '\n';
    }
    write_text_file(path, os.str());
}

void write_energy_summary_json(const std::filesystem::path& path,
                               const EnergyReport& report) {
    json j;
    j["max_imag_rel"] = report.max_imag_rel;
    j["verdict"] = report.pass ? "PASS" : "FAIL";
    j["method"] = report.method == EnergyMethod::FiniteDifference
                      ? "FiniteDifference"
                      : "AnalyticDerivative";
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace nhosc
