#include "cavswap/config_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "cavswap/errors.hpp"

namespace cavswap {

using nlohmann::json;

namespace {

SigmaRange range_from_json(const json& j, const SigmaRange& defaults) {
    SigmaRange r = defaults;
    r.lo = j.value("lo", r.lo);
    r.hi = j.value("hi", r.hi);
    r.count = j.value("count", r.count);
    const std::string spacing = j.value("spacing", r.log_spacing ? "log" : "linear");
    if (spacing == "log")
        r.log_spacing = true;
    else if (spacing == "linear")
        r.log_spacing = false;
    else
        throw ConfigError("range spacing must be 'log' or 'linear'");
    return r;
}

} // namespace

PulsePolicy pulse_from_json(const json& j) {
    const std::string shape = j.value("shape", "gaussian");
    const bool has_omega0 = j.contains("omega0");
    const bool has_area = j.contains("area");
    if (has_omega0 == has_area && shape != "tabulated")
        throw ConfigError("pulse: give exactly one of omega0 or area");

    PulsePolicy policy;
    if (shape == "gaussian" || shape == "symmetric_gaussian") {
        SymmetricGaussian p;
        if (!j.contains("sigma")) throw ConfigError("pulse: gaussian needs sigma");
        p.sigma = j.at("sigma").get<double>();
        p.omega0 = has_omega0 ? j.at("omega0").get<double>()
                              : j.at("area").get<double>() / p.sigma;
        p.t_center = j.value("t_c", default_pulse_center(p.sigma));
        policy = p;
    } else if (shape == "asymmetric_gaussian") {
        AsymmetricGaussian p;
        if (!j.contains("sigma1") || !j.contains("sigma2"))
            throw ConfigError("pulse: asymmetric gaussian needs sigma1 and sigma2");
        p.sigma_rise = j.at("sigma1").get<double>();
        p.sigma_fall = j.at("sigma2").get<double>();
        p.omega0 = has_omega0 ? j.at("omega0").get<double>()
                              : j.at("area").get<double>() / p.sigma_rise;
        p.t_center = j.value("t_c", default_pulse_center(std::max(p.sigma_rise, p.sigma_fall)));
        policy = p;
    } else if (shape == "tabulated") {
        TabulatedPulse p;
        if (!j.contains("samples")) throw ConfigError("pulse: tabulated needs samples");
        for (const auto& row : j.at("samples")) {
            if (!row.is_array() || row.size() < 2 || row.size() > 3)
                throw ConfigError("pulse: each sample is [t, re] or [t, re, im]");
            p.times.push_back(row.at(0).get<double>());
            const double re = row.at(1).get<double>();
            const double im = row.size() == 3 ? row.at(2).get<double>() : 0.0;
            p.amps.push_back(cplx(re, im));
        }
        policy = p;
    } else {
        throw ConfigError("pulse: unknown shape '" + shape + "'");
    }
    validate_pulse(policy);
    return policy;
}

Config config_from_json(const json& j) {
    Config cfg;
    cfg.label = j.value("label", cfg.label);
    cfg.params.g = j.value("g", cfg.params.g);
    cfg.params.kappa = j.value("kappa", cfg.params.kappa);
    cfg.params.gamma_u = j.value("gamma_u", cfg.params.gamma_u);
    cfg.params.gamma_g = j.value("gamma_g", cfg.params.gamma_g);
    cfg.params.delta_u = j.value("delta_u", cfg.params.delta_u);
    cfg.params.delta_e = j.value("delta_e", cfg.params.delta_e);
    cfg.params.validate();

    if (j.contains("pulse")) cfg.pulse = pulse_from_json(j.at("pulse"));
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    if (cfg.tolerance <= 0.0) throw ConfigError("tolerance must be positive");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.base_points = g.value("points", cfg.grid.base_points);
        cfg.grid.max_points = g.value("max_points", cfg.grid.max_points);
        cfg.grid.residual_tol = g.value("residual_tol", cfg.grid.residual_tol);
        if (cfg.grid.base_points < 2 || cfg.grid.max_points < cfg.grid.base_points)
            throw ConfigError("grid: need 2 <= points <= max_points");
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        if (s.contains("areas")) cfg.sweep.areas = s.at("areas").get<std::vector<double>>();
        if (s.contains("sigma")) cfg.sweep.sigmas = range_from_json(s.at("sigma"), cfg.sweep.sigmas);
    }
    if (j.contains("asymscan")) {
        const auto& s = j.at("asymscan");
        if (s.contains("areas")) cfg.asymscan.areas = s.at("areas").get<std::vector<double>>();
        if (s.contains("sigma1"))
            cfg.asymscan.sigma1 = range_from_json(s.at("sigma1"), cfg.asymscan.sigma1);
        if (s.contains("ratio"))
            cfg.asymscan.ratio = range_from_json(s.at("ratio"), cfg.asymscan.ratio);
        if (cfg.asymscan.ratio.hi > 1.0 + 1e-12)
            throw ConfigError("asymscan: ratio range must stay within (0, 1]");
    }
    if (j.contains("bound")) {
        const auto& s = j.at("bound");
        if (s.contains("areas")) cfg.bound.areas = s.at("areas").get<std::vector<double>>();
        if (s.contains("sigma")) cfg.bound.sigmas = range_from_json(s.at("sigma"), cfg.bound.sigmas);
        cfg.bound.p_ex_threshold = s.value("p_ex_threshold", cfg.bound.p_ex_threshold);
    }
    if (j.contains("multipartite")) {
        const auto& m = j.at("multipartite");
        cfg.multipartite.preset = m.value("preset", "");
        cfg.multipartite.n_sources = m.value("n_sources", 2);
        cfg.multipartite.scheme_file = m.value("scheme_file", "");
        cfg.multipartite.kernels_from_dynamics = m.value("kernels_from_dynamics", false);
        if (m.contains("waveforms"))
            for (const auto& [id, spec] : m.at("waveforms").items())
                cfg.multipartite.waveforms.emplace(id, pulse_from_json(spec));
        if (m.contains("source_pulses"))
            for (const auto& spec : m.at("source_pulses"))
                cfg.multipartite.source_pulses.push_back(pulse_from_json(spec));
        if (cfg.multipartite.preset.empty() == cfg.multipartite.scheme_file.empty())
            throw ConfigError("multipartite: give exactly one of preset or scheme_file");
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError("config error: " + std::string(e.what()));
    }
}

PostSelectedScheme scheme_from_json(const json& j) {
    PostSelectedScheme scheme;
    try {
        scheme.n_modes = j.at("n_modes").get<int>();
        scheme.detected_modes = j.at("detected_modes").get<std::vector<int>>();
        for (const auto& t : j.at("terms")) {
            SchemeTerm term;
            const auto amp = t.at("amplitude");
            term.amplitude = cplx(amp.at(0).get<double>(), amp.at(1).get<double>());
            term.photons = t.at("photons").get<std::vector<int>>();
            term.atoms = t.at("atoms").get<std::vector<int>>();
            for (const auto& w : t.at("waveforms"))
                term.waveforms.push_back(w.is_null() ? "" : w.get<std::string>());
            scheme.terms.push_back(std::move(term));
        }
    } catch (const json::exception& e) {
        throw ConfigError("scheme parse error: " + std::string(e.what()));
    }
    scheme.validate();
    return scheme;
}

json scheme_to_json(const PostSelectedScheme& scheme) {
    json terms = json::array();
    for (const auto& t : scheme.terms) {
        json w = json::array();
        for (const auto& id : t.waveforms) {
            if (id.empty())
                w.push_back(nullptr);
            else
                w.push_back(id);
        }
        terms.push_back({{"amplitude", {t.amplitude.real(), t.amplitude.imag()}},
                         {"photons", t.photons},
                         {"atoms", t.atoms},
                         {"waveforms", w}});
    }
    return {{"n_modes", scheme.n_modes},
            {"terms", terms},
            {"detected_modes", scheme.detected_modes},
            {"dropped_assignments", scheme.dropped_assignments}};
}

PostSelectedScheme load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scheme file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("scheme parse error: " + std::string(e.what()));
    }
    return scheme_from_json(j);
}

json params_to_json(const SystemParams& p) {
    return {{"g", p.g},           {"kappa", p.kappa},     {"gamma_u", p.gamma_u},
            {"gamma_g", p.gamma_g}, {"delta_u", p.delta_u}, {"delta_e", p.delta_e}};
}

json pulse_to_json(const PulsePolicy& policy) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SymmetricGaussian>) {
                return {{"shape", "gaussian"},
                        {"omega0", p.omega0},
                        {"sigma", p.sigma},
                        {"t_c", p.t_center}};
            } else if constexpr (std::is_same_v<T, AsymmetricGaussian>) {
                return {{"shape", "asymmetric_gaussian"},
                        {"omega0", p.omega0},
                        {"sigma1", p.sigma_rise},
                        {"sigma2", p.sigma_fall},
                        {"t_c", p.t_center}};
            } else {
                json samples = json::array();
                for (std::size_t i = 0; i < p.times.size(); ++i)
                    samples.push_back({p.times[i], p.amps[i].real(), p.amps[i].imag()});
                return {{"shape", "tabulated"}, {"samples", samples}};
            }
        },
        policy);
}

json swap_result_to_json(const SwapResult& r) {
    return {{"p_ex_1", r.p_ex_1},
            {"p_ex_2", r.p_ex_2},
            {"j_avg", {r.j_avg.real(), r.j_avg.imag()}},
            {"fidelity", r.fidelity},
            {"p_ent", r.p_ent}};
}

json bound_report_to_json(const BoundReport& r) {
    return {{"first_term", r.first_term},
            {"term_lambda_diag", r.term_lambda_diag},
            {"term_derivative", r.term_derivative},
            {"term_residual", r.term_residual},
            {"bound_value", r.bound_value},
            {"truncated_bound", r.truncated_bound}};
}

json bound_check_to_json(const BoundCheckReport& r) {
    return {{"config_label", r.config_label},
            {"cooperativity", r.cooperativity},
            {"reference_fidelity", r.reference_fidelity},
            {"p_ex_threshold", r.p_ex_threshold},
            {"has_high_emission", r.has_high_emission},
            {"measured_max_fidelity", r.measured_max_fidelity},
            {"at_sigma", r.at_sigma},
            {"at_area", r.at_area},
            {"max_p_ex", r.max_p_ex},
            {"best_fidelity_any", r.best_fidelity_any},
            {"points_total", r.points_total},
            {"points_high", r.points_high}};
}

json adiabaticity_to_json(const AdiabaticityReport& r) {
    return {{"pulse_ratio", r.pulse_ratio},       {"pulse_ok", r.pulse_ok},
            {"drive_ratio", r.drive_ratio},       {"drive_ok", r.drive_ok},
            {"coupling_ratio", r.coupling_ratio}, {"coupling_ok", r.coupling_ok}};
}

} // namespace cavswap
