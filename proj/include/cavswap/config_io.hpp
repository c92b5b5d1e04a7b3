#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cavswap/multipartite.hpp"
#include "cavswap/sweep.hpp"

namespace cavswap {

struct SweepSettings {
    std::vector<double> areas = {0.3, 0.5, 0.7, 0.9, 1.0, 1.5, 2.0, 3.0, 5.0};
    SigmaRange sigmas;
};

struct AsymScanSettings {
    std::vector<double> areas = {0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0};
    SigmaRange sigma1{0.01, 20.0, 20, true};
    SigmaRange ratio{0.01, 1.0, 20, true};
};

struct BoundSettings {
    std::vector<double> areas = {1.5, 2.0, 3.0, 5.0, 7.0};
    SigmaRange sigmas{0.5, 50.0, 40, true};
    double p_ex_threshold = 0.97;
};

struct MultipartiteSettings {
    std::string preset;  // "bell" | "ghz" | "w"; empty when a scheme file is given
    int n_sources = 2;
    std::string scheme_file;
    // pure waveform envelopes by id, sampled and normalized on a shared grid
    std::map<std::string, PulsePolicy> waveforms;
    // instead of pure envelopes, drive per-source dynamics and use the
    // resulting correlation kernels ("s1", "s2", ... ids)
    bool kernels_from_dynamics = false;
    std::vector<PulsePolicy> source_pulses;
};

struct Config {
    std::string label = "run";
    SystemParams params;
    std::optional<PulsePolicy> pulse;
    SweepSettings sweep;
    AsymScanSettings asymscan;
    BoundSettings bound;
    GridPolicy grid;
    double tolerance = 1e-9;
    MultipartiteSettings multipartite;
};

Config load_config(const std::string& path);
Config config_from_json(const nlohmann::json& j);
PulsePolicy pulse_from_json(const nlohmann::json& j);

PostSelectedScheme scheme_from_json(const nlohmann::json& j);
nlohmann::json scheme_to_json(const PostSelectedScheme& scheme);
PostSelectedScheme load_scheme(const std::string& path);

nlohmann::json params_to_json(const SystemParams& p);
nlohmann::json pulse_to_json(const PulsePolicy& p);
nlohmann::json swap_result_to_json(const SwapResult& r);
nlohmann::json bound_report_to_json(const BoundReport& r);
nlohmann::json bound_check_to_json(const BoundCheckReport& r);
nlohmann::json adiabaticity_to_json(const AdiabaticityReport& r);

} // namespace cavswap
