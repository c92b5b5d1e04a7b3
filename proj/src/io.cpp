#include "cavswap/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cavswap/errors.hpp"

namespace cavswap {

using nlohmann::json;

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

void write_provenance(std::ofstream& out, const json& provenance) {
    for (const auto& [key, value] : provenance.items())
        out << "# " << key << "=" << value.dump() << "\n";
}

} // namespace

void write_curve_csv(const std::string& path, const TradeoffCurve& curve,
                     const json& provenance) {
    auto out = open_out(path);
    out << "# label=" << curve.config_label << "\n";
    out << "# pulse_area=" << format_full(curve.pulse_area) << "\n";
    out << "# orientation=" << to_string(curve.orientation) << "\n";
    write_provenance(out, provenance);
    for (const auto& p : curve.points)
        if (!p.ok)
            out << "# failed sigma=" << format_full(p.sigma1) << " error=" << p.error << "\n";
    out << "sigma,p_ex,fidelity,p_pure_ratio\n";
    for (const auto& p : curve.points) {
        if (!p.ok) continue;
        out << format_full(p.sigma1) << ',' << format_full(p.p_ex) << ','
            << format_full(p.fidelity) << ',' << format_full(p.p_pure_ratio) << "\n";
    }
}

void write_scan_samples_csv(const std::string& path, const ParetoScan& scan,
                            const json& provenance) {
    auto out = open_out(path);
    write_provenance(out, provenance);
    out << "family,area,sigma1,sigma2,p_ex,fidelity\n";
    for (const auto& s : scan.samples) {
        if (!s.ok) continue;
        out << s.family << ',' << format_full(s.area) << ',' << format_full(s.sigma1) << ','
            << format_full(s.sigma2) << ',' << format_full(s.p_ex) << ','
            << format_full(s.fidelity) << "\n";
    }
}

void write_frontier_csv(const std::string& path, const ParetoScan& scan) {
    auto out = open_out(path);
    out << "family,bin,p_ex_lo,fidelity,area,sigma1,sigma2\n";
    const std::vector<std::string> families = {"", "symmetric", "sigma1>sigma2",
                                               "sigma1<sigma2"};
    for (const auto& family : families) {
        const auto bins = pareto_frontier(scan.samples, family);
        const std::string name = family.empty() ? "all" : family;
        for (const auto& b : bins) {
            if (!b.filled) continue;
            const auto& s = scan.samples[static_cast<std::size_t>(b.sample_index)];
            out << name << ',' << b.bin << ',' << format_full(0.01 * b.bin) << ','
                << format_full(b.fidelity) << ',' << format_full(s.area) << ','
                << format_full(s.sigma1) << ',' << format_full(s.sigma2) << "\n";
        }
    }
}

void write_trajectory_csv(const std::string& path, const DensityTrajectory& traj) {
    auto out = open_out(path);
    static constexpr int rows[10] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
    static constexpr int cols[10] = {0, 1, 2, 3, 1, 2, 3, 2, 3, 3};
    out << "t";
    for (int k = 0; k < 10; ++k) {
        out << ",re_rho" << rows[k] + 1 << cols[k] + 1 << ",im_rho" << rows[k] + 1
            << cols[k] + 1;
    }
    out << "\n";
    for (int i = 0; i < traj.size(); ++i) {
        out << format_full(traj.t[static_cast<std::size_t>(i)]);
        for (int k = 0; k < 10; ++k) {
            const cplx v = traj.rho[static_cast<std::size_t>(i)](rows[k], cols[k]);
            out << ',' << format_full(v.real()) << ',' << format_full(v.imag());
        }
        out << "\n";
    }
}

void dump_correlation(const std::string& base_path, const TwoTimeCorrelation& corr) {
    static_assert(std::endian::native == std::endian::little,
                  "correlation dump assumes a little-endian host");
    const std::string bin_path = base_path + ".bin";
    {
        auto out = open_out(bin_path, std::ios::out | std::ios::binary);
        // row-major (re, im) float64 pairs; Eigen row-major complex storage
        // already has that layout
        out.write(reinterpret_cast<const char*>(corr.values.data()),
                  static_cast<std::streamsize>(sizeof(cplx) * static_cast<std::size_t>(
                                                                  corr.values.size())));
    }
    json lambda = json::array();
    for (int i = 0; i < corr.size(); ++i)
        lambda.push_back({corr.lambda_final(i).real(), corr.lambda_final(i).imag()});
    const json meta = {{"points", corr.size()},
                       {"t0", corr.t.front()},
                       {"dt", corr.dt},
                       {"layout", "row-major"},
                       {"dtype", "complex128-le"},
                       {"data_file", bin_path},
                       {"lambda_final", lambda}};
    write_json_file(base_path + ".json", meta);
}

void write_json_file(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace cavswap
