#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cavswap/sweep.hpp"

namespace cavswap {

// %.17g, enough digits to round-trip a double
std::string format_full(double v);
// %g, for file names and labels
std::string format_short(double v);

// curve_<label>_S<area>.csv: provenance comment lines, then the pinned header
// sigma,p_ex,fidelity,p_pure_ratio. Failed points are skipped in the data
// rows and listed in comments.
void write_curve_csv(const std::string& path, const TradeoffCurve& curve,
                     const nlohmann::json& provenance);

void write_scan_samples_csv(const std::string& path, const ParetoScan& scan,
                            const nlohmann::json& provenance);

// frontier.csv: per-family and combined per-bin maxima
void write_frontier_csv(const std::string& path, const ParetoScan& scan);

// t plus Re/Im of the 10 independent density-matrix elements (upper triangle)
void write_trajectory_csv(const std::string& path, const DensityTrajectory& traj);

// <base>.bin: row-major complex128 little-endian grid; <base>.json: metadata
// and the lambda_1(t, t_end) column.
void dump_correlation(const std::string& base_path, const TwoTimeCorrelation& corr);

void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace cavswap
