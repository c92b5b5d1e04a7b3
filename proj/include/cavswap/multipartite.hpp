#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "cavswap/qrt.hpp"

namespace cavswap {

// One term of the pre-detection superposition: amplitude, photon occupation
// per mode, atomic excitation pattern, and the waveform id of each occupied
// photonic mode (empty string where unoccupied).
struct SchemeTerm {
    cplx amplitude;
    std::vector<int> photons;
    std::vector<int> atoms;
    std::vector<std::string> waveforms;
};

struct PostSelectedScheme {
    int n_modes = 0;
    std::vector<SchemeTerm> terms;
    std::vector<int> detected_modes;
    // assignments discarded during network expansion because two photons
    // landed in one mode (outside the single-excitation form)
    long dropped_assignments = 0;

    void validate() const;  // throws ConfigError
};

// Indices of terms whose photon occupation equals the detected mode set.
// Throws PostSelectionImpossible when no term matches.
std::vector<int> surviving_terms(const PostSelectedScheme& scheme);

// I_{mm'} = c_m* c_m' <psi_m|psi_m'> over the surviving terms; the atomic
// states are computational-basis products, so the inner product is a
// Kronecker delta on the excitation patterns.
Eigen::MatrixXcd overlap_matrix(const PostSelectedScheme& scheme);

// Normalized single-photon waveforms sampled on a shared uniform grid, with a
// cached pairwise overlap Integral phi_a(t) phi_b*(t) dt.
class WaveformTable {
public:
    explicit WaveformTable(std::vector<double> grid);

    // Stores a unit-normalized copy of the samples.
    void add(const std::string& id, const Eigen::VectorXcd& samples);
    bool has(const std::string& id) const;
    cplx overlap(const std::string& a, const std::string& b) const;
    const std::vector<double>& grid() const { return t_; }
    double dt() const { return dt_; }

private:
    std::vector<double> t_;
    double dt_ = 0.0;
    std::vector<double> w_;
    std::map<std::string, Eigen::VectorXcd> waves_;
    mutable std::map<std::pair<std::string, std::string>, cplx> cache_;
};

// First-order coherence kernels K_s(t,t') = <phi_s*(t) phi_s(t')> of
// independent sources, normalized so Integral K(t,t) dt = 1. This is the
// mixed-source substitute for rank-1 phi phi* products: a pure waveform is
// the special case added by add_pure.
class KernelTable {
public:
    explicit KernelTable(std::vector<double> grid);

    void add(const std::string& id, Eigen::MatrixXcd kernel);
    void add_pure(const std::string& id, const Eigen::VectorXcd& wave);
    bool has(const std::string& id) const;
    const Eigen::MatrixXcd& kernel(const std::string& id) const;
    const std::vector<double>& grid() const { return t_; }
    double dt() const { return dt_; }

private:
    std::vector<double> t_;
    double dt_ = 0.0;
    std::map<std::string, Eigen::MatrixXcd> kernels_;
};

// Time-averaged post-selected fidelity from pairwise waveform overlaps,
// normalized by the ideal-state norm and the heralding weight so the result
// lies in [0, 1] and the two-source case reduces to (1 + Re J)/2.
double averaged_fidelity(const PostSelectedScheme& scheme, const WaveformTable& waveforms);

// Kernel variant: sources with re-excitation enter through their two-time
// correlation kernels. Requires each pair of surviving terms to route the
// same source set (true for the bell and ghz presets); throws ConfigError
// otherwise, since unmatched routings are not determined by first-order
// coherences.
double averaged_fidelity(const PostSelectedScheme& scheme, const KernelTable& kernels);

// Kernel normalized from a computed two-time correlation grid.
Eigen::MatrixXcd normalized_kernel(const TwoTimeCorrelation& corr);

// Per-source state entering a linear network: a superposition of emitting one
// photon into a given input mode (with a waveform id and the atom excited or
// not) or emitting nothing.
struct SourceTerm {
    cplx amplitude;
    int photon_mode = -1;  // input mode index; -1 = no photon
    std::string waveform;
    int atom = 0;
};

struct SourceSpec {
    std::vector<SourceTerm> terms;
};

// Expands the product of source states through the network (a_in = U a_out,
// so a_in^+ = sum_j conj(U_ij) a_out,j^+) over occupation vectors with at
// most one photon per mode. Throws ConfigError for non-unitary networks or
// more than 8 modes; colliding assignments are counted and dropped.
PostSelectedScheme build_network_scheme(const std::vector<SourceSpec>& sources,
                                        const Eigen::MatrixXcd& network,
                                        const std::vector<int>& clicks);

// Presets. Mode layout and waveform ids ("s1", "s2", ...) are documented in
// the README.
PostSelectedScheme bell_scheme();
PostSelectedScheme ghz_scheme(int n_sources);
PostSelectedScheme w_scheme(int n_sources);

} // namespace cavswap
