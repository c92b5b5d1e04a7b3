#include "cavswap/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cavswap/errors.hpp"
#include "cavswap/quadrature.hpp"

namespace cavswap {

void PostSelectedScheme::validate() const {
    if (n_modes <= 0) throw ConfigError("scheme: n_modes must be positive");
    if (terms.empty()) throw ConfigError("scheme: no terms");
    const std::size_t n_atoms = terms.front().atoms.size();
    double total = 0.0;
    for (const auto& term : terms) {
        if (static_cast<int>(term.photons.size()) != n_modes)
            throw ConfigError("scheme: photons length differs from n_modes");
        if (term.atoms.size() != n_atoms)
            throw ConfigError("scheme: atoms length differs between terms");
        if (term.waveforms.size() != term.photons.size())
            throw ConfigError("scheme: waveforms length differs from n_modes");
        for (std::size_t n = 0; n < term.photons.size(); ++n) {
            if (term.photons[n] != 0 && term.photons[n] != 1)
                throw ConfigError("scheme: photon occupations must be 0 or 1");
            if ((term.photons[n] == 1) != !term.waveforms[n].empty())
                throw ConfigError("scheme: waveform ids must be present exactly "
                                  "where a photon is");
        }
        for (int a : term.atoms)
            if (a != 0 && a != 1) throw ConfigError("scheme: atom excitations must be 0 or 1");
        total += std::norm(term.amplitude);
    }
    if (total > 1.0 + 1e-8)
        throw ConfigError("scheme: amplitudes exceed a normalized state");
    std::set<int> seen;
    for (int m : detected_modes) {
        if (m < 0 || m >= n_modes) throw ConfigError("scheme: detected mode out of range");
        if (!seen.insert(m).second) throw ConfigError("scheme: duplicate detected mode");
    }
}

std::vector<int> surviving_terms(const PostSelectedScheme& scheme) {
    std::vector<int> detected = scheme.detected_modes;
    std::sort(detected.begin(), detected.end());
    std::vector<int> out;
    for (int m = 0; m < static_cast<int>(scheme.terms.size()); ++m) {
        std::vector<int> occupied;
        const auto& ph = scheme.terms[static_cast<std::size_t>(m)].photons;
        for (int n = 0; n < scheme.n_modes; ++n)
            if (ph[static_cast<std::size_t>(n)] == 1) occupied.push_back(n);
        if (occupied == detected) out.push_back(m);
    }
    if (out.empty())
        throw PostSelectionImpossible("no superposition term matches the click pattern");
    return out;
}

Eigen::MatrixXcd overlap_matrix(const PostSelectedScheme& scheme) {
    const auto idx = surviving_terms(scheme);
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXcd mat(k, k);
    for (int a = 0; a < k; ++a) {
        const auto& ta = scheme.terms[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        for (int b = 0; b < k; ++b) {
            const auto& tb =
                scheme.terms[static_cast<std::size_t>(idx[static_cast<std::size_t>(b)])];
            const bool same = ta.atoms == tb.atoms;
            mat(a, b) = same ? std::conj(ta.amplitude) * tb.amplitude : cplx(0.0);
        }
    }
    return mat;
}

// ---------------------------------------------------------------------------
// waveform / kernel tables

WaveformTable::WaveformTable(std::vector<double> grid) : t_(std::move(grid)) {
    if (t_.size() < 2) throw ConfigError("waveform table: grid needs at least two points");
    dt_ = t_[1] - t_[0];
    w_ = trapezoid_weights(static_cast<int>(t_.size()), dt_);
}

void WaveformTable::add(const std::string& id, const Eigen::VectorXcd& samples) {
    if (samples.size() != static_cast<long>(t_.size()))
        throw ConfigError("waveform table: sample count differs from the grid");
    double norm2 = 0.0;
    for (long i = 0; i < samples.size(); ++i)
        norm2 += w_[static_cast<std::size_t>(i)] * std::norm(samples(i));
    if (norm2 <= 0.0) throw ConfigError("waveform table: zero-norm waveform " + id);
    waves_[id] = samples / std::sqrt(norm2);
    cache_.clear();
}

bool WaveformTable::has(const std::string& id) const { return waves_.count(id) > 0; }

cplx WaveformTable::overlap(const std::string& a, const std::string& b) const {
    const auto key = std::make_pair(a, b);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto ia = waves_.find(a);
    const auto ib = waves_.find(b);
    if (ia == waves_.end() || ib == waves_.end())
        throw ConfigError("waveform table: unknown waveform id");
    cplx acc = 0.0;
    for (long i = 0; i < ia->second.size(); ++i)
        acc += w_[static_cast<std::size_t>(i)] * ia->second(i) * std::conj(ib->second(i));
    cache_[key] = acc;
    cache_[std::make_pair(b, a)] = std::conj(acc);
    return acc;
}

KernelTable::KernelTable(std::vector<double> grid) : t_(std::move(grid)) {
    if (t_.size() < 2) throw ConfigError("kernel table: grid needs at least two points");
    dt_ = t_[1] - t_[0];
}

void KernelTable::add(const std::string& id, Eigen::MatrixXcd kernel) {
    const long n = static_cast<long>(t_.size());
    if (kernel.rows() != n || kernel.cols() != n)
        throw ConfigError("kernel table: kernel size differs from the grid");
    const auto w = trapezoid_weights(static_cast<int>(n), dt_);
    double tr = 0.0;
    for (long i = 0; i < n; ++i) tr += w[static_cast<std::size_t>(i)] * kernel(i, i).real();
    if (tr <= 0.0) throw ConfigError("kernel table: kernel has non-positive trace " + id);
    kernels_[id] = kernel / tr;
}

void KernelTable::add_pure(const std::string& id, const Eigen::VectorXcd& wave) {
    // K(t,t') = phi*(t) phi(t')
    add(id, wave.conjugate() * wave.transpose());
}

bool KernelTable::has(const std::string& id) const { return kernels_.count(id) > 0; }

const Eigen::MatrixXcd& KernelTable::kernel(const std::string& id) const {
    const auto it = kernels_.find(id);
    if (it == kernels_.end()) throw ConfigError("kernel table: unknown kernel id " + id);
    return it->second;
}

Eigen::MatrixXcd normalized_kernel(const TwoTimeCorrelation& corr) {
    const int n = corr.size();
    const auto w = trapezoid_weights(n, corr.dt);
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += w[static_cast<std::size_t>(i)] * corr.values(i, i).real();
    if (tr <= 0.0) throw EmissionZero("correlation kernel has vanishing emission weight");
    return corr.values / tr;
}

// ---------------------------------------------------------------------------
// fidelity

namespace {

struct Survivors {
    std::vector<int> idx;
    Eigen::MatrixXcd overlap;  // I matrix
    Eigen::VectorXcd column_sums;
    double ideal_norm = 0.0;  // sum of I = |ideal post-selected state|^2
};

Survivors survivor_data(const PostSelectedScheme& scheme) {
    Survivors s;
    s.idx = surviving_terms(scheme);
    s.overlap = overlap_matrix(scheme);
    s.column_sums = s.overlap.colwise().sum();
    s.ideal_norm = s.column_sums.sum().real();
    if (s.ideal_norm <= 1e-14)
        throw PostSelectionImpossible("ideal post-selected state has vanishing norm");
    return s;
}

// F = sum conj(A_x) A_y V(x,y) / (ideal_norm * sum I_xy V(x,y)) where V(x,y)
// is the (generalized) waveform overlap product of surviving terms x and y.
template <typename PairOverlap>
double fidelity_from_pairs(const Survivors& s, PairOverlap&& pair_overlap) {
    const int k = static_cast<int>(s.idx.size());
    Eigen::MatrixXcd v(k, k);
    for (int x = 0; x < k; ++x) {
        v(x, x) = pair_overlap(x, x);
        for (int y = x + 1; y < k; ++y) {
            v(x, y) = pair_overlap(x, y);
            v(y, x) = std::conj(v(x, y));
        }
    }
    cplx numerator = 0.0;
    cplx herald = 0.0;
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y) {
            numerator += std::conj(s.column_sums(x)) * s.column_sums(y) * v(x, y);
            herald += s.overlap(x, y) * v(x, y);
        }
    if (herald.real() <= 1e-14)
        throw PostSelectionImpossible("click pattern has vanishing probability");
    return numerator.real() / (s.ideal_norm * herald.real());
}

} // namespace

double averaged_fidelity(const PostSelectedScheme& scheme, const WaveformTable& waveforms) {
    scheme.validate();
    const Survivors s = survivor_data(scheme);
    return fidelity_from_pairs(s, [&](int x, int y) -> cplx {
        const auto& tx = scheme.terms[static_cast<std::size_t>(s.idx[static_cast<std::size_t>(x)])];
        const auto& ty = scheme.terms[static_cast<std::size_t>(s.idx[static_cast<std::size_t>(y)])];
        cplx prod = 1.0;
        for (int n : scheme.detected_modes)
            prod *= waveforms.overlap(tx.waveforms[static_cast<std::size_t>(n)],
                                      ty.waveforms[static_cast<std::size_t>(n)]);
        return prod;
    });
}

namespace {

// V(x,y) for kernel-valued sources. Each detected mode n carries one plain
// occurrence (term x's source) and one conjugated occurrence (term y's
// source); contracting the detection-time integrals chains the kernels into
// cycles: V = prod over cycles of Tr(D K_{b(n0)} D K_{b(n1)} ...) with
// D = diag(trapezoid weights) and n_{k+1} the mode term x feeds from the
// source b(n_k).
cplx kernel_pair_overlap(const PostSelectedScheme& scheme, const KernelTable& kernels,
                         const SchemeTerm& tx, const SchemeTerm& ty) {
    const auto& detected = scheme.detected_modes;
    std::map<std::string, int> plain_mode;  // source id -> mode it occupies in term x
    for (int n : detected) {
        const auto& id = tx.waveforms[static_cast<std::size_t>(n)];
        if (!plain_mode.emplace(id, n).second)
            throw ConfigError("kernel fidelity: waveform id " + id +
                              " routed twice in one term; kernel sources must be distinct");
    }
    for (int n : detected) {
        const auto& id = ty.waveforms[static_cast<std::size_t>(n)];
        if (plain_mode.find(id) == plain_mode.end())
            throw ConfigError("kernel fidelity: term pair routes different source sets; "
                              "not determined by first-order coherences");
    }

    const int n_grid = static_cast<int>(kernels.grid().size());
    const auto w = trapezoid_weights(n_grid, kernels.dt());
    Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), n_grid);

    cplx total = 1.0;
    std::set<int> visited;
    for (int n0 : detected) {
        if (visited.count(n0)) continue;
        // collect the cycle starting at n0
        std::vector<std::string> chain;
        int cur = n0;
        do {
            visited.insert(cur);
            const auto& src = ty.waveforms[static_cast<std::size_t>(cur)];
            chain.push_back(src);
            cur = plain_mode.at(src);
        } while (cur != n0);

        if (chain.size() == 1) {
            // self-loop: normalized diagonal integrates to one
            const auto& k = kernels.kernel(chain.front());
            cplx acc = 0.0;
            for (int i = 0; i < n_grid; ++i) acc += wv(i) * k(i, i);
            total *= acc;
        } else if (chain.size() == 2) {
            const auto& k1 = kernels.kernel(chain[0]);
            const auto& k2 = kernels.kernel(chain[1]);
            cplx acc = 0.0;
            for (int i = 0; i < n_grid; ++i) {
                cplx row = 0.0;
                for (int j = 0; j < n_grid; ++j) row += wv(j) * k1(i, j) * k2(j, i);
                acc += wv(i) * row;
            }
            total *= acc;
        } else {
            Eigen::MatrixXcd m = wv.asDiagonal() * kernels.kernel(chain[0]);
            for (std::size_t h = 1; h < chain.size(); ++h)
                m = m * (wv.asDiagonal() * kernels.kernel(chain[h])).eval();
            total *= m.trace();
        }
    }
    return total;
}

} // namespace

double averaged_fidelity(const PostSelectedScheme& scheme, const KernelTable& kernels) {
    scheme.validate();
    const Survivors s = survivor_data(scheme);
    return fidelity_from_pairs(s, [&](int x, int y) -> cplx {
        const auto& tx = scheme.terms[static_cast<std::size_t>(s.idx[static_cast<std::size_t>(x)])];
        const auto& ty = scheme.terms[static_cast<std::size_t>(s.idx[static_cast<std::size_t>(y)])];
        return kernel_pair_overlap(scheme, kernels, tx, ty);
    });
}

// ---------------------------------------------------------------------------
// network expansion

namespace {

struct PhotonLine {
    int input_mode;
    std::string waveform;
};

struct ExpansionKey {
    std::vector<int> photons;
    std::vector<int> atoms;
    std::vector<std::string> waveforms;
    bool operator<(const ExpansionKey& o) const {
        if (photons != o.photons) return photons < o.photons;
        if (atoms != o.atoms) return atoms < o.atoms;
        return waveforms < o.waveforms;
    }
};

void assign_photons(const std::vector<PhotonLine>& photons, std::size_t k,
                    const Eigen::MatrixXcd& network, cplx amp, std::vector<int>& occupancy,
                    std::vector<std::string>& routing, const std::vector<long>& tail_fanout,
                    std::map<ExpansionKey, cplx>& accum, const std::vector<int>& atoms,
                    long& dropped) {
    const int n_modes = static_cast<int>(network.cols());
    if (k == photons.size()) {
        ExpansionKey key{occupancy, atoms, routing};
        accum[key] += amp;
        return;
    }
    const auto& line = photons[k];
    for (int j = 0; j < n_modes; ++j) {
        const cplx coef = std::conj(network(line.input_mode, j));
        if (std::abs(coef) < 1e-14) continue;
        if (occupancy[static_cast<std::size_t>(j)] == 1) {
            dropped += tail_fanout[k + 1];
            continue;
        }
        occupancy[static_cast<std::size_t>(j)] = 1;
        routing[static_cast<std::size_t>(j)] = line.waveform;
        assign_photons(photons, k + 1, network, amp * coef, occupancy, routing, tail_fanout,
                       accum, atoms, dropped);
        occupancy[static_cast<std::size_t>(j)] = 0;
        routing[static_cast<std::size_t>(j)].clear();
    }
}

} // namespace

PostSelectedScheme build_network_scheme(const std::vector<SourceSpec>& sources,
                                        const Eigen::MatrixXcd& network,
                                        const std::vector<int>& clicks) {
    const int n_modes = static_cast<int>(network.rows());
    if (network.cols() != network.rows()) throw ConfigError("network must be square");
    if (n_modes > 8) throw ConfigError("network expansion capped at 8 modes");
    if (sources.empty() || sources.size() > 8)
        throw ConfigError("network expansion supports 1 to 8 sources");
    for (const auto& src : sources)
        if (src.terms.empty()) throw ConfigError("every source needs at least one term");
    const Eigen::MatrixXcd gram = network.adjoint() * network;
    if ((gram - Eigen::MatrixXcd::Identity(n_modes, n_modes)).cwiseAbs().maxCoeff() > 1e-10)
        throw ConfigError("network is not unitary");

    const int n_sources = static_cast<int>(sources.size());
    std::map<ExpansionKey, cplx> accum;
    long dropped = 0;

    // cartesian product over the per-source term choices
    std::vector<std::size_t> choice(static_cast<std::size_t>(n_sources), 0);
    while (true) {
        cplx amp = 1.0;
        std::vector<PhotonLine> photons;
        std::vector<int> atoms(static_cast<std::size_t>(n_sources), 0);
        for (int s = 0; s < n_sources; ++s) {
            const auto& term =
                sources[static_cast<std::size_t>(s)].terms[choice[static_cast<std::size_t>(s)]];
            amp *= term.amplitude;
            atoms[static_cast<std::size_t>(s)] = term.atom;
            if (term.photon_mode >= 0) {
                if (term.photon_mode >= n_modes)
                    throw ConfigError("source photon mode out of range");
                if (term.waveform.empty())
                    throw ConfigError("source photon term needs a waveform id");
                photons.push_back({term.photon_mode, term.waveform});
            }
        }

        // number of complete assignments below each recursion level, for
        // exact accounting of collision-dropped assignments
        std::vector<long> tail_fanout(photons.size() + 1, 1);
        for (std::size_t k = photons.size(); k-- > 0;) {
            long nnz = 0;
            for (int j = 0; j < n_modes; ++j)
                if (std::abs(network(photons[k].input_mode, j)) >= 1e-14) ++nnz;
            tail_fanout[k] = nnz * tail_fanout[k + 1];
        }

        std::vector<int> occupancy(static_cast<std::size_t>(n_modes), 0);
        std::vector<std::string> routing(static_cast<std::size_t>(n_modes));
        assign_photons(photons, 0, network, amp, occupancy, routing, tail_fanout, accum, atoms,
                       dropped);

        // advance the odometer
        int s = 0;
        for (; s < n_sources; ++s) {
            if (++choice[static_cast<std::size_t>(s)] <
                sources[static_cast<std::size_t>(s)].terms.size())
                break;
            choice[static_cast<std::size_t>(s)] = 0;
        }
        if (s == n_sources) break;
    }

    PostSelectedScheme scheme;
    scheme.n_modes = n_modes;
    scheme.detected_modes = clicks;
    scheme.dropped_assignments = dropped;
    for (const auto& [key, amp] : accum) {
        if (std::abs(amp) < 1e-14) continue;
        scheme.terms.push_back({amp, key.photons, key.atoms, key.waveforms});
    }
    scheme.validate();
    return scheme;
}

// ---------------------------------------------------------------------------
// presets

namespace {

// source per the atom-photon entangled pair: (|H>|up> - |V>|down>)/sqrt(2)
SourceSpec polarized_source(int h_mode, int v_mode, const std::string& waveform) {
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    SourceSpec s;
    s.terms.push_back({inv_sqrt2, h_mode, waveform, 1});
    s.terms.push_back({-inv_sqrt2, v_mode, waveform, 0});
    return s;
}

} // namespace

PostSelectedScheme bell_scheme() {
    // combined modes: (port, pol) -> index 2*port + pol with pol H=0, V=1;
    // inputs are ports 1,2 and outputs ports 3,4 under the same indexing.
    const double s = std::numbers::sqrt2 / 2.0;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    for (int pol = 0; pol < 2; ++pol) {
        u(0 + pol, 0 + pol) = s;   // a_1 =  (a_3 - a_4)/sqrt(2)
        u(0 + pol, 2 + pol) = -s;
        u(2 + pol, 0 + pol) = s;   // a_2 =  (a_3 + a_4)/sqrt(2)
        u(2 + pol, 2 + pol) = s;
    }
    const std::vector<SourceSpec> sources = {polarized_source(0, 1, "s1"),
                                             polarized_source(2, 3, "s2")};
    // coincidence H and V at port 3
    return build_network_scheme(sources, u, {0, 1});
}

PostSelectedScheme ghz_scheme(int n_sources) {
    if (n_sources < 2 || n_sources > 4)
        throw ConfigError("ghz preset supports 2 to 4 sources (8-mode cap)");
    const int n = n_sources;
    const int m = 2 * n;
    const double s = std::numbers::sqrt2 / 2.0;

    // chain of polarizing splitters: V components swap between neighbors
    Eigen::MatrixXcd chain = Eigen::MatrixXcd::Identity(m, m);
    for (int l = 0; l + 1 < n; ++l) {
        Eigen::MatrixXcd swap = Eigen::MatrixXcd::Identity(m, m);
        const int a = 2 * l + 1, b = 2 * (l + 1) + 1;
        swap(a, a) = 0.0;
        swap(b, b) = 0.0;
        swap(a, b) = 1.0;
        swap(b, a) = 1.0;
        chain = chain * swap;
    }
    // diagonal-basis analyzers per port: outputs (port,+)=2p, (port,-)=2p+1
    Eigen::MatrixXcd analyzer = Eigen::MatrixXcd::Zero(m, m);
    for (int p = 0; p < n; ++p) {
        analyzer(2 * p, 2 * p) = s;
        analyzer(2 * p, 2 * p + 1) = s;
        analyzer(2 * p + 1, 2 * p) = s;
        analyzer(2 * p + 1, 2 * p + 1) = -s;
    }
    const Eigen::MatrixXcd u = chain * analyzer;

    std::vector<SourceSpec> sources;
    std::vector<int> clicks;
    for (int p = 0; p < n; ++p) {
        sources.push_back(polarized_source(2 * p, 2 * p + 1, "s" + std::to_string(p + 1)));
        clicks.push_back(2 * p);  // one click in every + port
    }
    return build_network_scheme(sources, u, clicks);
}

PostSelectedScheme w_scheme(int n_sources) {
    if (n_sources < 2 || n_sources > 8)
        throw ConfigError("w preset supports 2 to 8 sources (8-mode cap)");
    const int n = n_sources;
    Eigen::MatrixXcd u(n, n);
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double phase = -2.0 * std::numbers::pi * j * k / n;
            u(j, k) = inv * cplx(std::cos(phase), std::sin(phase));
        }

    // single-rail sources: vacuum + one photon tagged to the excited atom
    const double a = std::numbers::sqrt2 / 2.0;
    std::vector<SourceSpec> sources;
    for (int s = 0; s < n; ++s) {
        SourceSpec spec;
        spec.terms.push_back({a, -1, "", 0});
        spec.terms.push_back({a, s, "s" + std::to_string(s + 1), 1});
        sources.push_back(spec);
    }
    return build_network_scheme(sources, u, {0});
}

} // namespace cavswap
