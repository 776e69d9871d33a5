// Lattice vectors on growable integer windows, the deterministic disorder
// field, and application of the truncated fractional Laplacian and the
// random fractional Schrödinger operator.
#ifndef FRACLAP_LATTICE_HPP
#define FRACLAP_LATTICE_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "kernel.hpp"

namespace fraclap {

/// Real-valued vector supported on a contiguous window [lo, lo+size-1] of Z.
/// Sites outside the window read as zero.
struct LatticeVector {
    long long lo = 0;
    std::vector<double> values;

    LatticeVector() = default;
    LatticeVector(long long lo_, std::vector<double> v) : lo(lo_), values(std::move(v)) {}

    /// Kronecker delta at a single site.
    static LatticeVector delta(long long site) { return LatticeVector(site, {1.0}); }

    long long hi() const { return lo + static_cast<long long>(values.size()) - 1; }
    bool empty() const { return values.empty(); }

    double at(long long i) const {
        if (i < lo || i > hi()) return 0.0;
        return values[static_cast<std::size_t>(i - lo)];
    }
    double& ref(long long i) { return values[static_cast<std::size_t>(i - lo)]; }

    double norm_sq() const {
        double acc = 0.0;
        for (double x : values) acc += x * x;
        return acc;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    void scale(double a) {
        for (double& x : values) x *= a;
    }

    /// Drop exactly-zero margins.  Semantically the identity (off-window sites
    /// are zero); keeps windows tight when the kernel has exact zeros (s = 1).
    void trim_zeros() {
        std::size_t b = 0, e = values.size();
        while (b < e && values[b] == 0.0) ++b;
        while (e > b && values[e - 1] == 0.0) --e;
        if (b == e) {
            lo = 0;
            values.assign(1, 0.0);
            return;
        }
        if (b > 0 || e < values.size()) {
            std::vector<double> tight(values.begin() + static_cast<long>(b),
                                      values.begin() + static_cast<long>(e));
            lo += static_cast<long long>(b);
            values = std::move(tight);
        }
    }
};

/// <u, w> over the overlap of the two windows.
inline double dot(const LatticeVector& u, const LatticeVector& w) {
    const long long lo = std::max(u.lo, w.lo);
    const long long hi = std::min(u.hi(), w.hi());
    if (lo > hi) return 0.0;
    const double* pu = u.values.data() + (lo - u.lo);
    const double* pw = w.values.data() + (lo - w.lo);
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += pu[i] * pw[i];
    return acc;
}

/// y += a*x, growing y's window to cover x's support.
inline void add_scaled(LatticeVector& y, double a, const LatticeVector& x) {
    if (x.empty()) return;
    long long lo = std::min(y.lo, x.lo);
    long long hi = std::max(y.hi(), x.hi());
    if (lo < y.lo || hi > y.hi()) {
        std::vector<double> grown(static_cast<std::size_t>(hi - lo + 1), 0.0);
        for (std::size_t i = 0; i < y.values.size(); ++i)
            grown[static_cast<std::size_t>(y.lo - lo) + i] = y.values[i];
        y.lo = lo;
        y.values = std::move(grown);
    }
    double* py = y.values.data() + (x.lo - y.lo);
    const double* px = x.values.data();
    for (std::size_t i = 0; i < x.values.size(); ++i) py[i] += a * px[i];
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

/// Counter-based mixing of (key, counter) to a uniform double in [0,1).
inline double uniform01(std::uint64_t key, std::uint64_t counter) {
    const std::uint64_t h = mix64(key ^ mix64(counter + 0x9e3779b97f4a7c15ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Site-indexed random potential epsilon_i ~ Uniform[-c/2, c/2], a pure
/// function of (seed, site).  Indexing is by absolute lattice site, so window
/// growth never re-randomizes previously seen sites.
struct DisorderField {
    double c = 0.0;
    std::uint64_t seed = 0;

    DisorderField(double c_, std::uint64_t seed_) : c(c_), seed(seed_) {
        if (c < 0.0) throw std::domain_error("DisorderField: c must be nonnegative");
    }

    double epsilon(long long i) const {
        if (c == 0.0) return 0.0;
        return c * (detail::uniform01(seed, static_cast<std::uint64_t>(i)) - 0.5);
    }
};

/// Derive the per-realization seed from a base seed by bit mixing.
inline std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t r) {
    return detail::mix64(base_seed ^ detail::mix64(r + 0x632be59bd9b4e019ULL));
}

/// Truncated random fractional Schrödinger operator
///   (H u)_n = Sum_{m=1..M} (2u_n - u_{n-m} - u_{n+m}) K_s(m) + eps_n u_n.
/// Immutable and shareable across threads; the clip counter only tracks how
/// often the optional hard window cap discarded mass.
struct Hamiltonian {
    KernelTable kernel;
    DisorderField disorder;
    // Hard window cap [cap_lo, cap_hi] with zero boundary; unset = uncapped.
    std::optional<std::pair<long long, long long>> window_cap;
    mutable std::atomic<long long> clip_events{0};

    Hamiltonian(KernelTable k, DisorderField d,
                std::optional<std::pair<long long, long long>> cap = std::nullopt)
        : kernel(std::move(k)), disorder(d), window_cap(cap) {}
};

namespace detail {

inline void clip_to_cap(LatticeVector& out,
                        const std::optional<std::pair<long long, long long>>& cap,
                        std::atomic<long long>* counter) {
    if (!cap) return;
    const long long lo = std::max(out.lo, cap->first);
    const long long hi = std::min(out.hi(), cap->second);
    if (lo <= out.lo && hi >= out.hi()) return;
    if (lo > hi) throw std::domain_error("window cap excludes entire vector support");
    std::vector<double> clipped(out.values.begin() + static_cast<long>(lo - out.lo),
                                out.values.begin() + static_cast<long>(hi - out.lo + 1));
    out.lo = lo;
    out.values = std::move(clipped);
    if (counter) counter->fetch_add(1, std::memory_order_relaxed);
}

} // namespace detail

/// Direct sliding-sum application, O(W*M).  Correctness oracle for the
/// transform path.  Output window extends the input window by M on each side.
inline LatticeVector apply_frac_laplacian_direct(const KernelTable& k, const LatticeVector& u) {
    if (u.empty()) throw std::domain_error("apply_frac_laplacian: empty input");
    const int M = k.M;
    const long long out_lo = u.lo - M;
    const std::size_t out_n = u.values.size() + 2 * static_cast<std::size_t>(M);
    LatticeVector out(out_lo, std::vector<double>(out_n, 0.0));
    const double diag = 2.0 * k.one_sided_sum();
    for (long long n = out_lo; n <= out.hi(); ++n) {
        double acc = diag * u.at(n);
        for (int m = 1; m <= M; ++m) acc -= k.values[static_cast<std::size_t>(m - 1)] * (u.at(n - m) + u.at(n + m));
        out.ref(n) = acc;
    }
    return out;
}

/// FFT-based application: out = diag*u - K (*) u with the symmetric truncated
/// kernel, computed as one zero-padded linear convolution, O(W log W).
inline LatticeVector apply_frac_laplacian_fft(const KernelTable& k, const LatticeVector& u) {
    if (u.empty()) throw std::domain_error("apply_frac_laplacian: empty input");
    const int M = k.M;
    // Stencil over offsets -M..M: center 2*S, off-center -K(|m|).
    std::vector<double> stencil(2 * static_cast<std::size_t>(M) + 1);
    for (int m = -M; m <= M; ++m)
        stencil[static_cast<std::size_t>(m + M)] =
            (m == 0) ? 2.0 * k.one_sided_sum() : -k.at(m);
    std::vector<double> conv = detail::convolve(stencil, u.values);
    return LatticeVector(u.lo - M, std::move(conv));
}

/// Dispatching application: picks the transform path when it is cheaper.
inline LatticeVector apply_frac_laplacian(const KernelTable& k, const LatticeVector& u) {
    const double w = static_cast<double>(u.values.size());
    const double direct_cost = (w + 2.0 * k.M) * k.M;
    const double padded = static_cast<double>(detail::next_pow2(u.values.size() + 2 * static_cast<std::size_t>(k.M)));
    const double fft_cost = 6.0 * padded * std::log2(padded);
    return direct_cost <= fft_cost ? apply_frac_laplacian_direct(k, u)
                                   : apply_frac_laplacian_fft(k, u);
}

/// H u = truncated fractional Laplacian plus the pointwise random potential
/// over the input window, honoring the optional window cap.
inline LatticeVector apply_hamiltonian(const Hamiltonian& h, const LatticeVector& u) {
    LatticeVector out = apply_frac_laplacian(h.kernel, u);
    for (long long i = u.lo; i <= u.hi(); ++i) out.ref(i) += h.disorder.epsilon(i) * u.at(i);
    detail::clip_to_cap(out, h.window_cap, &h.clip_events);
    return out;
}

} // namespace fraclap

#endif
