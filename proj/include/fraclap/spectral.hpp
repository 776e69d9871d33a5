// Krylov subspace generation under H_{s,eps}, forward (modified) Gram-Schmidt,
// the spectral distance trace D^n, and the orthogonality diagnostic Q.
#ifndef FRACLAP_SPECTRAL_HPP
#define FRACLAP_SPECTRAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lattice.hpp"

namespace fraclap {

/// Test vector of Eq-style alternating deltas on sites 1..M and -1..-M,
///   v = Sum_{i=0..M-1} [(-1)^i d_{1+i} + (-1)^{i+1} d_{-1-i}],
/// normalized to unit l2 norm (raw norm is sqrt(2M)).  Vanishes at site 0.
inline LatticeVector make_test_vector(int M) {
    if (M < 1) throw std::domain_error("make_test_vector: M must be >= 1");
    LatticeVector v(-M, std::vector<double>(2 * static_cast<std::size_t>(M) + 1, 0.0));
    const double a = 1.0 / std::sqrt(2.0 * M);
    for (int i = 0; i < M; ++i) {
        const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
        v.ref(1 + i) = sgn * a;
        v.ref(-1 - i) = -sgn * a;
    }
    return v;
}

/// Orthogonalized Krylov vectors m_0, m_1, ... with their squared norms.
/// Vectors are stored unit-normalized (norms_sq all 1).  The raw forward
/// Gram-Schmidt norms decay geometrically whenever the operator's spectral
/// width is below 4, which would underflow long runs; every quantity built
/// from the basis (D^n, Q) is invariant under this rescaling.
struct KrylovBasis {
    std::vector<LatticeVector> vectors;
    std::vector<double> norms_sq;
    double first_step_norm_sq = 0.0; // pre-normalization ||.||^2 of step 1
    bool breakdown = false;

    explicit KrylovBasis(LatticeVector phi) {
        const double nrm = phi.norm();
        if (phi.empty() || nrm == 0.0)
            throw std::domain_error("KrylovBasis: seed vector must be nonzero");
        phi.scale(1.0 / nrm);
        norms_sq.push_back(1.0);
        vectors.push_back(std::move(phi));
    }
    std::size_t size() const { return vectors.size(); }
};

struct KrylovOptions {
    bool reorthogonalize = false;       // one extra full pass when set
    double breakdown_rel_tol = 1e-24;   // vs first_step_norm_sq
};

/// One forward Gram-Schmidt step: apply H to the last orthogonalized vector
/// and subtract projections onto all existing vectors, oldest first.
/// Sets the breakdown flag (without appending) if the new vector's norm^2
/// collapses relative to the first application's.
inline void krylov_step(const Hamiltonian& h, KrylovBasis& basis, const KrylovOptions& opt = {}) {
    if (basis.breakdown) throw std::logic_error("krylov_step: basis already broke down");
    LatticeVector w = apply_hamiltonian(h, basis.vectors.back());
    w.trim_zeros();
    for (std::size_t k = 0; k < basis.vectors.size(); ++k)
        add_scaled(w, -dot(w, basis.vectors[k]) / basis.norms_sq[k], basis.vectors[k]);
    if (opt.reorthogonalize)
        for (std::size_t k = 0; k < basis.vectors.size(); ++k)
            add_scaled(w, -dot(w, basis.vectors[k]) / basis.norms_sq[k], basis.vectors[k]);
    w.trim_zeros();
    const double ns = w.norm_sq();
    if (basis.first_step_norm_sq == 0.0) basis.first_step_norm_sq = ns;
    if (ns < opt.breakdown_rel_tol * basis.first_step_norm_sq) {
        basis.breakdown = true;
        return;
    }
    w.scale(1.0 / std::sqrt(ns));
    basis.norms_sq.push_back(1.0);
    basis.vectors.push_back(std::move(w));
}

/// Spectral distance sequence D^0..D^n for one (s, c, seed) triple.
struct DistanceTrace {
    double s = 0.0;
    double c = 0.0;
    std::uint64_t seed = 0;
    int M = 0;
    std::vector<double> values;
    int clamped_count = 0; // negative radicand clamps
    bool breakdown = false;
};

/// D^n = sqrt(max(0, 1 - Sum_{k<=n} <v,m_k>^2 / <m_k,m_k>)), maintained
/// incrementally while the Krylov basis grows.  A breakdown truncates the
/// trace and is flagged.  Requires ||v|| = 1.
inline DistanceTrace distance_trace(const Hamiltonian& h, const LatticeVector& phi,
                                    const LatticeVector& v, int n_max,
                                    const KrylovOptions& opt = {}) {
    if (n_max < 0) throw std::domain_error("distance_trace: n_max must be >= 0");
    if (std::abs(v.norm() - 1.0) > 1e-8)
        throw std::domain_error("distance_trace: v must be unit-normalized");
    DistanceTrace tr;
    tr.s = h.kernel.s;
    tr.c = h.disorder.c;
    tr.seed = h.disorder.seed;
    tr.M = h.kernel.M;
    tr.values.reserve(static_cast<std::size_t>(n_max) + 1);

    KrylovBasis basis(phi);
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        if (static_cast<std::size_t>(n) >= basis.size()) {
            krylov_step(h, basis, opt);
            if (basis.breakdown) {
                tr.breakdown = true;
                break;
            }
        }
        const double p = dot(v, basis.vectors[static_cast<std::size_t>(n)]);
        sum += p * p / basis.norms_sq[static_cast<std::size_t>(n)];
        double rad = 1.0 - sum;
        if (rad < 0.0) {
            rad = 0.0;
            ++tr.clamped_count;
        }
        tr.values.push_back(std::sqrt(rad));
    }
    return tr;
}

/// Orthogonality-quality diagnostic for a stored basis.
struct OrthogonalityReport {
    int n = 0;
    double Q = 0.0;
};

/// Q = ||G - I||_inf where G is the Gram matrix of the unit-normalized
/// basis vectors (max row sum of absolute deviations).
inline OrthogonalityReport orthogonality_check(const KrylovBasis& basis) {
    const std::size_t n = basis.size();
    if (n < 1) throw std::domain_error("orthogonality_check: empty basis");
    std::vector<double> inv_norm(n);
    for (std::size_t k = 0; k < n; ++k) inv_norm[k] = 1.0 / std::sqrt(basis.norms_sq[k]);
    double q = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double row = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double g = dot(basis.vectors[j], basis.vectors[k]) * inv_norm[j] * inv_norm[k];
            if (j == k) g -= 1.0;
            row += std::abs(g);
        }
        q = std::max(q, row);
    }
    return OrthogonalityReport{static_cast<int>(n), q};
}

} // namespace fraclap

#endif
