// Test-only oracles, independent of the library implementation paths they
// check: direct Gamma-product kernel evaluation, brute-force operator
// application, a dense Gram-Schmidt distance reference, and the modified
// Bessel series for the classical discrete heat kernel.
#ifndef FRACLAP_TEST_ORACLES_HPP
#define FRACLAP_TEST_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "fraclap/lattice.hpp"

namespace oracles {

// K_s(m) by direct Gamma products of the closed form
// (-1)^{m+1} Gamma(2s+1) / (Gamma(1+s+m) Gamma(1+s-m)), no log-space tricks.
// Valid while the Gamma arguments stay in tgamma's range (|m| modest).
inline double kernel_direct(double s, long long m) {
    const long long a = m < 0 ? -m : m;
    const double sign = (a % 2 == 0) ? -1.0 : 1.0;
    return sign * std::tgamma(2.0 * s + 1.0) /
           (std::tgamma(1.0 + s + a) * std::tgamma(1.0 + s - a));
}

// Scalar double-loop application of the truncated operator plus diagonal
// disorder, straight from the truncated sum.  No table, no convolution.
inline fraclap::LatticeVector brute_force_apply(double s, int M, const fraclap::DisorderField& dis,
                                                const fraclap::LatticeVector& u) {
    fraclap::LatticeVector out(u.lo - M,
                               std::vector<double>(u.values.size() + 2 * static_cast<std::size_t>(M), 0.0));
    for (long long n = out.lo; n <= out.hi(); ++n) {
        double acc = 0.0;
        for (int m = 1; m <= M; ++m)
            acc += (2.0 * u.at(n) - u.at(n - m) - u.at(n + m)) * fraclap::kernel_value(fraclap::FracOrder(s), m);
        out.ref(n) = acc + dis.epsilon(n) * u.at(n);
    }
    return out;
}

// Dense distance-trace reference on a fixed window [-half, half]: builds the
// full operator matrix, runs textbook modified Gram-Schmidt on dense vectors,
// and accumulates the distance sum.  Everything is plain dense algebra.
struct DenseTraceOracle {
    long long half;
    std::vector<std::vector<double>> H; // (2half+1)^2

    DenseTraceOracle(double s, int M, const fraclap::DisorderField& dis, long long half_)
        : half(half_) {
        const std::size_t dim = static_cast<std::size_t>(2 * half + 1);
        H.assign(dim, std::vector<double>(dim, 0.0));
        std::vector<double> K(static_cast<std::size_t>(M) + 1, 0.0);
        double diag = 0.0;
        for (int m = 1; m <= M; ++m) {
            K[static_cast<std::size_t>(m)] = fraclap::kernel_value(fraclap::FracOrder(s), m);
            diag += 2.0 * K[static_cast<std::size_t>(m)];
        }
        for (std::size_t i = 0; i < dim; ++i) {
            const long long site = static_cast<long long>(i) - half;
            H[i][i] = diag + dis.epsilon(site);
            for (int m = 1; m <= M; ++m) {
                if (i >= static_cast<std::size_t>(m)) H[i][i - m] = -K[static_cast<std::size_t>(m)];
                if (i + m < dim) H[i][i + m] = -K[static_cast<std::size_t>(m)];
            }
        }
    }

    std::vector<double> apply(const std::vector<double>& u) const {
        std::vector<double> out(u.size(), 0.0);
        for (std::size_t i = 0; i < u.size(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < u.size(); ++j) acc += H[i][j] * u[j];
            out[i] = acc;
        }
        return out;
    }

    std::vector<double> embed(const fraclap::LatticeVector& v) const {
        std::vector<double> out(static_cast<std::size_t>(2 * half + 1), 0.0);
        for (long long i = -half; i <= half; ++i) out[static_cast<std::size_t>(i + half)] = v.at(i);
        return out;
    }

    // D^0..D^n for unit v, Krylov seed phi.
    std::vector<double> trace(const fraclap::LatticeVector& phi_lv, const fraclap::LatticeVector& v_lv,
                              int n_max) const {
        std::vector<double> v = embed(v_lv);
        std::vector<std::vector<double>> basis{embed(phi_lv)};
        std::vector<double> out;
        double sum = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            if (static_cast<std::size_t>(n) >= basis.size()) {
                std::vector<double> w = apply(basis.back());
                for (const auto& b : basis) {
                    double num = 0.0, den = 0.0;
                    for (std::size_t i = 0; i < w.size(); ++i) {
                        num += w[i] * b[i];
                        den += b[i] * b[i];
                    }
                    const double coef = num / den;
                    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= coef * b[i];
                }
                basis.push_back(std::move(w));
            }
            const auto& m = basis[static_cast<std::size_t>(n)];
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                num += v[i] * m[i];
                den += m[i] * m[i];
            }
            sum += num * num / den;
            out.push_back(std::sqrt(std::max(0.0, 1.0 - sum)));
        }
        return out;
    }
};

// e^{-2t} I_x(2t): classical discrete heat kernel by the ascending series
// I_nu(y) = Sum_k (y/2)^{2k+nu} / (k! (k+nu)!).
inline double discrete_heat_bessel(long long x, double t) {
    const long long nu = x < 0 ? -x : x;
    const double y = t; // (2t)/2
    double term = 1.0;
    for (long long k = 1; k <= nu; ++k) term *= y / static_cast<double>(k);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= (y * y) / (static_cast<double>(k) * static_cast<double>(k + nu));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return std::exp(-2.0 * t) * sum;
}

// Tiny deterministic generator for test data.
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    double uniform() {
        state += 0x9e3779b97f4a7c15ULL;
        return fraclap::detail::uniform01(0xdecafbadULL, state);
    }
    double sym() { return 2.0 * uniform() - 1.0; }
};

} // namespace oracles

#endif
