// Discrete fractional Laplacian kernel K_s(m) on the 1-D integer lattice,
// its normalization A_s, the associated jump-weight distribution, and the
// truncation tail bound.
#ifndef FRACLAP_KERNEL_HPP
#define FRACLAP_KERNEL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraclap {

/// Fractional exponent s of the lattice Laplacian, restricted to (0,2).
/// The endpoints are rejected; s = 1 is valid and reproduces the classical
/// three-point operator through the same formulas.
class FracOrder {
  public:
    explicit FracOrder(double s) : s_(s) {
        if (!(s > 0.0) || !(s < 2.0))
            throw std::domain_error("FracOrder: s must lie in (0,2), got " + std::to_string(s));
    }
    double value() const { return s_; }

  private:
    double s_;
};

namespace detail {

// log|Gamma(x)|.  std::lgamma already returns the log of the absolute value;
// poles (x a non-positive integer) give +inf, so exp(-lgamma) collapses to an
// exact zero where the kernel formula has a Gamma pole in the denominator.
inline double log_abs_gamma(double x) { return std::lgamma(x); }

// Sign of Gamma(x).  Positive for x > 0; for negative non-integer x the sign
// alternates interval by interval: negative on (-1,0), positive on (-2,-1), ...
// At a pole the magnitude is zero anyway, so +1 is returned.
inline int gamma_sign(double x) {
    if (x > 0.0) return 1;
    const double k = std::floor(-x);
    if (x == -k) return 1; // pole
    return (static_cast<long long>(k) % 2 == 0) ? -1 : 1;
}

} // namespace detail

/// Kernel value K_s(m) from the closed form
///   K_s(m) = (-1)^{m+1} Gamma(2s+1) / (Gamma(1+s+m) Gamma(1+s-m)),
/// evaluated in log space with explicit sign tracking of each Gamma factor.
/// Symmetric in m <-> -m.  At s = 1 this yields exactly 1 for |m| = 1 and
/// exactly 0 for |m| >= 2 (the denominator Gamma hits a pole).
inline double kernel_value(FracOrder order, long long m) {
    if (m == 0) throw std::domain_error("kernel_value: m must be nonzero");
    const double s = order.value();
    const double ma = static_cast<double>(m < 0 ? -m : m);

    const double a = 1.0 + s + ma; // > 0 always
    const double b = 1.0 + s - ma; // may be negative or a pole
    const double logmag = detail::log_abs_gamma(2.0 * s + 1.0) - detail::log_abs_gamma(a) -
                          detail::log_abs_gamma(b);
    int sign = (static_cast<long long>(ma) % 2 == 0) ? -1 : 1; // (-1)^{m+1}
    sign *= detail::gamma_sign(b);                             // denominator sign
    return sign * std::exp(logmag);
}

/// Normalization A_s = 4^s Gamma(1/2+s) / (sqrt(pi) Gamma(1+s)),
/// equal to the two-sided kernel sum over Z \ {0}.
inline double normalization_A(FracOrder order) {
    const double s = order.value();
    return std::exp(s * std::log(4.0) + std::lgamma(0.5 + s) - 0.5 * std::log(M_PI) -
                    std::lgamma(1.0 + s));
}

/// Truncated kernel table K_s(1..M) built by the ratio recurrence
///   K_s(m+1) = K_s(m) * (m - s) / (m + 1 + s),
/// anchored at the closed-form value at m = 1.  The recurrence factor
/// vanishes exactly at s = 1, m = 1, so all further entries are exact zeros.
struct KernelTable {
    double s = 0.0;
    int M = 0;
    std::vector<double> values; // values[m-1] = K_s(m), m = 1..M
    double A = 0.0;

    double at(long long m) const {
        const long long a = m < 0 ? -m : m;
        if (a == 0 || a > M) return 0.0;
        return values[static_cast<std::size_t>(a - 1)];
    }
    /// One-sided truncated sum Sum_{m=1..M} K_s(m).
    double one_sided_sum() const {
        double acc = 0.0;
        for (double k : values) acc += k;
        return acc;
    }
};

inline KernelTable kernel_table(FracOrder order, int M) {
    if (M < 1) throw std::domain_error("kernel_table: M must be >= 1");
    const double s = order.value();
    KernelTable t;
    t.s = s;
    t.M = M;
    t.A = normalization_A(order);
    t.values.resize(static_cast<std::size_t>(M));
    t.values[0] = kernel_value(order, 1);
    for (int m = 1; m < M; ++m)
        t.values[static_cast<std::size_t>(m)] =
            t.values[static_cast<std::size_t>(m - 1)] * (m - s) / (m + 1 + s);
    return t;
}

/// Jump-weight distribution P_s(m) = K_s(m) / A_s on m = 1..M.
/// For s in (0,1) all weights are positive and the two sides sum to (almost) 1;
/// for s in (1,2) negative weights appear from m = 2 on.
struct JumpWeights {
    double s = 0.0;
    int M = 0;
    std::vector<double> weights;
};

inline JumpWeights jump_distribution(FracOrder order, int M) {
    KernelTable t = kernel_table(order, M);
    JumpWeights w;
    w.s = t.s;
    w.M = M;
    w.weights.resize(t.values.size());
    for (std::size_t i = 0; i < t.values.size(); ++i) w.weights[i] = t.values[i] / t.A;
    return w;
}

/// Upper bound on the dropped remainder |R_M(u)| when the operator sum is
/// truncated at radius M, given sup |u_m| over |m| > M:
///   Btilde_s / (M - s)^2,  Btilde_s = 4 u_sup 4^s Gamma(1/2+s)
///                                     / (sqrt(pi) |Gamma(-s)| Gamma(1+2s)).
/// At s = 1 the |Gamma(-s)| pole drives the bound to zero, consistent with
/// the kernel vanishing beyond |m| = 1.
inline double tail_bound(FracOrder order, int M, double u_sup) {
    const double s = order.value();
    if (!(static_cast<double>(M) > s))
        throw std::domain_error("tail_bound: requires M > s");
    if (u_sup < 0.0) throw std::domain_error("tail_bound: u_sup must be nonnegative");
    if (u_sup == 0.0) return 0.0;
    const double log_btilde = std::log(4.0 * u_sup) + s * std::log(4.0) +
                              std::lgamma(0.5 + s) - 0.5 * std::log(M_PI) -
                              std::lgamma(-s) - std::lgamma(1.0 + 2.0 * s);
    const double d = static_cast<double>(M) - s;
    return std::exp(log_btilde) / (d * d);
}

} // namespace fraclap

#endif
