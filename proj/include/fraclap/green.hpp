// Lattice Green's function of the fractional heat semigroup,
//   G^s(x,t) = (1/2pi) Int_{-pi}^{pi} exp(-t (4 sin^2(z/2))^s) cos(xz) dz,
// evolution of initial data by convolution, and the anomalous dispersion
// exponent extracted from the half-mass width.
#ifndef FRACLAP_GREEN_HPP
#define FRACLAP_GREEN_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "kernel.hpp"
#include "lattice.hpp"

namespace fraclap {

namespace detail {

/// Symbol of the discrete fractional Laplacian: (4 sin^2(z/2))^s.
inline double frac_symbol(double s, double z) {
    const double w = 2.0 * std::sin(0.5 * z);
    const double w2 = w * w;
    return w2 == 0.0 ? 0.0 : std::pow(w2, s);
}

} // namespace detail

/// Pointwise Green's-function value by composite trapezoid quadrature on the
/// smooth 2pi-periodic integrand (spectrally accurate in quad_points).
inline double green_value(FracOrder order, long long x, double t, int quad_points) {
    if (!(t > 0.0)) throw std::domain_error("green_value: t must be positive");
    if (quad_points < 16 || quad_points % 2 != 0)
        throw std::domain_error("green_value: quad_points must be even and >= 16");
    const double s = order.value();
    const int n = quad_points;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double z = -M_PI + 2.0 * M_PI * j / n;
        acc += std::exp(-t * detail::frac_symbol(s, z)) * std::cos(static_cast<double>(x) * z);
    }
    return acc / n;
}

/// Sampled profile G(-xmax..xmax) at a fixed time.
struct GreenProfile {
    double s = 0.0;
    double t = 0.0;
    long long xmax = 0;
    std::vector<double> values; // index x + xmax
    int quad_points = 0;

    double at(long long x) const {
        const long long a = x < 0 ? -x : x;
        if (a > xmax) return 0.0;
        return values[static_cast<std::size_t>(x + xmax)];
    }
    double window_abs_mass() const {
        double acc = 0.0;
        for (double g : values) acc += std::abs(g);
        return acc;
    }
    double window_mass() const {
        double acc = 0.0;
        for (double g : values) acc += g;
        return acc;
    }
};

/// Full profile in one pass: the trapezoid sums for all x are the real DFT of
/// the sampled symbol exponential, evaluated by FFT (power-of-two quad_points).
/// Symmetry G(x) = G(-x) holds by construction and is enforced exactly.
inline GreenProfile green_profile(FracOrder order, double t, long long xmax, int quad_points) {
    if (!(t > 0.0)) throw std::domain_error("green_profile: t must be positive");
    if (xmax < 0) throw std::domain_error("green_profile: xmax must be >= 0");
    std::size_t n = detail::next_pow2(static_cast<std::size_t>(std::max<long long>(quad_points, 2 * xmax + 2)));
    if (n < 16) n = 16;
    const double s = order.value();
    std::vector<std::complex<double>> f(n);
    for (std::size_t j = 0; j < n; ++j)
        f[j] = std::exp(-t * detail::frac_symbol(s, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n)));
    detail::fft(f, false);
    GreenProfile p;
    p.s = s;
    p.t = t;
    p.xmax = xmax;
    p.quad_points = static_cast<int>(n);
    p.values.resize(2 * static_cast<std::size_t>(xmax) + 1);
    for (long long x = 0; x <= xmax; ++x) {
        const double g = f[static_cast<std::size_t>(x)].real() / static_cast<double>(n);
        p.values[static_cast<std::size_t>(xmax + x)] = g;
        p.values[static_cast<std::size_t>(xmax - x)] = g;
    }
    return p;
}

/// Semigroup evolution of finitely supported initial data:
///   v(x,t) = Sum_k G^s(x-k, t) phi(k), truncated to |x| <= xmax.
inline LatticeVector evolve(FracOrder order, const LatticeVector& phi, double t, long long xmax,
                            int quad_points = 4096) {
    if (phi.empty()) throw std::domain_error("evolve: empty initial data");
    const long long reach = xmax + std::max(std::abs(phi.lo), std::abs(phi.hi()));
    GreenProfile g = green_profile(order, t, reach, quad_points);
    LatticeVector out(-xmax, std::vector<double>(2 * static_cast<std::size_t>(xmax) + 1, 0.0));
    for (long long x = -xmax; x <= xmax; ++x) {
        double acc = 0.0;
        for (long long k = phi.lo; k <= phi.hi(); ++k) acc += g.at(x - k) * phi.at(k);
        out.ref(x) = acc;
    }
    return out;
}

/// Half-mass width: smallest radius containing half of the windowed absolute
/// mass, refined by linear interpolation between the bracketing radii.
inline double half_mass_width(const GreenProfile& p) {
    const double target = 0.5 * p.window_abs_mass();
    double acc = std::abs(p.at(0));
    if (acc >= target) return 0.0;
    for (long long r = 1; r <= p.xmax; ++r) {
        const double ring = std::abs(p.at(r)) + std::abs(p.at(-r));
        if (acc + ring >= target) {
            return static_cast<double>(r - 1) + (target - acc) / ring;
        }
        acc += ring;
    }
    return static_cast<double>(p.xmax);
}

/// Least-squares fit of the dispersion exponent: slope of log w(t)^2 versus
/// log t, expected to approximate 1/s.
struct DispersionFit {
    double s = 0.0;
    std::vector<double> times;
    std::vector<double> widths;
    double exponent = 0.0;
};

inline DispersionFit dispersion_exponent(FracOrder order, const std::vector<double>& times,
                                         long long xmax, int quad_points = 4096) {
    if (times.size() < 5) throw std::domain_error("dispersion_exponent: need >= 5 times");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 10.0) throw std::domain_error("dispersion_exponent: times must be >= 10");
        if (i > 0 && times[i] <= times[i - 1])
            throw std::domain_error("dispersion_exponent: times must be strictly increasing");
    }
    DispersionFit fit;
    fit.s = order.value();
    fit.times = times;
    for (double t : times) {
        GreenProfile p = green_profile(order, t, xmax, quad_points);
        // Mass-fraction check: the window must retain most of the unit mass
        // and the half-mass radius must sit well inside it.
        if (p.window_mass() < 0.75)
            throw std::domain_error("dispersion_exponent: xmax too small (mass fraction below 0.75)");
        const double w = half_mass_width(p);
        if (w > 0.5 * static_cast<double>(xmax))
            throw std::domain_error("dispersion_exponent: half-mass width reaches window edge");
        fit.widths.push_back(w);
    }
    // slope of log(w^2) on log(t)
    const std::size_t n = times.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(times[i]);
        const double y = 2.0 * std::log(fit.widths[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

} // namespace fraclap

#endif
