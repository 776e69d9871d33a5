// Deterministic experiment orchestration: parameter sweeps, realization
// averaging, CSV emission, and the run manifest.  Consumed by the CLI.
#ifndef FRACLAP_EXPERIMENT_HPP
#define FRACLAP_EXPERIMENT_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "green.hpp"
#include "kernel.hpp"
#include "lattice.hpp"
#include "spectral.hpp"

namespace fraclap {

inline const char* version_string() { return "0.1.0"; }

/// Render a double with 17 significant digits (round-trip exact).
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

struct ExperimentConfig {
    std::vector<double> s_list;
    std::vector<double> c_list;
    int M = 300;
    int n_max = 1000;
    int realizations = 10;
    std::uint64_t base_seed = 42;
    long long phi_site = 0;
    int v_M = -1; // -1: follow M
    long long window_cap = 2000; // half-width; 0 = uncapped
    std::string output_path;

    int effective_v_M() const { return v_M > 0 ? v_M : M; }
    std::optional<std::pair<long long, long long>> cap() const {
        if (window_cap <= 0) return std::nullopt;
        return std::make_pair(-window_cap, window_cap);
    }
};

/// Emit `m,K,P` rows for one kernel table; with both_signs the range is
/// m in [-M,M] including the zero row.
inline void write_kernel_csv(std::ostream& os, FracOrder s, int M, bool both_signs) {
    KernelTable t = kernel_table(s, M);
    os << "m,K,P\n";
    const long long first = both_signs ? -static_cast<long long>(M) : 1;
    for (long long m = first; m <= M; ++m) {
        if (m == 0 && !both_signs) continue;
        os << m << ',' << fmt17(t.at(m)) << ',' << fmt17(t.at(m) / t.A) << '\n';
    }
}

struct RunStatus {
    std::string label;
    std::string status; // completed / breakdown@n / ...
    long long clip_events = 0;
};

/// Averaged distance sweep over the (s, c) grid in lexicographic order.
/// Rows: s,c,n,D_mean,D_min,D_max,realizations.
inline std::vector<RunStatus> write_distance_csv(std::ostream& os, const ExperimentConfig& cfg) {
    std::vector<RunStatus> statuses;
    os << "s,c,n,D_mean,D_min,D_max,realizations\n";
    LatticeVector v = make_test_vector(cfg.effective_v_M());
    LatticeVector phi = LatticeVector::delta(cfg.phi_site);
    for (double s : cfg.s_list) {
        FracOrder order(s);
        KernelTable table = kernel_table(order, cfg.M);
        for (double c : cfg.c_list) {
            std::vector<double> mean, lo, hi;
            std::vector<int> count;
            long long clips = 0;
            bool any_breakdown = false;
            for (int r = 0; r < cfg.realizations; ++r) {
                Hamiltonian h(table, DisorderField(c, realization_seed(cfg.base_seed, static_cast<std::uint64_t>(r))), cfg.cap());
                DistanceTrace tr = distance_trace(h, phi, v, cfg.n_max);
                any_breakdown |= tr.breakdown;
                clips += h.clip_events.load();
                if (tr.values.size() > mean.size()) {
                    mean.resize(tr.values.size(), 0.0);
                    lo.resize(tr.values.size(), 2.0);
                    hi.resize(tr.values.size(), -1.0);
                    count.resize(tr.values.size(), 0);
                }
                for (std::size_t n = 0; n < tr.values.size(); ++n) {
                    mean[n] += tr.values[n];
                    lo[n] = std::min(lo[n], tr.values[n]);
                    hi[n] = std::max(hi[n], tr.values[n]);
                    ++count[n];
                }
            }
            for (std::size_t n = 0; n < mean.size(); ++n) {
                os << fmt17(s) << ',' << fmt17(c) << ',' << n << ',' << fmt17(mean[n] / count[n])
                   << ',' << fmt17(lo[n]) << ',' << fmt17(hi[n]) << ',' << count[n] << '\n';
            }
            RunStatus st;
            st.label = "s=" + fmt17(s) + " c=" + fmt17(c);
            st.status = any_breakdown ? "breakdown" : "completed";
            st.clip_events = clips;
            statuses.push_back(st);
        }
    }
    return statuses;
}

/// Orthogonality-quality sweep: `s,c,M,n,Q`, with Q the worst (largest) value
/// across the requested realizations per grid cell.
inline std::vector<RunStatus> write_ortho_csv(std::ostream& os, const ExperimentConfig& cfg) {
    std::vector<RunStatus> statuses;
    os << "s,c,M,n,Q\n";
    for (double s : cfg.s_list) {
        FracOrder order(s);
        KernelTable table = kernel_table(order, cfg.M);
        for (double c : cfg.c_list) {
            double q_worst = 0.0;
            bool any_breakdown = false;
            int reached = 0;
            for (int r = 0; r < cfg.realizations; ++r) {
                Hamiltonian h(table, DisorderField(c, realization_seed(cfg.base_seed, static_cast<std::uint64_t>(r))), cfg.cap());
                KrylovBasis basis(LatticeVector::delta(cfg.phi_site));
                while (static_cast<int>(basis.size()) < cfg.n_max && !basis.breakdown)
                    krylov_step(h, basis);
                any_breakdown |= basis.breakdown;
                reached = static_cast<int>(basis.size());
                q_worst = std::max(q_worst, orthogonality_check(basis).Q);
            }
            os << fmt17(s) << ',' << fmt17(c) << ',' << cfg.M << ',' << reached << ','
               << fmt17(q_worst) << '\n';
            RunStatus st;
            st.label = "s=" + fmt17(s) + " c=" + fmt17(c);
            st.status = any_breakdown ? "breakdown" : "completed";
            statuses.push_back(st);
        }
    }
    return statuses;
}

/// Green's-function profile rows `x,t,G` for a list of times.
inline void write_green_csv(std::ostream& os, FracOrder s, const std::vector<double>& times,
                            long long xmax, int quad_points) {
    os << "x,t,G\n";
    for (double t : times) {
        GreenProfile p = green_profile(s, t, xmax, quad_points);
        for (long long x = -xmax; x <= xmax; ++x)
            os << x << ',' << fmt17(t) << ',' << fmt17(p.at(x)) << '\n';
    }
}

/// Dispersion rows `t,width,width_sq` with an `exponent` footer record.
inline DispersionFit write_disperse_csv(std::ostream& os, FracOrder s,
                                        const std::vector<double>& times, long long xmax,
                                        int quad_points) {
    DispersionFit fit = dispersion_exponent(s, times, xmax, quad_points);
    os << "t,width,width_sq\n";
    for (std::size_t i = 0; i < fit.times.size(); ++i)
        os << fmt17(fit.times[i]) << ',' << fmt17(fit.widths[i]) << ','
           << fmt17(fit.widths[i] * fit.widths[i]) << '\n';
    os << "exponent," << fmt17(fit.exponent) << ",\n";
    return fit;
}

/// Sidecar manifest: config echo, version, timestamp, per-run statuses.
/// The data file itself stays byte-stable for identical configs; the
/// timestamp lives only here.
inline void write_manifest(const std::string& data_path,
                           const std::map<std::string, std::string>& config_echo,
                           const std::vector<RunStatus>& statuses, const std::string& timestamp) {
    std::ofstream os(data_path + ".manifest.txt");
    os << "fraclap " << version_string() << "\n";
    os << "timestamp " << timestamp << "\n";
    os << "data " << data_path << "\n";
    for (const auto& [k, v] : config_echo) os << "config " << k << "=" << v << "\n";
    for (const auto& st : statuses)
        os << "run " << st.label << " status=" << st.status << " clip_events=" << st.clip_events
           << "\n";
}

} // namespace fraclap

#endif
