// fraclap command-line front end.
// Subcommands: kernel | distance | ortho | green | disperse.
// Exit codes: 0 success, 2 argument/domain error, 3 numerical-contract failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fraclap/experiment.hpp"

namespace {

struct ContractFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
    return out;
}

std::string now_string() {
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
    return buf;
}

// Stream selection: file when --out given, stdout otherwise.  The manifest is
// only written alongside a real file.
struct Output {
    std::string path;
    std::ofstream file;
    std::ostream& stream() { return path.empty() ? std::cout : file; }
    void open() {
        if (path.empty()) return;
        file.open(path, std::ios::binary); // LF line endings everywhere
        if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete fractional Laplacian toolkit: kernels, spectral distance traces, "
                 "lattice Green's functions, and dispersion fits"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    double s_single = 1.0;
    std::string s_csv = "1", c_csv = "0", t_csv = "1";
    int M = 300, iters = 1000, realizations = 10, n_ortho = 150, quad = 4096, points = 10;
    std::uint64_t seed = 42;
    long long xmax = 50, window_cap = 2000, phi_site = 0;
    int v_M = -1;
    double tmin = 10.0, tmax = 1000.0;
    bool both_signs = false;
    std::string out_path;

    auto* cmd_kernel = app.add_subcommand("kernel", "Emit the kernel table K_s(m) and jump weights as CSV");
    cmd_kernel->add_option("--s", s_single, "fractional order in (0,2)")->required();
    cmd_kernel->add_option("--M", M, "truncation radius")->required();
    cmd_kernel->add_flag("--both-signs", both_signs, "emit m in [-M,M] including m=0");
    cmd_kernel->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* cmd_distance = app.add_subcommand("distance", "Averaged spectral distance traces over an (s,c) grid");
    cmd_distance->add_option("--s", s_csv, "comma list of fractional orders");
    cmd_distance->add_option("--c", c_csv, "comma list of disorder strengths");
    cmd_distance->add_option("--M", M, "kernel truncation radius");
    cmd_distance->add_option("--iters", iters, "number of Krylov iterations n_max");
    cmd_distance->add_option("--realizations", realizations, "disorder realizations to average");
    cmd_distance->add_option("--seed", seed, "base seed");
    cmd_distance->add_option("--phi-site", phi_site, "Krylov seed delta site");
    cmd_distance->add_option("--vM", v_M, "test-vector half-width (default: M)");
    cmd_distance->add_option("--window-cap", window_cap, "hard lattice half-width cap, 0 = uncapped");
    cmd_distance->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* cmd_ortho = app.add_subcommand("ortho", "Forward Gram-Schmidt orthogonality diagnostic Q over an (s,c) grid");
    cmd_ortho->add_option("--s", s_csv, "comma list of fractional orders");
    cmd_ortho->add_option("--c", c_csv, "comma list of disorder strengths");
    cmd_ortho->add_option("--M", M, "kernel truncation radius")->default_val(100);
    cmd_ortho->add_option("--n", n_ortho, "number of Krylov vectors")->default_val(150);
    cmd_ortho->add_option("--realizations", realizations, "realizations per cell (worst Q reported)")->default_val(1);
    cmd_ortho->add_option("--seed", seed, "base seed");
    cmd_ortho->add_option("--phi-site", phi_site, "Krylov seed delta site");
    cmd_ortho->add_option("--window-cap", window_cap, "hard lattice half-width cap, 0 = uncapped")->default_val(0);
    cmd_ortho->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* cmd_green = app.add_subcommand("green", "Lattice Green's function profiles G(x,t)");
    cmd_green->add_option("--s", s_single, "fractional order in (0,2)")->required();
    cmd_green->add_option("--t", t_csv, "comma list of times");
    cmd_green->add_option("--xmax", xmax, "profile half-width");
    cmd_green->add_option("--quad", quad, "trapezoid quadrature points");
    cmd_green->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* cmd_disperse = app.add_subcommand("disperse", "Half-mass widths and fitted dispersion exponent");
    cmd_disperse->add_option("--s", s_single, "fractional order in (0,2)")->required();
    cmd_disperse->add_option("--tmin", tmin, "smallest time (>= 10)");
    cmd_disperse->add_option("--tmax", tmax, "largest time");
    cmd_disperse->add_option("--points", points, "number of log-spaced times");
    cmd_disperse->add_option("--xmax", xmax, "profile half-width")->default_val(0);
    cmd_disperse->add_option("--quad", quad, "trapezoid quadrature points");
    cmd_disperse->add_option("--out", out_path, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    if (const char* env = std::getenv("FRACLAP_SEED")) seed = std::strtoull(env, nullptr, 10);

    try {
        Output out;
        out.path = out_path;
        out.open();
        std::map<std::string, std::string> echo;

        if (cmd_kernel->parsed()) {
            fraclap::write_kernel_csv(out.stream(), fraclap::FracOrder(s_single), M, both_signs);
            echo = {{"s", fraclap::fmt17(s_single)}, {"M", std::to_string(M)},
                    {"both_signs", both_signs ? "1" : "0"}};
            if (!out_path.empty()) fraclap::write_manifest(out_path, echo, {{"kernel", "completed", 0}}, now_string());
        } else if (cmd_distance->parsed() || cmd_ortho->parsed()) {
            fraclap::ExperimentConfig cfg;
            cfg.s_list = parse_list(s_csv);
            cfg.c_list = parse_list(c_csv);
            cfg.M = M;
            cfg.n_max = cmd_distance->parsed() ? iters : n_ortho;
            cfg.realizations = realizations;
            cfg.base_seed = seed;
            cfg.phi_site = phi_site;
            cfg.v_M = v_M;
            cfg.window_cap = window_cap;
            cfg.output_path = out_path;
            auto statuses = cmd_distance->parsed()
                                ? fraclap::write_distance_csv(out.stream(), cfg)
                                : fraclap::write_ortho_csv(out.stream(), cfg);
            echo = {{"s", s_csv},
                    {"c", c_csv},
                    {"M", std::to_string(M)},
                    {"n_max", std::to_string(cfg.n_max)},
                    {"realizations", std::to_string(realizations)},
                    {"base_seed", std::to_string(seed)},
                    {"phi_site", std::to_string(phi_site)},
                    {"v_M", std::to_string(cfg.effective_v_M())},
                    {"window_cap", std::to_string(window_cap)}};
            if (!out_path.empty()) fraclap::write_manifest(out_path, echo, statuses, now_string());
        } else if (cmd_green->parsed()) {
            fraclap::write_green_csv(out.stream(), fraclap::FracOrder(s_single), parse_list(t_csv), xmax, quad);
            echo = {{"s", fraclap::fmt17(s_single)}, {"t", t_csv},
                    {"xmax", std::to_string(xmax)}, {"quad", std::to_string(quad)}};
            if (!out_path.empty()) fraclap::write_manifest(out_path, echo, {{"green", "completed", 0}}, now_string());
        } else if (cmd_disperse->parsed()) {
            long long eff_xmax = xmax;
            if (eff_xmax <= 0) {
                // wide enough for the heavy-tailed regimes: ~ 8 * tmax^{1/(2s)}
                eff_xmax = static_cast<long long>(8.0 * std::pow(tmax, 1.0 / (2.0 * s_single))) + 50;
            }
            fraclap::write_disperse_csv(out.stream(), fraclap::FracOrder(s_single),
                                        logspace(tmin, tmax, points), eff_xmax, quad);
            echo = {{"s", fraclap::fmt17(s_single)}, {"tmin", fraclap::fmt17(tmin)},
                    {"tmax", fraclap::fmt17(tmax)}, {"points", std::to_string(points)},
                    {"xmax", std::to_string(eff_xmax)}, {"quad", std::to_string(quad)}};
            if (!out_path.empty()) fraclap::write_manifest(out_path, echo, {{"disperse", "completed", 0}}, now_string());
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (std::string(e.what()).find("mass fraction") != std::string::npos ||
                std::string(e.what()).find("half-mass width reaches") != std::string::npos)
                   ? 3
                   : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
