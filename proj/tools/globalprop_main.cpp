#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "globalprop/config.hpp"
#include "globalprop/errors.hpp"
#include "globalprop/fftint.hpp"
#include "globalprop/refprop.hpp"
#include "globalprop/waveop.hpp"

namespace gp = globalprop;
using gp::signal::Complex;
using gp::signal::ComplexSignal;
using gp::signal::TimeGrid;

namespace {

constexpr const char* kVersion = "0.1.0";

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw gp::ConfigError("cannot open output file " + path.string());
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct ManifestEntry {
    std::string name;
    double seconds;
};

void write_manifest(const std::filesystem::path& dir, const gp::cli::RunConfig& config,
                    const std::vector<ManifestEntry>& timings) {
    auto out = open_out(dir / "manifest.txt");
    out << "tool = globalprop " << kVersion << "\n";
    out << "config_hash = " << std::hex << gp::cli::config_hash(config) << std::dec << "\n";
    for (const auto& t : timings) out << "seconds_" << t.name << " = " << fmt(t.seconds) << "\n";
}

gp::cli::RunConfig resolve_config(const std::string& config_path, int example) {
    if (!config_path.empty()) return gp::cli::load_config(config_path);
    return gp::cli::builtin_example(example);
}

// ---------------------------------------------------------------- integrate

int run_integrate(const std::vector<int>& n_samples, const std::string& mode_name,
                  double t_total, double t_physical, bool test_function,
                  const std::string& emit, const std::string& oracle, int oracle_samples,
                  const std::vector<int>& cf_sweep, const std::string& emit_dir) {
    if (!test_function)
        throw gp::ConfigError("integrate: only --test-function input is available");
    const auto mode = mode_name == "extend" ? gp::fftint::IntegrationMode::extend
                                            : gp::fftint::IntegrationMode::periodic;
    if (mode_name != "periodic" && mode_name != "extend")
        throw gp::ConfigError("integrate: --mode must be periodic or extend");
    if (t_physical <= 0.0) t_physical = t_total;

    auto make_signal = [&](int n) {
        TimeGrid grid(t_physical, t_total, n);
        return gp::fftint::gaussian_packet_train(grid);
    };

    if (!cf_sweep.empty()) {
        std::filesystem::path dir = emit_dir.empty() ? "." : emit_dir;
        auto out = open_out(dir / "fig3_cf_curves.csv");
        out << "n,cf_fft,cf_simpson\n";
        for (int n : cf_sweep) {
            ComplexSignal coarse = make_signal(n);
            ComplexSignal fine = make_signal(2 * n);
            const double cf_fft = gp::fftint::convergence_factor(
                gp::fftint::cumulative_integral(coarse, mode),
                gp::fftint::cumulative_integral(fine, mode));
            const double cf_simp = gp::fftint::convergence_factor(
                gp::fftint::simpson_cumulative(coarse), gp::fftint::simpson_cumulative(fine));
            out << n << "," << fmt(cf_fft) << "," << fmt(cf_simp) << "\n";
            std::cout << "CF_" << n << " fft=" << fmt(cf_fft) << " simpson=" << fmt(cf_simp)
                      << "\n";
        }
        return 0;
    }

    if (n_samples.empty()) throw gp::ConfigError("integrate: --n-samples is required");
    ComplexSignal f = make_signal(n_samples[0]);
    ComplexSignal integral = gp::fftint::cumulative_integral(f, mode);

    if (!emit.empty()) {
        auto out = open_out(emit);
        gp::signal::write_csv(out, integral, "I");
    }
    if (n_samples.size() >= 2) {
        if (n_samples[1] != 2 * n_samples[0])
            throw gp::ConfigError("integrate: the second resolution must be twice the first");
        ComplexSignal fine = gp::fftint::cumulative_integral(make_signal(n_samples[1]), mode);
        std::cout << "CF_" << n_samples[0] << " = "
                  << fmt(gp::fftint::convergence_factor(integral, fine)) << "\n";
    }
    if (!oracle.empty()) {
        if (oracle != "simpson") throw gp::ConfigError("integrate: --oracle supports only 'simpson'");
        int ns = oracle_samples > 0 ? oracle_samples : 146 * n_samples[0];
        ns -= ns % n_samples[0];  // oracle grid must contain the FFT grid
        ComplexSignal dense = make_signal(ns);
        ComplexSignal simpson = gp::fftint::simpson_cumulative(dense);
        const int stride = ns / n_samples[0];
        double max_diff = 0.0;
        for (int j = 0; j < n_samples[0]; ++j)
            max_diff = std::max(max_diff,
                                std::abs(integral.values[j] - simpson.values[j * stride]));
        std::cout << "max|I_fft - I_simpson(" << ns << ")| = " << fmt(max_diff) << "\n";
        if (!emit_dir.empty()) {
            auto out = open_out(std::filesystem::path(emit_dir) / "fig5_fft_vs_simpson.csv");
            out << "t,abs_diff,abs_I\n";
            for (int j = 0; j < n_samples[0]; ++j)
                out << fmt(integral.grid.time_at(j)) << ","
                    << fmt(std::abs(integral.values[j] - simpson.values[j * stride])) << ","
                    << fmt(std::abs(integral.values[j])) << "\n";
        }
    }
    return 0;
}

// -------------------------------------------------------------------- eigen

int run_eigen(int surface, const std::string& config_path, int n_points, double r_min,
              double r_max, int n_keep, const std::string& emit,
              const std::string& emit_vectors) {
    gp::cli::RunConfig config =
        config_path.empty() ? gp::cli::builtin_example(1) : gp::cli::load_config(config_path);
    if (n_points > 0) config.n_points = n_points;
    if (n_keep > 0) config.n_keep = n_keep;
    if (!std::isnan(r_min)) config.r_min = r_min;
    if (!std::isnan(r_max)) config.r_max = r_max;
    gp::molecular::RadialGrid grid(config.r_min, config.r_max, config.n_points);
    gp::molecular::SurfaceSpec spec{surface == 2 ? config.surface2 : config.surface1,
                                    config.mass};
    auto solution = gp::molecular::fourier_grid_eigensolve(spec, grid, config.n_keep);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!emit.empty()) {
        file = open_out(emit);
        out = &file;
    }
    *out << "v,energy\n";
    for (int v = 0; v < solution.energies.size(); ++v)
        *out << v + 1 << "," << fmt(solution.energies(v)) << "\n";

    if (!emit_vectors.empty()) {
        auto vf = open_out(emit_vectors);
        vf << "r";
        for (int v = 0; v < solution.energies.size(); ++v) vf << ",v" << v + 1;
        vf << "\n";
        for (int j = 0; j < grid.n_points; ++j) {
            vf << fmt(grid.point(j));
            for (int v = 0; v < solution.energies.size(); ++v)
                vf << "," << fmt(solution.vectors(j, v));
            vf << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------- propagate

int run_propagate(const std::string& config_path, int example, double tol, int max_iter, int nt,
                  const std::string& emit_dir, const std::vector<int>& track) {
    gp::cli::RunConfig config = resolve_config(config_path, example);
    if (tol > 0) config.tolerance = tol;
    if (max_iter > 0) config.max_iterations = max_iter;
    if (nt > 0) config.n_samples = nt;
    if (!track.empty()) config.track = track;
    for (int v : config.track)
        if (v < 1 || v > 2 * config.n_keep)
            throw gp::ConfigError("propagate: tracked channel " + std::to_string(v) +
                                  " outside 1.." + std::to_string(2 * config.n_keep));
    std::filesystem::path dir = emit_dir.empty() ? config.output_directory : emit_dir;

    std::vector<ManifestEntry> timings;
    double t0 = now_seconds();
    gp::molecular::MolecularModel model = gp::cli::make_model(config);
    timings.push_back({"model_build", now_seconds() - t0});

    TimeGrid grid = gp::cli::make_grid(config);
    gp::waveop::SolveOptions options;
    options.tolerance = config.tolerance;
    options.max_iterations = config.max_iterations;
    options.keep_iterates = true;

    t0 = now_seconds();
    gp::waveop::PropagationResult result = gp::waveop::solve(model, grid, options);
    timings.push_back({"solve", now_seconds() - t0});

    const int jf = result.final_index();
    {
        auto out = open_out(dir / "fig7_convergence.csv");
        out << "n,convergence_factor,max_residual,seconds\n";
        for (const auto& r : result.history)
            out << r.n << "," << fmt(r.convergence_factor) << "," << fmt(r.max_residual) << ","
                << fmt(r.seconds) << "\n";
    }
    {
        auto out = open_out(dir / "final_amplitudes.csv");
        out << "v,re,im,probability\n";
        for (int v = 0; v < model.size(); ++v) {
            const Complex a = result.psi(v, jf);
            out << v + 1 << "," << fmt(a.real()) << "," << fmt(a.imag()) << ","
                << fmt(std::norm(a)) << "\n";
        }
    }
    {
        // Final amplitudes rebuilt from the stored iterates at a few orders;
        // orders past the stopping point are clamped to the last iterate.
        const int n_avail = static_cast<int>(result.iterates.size());
        std::vector<int> orders;
        for (int n : {2, 4, 9, result.best_iteration})
            orders.push_back(std::clamp(n, 1, n_avail));
        gp::waveop::SampledDrive drive = gp::waveop::SampledDrive::sample(model, grid);
        auto psi_at = [&](int n) {
            gp::waveop::ReducedWaveOperator xn =
                gp::waveop::ReducedWaveOperator::zero(grid, model.size(), model.initial_index);
            xn.values = result.iterates[static_cast<size_t>(n - 1)];
            auto h_eff = gp::waveop::effective_hamiltonian(xn, model, drive);
            return gp::waveop::reconstruct_wavefunction(xn, h_eff);
        };
        std::vector<Eigen::MatrixXcd> psis;
        for (int n : orders) psis.push_back(psi_at(n));

        auto out = open_out(dir / "fig9_amplitudes_by_order.csv");
        out << "v";
        for (int n : orders) out << ",abs_n" << n;
        out << "\n";
        for (int v = 0; v < model.size(); ++v) {
            out << v + 1;
            for (const auto& psi : psis) out << "," << fmt(std::abs(psi(v, jf)));
            out << "\n";
        }
        // Defect time series for the strongly coupled channel (v = 37 in the
        // default model) against the converged order.
        const int channel = std::min(model.size(), 37) - 1;
        auto defect = open_out(dir / "fig10_iteration_defects.csv");
        defect << "t,abs_psi,defect_n" << orders[1] << ",defect_n" << orders[2] << "\n";
        const auto& psi_ref = result.psi;
        for (int k = 0; k < grid.n_samples; ++k) {
            defect << fmt(grid.time_at(k)) << "," << fmt(std::abs(psi_ref(channel, k))) << ","
                   << fmt(std::abs(psi_ref(channel, k) - psis[1](channel, k))) << ","
                   << fmt(std::abs(psi_ref(channel, k) - psis[2](channel, k))) << "\n";
        }
    }
    {
        auto out = open_out(dir / "fig8_fubini_study.csv");
        out << "t,distance\n";
        auto series = gp::waveop::fubini_study_series(result.x);
        for (int k = 0; k < grid.n_samples; ++k)
            out << fmt(grid.time_at(k)) << "," << fmt(series[static_cast<size_t>(k)]) << "\n";
    }
    {
        auto out = open_out(dir / "fig12_heff.csv");
        gp::signal::write_csv(out, result.h_eff, "H_eff");
    }
    {
        auto out = open_out(dir / "fig11_tracked_channels.csv");
        out << "t";
        for (int v : config.track) out << ",abs_psi_v" << v;
        out << "\n";
        for (int k = 0; k < grid.n_samples; ++k) {
            out << fmt(grid.time_at(k));
            for (int v : config.track) out << "," << fmt(std::abs(result.psi(v - 1, k)));
            out << "\n";
        }
    }
    write_manifest(dir, config, timings);

    std::cout << "iterations = " << result.history.size()
              << " (best n = " << result.best_iteration << ")\n";
    std::cout << "final F = "
              << fmt(result.history.empty() ? 0.0
                                            : result.history.back().convergence_factor)
              << "\n";
    double best_f = 1e99;
    for (const auto& r : result.history) best_f = std::min(best_f, r.convergence_factor);
    std::cout << "best F = " << fmt(best_f) << "\n";
    std::cout << "residual (Frobenius) = " << fmt(result.residual_fro) << "\n";
    std::cout << "survival probability = " << fmt(result.survival_probability()) << "\n";
    if (!result.converged) {
        std::cout << "not converged within " << config.max_iterations << " iterations\n";
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------- reference

int run_reference(const std::string& method, int steps, const std::string& config_path,
                  int example, int lanczos_dim, const std::string& emit) {
    gp::cli::RunConfig config = resolve_config(config_path, example);
    gp::molecular::MolecularModel model = gp::cli::make_model(config);
    TimeGrid grid = gp::cli::make_grid(config);
    const double t_end = grid.time_at(grid.absorber_start());

    gp::refprop::StepPropagatorConfig pc;
    pc.n_steps = steps;
    pc.lanczos_dim = lanczos_dim;
    if (method == "split") pc.method = gp::refprop::Method::split_sod;
    else if (method == "sil") pc.method = gp::refprop::Method::sil;
    else throw gp::ConfigError("reference: --method must be split or sil");

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(model.size());
    psi0(model.initial_index) = 1.0;
    const double t0 = now_seconds();
    gp::refprop::Trajectory traj =
        pc.method == gp::refprop::Method::split_sod
            ? gp::refprop::split_sod_propagate(psi0, model, t_end, pc)
            : gp::refprop::sil_propagate(psi0, model, t_end, pc);
    const double seconds = now_seconds() - t0;
    Eigen::VectorXcd psi = traj.final_state();

    if (!emit.empty()) {
        auto out = open_out(emit);
        out << "v,re,im,probability\n";
        for (int v = 0; v < model.size(); ++v)
            out << v + 1 << "," << fmt(psi(v).real()) << "," << fmt(psi(v).imag()) << ","
                << fmt(std::norm(psi(v))) << "\n";
    }
    std::cout << "steps = " << steps << " seconds = " << fmt(seconds) << "\n";
    std::cout << "norm drift = " << fmt(std::abs(psi.norm() - 1.0)) << "\n";
    std::cout << "survival probability = " << fmt(std::norm(psi(model.initial_index))) << "\n";
    return 0;
}

// ------------------------------------------------------------------ compare

int run_compare(const std::string& config_path, int example, const std::vector<int>& global_nt,
                const std::vector<int>& ref_steps, const std::string& emit_dir) {
    gp::cli::RunConfig config = resolve_config(config_path, example);
    std::filesystem::path dir = emit_dir.empty() ? config.output_directory : emit_dir;
    gp::molecular::MolecularModel model = gp::cli::make_model(config);

    gp::waveop::SolveOptions options;
    options.tolerance = config.tolerance;
    options.max_iterations = config.max_iterations;

    auto solve_at = [&](int nt) {
        TimeGrid grid(config.t_physical_end, config.t_total, nt);
        const double t0 = now_seconds();
        auto result = gp::waveop::solve(model, grid, options);
        const double seconds = now_seconds() - t0;
        const int jf = result.final_index();
        Eigen::VectorXcd omega = result.x.values.col(jf);
        omega(model.initial_index) += 1.0;
        return std::tuple<Eigen::VectorXcd, double, double>(omega, seconds,
                                                            grid.time_at(jf));
    };

    std::cout << "reference global solve (N_t = 8192)\n";
    auto [omega_8192, sec_8192, tf_8192] = solve_at(8192);
    auto [omega_4096, sec_4096, tf_4096] = solve_at(4096);
    if (std::abs(tf_8192 - tf_4096) > 1e-12)
        throw gp::NumericalError("compare: grids do not share the final physical sample");

    auto out = open_out(dir / "fig13_convergence_sweep.csv");
    out << "method,resolution,factor,seconds\n";

    struct Point {
        double factor, seconds;
    };
    std::vector<Point> global_points, sil_points, split_points;

    for (int nt : global_nt) {
        try {
            auto [omega, seconds, tf] = solve_at(nt);
            if (std::abs(tf - tf_8192) > 1e-12) continue;  // grid misses the common sample
            const double fg = gp::refprop::cross_convergence_factor(omega, omega_8192);
            out << "global," << nt << "," << fmt(fg) << "," << fmt(seconds) << "\n";
            global_points.push_back({fg, seconds});
            std::cout << "global nt=" << nt << " F_G=" << fmt(fg) << " (" << fmt(seconds)
                      << " s)\n";
        } catch (const gp::DivergenceError&) {
            std::cout << "global nt=" << nt << " diverged (grid too coarse); skipped\n";
        }
    }

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(model.size());
    psi0(model.initial_index) = 1.0;
    for (int steps : ref_steps) {
        for (auto method : {gp::refprop::Method::sil, gp::refprop::Method::split_sod}) {
            gp::refprop::StepPropagatorConfig pc;
            pc.n_steps = steps;
            pc.method = method;
            const double t0 = now_seconds();
            gp::refprop::Trajectory traj =
                method == gp::refprop::Method::split_sod
                    ? gp::refprop::split_sod_propagate(psi0, model, tf_4096, pc)
                    : gp::refprop::sil_propagate(psi0, model, tf_4096, pc);
            const double seconds = now_seconds() - t0;
            Eigen::VectorXcd omega =
                gp::refprop::reconstruct_wave_operator(traj.final_state(), model.initial_index);
            const double fc = gp::refprop::cross_convergence_factor(omega, omega_4096);
            const char* name = method == gp::refprop::Method::split_sod ? "split_sod" : "sil";
            out << name << "," << steps << "," << fmt(fc) << "," << fmt(seconds) << "\n";
            (method == gp::refprop::Method::split_sod ? split_points : sil_points)
                .push_back({fc, seconds});
            std::cout << name << " steps=" << steps << " F_C=" << fmt(fc) << " ("
                      << fmt(seconds) << " s)\n";
        }
    }

    auto cheapest = [](const std::vector<Point>& pts, double threshold) {
        double best = -1.0;
        for (const auto& p : pts)
            if (p.factor <= threshold && (best < 0.0 || p.seconds < best)) best = p.seconds;
        return best;
    };
    auto table = open_out(dir / "table2_timing_ratios.csv");
    table << "threshold,seconds_global,seconds_sil,seconds_split,ratio_global_sil,ratio_global_split\n";
    for (double threshold : {1e-6, 1e-8, 1e-10, 1e-12, 1e-14}) {
        const double tg = cheapest(global_points, threshold);
        const double ts = cheapest(sil_points, threshold);
        const double tp = cheapest(split_points, threshold);
        table << fmt(threshold) << "," << fmt(tg) << "," << fmt(ts) << "," << fmt(tp) << ","
              << (tg > 0 && ts > 0 ? fmt(tg / ts) : "nan") << ","
              << (tg > 0 && tp > 0 ? fmt(tg / tp) : "nan") << "\n";
    }
    write_manifest(dir, config, {{"global_8192", sec_8192}, {"global_4096", sec_4096}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"globalprop: whole-interval integrator for driven quantum dynamics"};
    app.require_subcommand(1);

    // integrate
    auto* integrate = app.add_subcommand("integrate", "FFT cumulative integrator on a benchmark signal");
    bool test_function = false;
    std::vector<int> n_samples;
    std::string mode = "periodic";
    double t_total = 180.0, t_physical = -1.0;
    std::string emit, emit_dir, oracle;
    int oracle_samples = 0;
    std::vector<int> cf_sweep;
    integrate->add_flag("--test-function", test_function, "use the built-in Gaussian packet train");
    integrate->add_option("--n-samples", n_samples, "grid size(s); give two (N, 2N) for a CF summary");
    integrate->add_option("--mode", mode, "periodic or extend");
    integrate->add_option("--t-total", t_total, "interval length T");
    integrate->add_option("--t0", t_physical, "physical end T0 (extend mode)");
    integrate->add_option("--emit", emit, "per-sample CSV path (t, Re I, Im I)");
    integrate->add_option("--emit-dir", emit_dir, "directory for figure CSVs");
    integrate->add_option("--oracle", oracle, "cross-check quadrature: simpson");
    integrate->add_option("--oracle-samples", oracle_samples,
                          "oracle sample count (default 146 N)");
    integrate->add_option("--cf-sweep", cf_sweep, "emit CF curves for these grid sizes");

    // eigen
    auto* eigen = app.add_subcommand("eigen", "Fourier-grid vibrational eigensolve");
    int surface = 1, n_points = 0, n_keep = 0;
    double r_min = std::nan(""), r_max = std::nan("");
    std::string eigen_config, eigen_emit, emit_vectors;
    eigen->add_option("--surface", surface, "1 or 2")->required();
    eigen->add_option("--config", eigen_config, "model config file");
    eigen->add_option("--n-points", n_points, "radial grid points");
    eigen->add_option("--r-min", r_min, "grid start");
    eigen->add_option("--r-max", r_max, "grid end");
    eigen->add_option("--n-keep", n_keep, "eigenpairs to keep");
    eigen->add_option("--emit", eigen_emit, "energies CSV path");
    eigen->add_option("--emit-vectors", emit_vectors, "eigenvector CSV path");

    // propagate
    auto* propagate = app.add_subcommand("propagate", "global wave-operator solve");
    std::string prop_config;
    int example = 1, max_iter = 0, nt = 0;
    double tol = 0.0;
    std::string prop_dir;
    std::vector<int> track;
    propagate->add_option("--config", prop_config, "config file");
    propagate->add_option("--example", example, "built-in parameter set 1 or 2");
    propagate->add_option("--tol", tol, "convergence tolerance on F");
    propagate->add_option("--max-iter", max_iter, "iteration cap");
    propagate->add_option("--nt", nt, "time samples");
    propagate->add_option("--emit-dir", prop_dir, "output directory");
    propagate->add_option("--track", track, "channels for the time-series CSV (1-based)");

    // reference
    auto* reference = app.add_subcommand("reference", "step-by-step reference propagators");
    std::string method = "sil", ref_config, ref_emit;
    int steps = 4096, ref_example = 1, lanczos_dim = 10;
    reference->add_option("--method", method, "split or sil")->required();
    reference->add_option("--steps", steps, "number of steps")->required();
    reference->add_option("--config", ref_config, "config file");
    reference->add_option("--example", ref_example, "built-in parameter set 1 or 2");
    reference->add_option("--lanczos-dim", lanczos_dim, "Krylov dimension (sil)");
    reference->add_option("--emit", ref_emit, "final amplitudes CSV path");

    // compare
    auto* compare = app.add_subcommand("compare", "global vs continuous convergence and timing");
    std::string cmp_config, cmp_dir;
    int cmp_example = 1;
    std::vector<int> global_nt = {256, 512, 1024, 2048, 4096};
    std::vector<int> ref_steps = {2048, 8192, 32768, 131072};
    compare->add_option("--config", cmp_config, "config file");
    compare->add_option("--example", cmp_example, "built-in parameter set 1 or 2");
    compare->add_option("--global-nt", global_nt, "global grid sizes for the F_G curve");
    compare->add_option("--ref-steps", ref_steps, "step counts for the F_C curves");
    compare->add_option("--emit-dir", cmp_dir, "output directory");

    try {
        app.parse(argc, argv);
        if (integrate->parsed())
            return run_integrate(n_samples, mode, t_total, t_physical, test_function, emit,
                                 oracle, oracle_samples, cf_sweep, emit_dir);
        if (eigen->parsed())
            return run_eigen(surface, eigen_config, n_points, r_min, r_max, n_keep, eigen_emit,
                             emit_vectors);
        if (propagate->parsed())
            return run_propagate(prop_config, example, tol, max_iter, nt, prop_dir, track);
        if (reference->parsed())
            return run_reference(method, steps, ref_config, ref_example, lanczos_dim, ref_emit);
        if (compare->parsed())
            return run_compare(cmp_config, cmp_example, global_nt, ref_steps, cmp_dir);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const gp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gp::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 3;
    } catch (const gp::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
