#include "globalprop/waveop.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "globalprop/errors.hpp"
#include "globalprop/fftint.hpp"
#include "globalprop/threading.hpp"

namespace globalprop::waveop {

namespace {
const Complex kImag(0.0, 1.0);

Eigen::MatrixXcd row_spectral_derivative(const Eigen::MatrixXcd& x, const TimeGrid& grid) {
    const int nv = static_cast<int>(x.rows());
    const int nt = static_cast<int>(x.cols());
    Eigen::MatrixXcd out(nv, nt);
    parallel_for(nv, [&](int v) {
        ComplexSignal row(grid);
        for (int k = 0; k < nt; ++k) row.values[k] = x(v, k);
        ComplexSignal d = signal::spectral_derivative(row);
        for (int k = 0; k < nt; ++k) out(v, k) = d.values[k];
    });
    return out;
}

// [H (P_o + X)]_{v,i} for every v and t, absorber included.
Eigen::MatrixXcd h_on_omega(const ReducedWaveOperator& x, const MolecularModel& model,
                            const SampledDrive& drive) {
    const int i0 = x.initial_index;
    Eigen::MatrixXcd u = x.values;
    u.row(i0).array() += 1.0;
    Eigen::MatrixXcd y = drive.coupling * u;
    y = -(y * drive.field.asDiagonal());
    y += model.basis.energies.cast<Complex>().asDiagonal() * u;
    // -i V_opt on the complementary channels; row i0 of X is zero already.
    y += x.values * (-kImag * drive.vopt.cast<Complex>()).asDiagonal();
    return y;
}
}  // namespace

ReducedWaveOperator ReducedWaveOperator::zero(const TimeGrid& grid, int n_states,
                                              int initial_index) {
    ReducedWaveOperator x;
    x.grid = grid;
    x.initial_index = initial_index;
    x.values = Eigen::MatrixXcd::Zero(n_states, grid.n_samples);
    return x;
}

SampledDrive SampledDrive::sample(const MolecularModel& model, const TimeGrid& grid) {
    SampledDrive d;
    d.grid = grid;
    const int nt = grid.n_samples;
    d.field.resize(nt);
    d.vopt.resize(nt);
    d.dabs.resize(nt);
    const double t0 = grid.t_physical_end, t = grid.t_total;
    for (int k = 0; k < nt; ++k) {
        const double tk = grid.time_at(k);
        d.field(k) = model.field(tk);
        d.vopt(k) = model.absorber.value(tk, t0, t);
        d.dabs(k) = model.absorber.accumulated(tk, t0, t);
    }
    d.coupling = model.coupling.cast<Complex>();
    return d;
}

Eigen::MatrixXcd residual_delta(const ReducedWaveOperator& x, const MolecularModel& model,
                                const SampledDrive& drive) {
    const int i0 = x.initial_index;
    Eigen::MatrixXcd y = h_on_omega(x, model, drive);
    Eigen::VectorXcd h_eff = y.row(i0);
    Eigen::MatrixXcd xdot = row_spectral_derivative(x.values, x.grid);
    Eigen::MatrixXcd delta = y - x.values * h_eff.asDiagonal() - kImag * xdot;
    delta.row(i0).setZero();
    return delta;
}

ComplexSignal effective_hamiltonian(const ReducedWaveOperator& x, const MolecularModel& model,
                                    const SampledDrive& drive) {
    const int i0 = x.initial_index;
    const int nt = x.grid.n_samples;
    ComplexSignal h(x.grid);
    // H_eff = E_i - E(t) [C (P_o + X)]_i; the absorber skips channel i.
    Eigen::RowVectorXcd ci = drive.coupling.row(i0);
    for (int k = 0; k < nt; ++k) {
        Complex coup = ci(i0);
        for (int v = 0; v < x.values.rows(); ++v) coup += ci(v) * x.values(v, k);
        h.values[k] = model.basis.energies(i0) - drive.field(k) * coup;
    }
    return h;
}

Eigen::MatrixXcd tilde_h_diag(const ReducedWaveOperator& x, const MolecularModel& model,
                              const SampledDrive& drive) {
    const int i0 = x.initial_index;
    const int nv = static_cast<int>(x.values.rows());
    const int nt = x.grid.n_samples;
    Eigen::MatrixXcd h(nv, nt);
    for (int v = 0; v < nv; ++v) {
        const double civ = model.coupling(i0, v);
        for (int k = 0; k < nt; ++k) {
            // H_vv - X_v H_iv with H_iv = -E(t) C_iv.
            h(v, k) = model.basis.energies(v) - kImag * drive.vopt(k) +
                      drive.field(k) * civ * x.values(v, k);
        }
    }
    return h;
}

Eigen::MatrixXcd increment_delta_x(const Eigen::MatrixXcd& delta, const ComplexSignal& h_eff,
                                   const Eigen::MatrixXcd& h_tilde, const SampledDrive& drive,
                                   int initial_index) {
    const TimeGrid& grid = drive.grid;
    const int nv = static_cast<int>(delta.rows());
    const int nt = grid.n_samples;
    const int j0 = grid.absorber_start();
    const double dt = grid.dt();
    Eigen::MatrixXcd dx = Eigen::MatrixXcd::Zero(nv, nt);

    parallel_for(nv, [&](int v) {
        if (v == initial_index) return;
        // phi = int_0^t (h~ - H_eff) / i
        ComplexSignal integrand(grid);
        for (int k = 0; k < nt; ++k)
            integrand.values[k] = -kImag * (h_tilde(v, k) - h_eff.values[k]);
        ComplexSignal phi = fftint::cumulative_integral_periodic(integrand);

        // Bounded part phi_osc = phi + D and forcing g = Delta e^{-phi_osc}.
        ComplexSignal g(grid);
        for (int k = 0; k < nt; ++k) {
            const Complex phio = phi.values[k] + drive.dabs(k);
            g.values[k] = delta(v, k) * std::exp(-phio);
        }
        ComplexSignal big_i = fftint::cumulative_integral_periodic(g);

        // Physical window: D == 0 there, so this is the exact product form.
        const int spectral_end = std::min(j0, nt - 1);
        for (int k = 0; k <= spectral_end; ++k) {
            const Complex phio = phi.values[k] + drive.dabs(k);
            dx(v, k) = std::exp(phio) * big_i.values[k] / kImag;
        }
        // Absorbing tail: causal recurrence with the exact step kernel from
        // the spectrally computed phi; Simpson-in-frame forcing with cubic
        // midpoint interpolation of phi and Delta.
        auto mid_phi = [&](int j) -> Complex {
            if (j >= 1 && j + 2 < nt)
                return (-phi.values[j - 1] + 9.0 * phi.values[j] + 9.0 * phi.values[j + 1] -
                        phi.values[j + 2]) /
                       16.0;
            return 0.5 * (phi.values[j] + phi.values[j + 1]);
        };
        auto mid_delta = [&](int j) -> Complex {
            if (j >= 1 && j + 2 < nt)
                return (-delta(v, j - 1) + 9.0 * delta(v, j) + 9.0 * delta(v, j + 1) -
                        delta(v, j + 2)) /
                       16.0;
            return 0.5 * (delta(v, j) + delta(v, j + 1));
        };
        for (int j = spectral_end; j < nt - 1; ++j) {
            const Complex kernel = std::exp(phi.values[j + 1] - phi.values[j]);
            const Complex kernel_mid = std::exp(phi.values[j + 1] - mid_phi(j));
            const Complex qj = delta(v, j) / kImag;
            const Complex qj1 = delta(v, j + 1) / kImag;
            const Complex qm = mid_delta(j) / kImag;
            dx(v, j + 1) = kernel * dx(v, j) +
                           (dt / 6.0) * (kernel * qj + 4.0 * kernel_mid * qm + qj1);
        }
    });
    return dx;
}

double global_convergence_factor(const Eigen::MatrixXcd& delta_x, const Eigen::MatrixXcd& x_new) {
    const double denom = x_new.squaredNorm();
    if (denom == 0.0) throw NumericalError("convergence factor: updated operator is identically zero");
    return delta_x.squaredNorm() / denom;
}

IterationReport iterate(ReducedWaveOperator& x, const MolecularModel& model,
                        const SampledDrive& drive) {
    const auto start = std::chrono::steady_clock::now();
    Eigen::MatrixXcd delta = residual_delta(x, model, drive);
    ComplexSignal h_eff = effective_hamiltonian(x, model, drive);
    Eigen::MatrixXcd h_tilde = tilde_h_diag(x, model, drive);
    Eigen::MatrixXcd dx = increment_delta_x(delta, h_eff, h_tilde, drive, x.initial_index);
    x.values += dx;
    x.iteration += 1;
    if (!x.values.allFinite())
        throw DivergenceError("iterate: non-finite wave operator (radius of convergence exceeded)");

    IterationReport report;
    report.n = x.iteration;
    // A zero iterate with a zero increment is the field-free fixed point.
    if (x.values.squaredNorm() == 0.0 && dx.squaredNorm() == 0.0)
        report.convergence_factor = 0.0;
    else
        report.convergence_factor = global_convergence_factor(dx, x.values);
    report.max_residual = delta.cwiseAbs().maxCoeff();
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Eigen::MatrixXcd reconstruct_wavefunction(const ReducedWaveOperator& x,
                                          const ComplexSignal& h_eff) {
    ComplexSignal phase = fftint::cumulative_integral_periodic(h_eff);
    const int nv = static_cast<int>(x.values.rows());
    const int nt = x.grid.n_samples;
    Eigen::MatrixXcd psi(nv, nt);
    for (int k = 0; k < nt; ++k) {
        const Complex u_eff = std::exp(phase.values[k] / kImag);
        for (int v = 0; v < nv; ++v) {
            const Complex omega = x.values(v, k) + (v == x.initial_index ? 1.0 : 0.0);
            psi(v, k) = omega * u_eff;
        }
    }
    return psi;
}

double fubini_study_distance(const ReducedWaveOperator& x, int k) {
    const double norm2 = x.values.col(k).squaredNorm();
    return std::acos(1.0 / std::sqrt(1.0 + norm2));
}

std::vector<double> fubini_study_series(const ReducedWaveOperator& x) {
    std::vector<double> d(static_cast<size_t>(x.grid.n_samples));
    for (int k = 0; k < x.grid.n_samples; ++k) d[static_cast<size_t>(k)] = fubini_study_distance(x, k);
    return d;
}

Eigen::MatrixXcd rdwa_update(const ReducedWaveOperator& x, const MolecularModel& model,
                             const SampledDrive& drive, RdwaVariant variant) {
    const int i0 = x.initial_index;
    const int nv = static_cast<int>(x.values.rows());
    const int nt = x.grid.n_samples;
    Eigen::MatrixXcd delta = residual_delta(x, model, drive);
    ComplexSignal h_eff = effective_hamiltonian(x, model, drive);
    Eigen::MatrixXcd h_tilde = tilde_h_diag(x, model, drive);

    Eigen::MatrixXcd x_new = Eigen::MatrixXcd::Zero(nv, nt);
    if (variant == RdwaVariant::adiabatic) {
        for (int v = 0; v < nv; ++v) {
            if (v == i0) continue;
            for (int k = 0; k < nt; ++k) {
                const Complex denom = h_tilde(v, k) - h_eff.values[k];
                if (std::abs(denom) < 1e-10)
                    throw NumericalError("rdwa: singular update (h~ crosses H_eff)");
                x_new(v, k) = x.values(v, k) - delta(v, k) / denom;
            }
        }
        return x_new;
    }

    // Fourier variant: quotient in the |p> basis with Brillouin-averaged
    // denominators; the -i d/dt diagonal contributes 2 pi p / T.
    Complex h_eff_mean(0.0, 0.0);
    for (int k = 0; k < nt; ++k) h_eff_mean += h_eff.values[k];
    h_eff_mean /= static_cast<double>(nt);

    Eigen::MatrixXcd xdot = row_spectral_derivative(x.values, x.grid);
    Eigen::MatrixXcd y = h_on_omega(x, model, drive);
    const double t_total = x.grid.t_total;
    constexpr double two_pi = 6.283185307179586476925286766559;

    parallel_for(nv, [&](int v) {
        if (v == i0) return;
        Complex h_tilde_mean(0.0, 0.0);
        for (int k = 0; k < nt; ++k) h_tilde_mean += h_tilde(v, k);
        h_tilde_mean /= static_cast<double>(nt);

        std::vector<Complex> numer(static_cast<size_t>(nt));
        for (int k = 0; k < nt; ++k)
            numer[static_cast<size_t>(k)] =
                y(v, k) - kImag * xdot(v, k) - h_tilde(v, k) * x.values(v, k);
        std::vector<Complex> spec(static_cast<size_t>(nt));
        signal::detail::fft_forward(nt, numer.data(), spec.data());
        for (int l = 0; l < nt; ++l) {
            const int p = (l < nt / 2) ? l : l - nt;
            const Complex denom = h_eff_mean - h_tilde_mean - two_pi * p / t_total;
            if (std::abs(denom) < 1e-10)
                throw NumericalError("rdwa: singular Fourier-space denominator");
            spec[static_cast<size_t>(l)] /= denom;
        }
        signal::detail::fft_inverse(nt, spec.data(), numer.data());
        for (int k = 0; k < nt; ++k) x_new(v, k) = numer[static_cast<size_t>(k)];
    });
    return x_new;
}

double PropagationResult::survival_probability() const {
    return probability(x.initial_index);
}

double PropagationResult::probability(int channel) const {
    return std::norm(psi(channel, final_index()));
}

PropagationResult solve(const MolecularModel& model, const TimeGrid& grid,
                        const SolveOptions& options) {
    SampledDrive drive = SampledDrive::sample(model, grid);
    ReducedWaveOperator x = ReducedWaveOperator::zero(grid, model.size(), model.initial_index);

    PropagationResult result;
    Eigen::MatrixXcd best = x.values;
    double best_f = std::numeric_limits<double>::infinity();
    int best_n = 0;
    int consecutive_growth = 0;

    for (int n = 0; n < options.max_iterations; ++n) {
        IterationReport report = iterate(x, model, drive);
        result.history.push_back(report);
        if (options.keep_iterates) result.iterates.push_back(x.values);
        const double f = report.convergence_factor;

        if (f < best_f) {
            best_f = f;
            best = x.values;
            best_n = report.n;
            consecutive_growth = 0;
        } else {
            ++consecutive_growth;
        }

        if (options.run_to_max) continue;
        if (f <= options.tolerance) {
            result.converged = true;
            break;
        }
        // Plateau: relative change below 10% over three successive factors.
        const size_t h = result.history.size();
        if (report.n >= 8 && h >= 3) {
            const double f1 = result.history[h - 2].convergence_factor;
            const double f2 = result.history[h - 3].convergence_factor;
            if (std::abs(f - f1) < 0.1 * f && std::abs(f1 - f2) < 0.1 * f1) {
                result.converged = true;
                break;
            }
        }
        // Noise-floor regrowth after convergence: stop and keep the best iterate.
        if (best_f < 1e-12 && f > 1e3 * best_f) {
            result.converged = true;
            break;
        }
        if (report.n > 5 && consecutive_growth >= 5 && best_f > 1e-6) {
            std::ostringstream msg;
            msg << "solve: convergence factor grew for 5 consecutive iterations (n=" << report.n
                << ", F=" << f << ", best F=" << best_f << " at n=" << best_n << ")";
            throw DivergenceError(msg.str());
        }
    }

    x.values = best;
    x.iteration = best_n;
    result.best_iteration = best_n;
    if (!result.converged && best_f <= options.tolerance) result.converged = true;

    Eigen::MatrixXcd delta = residual_delta(x, model, drive);
    result.residual_fro = delta.norm();
    result.residual_max = delta.cwiseAbs().maxCoeff();
    result.h_eff = effective_hamiltonian(x, model, drive);
    result.psi = reconstruct_wavefunction(x, result.h_eff);
    result.x = std::move(x);
    return result;
}

}  // namespace globalprop::waveop
