#pragma once

#include <Eigen/Core>

#include <vector>

#include "globalprop/molecular.hpp"
#include "globalprop/signal.hpp"

namespace globalprop::waveop {

using molecular::MolecularModel;
using signal::Complex;
using signal::ComplexSignal;
using signal::TimeGrid;

// X_v(t_k), v over the molecular basis, k over the time grid. Row
// initial_index is identically zero (X = Q_o X P_o) and X(t_0) = 0.
struct ReducedWaveOperator {
    TimeGrid grid;
    int initial_index = 0;
    int iteration = 0;
    Eigen::MatrixXcd values;  // N_v x N_t

    static ReducedWaveOperator zero(const TimeGrid& grid, int n_states, int initial_index);
};

// Model quantities sampled once per grid: field E(t_k), absorber V_opt(t_k)
// and its running integral D(t_k) = int_0^{t_k} V_opt.
struct SampledDrive {
    TimeGrid grid;
    Eigen::VectorXd field;
    Eigen::VectorXd vopt;
    Eigen::VectorXd dabs;
    Eigen::MatrixXcd coupling;  // complex copy of the dipole matrix

    static SampledDrive sample(const MolecularModel& model, const TimeGrid& grid);
};

struct IterationReport {
    int n = 0;
    double convergence_factor = 0.0;  // |dX|_F^2 / |X'|_F^2
    double max_residual = 0.0;        // max |Delta| entering the increment
    double seconds = 0.0;
};

// Delta_v(t) = [H(1+X)]_v - X_v H_eff - i Xdot_v (hbar = 1), row i zero, the
// time derivative taken spectrally. The absorber is folded into H.
Eigen::MatrixXcd residual_delta(const ReducedWaveOperator& x, const MolecularModel& model,
                                const SampledDrive& drive);

// H_eff(t) = H_ii(t) + sum_v H_iv(t) X_v(t); scalar signal.
ComplexSignal effective_hamiltonian(const ReducedWaveOperator& x, const MolecularModel& model,
                                    const SampledDrive& drive);

// h~_vv(t) = H_vv(t) - X_v(t) H_iv(t) per channel (row i unused).
Eigen::MatrixXcd tilde_h_diag(const ReducedWaveOperator& x, const MolecularModel& model,
                              const SampledDrive& drive);

// Exponential-integral solution of i d(dX)/dt = Delta - dX H_eff + h~ dX per
// channel. The integrating factor is split as phi = phi_osc - D: the two FFT
// cumulative integrals act on bounded integrands and give the physical window
// exactly; the absorbing tail is advanced by a causal recurrence with the
// exact per-step kernel e^{phi_{j+1} - phi_j}, so the absorber decay never
// amplifies the residual's noise floor.
Eigen::MatrixXcd increment_delta_x(const Eigen::MatrixXcd& delta, const ComplexSignal& h_eff,
                                   const Eigen::MatrixXcd& h_tilde, const SampledDrive& drive,
                                   int initial_index);

// F = |dX|_F^2 / |X'|_F^2.
double global_convergence_factor(const Eigen::MatrixXcd& delta_x, const Eigen::MatrixXcd& x_new);

// One step X -> X + dX through residual -> H_eff -> h~ -> increment.
IterationReport iterate(ReducedWaveOperator& x, const MolecularModel& model,
                        const SampledDrive& drive);

// Psi_v(t) = (delta_vi + X_v(t)) U_eff(t), U_eff = exp((1/i) int_0^t H_eff).
Eigen::MatrixXcd reconstruct_wavefunction(const ReducedWaveOperator& x,
                                          const ComplexSignal& h_eff);

// arccos(1/sqrt(1 + |X(t_k)|^2)).
double fubini_study_distance(const ReducedWaveOperator& x, int k);
std::vector<double> fubini_study_series(const ReducedWaveOperator& x);

// Divergent approximate updates, kept as diagnostics. Both return the full
// next iterate X'.
enum class RdwaVariant { adiabatic, fourier };
Eigen::MatrixXcd rdwa_update(const ReducedWaveOperator& x, const MolecularModel& model,
                             const SampledDrive& drive, RdwaVariant variant);

struct SolveOptions {
    double tolerance = 1e-16;
    int max_iterations = 25;
    bool keep_iterates = false;  // snapshot X after each iteration (defect plots)
    bool run_to_max = false;     // disable early stopping; iterate max_iterations times
};

struct PropagationResult {
    ReducedWaveOperator x;
    ComplexSignal h_eff;
    Eigen::MatrixXcd psi;
    std::vector<IterationReport> history;
    std::vector<Eigen::MatrixXcd> iterates;  // only when keep_iterates
    bool converged = false;
    int best_iteration = 0;
    double residual_fro = 0.0;  // |H_F Omega - Omega H_eff Omega|_F at the returned X
    double residual_max = 0.0;

    int final_index() const { return x.grid.absorber_start(); }
    double survival_probability() const;
    double probability(int channel) const;  // at the final index
};

// Iterates from X = 0 until F <= tolerance, a plateau (< 10% change over 3
// iterations, n >= 8), or max_iterations; returns the best iterate. Sustained
// F growth before any convergence raises DivergenceError with the partial
// history in the message.
PropagationResult solve(const MolecularModel& model, const TimeGrid& grid,
                        const SolveOptions& options = {});

}  // namespace globalprop::waveop
