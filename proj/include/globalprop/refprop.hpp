#pragma once

#include <Eigen/Core>

#include "globalprop/molecular.hpp"

namespace globalprop::refprop {

using molecular::MolecularModel;
using signal::Complex;

enum class Method { split_sod, sil };

struct StepPropagatorConfig {
    int n_steps = 1024;
    Method method = Method::sil;
    int lanczos_dim = 10;
    int save_stride = 0;  // 0 saves only the final state
};

struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXcd states;  // N_v x n_saved

    Eigen::VectorXcd final_state() const { return states.col(states.cols() - 1); }
};

// Strang-style split over [0, t_end]: exact half-step diagonal phases around a
// coupling substep with the matrix frozen at the step midpoint, the substep
// applied by second-order differencing (1 - i dt W - dt^2 W^2 / 2). Absorber
// off; second order overall.
Trajectory split_sod_propagate(const Eigen::VectorXcd& psi0, const MolecularModel& model,
                               double t_end, const StepPropagatorConfig& config);

// Short iterative Lanczos: per step a Krylov space of dimension lanczos_dim is
// built from H(t + dt/2) with full reorthogonalization, the tridiagonal
// projection exponentiated exactly. Krylov breakdown (beta < 1e-14) truncates
// the subspace; it is not an error.
Trajectory sil_propagate(const Eigen::VectorXcd& psi0, const MolecularModel& model, double t_end,
                         const StepPropagatorConfig& config);

// Omega_v(t) = Psi_v(t) / Psi_i(t) for the one-dimensional model space.
Eigen::VectorXcd reconstruct_wave_operator(const Eigen::VectorXcd& psi, int initial_index);

// F_C = sum_v |Omega_A(v) - Omega_B(v)|^2 at a common time.
double cross_convergence_factor(const Eigen::VectorXcd& omega_a, const Eigen::VectorXcd& omega_b);

}  // namespace globalprop::refprop
