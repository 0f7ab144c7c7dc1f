#pragma once

#include <Eigen/Core>

#include <vector>

#include "globalprop/signal.hpp"

namespace globalprop::molecular {

using signal::Complex;
using signal::TimeGrid;

// hbar = 1 throughout (arbitrary units).

struct RadialGrid {
    double r_min = -4.5;
    double r_max = 4.5;
    int n_points = 256;  // power of two for the spectral kinetic operator

    RadialGrid() = default;
    RadialGrid(double rmin, double rmax, int n);
    double spacing() const { return (r_max - r_min) / n_points; }
    double point(int j) const { return r_min + j * spacing(); }
};

// Potential surface: polynomial in R (coeffs[k] multiplies R^k) plus the mass
// entering T = -(1/2m) d^2/dR^2.
struct SurfaceSpec {
    std::vector<double> coefficients;
    double mass = 10.0;

    double evaluate(double r) const;
};

SurfaceSpec double_well_surface();   // -5 R^2 + 0.5 R^3 + R^4
SurfaceSpec upper_quartic_surface(); // 0.2 R^4

struct EigenSolution {
    RadialGrid grid;
    Eigen::VectorXd energies;  // ascending, n_keep of them
    Eigen::MatrixXd vectors;   // n_points x n_keep, <v|v'> = delta with dr weight
};

// Lowest n_keep eigenpairs of T + eps_S(R), the kinetic operator applied
// spectrally on the uniform grid (circulant matrix built from one inverse
// FFT of p^2/2m). Errors if a kept eigenvector fails to decay at the box
// boundary (grid too narrow).
EigenSolution fourier_grid_eigensolve(const SurfaceSpec& surface, const RadialGrid& grid,
                                      int n_keep);

struct Pulse {
    double amplitude = 0.0;  // E_j
    double carrier = 0.0;    // omega_j
    double center = 0.0;     // T_j
    double width = 1.0;      // tau_j
};

struct PulseSet {
    std::vector<Pulse> pulses;
};

// E(t) = sum_j E_j cos(omega_j (t - T_j)) exp(-((t - T_j)/tau_j)^2)
double field_amplitude(double t, const PulseSet& pulses);

// Time-dependent absorbing potential on [T0, T]:
// V_opt(t) = A sin^p(pi (t - T0)/(T - T0)), A fixed by the integrated
// strength: int V_opt dt = integrated_strength (in units of hbar).
struct AbsorberSpec {
    double integrated_strength = 25.0;
    int shape_power = 4;  // even; the bump is C^{p-1}-periodic at the seams

    double amplitude(double t0, double t) const;
    double value(double time, double t0, double t) const;
    // D(t) = int_0^t V_opt dt' (closed form for p in {2,4,6}).
    double accumulated(double time, double t0, double t) const;
};

// Two-surface vibrational model: per-surface eigenbasis, cross-surface
// overlap matrix, global index map v = 0..n_keep-1 (surface 1) then
// n_keep..2n_keep-1 (surface 2).
struct VibrationalBasis {
    EigenSolution surface1;
    EigenSolution surface2;
    Eigen::MatrixXd overlap;   // n_keep x n_keep, <v,S1|v',S2> with dr weight
    Eigen::VectorXd energies;  // concatenated, size 2 n_keep
    int n_keep = 0;

    int size() const { return 2 * n_keep; }
};

VibrationalBasis build_vibrational_basis(const SurfaceSpec& s1, const SurfaceSpec& s2,
                                         const RadialGrid& grid, int n_keep);

// (omega1, omega2) = (E(7,S2) - E(1,S1), E(7,S2) - E(6,S1)); the Raman
// identity omega1 - omega2 = E(6,S1) - E(1,S1) holds exactly.
std::pair<double, double> resonance_frequencies(const VibrationalBasis& basis);

// -i V_opt(t) on every channel except the initial one.
Eigen::VectorXcd absorbing_potential(double t, const AbsorberSpec& spec, const TimeGrid& grid,
                                     int initial_index, int n_states);

// Everything the propagators consume. coupling is the symmetric dipole matrix
// (zero diagonal blocks, overlap off-diagonal blocks) scaled by the dipole
// moment; the field enters as H(t) = diag(E_v) - field_scale E(t) coupling
// - i V_opt(t) Q_o.
struct MolecularModel {
    VibrationalBasis basis;
    PulseSet pulses;
    AbsorberSpec absorber;
    double dipole = 1.0;
    double field_scale = 1.0;
    int initial_index = 0;  // (v=1, S=1)
    Eigen::MatrixXd coupling;

    int size() const { return basis.size(); }
    double field(double t) const { return field_scale * field_amplitude(t, pulses); }
};

MolecularModel build_model(const SurfaceSpec& s1, const SurfaceSpec& s2, const RadialGrid& grid,
                           int n_keep, const PulseSet& pulses, const AbsorberSpec& absorber,
                           double dipole = 1.0, double field_scale = 1.0, int initial_index = 0);

// Full H(t) in the vibrational basis (diagonal energies, cross-surface dipole
// blocks, optional absorber on the diagonal).
Eigen::MatrixXcd hamiltonian_matrix(double t, const MolecularModel& model, const TimeGrid& grid,
                                    bool with_absorber = false);

}  // namespace globalprop::molecular
