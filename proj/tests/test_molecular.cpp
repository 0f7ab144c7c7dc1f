#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "globalprop/config.hpp"
#include "globalprop/molecular.hpp"
#include "globalprop/signal.hpp"

using namespace globalprop;
using molecular::RadialGrid;
using molecular::SurfaceSpec;
using signal::Complex;

namespace {
const RadialGrid kDefaultGrid{-4.5, 4.5, 256};

const molecular::VibrationalBasis& default_basis() {
    static const molecular::VibrationalBasis basis = molecular::build_vibrational_basis(
        molecular::double_well_surface(), molecular::upper_quartic_surface(), kDefaultGrid, 30);
    return basis;
}
}  // namespace

TEST_CASE("harmonic oscillator spacing") {
    SurfaceSpec harmonic{{0.0, 0.0, 0.5}, 10.0};  // k = 1
    // Wider box: the oscillator length (m omega)^{-1/2} = 0.56 needs more
    // room than the quartic wells before the kept states decay at the edge.
    RadialGrid wide{-7.0, 7.0, 256};
    auto sol = molecular::fourier_grid_eigensolve(harmonic, wide, 8);
    const double omega = std::sqrt(1.0 / 10.0);
    for (int v = 0; v + 1 < 8; ++v)
        CHECK(std::abs(sol.energies(v + 1) - sol.energies(v) - omega) < 1e-8);
    CHECK(std::abs(sol.energies(0) - 0.5 * omega) < 1e-8);
}

TEST_CASE("double-well and quartic level structure") {
    const auto& basis = default_basis();
    CHECK(std::abs(basis.surface1.energies(1) - basis.surface1.energies(0) - 1.451) < 2e-3);
    auto [omega1, omega2] = molecular::resonance_frequencies(basis);
    CHECK(std::abs(omega1 - 9.98449) < 1e-3);
    CHECK(std::abs(omega2 - 4.77725) < 1e-3);
    // Raman identity of differences.
    const double gap61 = basis.surface1.energies(5) - basis.surface1.energies(0);
    CHECK(std::abs((omega1 - omega2) - gap61) < 1e-12);
}

TEST_CASE("eigenvalues are grid-converged") {
    RadialGrid doubled{-4.5, 4.5, 512};
    auto coarse1 = molecular::fourier_grid_eigensolve(molecular::double_well_surface(),
                                                      kDefaultGrid, 30);
    auto fine1 = molecular::fourier_grid_eigensolve(molecular::double_well_surface(), doubled, 30);
    auto coarse2 = molecular::fourier_grid_eigensolve(molecular::upper_quartic_surface(),
                                                      kDefaultGrid, 30);
    auto fine2 = molecular::fourier_grid_eigensolve(molecular::upper_quartic_surface(), doubled, 30);
    for (int v = 0; v < 30; ++v) {
        CHECK(std::abs(coarse1.energies(v) - fine1.energies(v)) < 1e-9);
        CHECK(std::abs(coarse2.energies(v) - fine2.energies(v)) < 1e-9);
    }
}

TEST_CASE("narrow box is rejected") {
    RadialGrid narrow{-1.5, 1.5, 64};
    CHECK_THROWS_AS(
        molecular::fourier_grid_eigensolve(molecular::double_well_surface(), narrow, 30),
        NumericalError);
}

TEST_CASE("basis orthonormality and overlap bounds") {
    const auto& basis = default_basis();
    const double dr = kDefaultGrid.spacing();
    Eigen::MatrixXd gram1 = basis.surface1.vectors.transpose() * basis.surface1.vectors * dr;
    Eigen::MatrixXd gram2 = basis.surface2.vectors.transpose() * basis.surface2.vectors * dr;
    CHECK((gram1 - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((gram2 - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-10);
    for (int c = 0; c < 30; ++c) CHECK(basis.overlap.col(c).norm() <= 1.0 + 1e-12);
    // The states named by the carrier choice really are strongly coupled.
    CHECK(std::abs(basis.overlap(0, 6)) > 0.3);
    CHECK(std::abs(basis.overlap(5, 6)) > 0.3);
}

TEST_CASE("pulse field values") {
    molecular::PulseSet set1;
    auto [omega1, omega2] = molecular::resonance_frequencies(default_basis());
    set1.pulses = {{0.05, omega1, 23.5, 3.90}, {0.08, omega2, 21.5, 4.50}};

    molecular::PulseSet first_only;
    first_only.pulses = {set1.pulses[0]};
    CHECK(molecular::field_amplitude(23.5, first_only) == 0.05);  // cos(0) e^0

    double peak = 0.0;
    for (double t = 0.0; t < 45.0; t += 0.001)
        peak = std::max(peak, std::abs(molecular::field_amplitude(t, set1)));
    // The slower envelope still carries exp(-(21.5/4.5)^2) ~ 1e-10 at t = 0.
    CHECK(std::abs(molecular::field_amplitude(0.0, set1)) < 1e-9 * peak);
    CHECK(std::abs(molecular::field_amplitude(45.0, set1)) < 1e-9 * peak);

    molecular::PulseSet envelope;
    envelope.pulses = {{0.37, 0.0, 21.5, 4.50}};
    CHECK(molecular::field_amplitude(21.5, envelope) == 0.37);
    CHECK(molecular::field_amplitude(20.0, envelope) < 0.37);
}

TEST_CASE("field spectrum is resolved on the run grid") {
    cli::RunConfig config = cli::builtin_example(1);
    auto model = cli::make_model(config);
    signal::TimeGrid grid = cli::make_grid(config);
    signal::ComplexSignal field(grid);
    for (int k = 0; k < grid.n_samples; ++k)
        field.values[k] = Complex(model.field(grid.time_at(k)), 0.0);
    auto spec = signal::forward_dft(field);
    double peak = 0.0, tail = 0.0;
    for (int l = 0; l < grid.n_samples; ++l)
        peak = std::max(peak, std::abs(spec.coefficients[l]));
    for (int l = grid.n_samples / 2 - 64; l <= grid.n_samples / 2 + 64; ++l)
        tail = std::max(tail, std::abs(spec.coefficients[l]));
    CHECK(tail < 1e-12 * peak);
}

TEST_CASE("hamiltonian matrix structure") {
    cli::RunConfig config = cli::builtin_example(1);
    auto model = cli::make_model(config);
    signal::TimeGrid grid = cli::make_grid(config);

    auto quiet = model;
    quiet.pulses.pulses.clear();  // E identically zero
    auto h0 = molecular::hamiltonian_matrix(17.0, quiet, grid);
    for (int v = 0; v < model.size(); ++v)
        for (int w = 0; w < model.size(); ++w) {
            if (v == w) continue;
            CHECK(h0(v, w) == Complex(0.0, 0.0));
        }

    const double t_peak = 23.5;
    auto h = molecular::hamiltonian_matrix(t_peak, model, grid);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    // <1|H|37> against an independent trapezoid quadrature of the product of
    // eigenvectors (global index 37 = state 7 of surface 2).
    const auto& basis = model.basis;
    double trap = 0.0;
    const double dr = kDefaultGrid.spacing();
    for (int j = 0; j + 1 < kDefaultGrid.n_points; ++j)
        trap += 0.5 * dr *
                (basis.surface1.vectors(j, 0) * basis.surface2.vectors(j, 6) +
                 basis.surface1.vectors(j + 1, 0) * basis.surface2.vectors(j + 1, 6));
    const Complex coupling = h(0, 36);
    CHECK(std::abs(coupling) > 1e-4);
    const double expected = -model.field(t_peak) * trap;
    CHECK(std::abs(coupling.real() / expected - 1.0) < 1e-8);

    // With the absorber folded in, the anti-Hermitian part is -i V_opt Q_o.
    const double t_tail = 0.5 * (grid.t_physical_end + grid.t_total);
    auto habs = molecular::hamiltonian_matrix(t_tail, model, grid, true);
    Eigen::MatrixXcd anti = 0.5 * (habs - habs.adjoint());
    const double vopt = model.absorber.value(t_tail, grid.t_physical_end, grid.t_total);
    for (int v = 0; v < model.size(); ++v) {
        const Complex expected_diag =
            (v == model.initial_index) ? Complex(0.0, 0.0) : Complex(0.0, -vopt);
        CHECK(std::abs(anti(v, v) - expected_diag) < 1e-13);
    }
}

TEST_CASE("absorbing potential window") {
    molecular::AbsorberSpec spec;  // integral 25, sin^4 bump
    signal::TimeGrid grid(45.0, 51.2, 4096);
    auto before = molecular::absorbing_potential(10.0, spec, grid, 0, 60);
    CHECK(before.cwiseAbs().maxCoeff() == 0.0);

    const double mid = 0.5 * (45.0 + 51.2);
    auto at_mid = molecular::absorbing_potential(mid, spec, grid, 0, 60);
    const double peak = spec.amplitude(45.0, 51.2);  // sin^4 = 1 at the midpoint
    CHECK(at_mid(0) == Complex(0.0, 0.0));
    for (int v = 1; v < 60; ++v) CHECK(std::abs(at_mid(v) - Complex(0.0, -peak)) < 1e-12);

    // V_opt(T0) = 0, continuity at the window edge.
    CHECK(spec.value(45.0, 45.0, 51.2) == 0.0);
    CHECK(spec.value(45.0 + 1e-9, 45.0, 51.2) < 1e-12);

    // Integrated strength matches the closed form.
    CHECK(std::abs(spec.accumulated(51.2, 45.0, 51.2) - 25.0) < 1e-12);
    // Channel i stays zero at every probed time.
    for (double t : {44.0, 46.0, 48.0, 51.0})
        CHECK(molecular::absorbing_potential(t, spec, grid, 7, 60)(7) == Complex(0.0, 0.0));
}
