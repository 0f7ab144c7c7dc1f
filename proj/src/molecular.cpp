#include "globalprop/molecular.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "globalprop/errors.hpp"

namespace globalprop::molecular {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
}

RadialGrid::RadialGrid(double rmin, double rmax, int n) : r_min(rmin), r_max(rmax), n_points(n) {
    if (!(rmin < rmax)) throw ConfigError("radial grid: r_min must be below r_max");
    if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("radial grid: n_points must be a power of two >= 8");
}

double SurfaceSpec::evaluate(double r) const {
    double v = 0.0;
    for (size_t k = coefficients.size(); k-- > 0;) v = v * r + coefficients[k];
    return v;
}

SurfaceSpec double_well_surface() { return SurfaceSpec{{0.0, 0.0, -5.0, 0.5, 1.0}, 10.0}; }
SurfaceSpec upper_quartic_surface() { return SurfaceSpec{{0.0, 0.0, 0.0, 0.0, 0.2}, 10.0}; }

EigenSolution fourier_grid_eigensolve(const SurfaceSpec& surface, const RadialGrid& grid,
                                      int n_keep) {
    const int n = grid.n_points;
    if (n_keep < 1 || n_keep > n) throw ConfigError("eigensolve: n_keep out of range");
    const double box = grid.r_max - grid.r_min;

    // Kinetic matrix: circulant with first row from one inverse FFT of the
    // momentum-space weights p^2 / 2m.
    std::vector<Complex> w(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        int lm = (l <= n / 2) ? l : l - n;
        double p = kTwoPi * lm / box;
        w[static_cast<size_t>(l)] = p * p / (2.0 * surface.mass);
    }
    std::vector<Complex> c(static_cast<size_t>(n));
    signal::detail::fft_inverse(n, w.data(), c.data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));  // undo 1/sqrt(N) convention

    Eigen::MatrixXd h(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            h(j, k) = c[static_cast<size_t>((j - k + n) % n)].real() * scale;
    for (int j = 0; j < n; ++j) h(j, j) += surface.evaluate(grid.point(j));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolve: solver failed");

    EigenSolution out;
    out.grid = grid;
    out.energies = solver.eigenvalues().head(n_keep);
    out.vectors = solver.eigenvectors().leftCols(n_keep);

    // Normalize with the dr quadrature weight and fix signs deterministically.
    const double dr = grid.spacing();
    out.vectors /= std::sqrt(dr);
    for (int k = 0; k < n_keep; ++k) {
        int jmax = 0;
        out.vectors.col(k).cwiseAbs().maxCoeff(&jmax);
        if (out.vectors(jmax, k) < 0.0) out.vectors.col(k) = -out.vectors.col(k);
    }

    for (int k = 0; k < n_keep; ++k) {
        double edge = std::max(std::abs(out.vectors(0, k)), std::abs(out.vectors(n - 1, k)));
        if (edge * std::sqrt(dr) > 1e-10)
            throw NumericalError(
                "eigensolve: kept eigenvector does not decay at the box boundary; widen the radial grid");
    }
    return out;
}

double field_amplitude(double t, const PulseSet& pulses) {
    double e = 0.0;
    for (const auto& p : pulses.pulses) {
        const double d = (t - p.center) / p.width;
        e += p.amplitude * std::cos(p.carrier * (t - p.center)) * std::exp(-d * d);
    }
    return e;
}

double AbsorberSpec::amplitude(double t0, double t) const {
    const double window = t - t0;
    if (!(window > 0.0)) return 0.0;
    double mean;  // mean of sin^p over a half period
    switch (shape_power) {
        case 2: mean = 1.0 / 2.0; break;
        case 4: mean = 3.0 / 8.0; break;
        case 6: mean = 5.0 / 16.0; break;
        default: throw ConfigError("absorber: shape_power must be 2, 4 or 6");
    }
    return integrated_strength / (window * mean);
}

double AbsorberSpec::value(double time, double t0, double t) const {
    if (time <= t0 || !(t > t0)) return 0.0;
    const double u = kPi * (time - t0) / (t - t0);
    return amplitude(t0, t) * std::pow(std::sin(u), shape_power);
}

double AbsorberSpec::accumulated(double time, double t0, double t) const {
    if (!(t > t0)) return 0.0;
    double u = kPi * std::clamp((time - t0) / (t - t0), 0.0, 1.0);
    const double a = amplitude(t0, t);
    const double pre = a * (t - t0) / kPi;
    switch (shape_power) {
        case 2:
            return pre * (u / 2.0 - std::sin(2.0 * u) / 4.0);
        case 4:
            return pre * (3.0 * u / 8.0 - std::sin(2.0 * u) / 4.0 + std::sin(4.0 * u) / 32.0);
        case 6:
            return pre * (5.0 * u / 16.0 - 15.0 * std::sin(2.0 * u) / 64.0 +
                          3.0 * std::sin(4.0 * u) / 64.0 - std::sin(6.0 * u) / 192.0);
        default:
            throw ConfigError("absorber: shape_power must be 2, 4 or 6");
    }
}

VibrationalBasis build_vibrational_basis(const SurfaceSpec& s1, const SurfaceSpec& s2,
                                         const RadialGrid& grid, int n_keep) {
    VibrationalBasis b;
    b.n_keep = n_keep;
    b.surface1 = fourier_grid_eigensolve(s1, grid, n_keep);
    b.surface2 = fourier_grid_eigensolve(s2, grid, n_keep);
    b.overlap = (b.surface1.vectors.transpose() * b.surface2.vectors) * grid.spacing();
    b.energies.resize(2 * n_keep);
    b.energies << b.surface1.energies, b.surface2.energies;
    return b;
}

std::pair<double, double> resonance_frequencies(const VibrationalBasis& basis) {
    if (basis.n_keep < 7) throw ConfigError("resonance frequencies: need at least 7 states per surface");
    const double e72 = basis.surface2.energies(6);
    return {e72 - basis.surface1.energies(0), e72 - basis.surface1.energies(5)};
}

Eigen::VectorXcd absorbing_potential(double t, const AbsorberSpec& spec, const TimeGrid& grid,
                                     int initial_index, int n_states) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_states);
    const double vopt = spec.value(t, grid.t_physical_end, grid.t_total);
    for (int k = 0; k < n_states; ++k)
        if (k != initial_index) v(k) = Complex(0.0, -vopt);
    return v;
}

MolecularModel build_model(const SurfaceSpec& s1, const SurfaceSpec& s2, const RadialGrid& grid,
                           int n_keep, const PulseSet& pulses, const AbsorberSpec& absorber,
                           double dipole, double field_scale, int initial_index) {
    MolecularModel m;
    m.basis = build_vibrational_basis(s1, s2, grid, n_keep);
    m.pulses = pulses;
    m.absorber = absorber;
    m.dipole = dipole;
    m.field_scale = field_scale;
    m.initial_index = initial_index;
    const int nk = n_keep;
    m.coupling = Eigen::MatrixXd::Zero(2 * nk, 2 * nk);
    m.coupling.topRightCorner(nk, nk) = dipole * m.basis.overlap;
    m.coupling.bottomLeftCorner(nk, nk) = dipole * m.basis.overlap.transpose();
    return m;
}

Eigen::MatrixXcd hamiltonian_matrix(double t, const MolecularModel& model, const TimeGrid& grid,
                                    bool with_absorber) {
    const int n = model.size();
    Eigen::MatrixXcd h = (-model.field(t) * model.coupling).cast<Complex>();
    h += model.basis.energies.asDiagonal().toDenseMatrix().cast<Complex>();
    if (with_absorber)
        h += absorbing_potential(t, model.absorber, grid, model.initial_index, n).asDiagonal();
    return h;
}

}  // namespace globalprop::molecular
