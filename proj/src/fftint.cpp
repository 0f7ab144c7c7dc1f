#include "globalprop/fftint.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace globalprop::fftint {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

MuCoefficients mu_coefficients(const TimeGrid& grid) {
    const int n = grid.n_samples;
    const double t = grid.t_total;
    MuCoefficients m{grid, std::vector<Complex>(static_cast<size_t>(n))};
    for (int l = 1; l < n; ++l) {
        int lm = (l < n / 2) ? l : l - n;  // Nyquist joins the negative branch
        m.mu[l] = Complex(0.0, -t / (kTwoPi * lm));
    }
    return m;
}

ComplexSignal cumulative_integral_periodic(const ComplexSignal& f) {
    const int n = f.grid.n_samples;
    const double t = f.grid.t_total;
    std::vector<Complex> spec(static_cast<size_t>(n));
    signal::detail::fft_forward(n, f.values.data(), spec.data());
    const Complex mean_coeff = spec[0];

    MuCoefficients m = mu_coefficients(f.grid);
    Complex a(0.0, 0.0);
    for (int l = 1; l < n; ++l) {
        spec[l] *= m.mu[l];
        a -= spec[l];
    }
    spec[0] = a;

    ComplexSignal integral(f.grid);
    signal::detail::fft_inverse(n, spec.data(), integral.values.data());

    const Complex slope = mean_coeff * (t / std::sqrt(static_cast<double>(n)));
    for (int j = 0; j < n; ++j)
        integral.values[j] += slope * (static_cast<double>(j) / n);

    // The a-coefficient construction makes I(t_0) vanish analytically; remove
    // the transform's roundoff residue so it vanishes exactly.
    const Complex residue = integral.values[0];
    for (auto& v : integral.values) v -= residue;
    return integral;
}

namespace {

// One-sided 4th-order stencils. sign = +1 reads forward from `at`,
// sign = -1 reads backward.
Complex fd_first(std::span<const Complex> f, int at, int sign, double h) {
    auto v = [&](int k) { return f[static_cast<size_t>(at + sign * k)]; };
    return (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) /
           (12.0 * h * sign);
}

Complex fd_second(std::span<const Complex> f, int at, int sign, double h) {
    auto v = [&](int k) { return f[static_cast<size_t>(at + sign * k)]; };
    return (45.0 * v(0) - 154.0 * v(1) + 214.0 * v(2) - 156.0 * v(3) + 61.0 * v(4) -
            10.0 * v(5)) /
           (12.0 * h * h);
}

Complex fd_third(std::span<const Complex> f, int at, int sign, double h) {
    auto v = [&](int k) { return f[static_cast<size_t>(at + sign * k)]; };
    return (-2.5 * v(0) + 9.0 * v(1) - 12.0 * v(2) + 7.0 * v(3) - 1.5 * v(4)) /
           (h * h * h * sign);
}

}  // namespace

ComplexSignal hermite_extension(std::span<const Complex> physical, const TimeGrid& grid,
                                const ExtensionOptions& options) {
    const int n = grid.n_samples;
    const int j0 = grid.absorber_start();
    if (j0 >= n) throw ConfigError("hermite extension: grid has no extension interval (T0 == T)");
    if (static_cast<int>(physical.size()) < j0)
        throw ConfigError("hermite extension: need samples up to the extension start");
    const double h = grid.dt();

    // Seam data. With analytic endpoints the bridge is anchored at T0 itself;
    // otherwise at the last given sample, where the stencils live. The
    // stencil path also estimates third derivatives so both seams come out
    // C^3 (degree-7 bridge); the analytic path matches the supplied data
    // exactly (C^2, degree-5 bridge).
    double anchor;
    Complex a0, a1, a2x2, w0, w1, w2;  // a2x2 = f''(anchor)
    Complex a3x6(0.0, 0.0), w3(0.0, 0.0);  // third derivatives (stencil path)
    const bool with_third = !options.endpoints.has_value();
    if (options.endpoints) {
        const EndpointData& e = *options.endpoints;
        anchor = grid.t_physical_end;
        a0 = e.f_end;
        a1 = e.df_end;
        a2x2 = e.ddf_end;
        w0 = e.f_start;
        w1 = e.df_start;
        w2 = e.ddf_start;
    } else {
        if (j0 < 6) throw ConfigError("hermite extension: too few samples for the boundary stencils");
        anchor = grid.time_at(j0 - 1);
        a0 = physical[static_cast<size_t>(j0 - 1)];
        a1 = fd_first(physical, j0 - 1, -1, h);
        a2x2 = fd_second(physical, j0 - 1, -1, h);
        a3x6 = fd_third(physical, j0 - 1, -1, h);
        w0 = physical[0];
        w1 = fd_first(physical, 0, +1, h);
        w2 = fd_second(physical, 0, +1, h);
        w3 = fd_third(physical, 0, +1, h);
    }
    const double delta = grid.t_total - anchor;
    if (!(delta > 0.0)) throw ConfigError("hermite extension: singular bridge (zero-length interval)");

    const Complex a2 = 0.5 * a2x2;
    const double d2 = delta * delta, d3 = d2 * delta, d4 = d3 * delta, d5 = d4 * delta,
                 d6 = d5 * delta, d7 = d6 * delta;

    std::array<Complex, 8> coeff{};  // a0..a7
    coeff[0] = a0;
    coeff[1] = a1;
    coeff[2] = a2;

    auto check_residual = [](const auto& sys, const auto& sol, const auto& rhs) {
        const double resid = (sys * sol - rhs).norm();
        const double scale = rhs.norm();
        if (scale > 0.0 && resid > 1e-10 * scale)
            throw NumericalError("hermite extension: bridge system residual above tolerance");
    };

    if (options.zero_integral) {
        Eigen::Matrix4cd sys;
        sys << d3, d4, d5, d6,
               3.0 * d2, 4.0 * d3, 5.0 * d4, 6.0 * d5,
               6.0 * delta, 12.0 * d2, 20.0 * d3, 30.0 * d4,
               d4 / 4.0, d5 / 5.0, d6 / 6.0, d7 / 7.0;
        Eigen::Vector4cd rhs;
        rhs << w0 - a0 - a1 * delta - a2 * d2,
               w1 - a1 - 2.0 * a2 * delta,
               w2 - 2.0 * a2,
               -a0 * delta - a1 * d2 / 2.0 - a2 * d3 / 3.0;
        Eigen::Vector4cd sol = Eigen::PartialPivLU<Eigen::Matrix4cd>(sys).solve(rhs);
        check_residual(sys, sol, rhs);
        for (int k = 0; k < 4; ++k) coeff[static_cast<size_t>(3 + k)] = sol(k);
    } else if (with_third) {
        coeff[3] = a3x6 / 6.0;
        Eigen::Matrix4cd sys;
        sys << d4, d5, d6, d7,
               4.0 * d3, 5.0 * d4, 6.0 * d5, 7.0 * d6,
               12.0 * d2, 20.0 * d3, 30.0 * d4, 42.0 * d5,
               24.0 * delta, 60.0 * d2, 120.0 * d3, 210.0 * d4;
        Eigen::Vector4cd rhs;
        rhs << w0 - a0 - a1 * delta - a2 * d2 - coeff[3] * d3,
               w1 - a1 - 2.0 * a2 * delta - 3.0 * coeff[3] * d2,
               w2 - 2.0 * a2 - 6.0 * coeff[3] * delta,
               w3 - 6.0 * coeff[3];
        Eigen::Vector4cd sol = Eigen::PartialPivLU<Eigen::Matrix4cd>(sys).solve(rhs);
        check_residual(sys, sol, rhs);
        for (int k = 0; k < 4; ++k) coeff[static_cast<size_t>(4 + k)] = sol(k);
    } else {
        Eigen::Matrix3cd sys;
        sys << d3, d4, d5,
               3.0 * d2, 4.0 * d3, 5.0 * d4,
               6.0 * delta, 12.0 * d2, 20.0 * d3;
        Eigen::Vector3cd rhs;
        rhs << w0 - a0 - a1 * delta - a2 * d2,
               w1 - a1 - 2.0 * a2 * delta,
               w2 - 2.0 * a2;
        Eigen::Vector3cd sol = Eigen::PartialPivLU<Eigen::Matrix3cd>(sys).solve(rhs);
        check_residual(sys, sol, rhs);
        for (int k = 0; k < 3; ++k) coeff[static_cast<size_t>(3 + k)] = sol(k);
    }

    ComplexSignal out(grid);
    for (int j = 0; j < j0; ++j) out.values[j] = physical[static_cast<size_t>(j)];
    for (int j = j0; j < n; ++j) {
        const double s = grid.time_at(j) - anchor;
        Complex acc(0.0, 0.0);
        for (size_t k = coeff.size(); k-- > 0;) acc = acc * s + coeff[k];
        out.values[j] = acc;
    }
    return out;
}

ComplexSignal cumulative_integral(const ComplexSignal& f, IntegrationMode mode,
                                  const ExtensionOptions& options) {
    if (mode == IntegrationMode::periodic) return cumulative_integral_periodic(f);
    if (f.grid.absorber_start() >= f.grid.n_samples)
        throw ConfigError("cumulative integral: extend mode requires T > T0");
    ComplexSignal extended = hermite_extension(
        std::span<const Complex>(f.values.data(), f.values.size()), f.grid, options);
    return cumulative_integral_periodic(extended);
}

std::vector<Complex> simpson_prefix(std::span<const Complex> v, double h) {
    const int n = static_cast<int>(v.size());
    if (n < 3) throw ConfigError("simpson: need at least 3 samples");
    std::vector<Complex> out(static_cast<size_t>(n));
    out[0] = Complex(0.0, 0.0);
    for (int j = 2; j < n; j += 2)
        out[j] = out[j - 2] + (h / 3.0) * (v[j - 2] + 4.0 * v[j - 1] + v[j]);
    out[1] = (h / 12.0) * (5.0 * v[0] + 8.0 * v[1] - v[2]);
    for (int j = 3; j < n; j += 2)
        out[j] = out[j - 1] + (h / 12.0) * (-v[j - 2] + 8.0 * v[j - 1] + 5.0 * v[j]);
    return out;
}

ComplexSignal simpson_cumulative(const ComplexSignal& f) {
    ComplexSignal out(f.grid);
    out.values = simpson_prefix(std::span<const Complex>(f.values.data(), f.values.size()),
                                f.grid.dt());
    return out;
}

double convergence_factor(const ComplexSignal& coarse, const ComplexSignal& fine) {
    const int n = coarse.grid.n_samples;
    if (fine.grid.n_samples != 2 * n)
        throw ConfigError("convergence factor: grids must satisfy the 2x nesting relation");
    if (fine.grid.t_total != coarse.grid.t_total)
        throw ConfigError("convergence factor: grids must span the same interval");
    double cf = 0.0;
    for (int j = 0; j < n; ++j)
        cf = std::max(cf, std::abs(fine.values[2 * j] - coarse.values[j]));
    return cf;
}

Complex oscillatory_asymptote(const ComplexSignal& g, double nu_tilde, double t) {
    if (nu_tilde == 0.0) throw ConfigError("oscillatory asymptote: nu must be nonzero");
    const double dt = g.grid.dt();
    int j = static_cast<int>(std::lround(t / dt));
    j = std::clamp(j, 0, g.grid.n_samples - 1);
    const double phase = kTwoPi * nu_tilde * t - 1.5707963267948966;
    return std::polar(1.0, phase) * g.values[j] / (kTwoPi * nu_tilde);
}

const std::vector<GaussianPacket>& gaussian_packet_defaults() {
    static const std::vector<GaussianPacket> table = {
        {6.790, 27.0, 12.000},  {3.819, 36.0, 135.600}, {1.018, 90.0, 1.750},
        {1.591, 108.0, 154.700}, {2.118, 135.0, 3.250},  {3.310, 144.0, 18.150},
    };
    return table;
}

Complex gaussian_packet_value(double t, double t_total,
                              const std::vector<GaussianPacket>& packets) {
    Complex s(0.0, 0.0);
    for (const auto& p : packets) {
        const double d = t - p.center;
        s += std::exp(-p.rate * d * d) * std::polar(1.0, kTwoPi * p.cycles * t / t_total);
    }
    return s;
}

ComplexSignal gaussian_packet_train(const TimeGrid& grid) {
    ComplexSignal f(grid);
    for (int j = 0; j < grid.n_samples; ++j)
        f.values[j] = gaussian_packet_value(grid.time_at(j), grid.t_total,
                                            gaussian_packet_defaults());
    return f;
}

}  // namespace globalprop::fftint
