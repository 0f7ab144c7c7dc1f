#pragma once

// Independent oracles for the test suites. Everything here is deliberately
// written against the definitions, not the library's algorithms: direct
// O(N^2) transform sums, an embedded Dormand-Prince integrator and a tiny
// adaptive Simpson. Keep it that way.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Complex = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Direct discrete transform in the 1/sqrt(N) convention.
inline std::vector<Complex> brute_force_dft(const std::vector<Complex>& f, int sign) {
    const int n = static_cast<int>(f.size());
    std::vector<Complex> out(static_cast<size_t>(n));
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j)
            acc += f[static_cast<size_t>(j)] *
                   std::polar(1.0, sign * kTwoPi * static_cast<double>(j) * k / n);
        out[static_cast<size_t>(k)] = acc * norm;
    }
    return out;
}

inline std::vector<Complex> random_signal(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Complex> f(static_cast<size_t>(n));
    for (auto& v : f) v = Complex(uni(rng), uni(rng));
    return f;
}

// Dormand-Prince 5(4) with PI step control for complex-vector ODEs.
inline Eigen::VectorXcd rk45_integrate(
    const std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)>& rhs,
    Eigen::VectorXcd y, double t0, double t1, double tol) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    double h = (t1 - t0) / 100.0;
    Eigen::VectorXcd k1 = rhs(t, y);
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        const Eigen::VectorXcd k2 = rhs(t + h / 5, y + h * (a21 * k1));
        const Eigen::VectorXcd k3 = rhs(t + 3 * h / 10, y + h * (a31 * k1 + a32 * k2));
        const Eigen::VectorXcd k4 = rhs(t + 4 * h / 5, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXcd k5 =
            rhs(t + 8 * h / 9, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXcd k6 =
            rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::VectorXcd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXcd k7 = rhs(t + h, y5);
        const Eigen::VectorXcd err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale = std::max(1.0, y.norm());
        const double enorm = err.norm() / (tol * scale);
        if (enorm <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;
        }
        const double factor = 0.9 * std::pow(std::max(enorm, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return y;
}

// Adaptive Simpson on a scalar complex integrand.
inline Complex adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                                double tol, int depth = 24) {
    const auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    };
    std::function<Complex(double, double, Complex, int)> recurse =
        [&](double lo, double hi, Complex whole, int d) -> Complex {
        const double mid = 0.5 * (lo + hi);
        const Complex left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right;
        return recurse(lo, mid, left, d - 1) + recurse(mid, hi, right, d - 1);
    };
    return recurse(a, b, simpson(a, b), depth);
}

}  // namespace oracles
