#pragma once

#include <optional>
#include <span>

#include "globalprop/signal.hpp"

namespace globalprop::fftint {

using signal::Complex;
using signal::ComplexSignal;
using signal::TimeGrid;

// Spectral weights mu_l turning Fourier coefficients of f into coefficients
// of its antiderivative: mu_l = 1 / (2 pi i nu_l). The l = 0 slot is not a
// weight; it is replaced by the ordinate fixing I(t_0) = 0 during assembly.
struct MuCoefficients {
    TimeGrid grid;
    std::vector<Complex> mu;  // mu[0] left at zero (unset)
};

MuCoefficients mu_coefficients(const TimeGrid& grid);

// All N prefix integrals I(t_j) = int_0^{t_j} f dt' of a smooth T-periodic
// sampled signal in exactly two FFT executions:
//   I = FFT^{-1}(mu . FFT(f)) + (j/N)(T/sqrt(N)) FFT_0(f),
// with the l = 0 component of the product vector replaced by
// a = -sum_{l>=1} mu_l FFT_l(f) so that I(t_0) = 0.
ComplexSignal cumulative_integral_periodic(const ComplexSignal& f);

// Function value and first two derivatives at both seam anchors, when known
// analytically. Without them, one-sided 4th-order finite-difference stencils
// estimate the seam data from the samples.
struct EndpointData {
    Complex f_start, df_start, ddf_start;  // at t = 0
    Complex f_end, df_end, ddf_end;        // at t = T0
};

struct ExtensionOptions {
    std::optional<EndpointData> endpoints;
    // Force the bridge's own integral to vanish. Off by default; the
    // integrator's mean subtraction handles the zero-mean shift anyway.
    bool zero_integral = false;
};

// Bridges a non-periodic f, given on the physical samples j = 0..j0-1, to a
// T-periodic signal by a polynomial sum a_k (t - t*)^k on the extension. The
// first three coefficients pin value/slope/curvature at the right seam; the
// remaining ones match f(0), f'(0), f''(0) at t = T via a small pivoted-LU
// solve (4x4 with the zero-integral row, 3x3 with a6 = 0 otherwise).
ComplexSignal hermite_extension(std::span<const Complex> physical, const TimeGrid& grid,
                                const ExtensionOptions& options = {});

enum class IntegrationMode { periodic, extend };

// extend = hermite_extension then the periodic integrator; values on the
// physical window approximate prefix integrals of the original f.
ComplexSignal cumulative_integral(const ComplexSignal& f,
                                  IntegrationMode mode = IntegrationMode::periodic,
                                  const ExtensionOptions& options = {});

// Composite-Simpson prefix integrals (oracle role). Odd prefix indices use the
// quadratic half-pair rule h(-f_{j-2} + 8 f_{j-1} + 5 f_j)/12. The span form
// treats the samples as endpoint-inclusive (n points, n-1 intervals of width
// h); the signal form applies it to the grid samples.
std::vector<Complex> simpson_prefix(std::span<const Complex> values, double h);
ComplexSignal simpson_cumulative(const ComplexSignal& f);

// CF_N = max_j |I^{(2N)}_{2j} - I^{(N)}_j| over the shared grid points.
double convergence_factor(const ComplexSignal& coarse, const ComplexSignal& fine);

// High-frequency asymptote of int_0^t g e^{2 pi i nu t'} dt'
// ~ e^{i(2 pi nu t - pi/2)} g(t) / (2 pi nu). Property-test helper only.
Complex oscillatory_asymptote(const ComplexSignal& g, double nu_tilde, double t);

// Benchmark signal: six Gaussian-enveloped complex exponentials
// sum_j exp(-a_j (t-t_j)^2) exp(2 pi i x_j t / T) on [0, T]. The default
// parameter table lives in gaussian_packet_defaults().
struct GaussianPacket {
    double rate;    // a_j
    double center;  // t_j
    double cycles;  // x_j (carrier makes x_j full turns over [0, T])
};

const std::vector<GaussianPacket>& gaussian_packet_defaults();
Complex gaussian_packet_value(double t, double t_total,
                              const std::vector<GaussianPacket>& packets);
ComplexSignal gaussian_packet_train(const TimeGrid& grid);

}  // namespace globalprop::fftint
