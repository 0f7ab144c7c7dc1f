#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "globalprop/errors.hpp"

namespace globalprop::signal {

using Complex = std::complex<double>;

// Uniform time grid t_j = j T / N, j = 0..N-1, spanning the physical interval
// [0, T0] plus the absorbing extension [T0, T]. N must be even (the frequency
// layout below splits at N/2).
struct TimeGrid {
    double t_physical_end = 0.0;  // T0
    double t_total = 0.0;         // T
    int n_samples = 0;            // N

    TimeGrid() = default;
    TimeGrid(double t0, double t, int n);

    double dt() const { return t_total / n_samples; }
    double time_at(int j) const { return j * t_total / n_samples; }
    // First index of the absorbing extension, j0 = floor(N T0 / T).
    int absorber_start() const;
    bool operator==(const TimeGrid& other) const = default;
};

TimeGrid make_time_grid(double t_physical_end, double t_total, int n_samples);

// Extended grid for integrating a non-periodic function given on [0, T0] with
// n_physical samples: keeps the spacing T0/n_physical and appends an extension
// of length extension_fraction*T0 (rounded so N stays even).
TimeGrid make_extended_grid(double t_physical_end, int n_physical,
                            double extension_fraction = 0.1);

struct ComplexSignal {
    TimeGrid grid;
    std::vector<Complex> values;

    ComplexSignal() = default;
    explicit ComplexSignal(const TimeGrid& g) : grid(g), values(g.n_samples) {}
    ComplexSignal(const TimeGrid& g, std::vector<Complex> v);
    int size() const { return static_cast<int>(values.size()); }
};

// Frequency layout: nu_l = l/T for l < N/2, nu_{N/2} = -N/(2T),
// nu_l = -nu_{N-l} for l > N/2.
struct Spectrum {
    TimeGrid grid;
    std::vector<Complex> coefficients;

    Spectrum() = default;
    explicit Spectrum(const TimeGrid& g) : grid(g), coefficients(g.n_samples) {}
    double frequency(int l) const;
};

// FFT_k(f) = N^{-1/2} sum_j f_j e^{-2 pi i j k / N} (symmetric convention; the
// transform is unitary and Parseval holds exactly up to roundoff).
Spectrum forward_dft(const ComplexSignal& f);
ComplexSignal inverse_dft(const Spectrum& F);

// d f / d t via multiplication by 2 pi i nu_l; the Nyquist coefficient is
// zeroed (its derivative is sign-ambiguous on a real grid).
ComplexSignal spectral_derivative(const ComplexSignal& f);

// Number of FFT executions since process start (used by cost tests).
std::uint64_t transform_call_count();

// One row per sample: t, Re, Im at 17 significant digits.
void write_csv(std::ostream& out, const ComplexSignal& f,
               const std::string& value_name = "f");

namespace detail {
// Raw transforms in the same 1/sqrt(N) convention, n arbitrary (FFTW backend).
// in/out may alias. Both count toward transform_call_count().
void fft_forward(int n, const Complex* in, Complex* out);
void fft_inverse(int n, const Complex* in, Complex* out);
}  // namespace detail

}  // namespace globalprop::signal
