#include "globalprop/signal.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <utility>

namespace globalprop::signal {

TimeGrid::TimeGrid(double t0, double t, int n) : t_physical_end(t0), t_total(t), n_samples(n) {
    if (!(t0 > 0.0) || !(t > 0.0)) throw ConfigError("time grid: durations must be positive");
    if (t0 > t) throw ConfigError("time grid: T0 must not exceed T");
    if (n < 4 || n % 2 != 0) throw ConfigError("time grid: N must be even and >= 4");
}

int TimeGrid::absorber_start() const {
    int j0 = static_cast<int>(std::floor(n_samples * t_physical_end / t_total));
    return j0 > n_samples ? n_samples : j0;
}

TimeGrid make_time_grid(double t_physical_end, double t_total, int n_samples) {
    return TimeGrid(t_physical_end, t_total, n_samples);
}

TimeGrid make_extended_grid(double t_physical_end, int n_physical, double extension_fraction) {
    if (n_physical < 4) throw ConfigError("extended grid: need at least 4 physical samples");
    if (!(extension_fraction > 0.0)) throw ConfigError("extended grid: extension fraction must be positive");
    int n_ext = static_cast<int>(std::lround(extension_fraction * n_physical));
    if (n_ext < 2) n_ext = 2;
    if ((n_physical + n_ext) % 2 != 0) ++n_ext;
    double h = t_physical_end / n_physical;
    int n = n_physical + n_ext;
    return TimeGrid(t_physical_end, n * h, n);
}

ComplexSignal::ComplexSignal(const TimeGrid& g, std::vector<Complex> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n_samples)
        throw ConfigError("signal: value count must equal grid sample count");
}

double Spectrum::frequency(int l) const {
    int n = grid.n_samples;
    double t = grid.t_total;
    if (l < n / 2) return l / t;
    if (l == n / 2) return -n / (2.0 * t);
    return -(n - l) / t;
}

namespace {

std::atomic<std::uint64_t> g_transform_count{0};

struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

// Plans are cached per length; FFTW_ESTIMATE keeps planning deterministic and
// FFTW_UNALIGNED lets the new-array execute run on any caller buffer. Plan
// creation is serialized; execution via fftw_execute_dft is thread-safe.
PlanPair plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Complex> scratch(static_cast<size_t>(n));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(n, p);
    return p;
}

}  // namespace

namespace detail {

void fft_forward(int n, const Complex* in, Complex* out) {
    PlanPair p = plans_for(n);
    auto* fin = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in));
    auto* fout = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(p.forward, fin, fout);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) out[j] *= s;
    g_transform_count.fetch_add(1, std::memory_order_relaxed);
}

void fft_inverse(int n, const Complex* in, Complex* out) {
    PlanPair p = plans_for(n);
    auto* fin = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in));
    auto* fout = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(p.backward, fin, fout);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) out[j] *= s;
    g_transform_count.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace detail

std::uint64_t transform_call_count() { return g_transform_count.load(std::memory_order_relaxed); }

Spectrum forward_dft(const ComplexSignal& f) {
    Spectrum F(f.grid);
    detail::fft_forward(f.grid.n_samples, f.values.data(), F.coefficients.data());
    return F;
}

ComplexSignal inverse_dft(const Spectrum& F) {
    ComplexSignal f(F.grid);
    detail::fft_inverse(F.grid.n_samples, F.coefficients.data(), f.values.data());
    return f;
}

ComplexSignal spectral_derivative(const ComplexSignal& f) {
    const int n = f.grid.n_samples;
    const double t = f.grid.t_total;
    Spectrum F = forward_dft(f);
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int l = 0; l < n; ++l) {
        if (l == n / 2) {
            F.coefficients[l] = 0.0;
            continue;
        }
        double nu = (l < n / 2) ? l / t : -(n - l) / t;
        F.coefficients[l] *= Complex(0.0, two_pi * nu);
    }
    return inverse_dft(F);
}

void write_csv(std::ostream& out, const ComplexSignal& f, const std::string& value_name) {
    out << "t,Re_" << value_name << ",Im_" << value_name << "\n";
    char line[128];
    for (int j = 0; j < f.grid.n_samples; ++j) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", f.grid.time_at(j),
                      f.values[j].real(), f.values[j].imag());
        out << line;
    }
}

}  // namespace globalprop::signal
