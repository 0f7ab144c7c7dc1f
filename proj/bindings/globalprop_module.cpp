// Python bindings for the main operations: grids, the spectral cumulative
// integrator, the vibrational eigensolve, the global wave-operator solve and
// the step-by-step reference propagators.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "globalprop/config.hpp"
#include "globalprop/fftint.hpp"
#include "globalprop/refprop.hpp"
#include "globalprop/waveop.hpp"

namespace py = pybind11;
namespace gp = globalprop;
using gp::signal::Complex;
using gp::signal::ComplexSignal;
using gp::signal::TimeGrid;

namespace {

ComplexSignal signal_from_array(const TimeGrid& grid, const py::array_t<Complex>& values) {
    auto buf = values.unchecked<1>();
    if (static_cast<int>(buf.shape(0)) != grid.n_samples)
        throw gp::ConfigError("value count must equal the grid sample count");
    ComplexSignal f(grid);
    for (int j = 0; j < grid.n_samples; ++j) f.values[j] = buf(j);
    return f;
}

py::array_t<Complex> array_from_signal(const ComplexSignal& f) {
    py::array_t<Complex> out(static_cast<size_t>(f.grid.n_samples));
    auto buf = out.mutable_unchecked<1>();
    for (int j = 0; j < f.grid.n_samples; ++j) buf(j) = f.values[j];
    return out;
}

struct SolveSummary {
    std::vector<double> convergence_factors;
    Eigen::VectorXcd final_amplitudes;
    std::vector<double> probabilities;
    double survival = 0.0;
    double final_time = 0.0;
    bool converged = false;
    int best_iteration = 0;
};

SolveSummary solve_example(int example, int n_samples, double tolerance, int max_iterations,
                           double field_scale) {
    gp::cli::RunConfig config = gp::cli::builtin_example(example);
    config.n_samples = n_samples;
    config.tolerance = tolerance;
    config.max_iterations = max_iterations;
    config.field_scale = field_scale;
    auto model = gp::cli::make_model(config);
    TimeGrid grid = gp::cli::make_grid(config);
    gp::waveop::SolveOptions options;
    options.tolerance = config.tolerance;
    options.max_iterations = config.max_iterations;
    auto result = gp::waveop::solve(model, grid, options);

    SolveSummary summary;
    for (const auto& r : result.history) summary.convergence_factors.push_back(r.convergence_factor);
    const int jf = result.final_index();
    summary.final_amplitudes = result.psi.col(jf);
    for (int v = 0; v < model.size(); ++v)
        summary.probabilities.push_back(std::norm(result.psi(v, jf)));
    summary.survival = result.survival_probability();
    summary.final_time = grid.time_at(jf);
    summary.converged = result.converged;
    summary.best_iteration = result.best_iteration;
    return summary;
}

Eigen::VectorXcd reference_example(int example, const std::string& method, int steps,
                                   double field_scale) {
    gp::cli::RunConfig config = gp::cli::builtin_example(example);
    config.field_scale = field_scale;
    auto model = gp::cli::make_model(config);
    TimeGrid grid = gp::cli::make_grid(config);
    gp::refprop::StepPropagatorConfig pc;
    pc.n_steps = steps;
    if (method == "split") pc.method = gp::refprop::Method::split_sod;
    else if (method == "sil") pc.method = gp::refprop::Method::sil;
    else throw gp::ConfigError("method must be 'split' or 'sil'");
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(model.size());
    psi0(model.initial_index) = 1.0;
    const double t_end = grid.time_at(grid.absorber_start());
    auto traj = pc.method == gp::refprop::Method::split_sod
                    ? gp::refprop::split_sod_propagate(psi0, model, t_end, pc)
                    : gp::refprop::sil_propagate(psi0, model, t_end, pc);
    return traj.final_state();
}

}  // namespace

PYBIND11_MODULE(_globalprop, m) {
    m.doc() = "Whole-interval integrator for driven quantum dynamics";

    py::register_exception<gp::ConfigError>(m, "ConfigError");
    py::register_exception<gp::DivergenceError>(m, "DivergenceError");
    py::register_exception<gp::NumericalError>(m, "NumericalError");

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<double, double, int>(), py::arg("t_physical_end"), py::arg("t_total"),
             py::arg("n_samples"))
        .def_readonly("t_physical_end", &TimeGrid::t_physical_end)
        .def_readonly("t_total", &TimeGrid::t_total)
        .def_readonly("n_samples", &TimeGrid::n_samples)
        .def_property_readonly("dt", &TimeGrid::dt)
        .def("time_at", &TimeGrid::time_at)
        .def_property_readonly("absorber_start", &TimeGrid::absorber_start);

    m.def(
        "forward_dft",
        [](const TimeGrid& grid, const py::array_t<Complex>& values) {
            auto spec = gp::signal::forward_dft(signal_from_array(grid, values));
            py::array_t<Complex> out(spec.coefficients.size());
            auto buf = out.mutable_unchecked<1>();
            for (size_t l = 0; l < spec.coefficients.size(); ++l) buf(l) = spec.coefficients[l];
            return out;
        },
        py::arg("grid"), py::arg("values"));

    m.def(
        "spectral_derivative",
        [](const TimeGrid& grid, const py::array_t<Complex>& values) {
            return array_from_signal(
                gp::signal::spectral_derivative(signal_from_array(grid, values)));
        },
        py::arg("grid"), py::arg("values"));

    m.def(
        "cumulative_integral",
        [](const TimeGrid& grid, const py::array_t<Complex>& values, const std::string& mode) {
            auto f = signal_from_array(grid, values);
            auto m_ = mode == "extend" ? gp::fftint::IntegrationMode::extend
                                       : gp::fftint::IntegrationMode::periodic;
            if (mode != "periodic" && mode != "extend")
                throw gp::ConfigError("mode must be 'periodic' or 'extend'");
            return array_from_signal(gp::fftint::cumulative_integral(f, m_));
        },
        py::arg("grid"), py::arg("values"), py::arg("mode") = "periodic");

    m.def(
        "simpson_cumulative",
        [](const TimeGrid& grid, const py::array_t<Complex>& values) {
            return array_from_signal(gp::fftint::simpson_cumulative(signal_from_array(grid, values)));
        },
        py::arg("grid"), py::arg("values"));

    m.def(
        "benchmark_signal",
        [](const TimeGrid& grid) { return array_from_signal(gp::fftint::gaussian_packet_train(grid)); },
        py::arg("grid"), "Train of six Gaussian-enveloped complex exponentials");

    m.def(
        "convergence_factor",
        [](const TimeGrid& coarse_grid, const py::array_t<Complex>& coarse,
           const TimeGrid& fine_grid, const py::array_t<Complex>& fine) {
            return gp::fftint::convergence_factor(signal_from_array(coarse_grid, coarse),
                                                  signal_from_array(fine_grid, fine));
        },
        py::arg("coarse_grid"), py::arg("coarse"), py::arg("fine_grid"), py::arg("fine"));

    m.def(
        "eigen_energies",
        [](int surface, int n_points, double r_min, double r_max, int n_keep) {
            gp::molecular::RadialGrid grid(r_min, r_max, n_points);
            auto spec = surface == 2 ? gp::molecular::upper_quartic_surface()
                                     : gp::molecular::double_well_surface();
            return gp::molecular::fourier_grid_eigensolve(spec, grid, n_keep).energies;
        },
        py::arg("surface"), py::arg("n_points") = 256, py::arg("r_min") = -4.5,
        py::arg("r_max") = 4.5, py::arg("n_keep") = 30);

    m.def("resonance_frequencies", []() {
        auto model = gp::cli::make_model(gp::cli::builtin_example(1));
        return gp::molecular::resonance_frequencies(model.basis);
    });

    py::class_<SolveSummary>(m, "SolveSummary")
        .def_readonly("convergence_factors", &SolveSummary::convergence_factors)
        .def_readonly("final_amplitudes", &SolveSummary::final_amplitudes)
        .def_readonly("probabilities", &SolveSummary::probabilities)
        .def_readonly("survival", &SolveSummary::survival)
        .def_readonly("final_time", &SolveSummary::final_time)
        .def_readonly("converged", &SolveSummary::converged)
        .def_readonly("best_iteration", &SolveSummary::best_iteration);

    m.def("solve_example", &solve_example, py::arg("example"), py::arg("n_samples") = 4096,
          py::arg("tolerance") = 1e-16, py::arg("max_iterations") = 25,
          py::arg("field_scale") = 1.0,
          "Global wave-operator solve of a built-in parameter set");

    m.def("reference_example", &reference_example, py::arg("example"), py::arg("method") = "sil",
          py::arg("steps") = 16384, py::arg("field_scale") = 1.0,
          "Step-by-step reference propagation of a built-in parameter set");
}
