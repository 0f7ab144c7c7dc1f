#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "globalprop/molecular.hpp"
#include "globalprop/signal.hpp"

namespace globalprop::cli {

// Carrier is either a number (angular frequency) or one of the tokens
// "res1" / "res2", resolved against the eigenbasis when the model is built.
struct PulseConfig {
    double amplitude = 0.0;
    std::string carrier = "res1";
    double center = 0.0;
    double width = 1.0;
};

struct RunConfig {
    // [model]
    double r_min = -4.5;
    double r_max = 4.5;
    int n_points = 256;
    int n_keep = 30;
    double mass = 10.0;
    double dipole = 1.0;
    std::vector<double> surface1;  // polynomial coefficients, constant first
    std::vector<double> surface2;
    // [pulses]
    std::vector<PulseConfig> pulses;
    // [time]
    double t_physical_end = 45.0;
    double t_total = 51.2;
    int n_samples = 4096;
    // [absorber]
    double absorber_strength = 25.0;  // integral of V_opt in units of hbar
    int absorber_power = 4;
    // [solver]
    double tolerance = 1e-16;
    int max_iterations = 25;
    double field_scale = 1.0;
    std::vector<int> track = {1, 6, 37};  // 1-based channel labels
    // [output]
    std::string output_directory = "out";
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);  // canonical form
std::uint64_t config_hash(const RunConfig& config);     // FNV-1a of canonical form

// Built-in paper parameter sets (pulse amplitudes/centres per example, tau1 =
// 3.90, tau2 = 4.50, carriers res1/res2).
RunConfig builtin_example(int which);

signal::TimeGrid make_grid(const RunConfig& config);
molecular::MolecularModel make_model(const RunConfig& config);

}  // namespace globalprop::cli
