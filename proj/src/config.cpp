#include "globalprop/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "globalprop/errors.hpp"

namespace globalprop::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t end = 0;
        double x = std::stod(v, &end);
        if (end != v.size()) fail(line, "trailing characters after number '" + v + "'");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& v, int line) {
    double x = parse_double(v, line);
    if (x != std::floor(x)) fail(line, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

std::vector<double> parse_doubles(const std::string& v, int line) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok, line));
    return out;
}

std::vector<int> parse_ints(const std::string& v, int line) {
    std::vector<int> out;
    for (double x : parse_doubles(v, line)) {
        if (x != std::floor(x)) fail(line, "expected integers in '" + v + "'");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

PulseConfig parse_pulse(const std::string& v, int line) {
    PulseConfig p;
    bool has_amp = false, has_center = false, has_width = false;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) fail(line, "pulse fields must be key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "amplitude") { p.amplitude = parse_double(val, line); has_amp = true; }
        else if (key == "carrier") {
            if (val != "res1" && val != "res2") parse_double(val, line);  // validate
            p.carrier = val;
        }
        else if (key == "center") { p.center = parse_double(val, line); has_center = true; }
        else if (key == "width") { p.width = parse_double(val, line); has_width = true; }
        else fail(line, "unknown pulse field '" + key + "'");
    }
    if (!has_amp || !has_center || !has_width)
        fail(line, "pulse needs amplitude, center and width");
    return p;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    c.surface1.clear();
    c.surface2.clear();
    c.track.clear();
    bool has_mass = false, has_s1 = false, has_s2 = false, has_track = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed section header '" + s + "'");
            section = s.substr(1, s.size() - 2);
            if (section != "model" && section != "pulses" && section != "time" &&
                section != "absorber" && section != "solver" && section != "output")
                fail(line, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (section.empty()) fail(line, "key '" + key + "' outside any section");

        if (section == "model") {
            if (key == "r_min") c.r_min = parse_double(val, line);
            else if (key == "r_max") c.r_max = parse_double(val, line);
            else if (key == "n_points") c.n_points = parse_int(val, line);
            else if (key == "n_keep") c.n_keep = parse_int(val, line);
            else if (key == "mass") { c.mass = parse_double(val, line); has_mass = true; }
            else if (key == "dipole") c.dipole = parse_double(val, line);
            else if (key == "surface1") { c.surface1 = parse_doubles(val, line); has_s1 = true; }
            else if (key == "surface2") { c.surface2 = parse_doubles(val, line); has_s2 = true; }
            else fail(line, "unknown key '" + key + "' in [model]");
        } else if (section == "pulses") {
            if (key == "pulse") c.pulses.push_back(parse_pulse(val, line));
            else fail(line, "unknown key '" + key + "' in [pulses]");
        } else if (section == "time") {
            if (key == "t_physical_end") c.t_physical_end = parse_double(val, line);
            else if (key == "t_total") c.t_total = parse_double(val, line);
            else if (key == "n_samples") c.n_samples = parse_int(val, line);
            else fail(line, "unknown key '" + key + "' in [time]");
        } else if (section == "absorber") {
            if (key == "integrated_strength") c.absorber_strength = parse_double(val, line);
            else if (key == "shape_power") c.absorber_power = parse_int(val, line);
            else fail(line, "unknown key '" + key + "' in [absorber]");
        } else if (section == "solver") {
            if (key == "tolerance") c.tolerance = parse_double(val, line);
            else if (key == "max_iterations") c.max_iterations = parse_int(val, line);
            else if (key == "field_scale") c.field_scale = parse_double(val, line);
            else if (key == "track") { c.track = parse_ints(val, line); has_track = true; }
            else fail(line, "unknown key '" + key + "' in [solver]");
        } else if (section == "output") {
            if (key == "directory") c.output_directory = val;
            else fail(line, "unknown key '" + key + "' in [output]");
        }
    }

    if (!has_mass) throw ConfigError("config: missing required key 'mass' in [model]");
    if (!has_s1) throw ConfigError("config: missing required key 'surface1' in [model]");
    if (!has_s2) throw ConfigError("config: missing required key 'surface2' in [model]");
    if (c.pulses.empty()) throw ConfigError("config: [pulses] must define at least one pulse");
    if (!has_track) c.track = {1, 6, 37};
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    auto vec = [](const std::vector<double>& v) {
        std::string s;
        for (size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + format_number(v[k]);
        return s;
    };
    out << "[model]\n";
    out << "r_min = " << format_number(c.r_min) << "\n";
    out << "r_max = " << format_number(c.r_max) << "\n";
    out << "n_points = " << c.n_points << "\n";
    out << "n_keep = " << c.n_keep << "\n";
    out << "mass = " << format_number(c.mass) << "\n";
    out << "dipole = " << format_number(c.dipole) << "\n";
    out << "surface1 = " << vec(c.surface1) << "\n";
    out << "surface2 = " << vec(c.surface2) << "\n";
    out << "[pulses]\n";
    for (const auto& p : c.pulses)
        out << "pulse = amplitude=" << format_number(p.amplitude) << " carrier=" << p.carrier
            << " center=" << format_number(p.center) << " width=" << format_number(p.width)
            << "\n";
    out << "[time]\n";
    out << "t_physical_end = " << format_number(c.t_physical_end) << "\n";
    out << "t_total = " << format_number(c.t_total) << "\n";
    out << "n_samples = " << c.n_samples << "\n";
    out << "[absorber]\n";
    out << "integrated_strength = " << format_number(c.absorber_strength) << "\n";
    out << "shape_power = " << c.absorber_power << "\n";
    out << "[solver]\n";
    out << "tolerance = " << format_number(c.tolerance) << "\n";
    out << "max_iterations = " << c.max_iterations << "\n";
    out << "field_scale = " << format_number(c.field_scale) << "\n";
    out << "track =";
    for (int v : c.track) out << " " << v;
    out << "\n";
    out << "[output]\n";
    out << "directory = " << c.output_directory << "\n";
    return out.str();
}

std::uint64_t config_hash(const RunConfig& config) {
    const std::string canon = serialize_config(config);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : canon) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig builtin_example(int which) {
    RunConfig c;
    c.surface1 = {0.0, 0.0, -5.0, 0.5, 1.0};
    c.surface2 = {0.0, 0.0, 0.0, 0.0, 0.2};
    PulseConfig p1{0.05, "res1", 23.5, 3.90};
    PulseConfig p2{0.08, "res2", 21.5, 4.50};
    if (which == 2) {
        p1.amplitude = 0.09;
        p1.center = 22.5;
        p2.amplitude = 0.05;
        p2.center = 21.5;
    } else if (which != 1) {
        throw ConfigError("builtin example must be 1 or 2");
    }
    c.pulses = {p1, p2};
    return c;
}

signal::TimeGrid make_grid(const RunConfig& c) {
    return signal::TimeGrid(c.t_physical_end, c.t_total, c.n_samples);
}

molecular::MolecularModel make_model(const RunConfig& c) {
    molecular::RadialGrid grid(c.r_min, c.r_max, c.n_points);
    molecular::SurfaceSpec s1{c.surface1, c.mass};
    molecular::SurfaceSpec s2{c.surface2, c.mass};
    molecular::AbsorberSpec absorber{c.absorber_strength, c.absorber_power};

    molecular::PulseSet pulses;  // carriers resolved after the eigensolve
    molecular::MolecularModel model = molecular::build_model(
        s1, s2, grid, c.n_keep, pulses, absorber, c.dipole, c.field_scale, 0);
    auto [res1, res2] = molecular::resonance_frequencies(model.basis);
    for (const auto& p : c.pulses) {
        molecular::Pulse pulse;
        pulse.amplitude = p.amplitude;
        pulse.center = p.center;
        pulse.width = p.width;
        if (p.carrier == "res1") pulse.carrier = res1;
        else if (p.carrier == "res2") pulse.carrier = res2;
        else pulse.carrier = std::stod(p.carrier);
        model.pulses.pulses.push_back(pulse);
    }
    return model;
}

}  // namespace globalprop::cli
