#include "foil/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "foil/error.hpp"
#include "foil/io.hpp"

namespace foil {

MaterialParams RunConfig::material() const {
    MaterialParams p;
    p.k_base = k_base;
    p.damping_c = damping_c;
    p.pressure_p = pressure_p;
    p.mass_m = mass_m;
    p.distance_factor_strength = distance_factor_strength;
    return p;
}

SnapConfig RunConfig::snap() const {
    SnapConfig c;
    c.snapping_tolerance = snapping_tolerance;
    c.relaxation_lambda = relaxation_lambda;
    c.relaxation_rounds = relaxation_rounds;
    return c;
}

SimConfig RunConfig::sim() const {
    SimConfig c;
    c.dt = dt;
    c.epsilon = epsilon;
    c.max_iterations = max_iterations;
    c.smooth_every = smooth_every;
    c.snap_every = snap_every;
    c.refine_every = refine_every;
    c.snapshot_every = snapshot_every;
    if (cfl_mode == "enforce") {
        c.cfl_mode = CflMode::enforce;
    } else if (cfl_mode == "warn") {
        c.cfl_mode = CflMode::warn;
    } else {
        throw ConfigError("cfl_mode must be 'enforce' or 'warn', got '" + cfl_mode + "'");
    }
    c.smooth_lambda = smooth_lambda;
    c.smooth_rounds = smooth_rounds;
    return c;
}

void RunConfig::validate() const {
    if (!scenario.empty() && scenario != "box") {
        throw ConfigError("unknown scenario '" + scenario + "' (only 'box' is built in)");
    }
    box_variant_from_name(box_variant);
    if (!(box_side > 0.0)) {
        throw ConfigError("box_side must be positive, got " + std::to_string(box_side));
    }
    if (!(box_inset > 0.0) || box_inset > 1.0) {
        throw ConfigError("box_inset must lie in (0, 1], got " + std::to_string(box_inset));
    }
    if (seed_count < 4) {
        throw ConfigError("seed_count must be at least 4, got " + std::to_string(seed_count));
    }
    if (!(margin_factor >= 1.0)) {
        throw ConfigError("margin_factor must be >= 1, got " + std::to_string(margin_factor));
    }
    if (init_refine_rounds < 0) {
        throw ConfigError("init_refine_rounds must be non-negative, got " +
                          std::to_string(init_refine_rounds));
    }
    if (!(contraction_scale > 0.0) || contraction_scale > 1.0) {
        throw ConfigError("contraction_scale must lie in (0, 1], got " +
                          std::to_string(contraction_scale));
    }
    if (worker_threads < 1) {
        throw ConfigError("worker_threads must be at least 1, got " +
                          std::to_string(worker_threads));
    }
    material().validate();
    snap().validate();
    sim().validate();  // also checks cfl_mode spelling
}

const std::vector<ConfigField>& config_fields() {
    using T = ConfigField::Type;
    static const std::vector<ConfigField> fields = {
        {"scenario", T::text, nullptr, nullptr, &RunConfig::scenario,
         "built-in input scenario ('box'); mutually exclusive with input_path"},
        {"box_variant", T::text, nullptr, nullptr, &RunConfig::box_variant,
         "which four cube faces carry the constraints: lateral | mixed"},
        {"box_side", T::real, &RunConfig::box_side, nullptr, nullptr,
         "edge length of the scenario cube"},
        {"box_inset", T::real, &RunConfig::box_inset, nullptr, nullptr,
         "fraction of the half-side at which constraints sit (0,1]"},
        {"input_path", T::text, nullptr, nullptr, &RunConfig::input_path,
         "point cloud to reconstruct (.xyz or .ply)"},
        {"output_path", T::text, nullptr, nullptr, &RunConfig::output_path,
         "final mesh file (.obj or .ply); empty = skip"},
        {"diagnostics_path", T::text, nullptr, nullptr, &RunConfig::diagnostics_path,
         "per-iteration CSV; empty = skip"},
        {"snapshot_dir", T::text, nullptr, nullptr, &RunConfig::snapshot_dir,
         "directory for snapshot_NNNNNN.obj files; empty = skip"},
        {"seed_count", T::integer, nullptr, &RunConfig::seed_count, nullptr,
         "number of seed foil vertices on the enclosing sphere"},
        {"margin_factor", T::real, &RunConfig::margin_factor, nullptr, nullptr,
         "enclosing sphere radius = margin * max constraint distance"},
        {"init_refine_rounds", T::integer, nullptr, &RunConfig::init_refine_rounds, nullptr,
         "subdivide+reproject passes before dynamics start"},
        {"k_base", T::real, &RunConfig::k_base, nullptr, nullptr, "base spring stiffness"},
        {"damping_c", T::real, &RunConfig::damping_c, nullptr, nullptr,
         "velocity damping coefficient"},
        {"pressure_p", T::real, &RunConfig::pressure_p, nullptr, nullptr,
         "uniform pressure; negative values contract the foil"},
        {"mass_m", T::real, &RunConfig::mass_m, nullptr, nullptr, "per-vertex mass"},
        {"distance_factor_strength", T::real, &RunConfig::distance_factor_strength, nullptr,
         nullptr, "stiffness decay strength with distance from constraints (0 = off)"},
        {"contraction_scale", T::real, &RunConfig::contraction_scale, nullptr, nullptr,
         "multiplier on captured rest lengths, (0,1]"},
        {"snapping_tolerance", T::real, &RunConfig::snapping_tolerance, nullptr, nullptr,
         "capture distance for snapping onto constraints"},
        {"relaxation_lambda", T::real, &RunConfig::relaxation_lambda, nullptr, nullptr,
         "neighborhood averaging weight after snaps, (0,1)"},
        {"relaxation_rounds", T::integer, nullptr, &RunConfig::relaxation_rounds, nullptr,
         "averaging rounds on the 1-ring of snapped vertices"},
        {"dt", T::real, &RunConfig::dt, nullptr, nullptr, "integration time step"},
        {"epsilon", T::real, &RunConfig::epsilon, nullptr, nullptr,
         "convergence bound on max vertex displacement"},
        {"max_iterations", T::integer, nullptr, &RunConfig::max_iterations, nullptr,
         "iteration cap"},
        {"smooth_every", T::integer, nullptr, &RunConfig::smooth_every, nullptr,
         "smoothing cadence in iterations (0 = never)"},
        {"snap_every", T::integer, nullptr, &RunConfig::snap_every, nullptr,
         "snapping cadence in iterations (>= 1)"},
        {"refine_every", T::integer, nullptr, &RunConfig::refine_every, nullptr,
         "subdivision cadence during dynamics (0 = never)"},
        {"snapshot_every", T::integer, nullptr, &RunConfig::snapshot_every, nullptr,
         "snapshot cadence in iterations (0 = never)"},
        {"cfl_mode", T::text, nullptr, nullptr, &RunConfig::cfl_mode,
         "stability-bound handling: enforce | warn"},
        {"smooth_lambda", T::real, &RunConfig::smooth_lambda, nullptr, nullptr,
         "per-neighbor weight of cadence smoothing, (0,1)"},
        {"smooth_rounds", T::integer, nullptr, &RunConfig::smooth_rounds, nullptr,
         "rounds per smoothing application"},
        {"worker_threads", T::integer, nullptr, &RunConfig::worker_threads, nullptr,
         "threads for force evaluation (output is identical for any value)"},
    };
    return fields;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const ConfigField& field : config_fields()) {
        if (key != field.key) continue;
        switch (field.type) {
            case ConfigField::Type::real: {
                try {
                    std::size_t used = 0;
                    const double v = std::stod(value, &used);
                    if (used != value.size()) throw std::invalid_argument(value);
                    cfg.*(field.real_member) = v;
                } catch (const std::exception&) {
                    throw ConfigError("key '" + key + "' expects a number, got '" + value + "'");
                }
                return;
            }
            case ConfigField::Type::integer: {
                try {
                    std::size_t used = 0;
                    const int v = std::stoi(value, &used);
                    if (used != value.size()) throw std::invalid_argument(value);
                    cfg.*(field.int_member) = v;
                } catch (const std::exception&) {
                    throw ConfigError("key '" + key + "' expects an integer, got '" + value +
                                      "'");
                }
                return;
            }
            case ConfigField::Type::text:
                cfg.*(field.text_member) = value;
                return;
        }
    }
    throw ConfigError("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        try {
            apply_config_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::string dump_config(const RunConfig& cfg) {
    std::ostringstream out;
    for (const ConfigField& field : config_fields()) {
        out << field.key << " = ";
        switch (field.type) {
            case ConfigField::Type::real:
                out << format_double(cfg.*(field.real_member));
                break;
            case ConfigField::Type::integer:
                out << cfg.*(field.int_member);
                break;
            case ConfigField::Type::text:
                out << cfg.*(field.text_member);
                break;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace foil
