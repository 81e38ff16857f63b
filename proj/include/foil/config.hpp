#pragma once

#include <string>
#include <vector>

#include "foil/forces.hpp"
#include "foil/integrator.hpp"
#include "foil/scenario.hpp"
#include "foil/snap.hpp"

namespace foil {

// Every tunable of the pipeline, each with a working default (tuned on the
// built-in box scenario). Config files use one `key = value` per line with
// exactly these field names; CLI flags use the same names and win over file
// values.
struct RunConfig {
    // input selection: exactly one of scenario / input_path for a run
    std::string scenario;                 // "" or "box"
    std::string box_variant = "lateral";  // lateral | mixed
    double box_side = 2.0;
    double box_inset = 0.85;
    std::string input_path;

    // outputs (empty = skip)
    std::string output_path;
    std::string diagnostics_path;
    std::string snapshot_dir;

    // seed foil
    int seed_count = 500;
    double margin_factor = 1.3;
    int init_refine_rounds = 0;

    // material
    double k_base = 1.0;
    double damping_c = 2.5;
    double pressure_p = -6.0;
    double mass_m = 1.0;
    double distance_factor_strength = 2.0;
    double contraction_scale = 1.0;

    // snapping
    double snapping_tolerance = 0.15;
    double relaxation_lambda = 0.5;
    int relaxation_rounds = 3;

    // integration
    double dt = 0.05;
    double epsilon = 5e-4;
    int max_iterations = 200;
    int smooth_every = 5;
    int snap_every = 1;
    int refine_every = 0;
    int snapshot_every = 0;
    std::string cfl_mode = "enforce";  // enforce | warn
    double smooth_lambda = 0.1;
    int smooth_rounds = 1;

    int worker_threads = 1;

    MaterialParams material() const;
    SnapConfig snap() const;
    SimConfig sim() const;
    BoxVariant box() const { return box_variant_from_name(box_variant); }

    void validate() const;
};

// Introspection table shared by the file parser, the dumper, and the CLI
// option registration, so key names can never drift apart.
struct ConfigField {
    enum class Type { real, integer, text };
    const char* key;
    Type type;
    double RunConfig::* real_member;
    int RunConfig::* int_member;
    std::string RunConfig::* text_member;
    const char* help;
};

const std::vector<ConfigField>& config_fields();

// Assigns one key/value pair; unknown keys and malformed values are errors.
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Line-oriented `key = value` file; '#' comment lines and blank lines are
// skipped. Values already present in cfg act as defaults.
void load_config_file(RunConfig& cfg, const std::string& path);

// Canonical `key = value` text that load_config_file parses back to an
// equivalent RunConfig (reals at 17 significant digits).
std::string dump_config(const RunConfig& cfg);

}  // namespace foil
