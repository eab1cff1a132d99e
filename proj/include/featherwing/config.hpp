#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "featherwing/agent_network.hpp"
#include "featherwing/control_laws.hpp"
#include "featherwing/dynamics.hpp"
#include "featherwing/feather_aero.hpp"
#include "featherwing/model_core.hpp"
#include "featherwing/plant.hpp"

namespace featherwing {

/**
 * Raw `[section]` / `key = value` document with source line numbers.
 *
 * Grammar: one entry per line; `#` starts a comment; blank lines ignored;
 * section headers are `[name]`; keys are `[a-z0-9_]+`; values run to the
 * end of the line (trimmed). Lists are comma separated. Duplicate keys in
 * a section are an error.
 */
class ConfigDocument {
public:
    struct Entry {
        std::string value;
        int line = 0;
        bool used = false;
    };

    static ConfigDocument parse(std::string_view text, std::string source = "<string>");

    /// Applies `section.key=value`; the key must belong to a known section.
    void override_value(std::string_view assignment);

    bool has_section(const std::string& section) const { return sections_.count(section) != 0; }
    bool has(const std::string& section, const std::string& key) const;
    Entry* find(const std::string& section, const std::string& key);
    const std::string& source() const noexcept { return source_; }
    const std::map<std::string, std::map<std::string, Entry>>& sections() const noexcept {
        return sections_;
    }
    std::map<std::string, std::map<std::string, Entry>>& sections() noexcept { return sections_; }

private:
    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

struct StabilitySettings {
    double v_min = 0.1;
    double v_max = 100.0;
    int points = 200;
    double v_lo = 0.1;
    double v_hi = 100.0;
    double tol = 1e-6;
};

struct CompareSettings {
    bool extend_until_half = true;
    long max_steps = 4'000'000;
    long sample_every = 1000;
};

struct SimSettings {
    double dt = 1e-5;
    long steps = 10;
    ModalState x0{1e-2, 0.0, 0.0, 0.0};
    std::vector<double> beta0;
    bool saturation = true;
    unsigned long long perturbation_seed = 0;
    double perturbation_scale = 0.0;
    double energy_threshold = 1.0;   ///< E_*
    double eps_star = 1.0;           ///< threshold on L
    double eps_star_star = 1.0;      ///< threshold on L~
};

/// Fully resolved experiment: every number a run uses, defaults included.
struct ExperimentConfig {
    std::string source;

    WingModel wing;
    double section_height = 0.0;  ///< 0 when torsion_inertia was given directly
    int panels = kDefaultPanels;

    int feather_count = 0;
    std::vector<double> stations;        ///< all listed stations; the first feather_count are used
    std::vector<double> x_star;          ///< per feather
    std::vector<double> x_k;             ///< per feather
    std::vector<Side> sides;             ///< per feather
    double angle_limit = 0.0;            ///< beta+ = -beta- = angle_limit
    double footprint = 0.0;
    std::vector<double> psi_bar;         ///< metadata only

    TopologyKind topology = TopologyKind::path;
    int k_nearest = 1;
    std::vector<std::tuple<int, int, double>> weights;  ///< explicit topology, zero-based

    LawKind law = LawKind::ma;
    std::vector<double> gamma_sg{1.0};
    std::vector<double> gamma_nonma{1.0};
    std::vector<double> gamma_ma{1.0};

    SimSettings sim;
    StabilitySettings stability;
    CompareSettings compare;
    std::string output_dir = "out";

    std::vector<FeatherSpec> feather_specs() const;
    Adjacency network() const;
    /// Throws ModelError prefixed with the responsible key path.
    PlantModel plant() const;
    std::vector<double> gains(LawKind kind) const;
    SimState initial_state() const;

    /// Canonical `[section] key = value` text of every resolved value.
    std::string to_text() const;
};

ExperimentConfig resolve_config(ConfigDocument& doc);

/// Loads a file, or the built-in preset when `path` names one.
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides = {});
ExperimentConfig load_config_text(std::string_view text, std::string source,
                                  const std::vector<std::string>& overrides = {});

/// The reference experiment, verbatim parameters; `paper-sec6` selects it.
std::string_view preset_text(std::string_view name);
bool is_preset(std::string_view name);

}  // namespace featherwing
