#include "featherwing/config.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "featherwing/errors.hpp"
#include "featherwing/io.hpp"

namespace featherwing {

namespace {

constexpr std::string_view kPaperSec6 = R"(# Reference experiment (arbitrary units).
[wing]
half_span = 10
chord = 10
linear_mass = 10
sc_gc_offset = 0.1
section_height = 2
bending_stiffness = 50
torsion_stiffness = 70
sc_position = 2.5
lift_slope = 10
airspeed = 10
air_density = 1.225
panels = 256

[feathers]
count = 5
z = 1, 2, 3, 4, 5, 6, 7, 8, 9
x_star = 7.49
x_k = 7.5
side = lower
angle_limit = 0.35
footprint = 2
psi_bar = 0.07853981633974483, 0.15707963267948966, 0.23561944901923448, 0.3141592653589793, 0.39269908169872414, 0.47123889803846897, 0.5497787143782138, 0.6283185307179586, 0.7068583470577035

[network]
kind = path

[control]
law = ma
gamma_sg = 1
gamma_nonma = 1
gamma_ma = 1

[sim]
dt = 1e-5
steps = 10
x0 = 0.01, 0, 0, 0
beta0 = 0.01, 0, 0, 0, 0
saturation = true
perturbation_seed = 0
perturbation_scale = 0
energy_threshold = 1
eps_star = 1
eps_star_star = 1

[stability]
v_min = 0.1
v_max = 100
points = 200
v_lo = 0.1
v_hi = 100
tol = 0.0001

[compare]
extend_until_half = true
max_steps = 4000000
sample_every = 1000

[output]
dir = out
)";

const std::set<std::string> kSections = {"wing",      "feathers", "network", "control",
                                         "sim",       "stability", "compare", "output"};

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool valid_key(std::string_view key) {
    if (key.empty()) return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
               c == '_';
    });
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Typed accessors that mark entries used and prefix errors with key path and line.
class Reader {
public:
    Reader(ConfigDocument& doc) : doc_(doc) {}

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& what) const {
        std::ostringstream os;
        os << doc_.source() << ": " << section << "." << key;
        if (auto* e = const_cast<ConfigDocument&>(doc_).find(section, key)) os << " (line " << e->line << ")";
        os << ": " << what;
        throw ConfigError(os.str());
    }

    void require_section(const std::string& section) const {
        if (!doc_.has_section(section))
            throw ConfigError(doc_.source() + ": missing required section [" + section + "]");
    }

    bool has(const std::string& section, const std::string& key) const {
        return doc_.has(section, key);
    }

    const std::string& raw(const std::string& section, const std::string& key) {
        auto* e = doc_.find(section, key);
        if (!e) fail(section, key, "missing required key");
        e->used = true;
        return e->value;
    }

    double number(const std::string& section, const std::string& key) {
        const std::string& v = raw(section, key);
        try {
            return parse_number(v);
        } catch (const ParameterError&) {
            fail(section, key, "expected a number, got '" + v + "'");
        }
    }

    double number(const std::string& section, const std::string& key, double fallback) {
        return has(section, key) ? number(section, key) : fallback;
    }

    long integer(const std::string& section, const std::string& key, long fallback) {
        if (!has(section, key)) return fallback;
        const double v = number(section, key);
        if (v != static_cast<double>(static_cast<long>(v)))
            fail(section, key, "expected an integer");
        return static_cast<long>(v);
    }

    std::vector<double> numbers(const std::string& section, const std::string& key) {
        const std::string& v = raw(section, key);
        std::vector<double> out;
        for (const auto& tok : split(v, ',')) {
            try {
                out.push_back(parse_number(tok));
            } catch (const ParameterError&) {
                fail(section, key, "expected a number list, bad entry '" + tok + "'");
            }
        }
        return out;
    }

    std::vector<std::string> words(const std::string& section, const std::string& key) {
        return split(raw(section, key), ',');
    }

    std::string word(const std::string& section, const std::string& key, std::string fallback) {
        return has(section, key) ? trim(raw(section, key)) : fallback;
    }

    bool flag(const std::string& section, const std::string& key, bool fallback) {
        if (!has(section, key)) return fallback;
        const std::string v = trim(raw(section, key));
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        fail(section, key, "expected true or false, got '" + v + "'");
    }

private:
    ConfigDocument& doc_;
};

template <class T>
std::vector<T> per_feather(Reader& r, const std::string& section, const std::string& key,
                           std::vector<T> values, int count) {
    if (values.size() == 1) return std::vector<T>(static_cast<size_t>(count), values[0]);
    if (static_cast<int>(values.size()) == count) return values;
    r.fail(section, key, "needs 1 or count=" + std::to_string(count) + " entries, got " +
                             std::to_string(values.size()));
}

std::string list_text(std::span<const double> v) { return join_numbers(v, ", "); }

}  // namespace

// ---------------------------------------------------------------------------

ConfigDocument ConfigDocument::parse(std::string_view text, std::string source) {
    ConfigDocument doc;
    doc.source_ = std::move(source);
    std::string section;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string t = trim(line);
        if (t.empty()) continue;

        auto fail = [&](const std::string& what) {
            std::ostringstream os;
            os << doc.source_ << ":" << line_no << ": " << what;
            throw ConfigError(os.str());
        };

        if (t.front() == '[') {
            if (t.back() != ']') fail("malformed section header '" + t + "'");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            if (!kSections.count(section)) fail("unknown section [" + section + "]");
            if (doc.sections_.count(section)) fail("duplicate section [" + section + "]");
            doc.sections_[section];
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) fail("expected 'key = value', got '" + t + "'");
        if (section.empty()) fail("entry before any [section]");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (!valid_key(key)) fail("invalid key '" + key + "'");
        if (value.empty()) fail("empty value for '" + key + "'");
        auto& entries = doc.sections_[section];
        if (entries.count(key)) fail("duplicate key '" + section + "." + key + "'");
        entries[key] = Entry{value, line_no, false};
    }
    if (doc.sections_.empty()) throw ConfigError(doc.source_ + ": empty configuration");
    return doc;
}

void ConfigDocument::override_value(std::string_view assignment) {
    const size_t eq = assignment.find('=');
    const size_t dot = assignment.find('.');
    if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
        throw ConfigError("override must look like section.key=value: '" + std::string(assignment) + "'");
    const std::string section = trim(assignment.substr(0, dot));
    const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
    const std::string value = trim(assignment.substr(eq + 1));
    if (!kSections.count(section)) throw ConfigError("override: unknown section '" + section + "'");
    if (!valid_key(key) || value.empty())
        throw ConfigError("override: malformed '" + std::string(assignment) + "'");
    sections_[section][key] = Entry{value, 0, false};
}

bool ConfigDocument::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) != 0;
}

ConfigDocument::Entry* ConfigDocument::find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
}

// ---------------------------------------------------------------------------

ExperimentConfig resolve_config(ConfigDocument& doc) {
    Reader r(doc);
    ExperimentConfig cfg;
    cfg.source = doc.source();
    for (const char* s : {"wing", "feathers", "network", "control", "sim"}) r.require_section(s);

    // [wing]
    WingModel& w = cfg.wing;
    w.half_span = r.number("wing", "half_span");
    w.chord = r.number("wing", "chord");
    w.linear_mass = r.number("wing", "linear_mass");
    w.sc_gc_offset = r.number("wing", "sc_gc_offset");
    w.bending_stiffness = r.number("wing", "bending_stiffness");
    w.torsion_stiffness = r.number("wing", "torsion_stiffness");
    w.sc_position = r.number("wing", "sc_position");
    w.lift_slope = r.number("wing", "lift_slope");
    w.airspeed = r.number("wing", "airspeed");
    w.air_density = r.number("wing", "air_density");
    const bool has_height = r.has("wing", "section_height");
    const bool has_inertia = r.has("wing", "torsion_inertia");
    if (has_height == has_inertia)
        r.fail("wing", "torsion_inertia", "give exactly one of torsion_inertia or section_height");
    if (has_inertia) {
        w.torsion_inertia = r.number("wing", "torsion_inertia");
    } else {
        cfg.section_height = r.number("wing", "section_height");
        if (!(cfg.section_height > 0.0)) r.fail("wing", "section_height", "must be > 0");
        if (!(w.chord > 0.0)) r.fail("wing", "chord", "must be > 0");
        w.torsion_inertia = elliptical_torsion_inertia(cfg.section_height, w.chord);
    }
    cfg.panels = static_cast<int>(r.integer("wing", "panels", kDefaultPanels));
    if (cfg.panels < 2) r.fail("wing", "panels", "must be >= 2");
    try {
        w.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(doc.source() + ": [wing] " + e.what());
    }

    // [feathers]
    const long count = r.integer("feathers", "count", -1);
    if (count < 1) r.fail("feathers", "count", "required, must be >= 1");
    cfg.feather_count = static_cast<int>(count);
    cfg.stations = r.numbers("feathers", "z");
    if (static_cast<long>(cfg.stations.size()) < count)
        r.fail("feathers", "z", "lists fewer stations than count");
    for (double z : cfg.stations)
        if (!(z >= 0.0 && z <= w.half_span)) r.fail("feathers", "z", "stations must lie in [0, half_span]");
    cfg.x_star = per_feather(r, "feathers", "x_star", r.numbers("feathers", "x_star"), cfg.feather_count);
    cfg.x_k = per_feather(r, "feathers", "x_k", r.numbers("feathers", "x_k"), cfg.feather_count);
    for (int i = 0; i < cfg.feather_count; ++i) {
        const double a = cfg.x_star[static_cast<size_t>(i)], b = cfg.x_k[static_cast<size_t>(i)];
        if (!(a >= 0.0 && a <= b && b <= w.chord))
            r.fail("feathers", "x_star", "need 0 <= x_star <= x_k <= chord for every feather");
    }
    std::vector<Side> sides;
    if (r.has("feathers", "side")) {
        for (const auto& s : r.words("feathers", "side")) {
            try {
                sides.push_back(side_from_string(s));
            } catch (const ParameterError& e) {
                r.fail("feathers", "side", e.what());
            }
        }
    } else {
        sides.push_back(Side::lower);
    }
    cfg.sides = per_feather(r, "feathers", "side", sides, cfg.feather_count);
    cfg.angle_limit = r.number("feathers", "angle_limit", 0.35);
    if (!(cfg.angle_limit > 0.0)) r.fail("feathers", "angle_limit", "must be > 0");
    cfg.footprint = r.number("feathers", "footprint", w.half_span / static_cast<double>(count));
    if (!(cfg.footprint >= 0.0)) r.fail("feathers", "footprint", "must be >= 0");
    if (r.has("feathers", "psi_bar")) cfg.psi_bar = r.numbers("feathers", "psi_bar");

    // [network]
    try {
        cfg.topology = topology_from_string(r.word("network", "kind", "path"));
    } catch (const ParameterError& e) {
        r.fail("network", "kind", e.what());
    }
    cfg.k_nearest = static_cast<int>(r.integer("network", "k", 1));
    if (cfg.k_nearest < 1) r.fail("network", "k", "must be >= 1");
    if (r.has("network", "weights")) {
        if (cfg.topology != TopologyKind::explicit_weights)
            r.fail("network", "weights", "only valid with kind = explicit");
        for (const auto& triple : split(r.raw("network", "weights"), ';')) {
            std::istringstream in(triple);
            std::string a, b, c, extra;
            in >> a >> b >> c;
            if (c.empty() || (in >> extra)) r.fail("network", "weights", "entries must be 'i j w'");
            try {
                const double i = parse_number(a), j = parse_number(b), wt = parse_number(c);
                if (i != static_cast<int>(i) || j != static_cast<int>(j))
                    r.fail("network", "weights", "indices must be integers");
                cfg.weights.emplace_back(static_cast<int>(i) - 1, static_cast<int>(j) - 1, wt);
            } catch (const ParameterError&) {
                r.fail("network", "weights", "bad entry '" + triple + "'");
            }
        }
    } else if (cfg.topology == TopologyKind::explicit_weights) {
        r.fail("network", "weights", "kind = explicit needs a weights list");
    }

    // [control]
    try {
        cfg.law = law_from_string(r.word("control", "law", "ma"));
    } catch (const ParameterError& e) {
        r.fail("control", "law", e.what());
    }
    auto gains = [&](const char* key) {
        std::vector<double> g = r.has("control", key) ? r.numbers("control", key) : std::vector<double>{1.0};
        for (double v : g)
            if (!(v >= 0.0)) r.fail("control", key, "gains must be >= 0");
        return per_feather(r, "control", key, g, cfg.feather_count);
    };
    cfg.gamma_sg = gains("gamma_sg");
    cfg.gamma_nonma = gains("gamma_nonma");
    cfg.gamma_ma = gains("gamma_ma");

    // [sim]
    SimSettings& s = cfg.sim;
    s.dt = r.number("sim", "dt", s.dt);
    if (!(s.dt > 0.0)) r.fail("sim", "dt", "must be > 0");
    s.steps = r.integer("sim", "steps", s.steps);
    if (s.steps < 1) r.fail("sim", "steps", "must be >= 1");
    if (r.has("sim", "x0")) {
        const auto x0 = r.numbers("sim", "x0");
        if (x0.size() != 4) r.fail("sim", "x0", "needs 4 entries (q, qdot, r, rdot)");
        std::copy(x0.begin(), x0.end(), s.x0.begin());
    }
    s.saturation = r.flag("sim", "saturation", true);
    if (r.has("sim", "beta0")) {
        s.beta0 = per_feather(r, "sim", "beta0", r.numbers("sim", "beta0"), cfg.feather_count);
    } else {
        s.beta0.assign(static_cast<size_t>(cfg.feather_count), 0.0);
        s.beta0[0] = cfg.sides[0] == Side::lower ? 0.01 : -0.01;
    }
    if (s.saturation)
        for (int i = 0; i < cfg.feather_count; ++i) {
            const double b = s.beta0[static_cast<size_t>(i)];
            const bool lower = cfg.sides[static_cast<size_t>(i)] == Side::lower;
            if (lower ? !(b >= 0.0 && b <= cfg.angle_limit) : !(b <= 0.0 && b >= -cfg.angle_limit))
                r.fail("sim", "beta0", "initial angle of feather " + std::to_string(i + 1) +
                                           " outside its bounds");
        }
    const long seed = r.integer("sim", "perturbation_seed", 0);
    if (seed < 0) r.fail("sim", "perturbation_seed", "must be >= 0");
    s.perturbation_seed = static_cast<unsigned long long>(seed);
    s.perturbation_scale = r.number("sim", "perturbation_scale", 0.0);
    if (!(s.perturbation_scale >= 0.0)) r.fail("sim", "perturbation_scale", "must be >= 0");
    s.energy_threshold = r.number("sim", "energy_threshold", s.energy_threshold);
    s.eps_star = r.number("sim", "eps_star", s.eps_star);
    s.eps_star_star = r.number("sim", "eps_star_star", s.eps_star_star);

    // [stability]
    StabilitySettings& st = cfg.stability;
    st.v_min = r.number("stability", "v_min", st.v_min);
    st.v_max = r.number("stability", "v_max", st.v_max);
    st.points = static_cast<int>(r.integer("stability", "points", st.points));
    st.v_lo = r.number("stability", "v_lo", st.v_lo);
    st.v_hi = r.number("stability", "v_hi", st.v_hi);
    st.tol = r.number("stability", "tol", st.tol);
    if (!(st.v_min >= 0.0 && st.v_min <= st.v_max)) r.fail("stability", "v_min", "need 0 <= v_min <= v_max");
    if (st.points < 1) r.fail("stability", "points", "must be >= 1");
    if (!(st.v_lo >= 0.0)) r.fail("stability", "v_lo", "must be >= 0");
    if (!(st.tol > 0.0)) r.fail("stability", "tol", "must be > 0");

    // [compare]
    CompareSettings& cs = cfg.compare;
    cs.extend_until_half = r.flag("compare", "extend_until_half", cs.extend_until_half);
    cs.max_steps = r.integer("compare", "max_steps", cs.max_steps);
    cs.sample_every = r.integer("compare", "sample_every", cs.sample_every);
    if (cs.max_steps < 1) r.fail("compare", "max_steps", "must be >= 1");
    if (cs.sample_every < 1) r.fail("compare", "sample_every", "must be >= 1");

    // [output]
    cfg.output_dir = r.word("output", "dir", cfg.output_dir);

    for (const auto& [section, entries] : doc.sections())
        for (const auto& [key, entry] : entries)
            if (!entry.used) {
                std::ostringstream os;
                os << doc.source() << ": unknown key " << section << "." << key;
                if (entry.line > 0) os << " (line " << entry.line << ")";
                throw ConfigError(os.str());
            }

    // Model-level checks surface here with key paths.
    (void)cfg.plant();
    return cfg;
}

std::vector<FeatherSpec> ExperimentConfig::feather_specs() const {
    std::vector<FeatherSpec> out;
    for (int i = 0; i < feather_count; ++i) {
        const auto k = static_cast<size_t>(i);
        out.push_back(make_feather(i + 1, stations[k], psi_from_x(x_star[k], wing.chord),
                                   psi_from_x(x_k[k], wing.chord), sides[k], angle_limit));
    }
    return out;
}

Adjacency ExperimentConfig::network() const {
    try {
        if (topology == TopologyKind::explicit_weights)
            return Adjacency::from_weights(feather_count, weights);
        return build_topology(topology, feather_count, k_nearest);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("network: ") + e.what());
    }
}

PlantModel ExperimentConfig::plant() const {
    try {
        return assemble_plant(wing, feather_specs(), network(), footprint, panels);
    } catch (const ModelError& e) {
        throw ModelError("wing.sc_gc_offset (with wing.linear_mass, wing.torsion_inertia): " +
                         std::string(e.what()));
    } catch (const DomainError& e) {
        throw ConfigError("feathers.z / feathers.footprint: " + std::string(e.what()));
    }
}

std::vector<double> ExperimentConfig::gains(LawKind kind) const {
    switch (kind) {
        case LawKind::sg: return gamma_sg;
        case LawKind::nonma: return gamma_nonma;
        case LawKind::ma: return gamma_ma;
        case LawKind::none: return std::vector<double>(static_cast<size_t>(feather_count), 0.0);
    }
    return {};
}

SimState ExperimentConfig::initial_state() const {
    SimState s;
    s.t = 0.0;
    s.x = sim.x0;
    s.beta = sim.beta0;
    if (sim.perturbation_scale > 0.0) {
        std::mt19937_64 rng(sim.perturbation_seed);
        std::normal_distribution<double> normal(0.0, sim.perturbation_scale);
        for (double& v : s.x) v += normal(rng);
    }
    return s;
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    auto num = [](double v) { return format_number(v); };
    os << "[wing]\n"
       << "half_span = " << num(wing.half_span) << "\n"
       << "chord = " << num(wing.chord) << "\n"
       << "linear_mass = " << num(wing.linear_mass) << "\n"
       << "sc_gc_offset = " << num(wing.sc_gc_offset) << "\n"
       << (section_height > 0.0 ? "section_height = " + num(section_height)
                                : "torsion_inertia = " + num(wing.torsion_inertia))
       << "\n"
       << "bending_stiffness = " << num(wing.bending_stiffness) << "\n"
       << "torsion_stiffness = " << num(wing.torsion_stiffness) << "\n"
       << "sc_position = " << num(wing.sc_position) << "\n"
       << "lift_slope = " << num(wing.lift_slope) << "\n"
       << "airspeed = " << num(wing.airspeed) << "\n"
       << "air_density = " << num(wing.air_density) << "\n"
       << "panels = " << panels << "\n\n";
    std::vector<double> used(stations.begin(), stations.begin() + feather_count);
    os << "[feathers]\n"
       << "count = " << feather_count << "\n"
       << "z = " << list_text(used) << "\n"
       << "x_star = " << list_text(x_star) << "\n"
       << "x_k = " << list_text(x_k) << "\n"
       << "side = ";
    for (size_t i = 0; i < sides.size(); ++i) os << (i ? ", " : "") << to_string(sides[i]);
    os << "\nangle_limit = " << num(angle_limit) << "\n"
       << "footprint = " << num(footprint) << "\n";
    if (!psi_bar.empty()) os << "psi_bar = " << list_text(psi_bar) << "\n";
    os << "\n[network]\nkind = " << to_string(topology) << "\nk = " << k_nearest << "\n";
    if (!weights.empty()) {
        os << "weights = ";
        for (size_t i = 0; i < weights.size(); ++i) {
            const auto& [a, b, wt] = weights[i];
            os << (i ? "; " : "") << a + 1 << " " << b + 1 << " " << num(wt);
        }
        os << "\n";
    }
    os << "\n[control]\nlaw = " << to_string(law) << "\n"
       << "gamma_sg = " << list_text(gamma_sg) << "\n"
       << "gamma_nonma = " << list_text(gamma_nonma) << "\n"
       << "gamma_ma = " << list_text(gamma_ma) << "\n\n";
    os << "[sim]\n"
       << "dt = " << num(sim.dt) << "\n"
       << "steps = " << sim.steps << "\n"
       << "x0 = " << list_text(sim.x0) << "\n"
       << "beta0 = " << list_text(sim.beta0) << "\n"
       << "saturation = " << (sim.saturation ? "true" : "false") << "\n"
       << "perturbation_seed = " << sim.perturbation_seed << "\n"
       << "perturbation_scale = " << num(sim.perturbation_scale) << "\n"
       << "energy_threshold = " << num(sim.energy_threshold) << "\n"
       << "eps_star = " << num(sim.eps_star) << "\n"
       << "eps_star_star = " << num(sim.eps_star_star) << "\n\n";
    os << "[stability]\n"
       << "v_min = " << num(stability.v_min) << "\n"
       << "v_max = " << num(stability.v_max) << "\n"
       << "points = " << stability.points << "\n"
       << "v_lo = " << num(stability.v_lo) << "\n"
       << "v_hi = " << num(stability.v_hi) << "\n"
       << "tol = " << num(stability.tol) << "\n\n";
    os << "[compare]\n"
       << "extend_until_half = " << (compare.extend_until_half ? "true" : "false") << "\n"
       << "max_steps = " << compare.max_steps << "\n"
       << "sample_every = " << compare.sample_every << "\n\n";
    os << "[output]\ndir = " << output_dir << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------

bool is_preset(std::string_view name) { return name == "paper-sec6"; }

std::string_view preset_text(std::string_view name) {
    if (name == "paper-sec6") return kPaperSec6;
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

ExperimentConfig load_config_text(std::string_view text, std::string source,
                                  const std::vector<std::string>& overrides) {
    ConfigDocument doc = ConfigDocument::parse(text, std::move(source));
    for (const auto& o : overrides) doc.override_value(o);
    return resolve_config(doc);
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    if (is_preset(path) && !std::filesystem::exists(path))
        return load_config_text(preset_text(path), "preset:" + path, overrides);
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    return load_config_text(text, path, overrides);
}

}  // namespace featherwing
