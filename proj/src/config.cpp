#include "stefan/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace stefan {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "params.rho0", "params.gamma", "params.alpha", "params.K",
        "params.theta_T", "params.theta_B", "params.L",
        "grid.n_cells",
        "solver.dt", "solver.dt_over_ds", "solver.t_end",
        "solver.source_mode", "solver.epsilon", "solver.epsilon_over_ds",
        "solver.profile", "solver.velocity_argument",
        "solver.coupling", "solver.picard_max_iter", "solver.picard_tol",
        "solver.diffusion",
        "law.kind", "law.k", "law.v_max", "law.scale", "law.file",
        "initial.kind", "initial.value", "initial.file", "initial.u0",
        "output.stride", "output.dir", "output.formats",
    };
    return keys;
}

}  // namespace

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (cfg.kv_.count(key))
            throw ConfigError("duplicate key: " + key);
        cfg.kv_[key] = value;
    }
    cfg.validate_keys();
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (!known_keys().count(key)) throw UnknownKey(key);
    kv_[key] = value;
}

void RunConfig::validate_keys() const {
    for (const auto& [key, value] : kv_) {
        if (!known_keys().count(key)) throw UnknownKey(key);
        if (key == "law.file" || key == "initial.file") {
            if (!std::filesystem::exists(value))
                throw ConfigError("referenced file does not exist: " + value);
        }
    }
}

std::string RunConfig::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw MissingKey(key);
    return it->second;
}

std::string RunConfig::get_or(const std::string& key,
                              const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("not a number for key " + key + ": " + v);
    }
}

double RunConfig::get_double_or(const std::string& key, double fallback) const {
    return kv_.count(key) ? get_double(key) : fallback;
}

PhysicalParams RunConfig::params() const {
    std::map<std::string, double> raw;
    for (const char* k : {"rho0", "gamma", "alpha", "K", "theta_T", "theta_B", "L"})
        raw[k] = get_double(std::string("params.") + k);
    return make_params(raw);
}

std::size_t RunConfig::n_cells() const {
    const double n = get_double("grid.n_cells");
    if (n < 4 || n != std::floor(n))
        throw ConfigError("grid.n_cells must be an integer >= 4");
    return static_cast<std::size_t>(n);
}

VelocityLaw RunConfig::law() const {
    const std::string kind = get("law.kind");
    const double theta_T = get_double("params.theta_T");
    if (kind == "linear") return VelocityLaw::linear(get_double("law.k"), theta_T);
    if (kind == "saturated")
        return VelocityLaw::saturated(get_double("law.v_max"),
                                      get_double("law.scale"), theta_T);
    if (kind == "table") return VelocityLaw::table_from_file(get("law.file"), theta_T);
    throw ConfigError("law.kind must be linear|saturated|table, got " + kind);
}

SolverConfig RunConfig::solver(const Grid1D& grid) const {
    SolverConfig sc;
    if (has("solver.dt") && has("solver.dt_over_ds"))
        throw ConfigError("give solver.dt or solver.dt_over_ds, not both");
    if (has("solver.dt"))
        sc.dt = get_double("solver.dt");
    else
        sc.dt = get_double_or("solver.dt_over_ds", 1.0) * grid.spacing();
    sc.t_end = get_double("solver.t_end");

    const std::string mode = get_or("solver.source_mode", "sharp");
    if (mode == "sharp")
        sc.source_mode = SourceMode::sharp;
    else if (mode == "mollified")
        sc.source_mode = SourceMode::mollified;
    else
        throw ConfigError("solver.source_mode must be sharp|mollified");
    if (sc.source_mode == SourceMode::mollified) {
        if (has("solver.epsilon"))
            sc.epsilon = get_double("solver.epsilon");
        else
            sc.epsilon = get_double("solver.epsilon_over_ds") * grid.spacing();
    }
    const std::string prof = get_or("solver.profile", "cosine");
    if (prof == "cosine")
        sc.profile = MollifierProfile::cosine;
    else if (prof == "bump")
        sc.profile = MollifierProfile::bump;
    else
        throw ConfigError("solver.profile must be bump|cosine");

    const std::string varg = get_or("solver.velocity_argument", "interface");
    if (varg == "interface")
        sc.velocity_argument = VelocityArgument::interface;
    else if (varg == "field")
        sc.velocity_argument = VelocityArgument::field;
    else
        throw ConfigError("solver.velocity_argument must be interface|field");

    const std::string coup = get_or("solver.coupling", "imex");
    if (coup == "imex")
        sc.coupling = CouplingScheme::imex;
    else if (coup == "picard")
        sc.coupling = CouplingScheme::picard;
    else
        throw ConfigError("solver.coupling must be imex|picard");
    sc.picard_max_iter =
        static_cast<int>(get_double_or("solver.picard_max_iter", 50));
    sc.picard_tol = get_double_or("solver.picard_tol", 1e-12);

    const std::string diff = get_or("solver.diffusion", "backward_euler");
    if (diff == "backward_euler")
        sc.diffusion = DiffusionScheme::backward_euler;
    else if (diff == "crank_nicolson")
        sc.diffusion = DiffusionScheme::crank_nicolson;
    else
        throw ConfigError("solver.diffusion must be backward_euler|crank_nicolson");

    sc.snapshot_stride = static_cast<std::size_t>(get_double_or("output.stride", 0));
    sc.validate();
    return sc;
}

InitialKind RunConfig::initial_kind() const {
    const std::string k = get_or("initial.kind", "sine");
    if (k == "constant") return InitialKind::constant;
    if (k == "sine") return InitialKind::sine;
    if (k == "file") return InitialKind::file;
    throw ConfigError("initial.kind must be constant|sine|file");
}

double RunConfig::u0() const { return get_double("initial.u0"); }

std::vector<double> RunConfig::initial_values(const Grid1D& grid) const {
    const PhysicalParams p = params();
    std::vector<double> v(grid.n_nodes(), 0.0);
    switch (initial_kind()) {
        case InitialKind::constant: {
            const double c = get_double_or("initial.value", p.theta_c());
            for (std::size_t i = 1; i + 1 < v.size(); ++i) v[i] = c;
            break;
        }
        case InitialKind::sine: {
            const double amp = get_double_or("initial.value", p.theta_c());
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = amp * std::sin(M_PI * grid.node(i) / grid.length());
            break;
        }
        case InitialKind::file: {
            std::ifstream in(get("initial.file"));
            if (!in) throw ConfigError("cannot open initial.file");
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!(in >> v[i]))
                    throw ConfigError("initial.file has fewer values than nodes");
            break;
        }
    }
    v.front() = 0.0;
    v.back() = 0.0;
    return v;
}

OutputOptions RunConfig::output() const {
    OutputOptions o;
    o.stride = static_cast<std::size_t>(get_double_or("output.stride", 0));
    o.dir = get_or("output.dir", "out");
    const std::string formats = get_or("output.formats", "csv,json");
    o.csv = formats.find("csv") != std::string::npos;
    o.json = formats.find("json") != std::string::npos;
    return o;
}

BuiltRun build_run(const RunConfig& cfg) {
    const PhysicalParams p = cfg.params();
    Grid1D grid(cfg.n_cells(), p.L);
    return BuiltRun{grid,
                    p,
                    cfg.law(),
                    cfg.solver(grid),
                    cfg.initial_values(grid),
                    cfg.u0(),
                    cfg.output()};
}

}  // namespace stefan
