// Flat key-value run configuration with dotted sections, e.g.
//   params.K = 1
//   solver.dt_over_ds = 1
//   law.kind = linear
// Unknown keys are rejected; files referenced by a config must exist at
// parse time.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "stefan/core.hpp"
#include "stefan/solver.hpp"
#include "stefan/velocity.hpp"

namespace stefan {

struct OutputOptions {
    std::size_t stride = 0;  // 0: solver default
    std::string dir = "out";
    bool csv = true;
    bool json = true;
};

enum class InitialKind { constant, sine, file };

class RunConfig {
  public:
    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text);

    const std::map<std::string, std::string>& entries() const { return kv_; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    void set(const std::string& key, const std::string& value);

    PhysicalParams params() const;
    std::size_t n_cells() const;
    VelocityLaw law() const;
    SolverConfig solver(const Grid1D& grid) const;
    InitialKind initial_kind() const;
    double u0() const;
    // nodal theta_bar initial values for the given grid
    std::vector<double> initial_values(const Grid1D& grid) const;
    OutputOptions output() const;

  private:
    void validate_keys() const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;

    std::map<std::string, std::string> kv_;
};

// Fully assembled run; keeps the grid alive for fields referencing it.
struct BuiltRun {
    Grid1D grid;
    PhysicalParams params;
    VelocityLaw law;
    SolverConfig solver;
    std::vector<double> theta0;
    double u0;
    OutputOptions out;
};

BuiltRun build_run(const RunConfig& cfg);

}  // namespace stefan
