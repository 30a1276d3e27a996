#include "stefan/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace stefan {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);  // binary: keep LF endings everywhere
    if (!f) throw ConfigError("cannot open for writing: " + p.string());
    return f;
}

std::string field_name(std::size_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "field_%04zu.csv", idx);
    return buf;
}

json law_to_json(const VelocityLaw& law) {
    json j;
    j["theta_T"] = law.theta_T();
    switch (law.kind()) {
        case VelocityKind::linear:
            j["kind"] = "linear";
            j["k"] = law.stiffness();
            break;
        case VelocityKind::saturated:
            j["kind"] = "saturated";
            j["v_max"] = *law.v_max();
            j["scale"] = law.saturation_scale();
            break;
        case VelocityKind::table:
            j["kind"] = "table";
            j["theta"] = law.table_thetas();
            j["v"] = law.table_values();
            break;
    }
    return j;
}

VelocityLaw law_from_json(const json& j) {
    const std::string kind = j.at("kind");
    const double theta_T = j.at("theta_T");
    if (kind == "linear") return VelocityLaw::linear(j.at("k"), theta_T);
    if (kind == "saturated")
        return VelocityLaw::saturated(j.at("v_max"), j.at("scale"), theta_T);
    if (kind == "table")
        return VelocityLaw::table(j.at("theta").get<std::vector<double>>(),
                                  j.at("v").get<std::vector<double>>(), theta_T);
    throw MissingArtifacts("summary.json: unknown law kind " + kind);
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw MissingArtifacts("missing artifact: " + p.string());
    return f;
}

// parses one comma-separated numeric row; returns false at end of file
bool read_row(std::istream& in, std::vector<double>& row, std::size_t n) {
    std::string line;
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    row.clear();
    std::string cell;
    while (std::getline(ls, cell, ',')) {
        try {
            row.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw MissingArtifacts("malformed CSV cell: " + cell);
        }
    }
    if (row.size() != n)
        throw MissingArtifacts("CSV row has " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(n));
    return true;
}

}  // namespace

void write_result(const std::string& dir, const SimulationResult& result,
                  const Grid1D& grid, const PhysicalParams& params,
                  const VelocityLaw& law, const OutputOptions& out) {
    const fs::path root(dir);
    fs::create_directories(root);

    if (out.csv) {
        {
            auto f = open_out(root / "trajectory.csv");
            f << "t,u,theta_at_u,v,gate\n";
            for (const auto& s : result.trajectory.samples())
                f << format_double(s.t) << ',' << format_double(s.u) << ','
                  << format_double(s.theta_at_u) << ',' << format_double(s.v)
                  << ',' << (s.active ? 1 : 0) << '\n';
        }
        {
            auto f = open_out(root / "energy.csv");
            f << "t,stored,flux_cum,latent_cum,residual\n";
            for (const auto& r : result.ledger)
                f << format_double(r.t) << ',' << format_double(r.stored) << ','
                  << format_double(r.flux_cum) << ','
                  << format_double(r.latent_cum) << ','
                  << format_double(r.residual) << '\n';
        }
        for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
            auto f = open_out(root / field_name(k));
            f << "s,theta_bar\n";
            const auto& vals = result.snapshots[k].values;
            for (std::size_t i = 0; i < vals.size(); ++i)
                f << format_double(grid.node(i)) << ','
                  << format_double(vals[i]) << '\n';
        }
    }

    if (out.json) {
        json j;
        if (result.exit) {
            j["t_star"] = result.exit->t_star;
            j["exit_side"] =
                result.exit->side == ExitRecord::Side::left ? "left" : "right";
        } else {
            j["t_star"] = nullptr;
            j["exit_side"] = nullptr;
        }
        j["energy_scale"] = result.energy_scale;
        j["grid"] = {{"n_cells", grid.n_cells()}, {"L", grid.length()}};
        j["params"] = {{"rho0", params.rho0},       {"gamma", params.gamma},
                       {"alpha", params.alpha},     {"K", params.K},
                       {"theta_T", params.theta_T}, {"theta_B", params.theta_B},
                       {"L", params.L}};
        j["law"] = law_to_json(law);
        json times = json::array();
        for (const auto& s : result.snapshots) times.push_back(s.t);
        j["snapshot_times"] = times;
        // filled in by the verifier; kept here so the file shape is stable
        j["verdicts"] = {{"max_principle", "pending"},
                         {"monotonicity", "pending"},
                         {"speed_bound", "pending"},
                         {"finite_exit", "pending"},
                         {"l2_decay", "pending"},
                         {"energy_balance", "pending"}};
        auto f = open_out(root / "summary.json");
        f << j.dump(2) << '\n';
    }
}

RunArtifacts read_result(const std::string& dir) {
    const fs::path root(dir);
    json j;
    {
        auto f = open_in(root / "summary.json");
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw MissingArtifacts(std::string("summary.json unreadable: ") +
                                   e.what());
        }
    }

    PhysicalParams params{};
    Grid1D grid(4, 1.0);
    VelocityLaw law = VelocityLaw::linear(1.0, 1.0);
    SimulationResult result;
    try {
        const json& p = j.at("params");
        params = {p.at("rho0"), p.at("gamma"),   p.at("alpha"), p.at("K"),
                  p.at("theta_T"), p.at("theta_B"), p.at("L")};
        grid = Grid1D(j.at("grid").at("n_cells").get<std::size_t>(),
                      j.at("grid").at("L").get<double>());
        law = law_from_json(j.at("law"));
        result.energy_scale = j.at("energy_scale");
        if (!j.at("t_star").is_null()) {
            ExitRecord rec;
            rec.t_star = j.at("t_star");
            rec.side = j.at("exit_side") == "left" ? ExitRecord::Side::left
                                                   : ExitRecord::Side::right;
            result.exit = rec;
        }
    } catch (const json::exception& e) {
        throw MissingArtifacts(std::string("summary.json incomplete: ") +
                               e.what());
    }

    {
        auto f = open_in(root / "trajectory.csv");
        std::string header;
        std::getline(f, header);
        std::vector<double> row;
        while (read_row(f, row, 5)) {
            TrajectorySample s;
            s.t = row[0];
            s.u = row[1];
            s.theta_at_u = row[2];
            s.v = row[3];
            s.active = row[4] != 0.0;
            result.trajectory.push(s);
        }
        if (result.trajectory.empty())
            throw MissingArtifacts("trajectory.csv has no samples");
    }

    {
        auto f = open_in(root / "energy.csv");
        std::string header;
        std::getline(f, header);
        std::vector<double> row;
        while (read_row(f, row, 5)) {
            EnergyLedgerRow r;
            r.t = row[0];
            r.stored = row[1];
            r.flux_cum = row[2];
            r.latent_cum = row[3];
            r.residual = row[4];
            r.l2 = std::numeric_limits<double>::quiet_NaN();
            result.ledger.push_back(r);
        }
        if (result.ledger.empty())
            throw MissingArtifacts("energy.csv has no rows");
    }

    const auto times = j.at("snapshot_times").get<std::vector<double>>();
    for (std::size_t k = 0; k < times.size(); ++k) {
        auto f = open_in(root / field_name(k));
        std::string header;
        std::getline(f, header);
        Snapshot snap;
        snap.t = times[k];
        std::vector<double> row;
        while (read_row(f, row, 2)) snap.values.push_back(row[1]);
        if (snap.values.size() != grid.n_nodes())
            throw MissingArtifacts(field_name(k) + " is truncated");
        result.snapshots.push_back(std::move(snap));
    }
    if (result.snapshots.empty())
        throw MissingArtifacts("run has no field snapshots");

    return RunArtifacts{grid, params, law, std::move(result)};
}

void write_verify_report(const std::string& dir,
                         const std::vector<TheoremReport>& reports) {
    const fs::path root(dir);
    fs::create_directories(root);
    json j;
    json arr = json::array();
    bool any_fail = false;
    for (const auto& r : reports) {
        arr.push_back({{"id", r.id},
                       {"verdict", to_string(r.verdict)},
                       {"margin", r.margin},
                       {"worst_t", r.worst_t},
                       {"worst_s", r.worst_s},
                       {"note", r.note}});
        if (r.verdict == Verdict::fail) any_fail = true;
    }
    j["reports"] = arr;
    j["pass"] = !any_fail;
    auto f = open_out(root / "verify.json");
    f << j.dump(2) << '\n';
}

}  // namespace stefan
