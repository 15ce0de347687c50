// Config-driven experiment runner: simulations, refinement sweeps, law
// evaluation, structure-matrix dumps and the 3D adjoint-identity trials.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "msymp/adjointb.hpp"
#include "msymp/covariant.hpp"
#include "msymp/jsonio.hpp"
#include "msymp/systems.hpp"

namespace {

using namespace msymp;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitTolerance = 4;

struct RunConfig {
    std::string system;
    EosParams eos;
    Grid1D grid;
    double cfl = 0.4;
    double dt = 0.0;
    double t_end = 0.2;
    double dt_out = 0.0;
    std::string family = "uniform";
    std::map<std::string, double> ic_params;
    std::string metric_name = "cartesian";
    std::vector<std::string> laws;
    std::vector<int> refine = {64, 128, 256};
    double order_min = 1.8;
    std::optional<double> residual_tol;
    std::string out;
    long long seed = 0;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

void require_keys(const nlohmann::json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in '" + where + "'");
}

double num_or(const nlohmann::json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) throw ConfigError("'" + key + "' must be a number");
    return obj.at(key).get<double>();
}

RunConfig parse_config(const nlohmann::json& j) {
    require_keys(j, "config",
                 {"system", "eos", "grid", "time", "initial", "metric", "laws", "refine",
                  "order_min", "residual_tol", "out", "seed"});
    RunConfig c;
    if (!j.contains("system") || !j.at("system").is_string())
        throw ConfigError("config needs a 'system' name (gas1d | mhd-b | mhd-a)");
    c.system = j.at("system").get<std::string>();

    if (j.contains("eos")) {
        const auto& e = j.at("eos");
        require_keys(e, "eos", {"gamma", "c_v", "S_ref", "mu0"});
        c.eos.gamma = num_or(e, "gamma", c.eos.gamma);
        c.eos.c_v = num_or(e, "c_v", c.eos.c_v);
        c.eos.S_ref = num_or(e, "S_ref", c.eos.S_ref);
        c.eos.mu0 = num_or(e, "mu0", c.eos.mu0);
    }
    c.grid.n = 64;
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        require_keys(g, "grid", {"n", "length", "x0", "periodic"});
        c.grid.n = static_cast<int>(num_or(g, "n", 64));
        c.grid.length = num_or(g, "length", 1.0);
        c.grid.x0 = num_or(g, "x0", 0.0);
        if (g.contains("periodic")) {
            if (!g.at("periodic").is_boolean()) throw ConfigError("'periodic' must be a boolean");
            c.grid.periodic = g.at("periodic").get<bool>();
        }
    }
    if (j.contains("time")) {
        const auto& t = j.at("time");
        require_keys(t, "time", {"cfl", "dt", "t_end", "dt_out"});
        c.cfl = num_or(t, "cfl", c.cfl);
        c.dt = num_or(t, "dt", c.dt);
        c.t_end = num_or(t, "t_end", c.t_end);
        c.dt_out = num_or(t, "dt_out", c.dt_out);
    }
    if (c.dt < 0.0) throw ConfigError("'dt' must not be negative");
    if (c.dt_out < 0.0) throw ConfigError("'dt_out' must not be negative");
    if (!(c.t_end > 0.0)) throw ConfigError("'t_end' must be positive");
    if (!(c.cfl > 0.0)) throw ConfigError("'cfl' must be positive");

    if (j.contains("initial")) {
        const auto& ic = j.at("initial");
        require_keys(ic, "initial", {"family", "params"});
        if (ic.contains("family")) c.family = ic.at("family").get<std::string>();
        if (ic.contains("params")) {
            if (!ic.at("params").is_object()) throw ConfigError("'params' must be an object");
            for (const auto& [key, value] : ic.at("params").items()) {
                if (!value.is_number())
                    throw ConfigError("initial-condition parameter '" + key +
                                      "' must be a number");
                c.ic_params[key] = value.get<double>();
            }
        }
    }
    if (j.contains("metric")) {
        const auto& m = j.at("metric");
        require_keys(m, "metric", {"name"});
        if (m.contains("name")) c.metric_name = m.at("name").get<std::string>();
        if (c.metric_name != "cartesian" && c.metric_name != "cylindrical-slab")
            throw ConfigError("metric must be 'cartesian' or 'cylindrical-slab'");
    }
    if (j.contains("laws")) {
        if (!j.at("laws").is_array()) throw ConfigError("'laws' must be an array of names");
        for (const auto& v : j.at("laws")) c.laws.push_back(v.get<std::string>());
    }
    if (j.contains("refine")) {
        if (!j.at("refine").is_array() || j.at("refine").size() < 3)
            throw ConfigError("'refine' must list at least 3 resolutions");
        c.refine.clear();
        for (const auto& v : j.at("refine")) c.refine.push_back(v.get<int>());
    }
    c.order_min = num_or(j, "order_min", c.order_min);
    if (j.contains("residual_tol")) c.residual_tol = num_or(j, "residual_tol", 0.0);
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<long long>();
    return c;
}

SystemDef build_system(const RunConfig& c) {
    if (c.system == "gas1d") return gas1d_system(c.eos);
    if (c.system == "mhd-b") return mhdB_system(c.eos);
    if (c.system == "mhd-a") return mhdA_system(c.eos);
    throw ConfigError("unknown system '" + c.system + "'");
}

MetricDef build_metric(const RunConfig& c) {
    if (c.metric_name == "cylindrical-slab") return cylindrical_slab_metric();
    return cartesian_metric();
}

/// Law names this configuration can produce, used to reject typos early.
std::set<std::string> allowed_laws(const SystemDef& sys, bool curved) {
    std::set<std::string> names;
    static const char* dir[4] = {"t", "x", "y", "z"};
    for (int a = 0; a < sys.n_indep; ++a)
        for (int b = a + 1; b < sys.n_indep; ++b)
            names.insert(std::string("symplectic-") + dir[a] + dir[b]);
    if (curved) {
        names.insert("noether-t");
        return names;
    }
    if (!sys.needs_hook) {
        for (int b = 0; b < sys.n_indep; ++b) names.insert(std::string("pullback-") + dir[b]);
        names.insert("energy");
        names.insert("momentum");
        names.insert("noether-t");
        names.insert("noether-x");
        if (sys.name == "mhd-b") {
            names.insert("energy-raw");
            names.insert("momentum-raw");
        }
    }
    return names;
}

std::vector<std::string> default_laws(const SystemDef& sys, bool curved) {
    if (curved) return {"symplectic-tx", "noether-t"};
    if (sys.needs_hook) return {"symplectic-tx"};
    return {"energy", "momentum", "symplectic-tx"};
}

JsonValue config_echo(const RunConfig& c) {
    JsonValue v = JsonValue::object();
    v.set("system", JsonValue::str(c.system));
    JsonValue eos = JsonValue::object();
    eos.set("gamma", JsonValue::num(c.eos.gamma));
    eos.set("c_v", JsonValue::num(c.eos.c_v));
    eos.set("S_ref", JsonValue::num(c.eos.S_ref));
    eos.set("mu0", JsonValue::num(c.eos.mu0));
    v.set("eos", std::move(eos));
    JsonValue grid = JsonValue::object();
    grid.set("n", JsonValue::integer(c.grid.n));
    grid.set("length", JsonValue::num(c.grid.length));
    grid.set("x0", JsonValue::num(c.grid.x0));
    grid.set("periodic", JsonValue::boolean(c.grid.periodic));
    v.set("grid", std::move(grid));
    JsonValue time = JsonValue::object();
    time.set("cfl", JsonValue::num(c.cfl));
    time.set("dt", JsonValue::num(c.dt));
    time.set("t_end", JsonValue::num(c.t_end));
    time.set("dt_out", JsonValue::num(c.dt_out));
    v.set("time", std::move(time));
    JsonValue initial = JsonValue::object();
    initial.set("family", JsonValue::str(c.family));
    JsonValue params = JsonValue::object();
    for (const auto& [key, value] : c.ic_params) params.set(key, JsonValue::num(value));
    initial.set("params", std::move(params));
    v.set("initial", std::move(initial));
    JsonValue metric = JsonValue::object();
    metric.set("name", JsonValue::str(c.metric_name));
    v.set("metric", std::move(metric));
    JsonValue laws = JsonValue::array();
    for (const auto& l : c.laws) laws.push(JsonValue::str(l));
    v.set("laws", std::move(laws));
    JsonValue refine = JsonValue::array();
    for (int n : c.refine) refine.push(JsonValue::integer(n));
    v.set("refine", std::move(refine));
    v.set("order_min", JsonValue::num(c.order_min));
    if (c.residual_tol) v.set("residual_tol", JsonValue::num(*c.residual_tol));
    v.set("out", JsonValue::str(c.out));
    v.set("seed", JsonValue::integer(c.seed));
    return v;
}

RunConfig load_config(const std::string& path, const std::string& out_flag, bool seed_given,
                      long long seed_flag, const std::string& system_flag) {
    nlohmann::json j = nlohmann::json::object();
    if (!path.empty()) {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(read_text_file(path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        j = std::move(parsed);
    }
    if (!system_flag.empty()) j["system"] = system_flag;
    RunConfig c = parse_config(j);
    if (!out_flag.empty())
        c.out = out_flag;
    else if (c.out.empty()) {
        const char* env = std::getenv("MSYMP_OUT");
        c.out = env && *env ? env : "msymp-out";
    }
    if (seed_given) c.seed = seed_flag;
    const SystemDef sys = build_system(c);
    const bool curved = c.metric_name != "cartesian";
    if (curved) {
        if (c.grid.periodic)
            throw ConfigError("a curved metric needs a bounded grid ('periodic': false)");
        if (sys.name != "gas1d") throw ConfigError("curved-metric runs are gas-dynamics only");
    }
    if (c.laws.empty()) c.laws = default_laws(sys, curved);
    const std::set<std::string> known = allowed_laws(sys, curved);
    for (const auto& name : c.laws)
        if (!known.count(name))
            throw ConfigError("law '" + name + "' is not available for this configuration");
    return c;
}

int resolve_store_every(const SystemDef& sys, const RunConfig& c, const FieldSet& z0) {
    if (c.dt_out <= 0.0) return 1;
    const double dt0 = c.dt > 0.0 ? c.dt : cfl_dt(sys, z0, c.grid, c.cfl);
    return std::max(1, static_cast<int>(std::llround(c.dt_out / dt0)));
}

FieldHistory simulate(const SystemDef& sys, const MetricDef& metric, const RunConfig& c) {
    RunParams rp;
    rp.t_end = c.t_end;
    rp.cfl = c.cfl;
    rp.dt = c.dt;
    const FieldSet z0 = make_initial(sys, c.grid, c.family, c.ic_params);
    rp.store_every = resolve_store_every(sys, c, z0);
    if (!metric.is_cartesian()) {
        rp.sqrtg = metric_weights(metric, c.grid);
    }
    return run_simulation(sys, z0, c.grid, rp);
}

std::vector<ConservationReport> all_laws(const SystemDef& sys, const MetricDef& metric,
                                         const FieldHistory& history) {
    std::vector<ConservationReport> reports;
    if (!metric.is_cartesian()) {
        reports = covariant_structural_check(sys, metric, history);
        reports.push_back(covariant_noether_flux(sys, metric, history, 0));
        return reports;
    }
    if (!sys.needs_hook) {
        reports = pullback_laws(sys, history);
        reports.push_back(noether_flux(sys, history, 0));
        reports.push_back(noether_flux(sys, history, 1));
    }
    for (auto& r : symplecticity_laws(sys, history)) reports.push_back(std::move(r));
    return reports;
}

/// Reports for the configured law names, in config order.
std::vector<ConservationReport> evaluate_laws(const SystemDef& sys, const MetricDef& metric,
                                              const FieldHistory& history,
                                              const std::vector<std::string>& names) {
    std::vector<ConservationReport> reports = all_laws(sys, metric, history);
    std::vector<ConservationReport> picked;
    for (const auto& name : names)
        for (auto& r : reports)
            if (r.law == name) picked.push_back(std::move(r));
    return picked;
}

bool has_ramp(const FieldHistory& history) {
    for (double s : history.x_slopes)
        if (s != 0.0) return true;
    return false;
}

int cmd_run(const RunConfig& c) {
    const SystemDef sys = build_system(c);
    const MetricDef metric = build_metric(c);
    FieldHistory history;
    try {
        history = simulate(sys, metric, c);
    } catch (const SolverAbort& e) {
        JsonValue diag = JsonValue::object();
        diag.set("error", JsonValue::str(e.what()));
        diag.set("config", config_echo(c));
        write_text_file((std::filesystem::path(c.out) / "abort.json").string(), diag.dump());
        std::cerr << "solver abort: " << e.what() << "\n";
        return kExitSolver;
    }
    const JsonValue echo = config_echo(c);
    write_history(history, sys.name, c.out, &echo);

    JsonValue summary = JsonValue::object();
    summary.set("command", JsonValue::str("run"));
    summary.set("config", echo);
    JsonValue laws = JsonValue::array();
    if (has_ramp(history)) {
        summary.set("laws_skipped",
                    JsonValue::str("law evaluation needs ramp-free histories (u0 = 0)"));
    } else {
        bool all_pass = true;
        for (const auto& r : evaluate_laws(sys, metric, history, c.laws)) {
            JsonValue entry = report_json(r);
            if (c.residual_tol) {
                const bool ok = r.residual_linf <= *c.residual_tol;
                entry.set("pass", JsonValue::boolean(ok));
                all_pass = all_pass && ok;
            }
            laws.push(std::move(entry));
        }
        if (c.residual_tol) summary.set("all_pass", JsonValue::boolean(all_pass));
    }
    summary.set("laws", std::move(laws));
    write_text_file((std::filesystem::path(c.out) / "summary.json").string(), summary.dump());
    std::cout << summary.dump();
    return 0;
}

int cmd_sweep(RunConfig c) {
    const SystemDef sys = build_system(c);
    const MetricDef metric = build_metric(c);
    struct Level {
        int n = 0;
        double dx = 0.0;
        std::vector<ConservationReport> reports;
    };
    std::vector<Level> levels;
    for (int n : c.refine) {
        RunConfig lc = c;
        lc.grid.n = n;
        FieldHistory history;
        try {
            history = simulate(sys, metric, lc);
        } catch (const SolverAbort& e) {
            std::cerr << "solver abort at n = " << n << ": " << e.what() << "\n";
            return kExitSolver;
        }
        if (has_ramp(history)) throw ConfigError("sweeps need ramp-free runs (u0 = 0)");
        const JsonValue echo = config_echo(lc);
        write_history(history, sys.name,
                      (std::filesystem::path(c.out) / ("n" + std::to_string(n))).string(),
                      &echo);
        levels.push_back({n, history.grid.dx(), evaluate_laws(sys, metric, history, c.laws)});
    }

    JsonValue summary = JsonValue::object();
    summary.set("command", JsonValue::str("sweep"));
    summary.set("config", config_echo(c));
    JsonValue jlevels = JsonValue::array();
    for (const auto& lev : levels) {
        JsonValue entry = JsonValue::object();
        entry.set("n", JsonValue::integer(lev.n));
        entry.set("dx", JsonValue::num(lev.dx));
        JsonValue laws = JsonValue::array();
        for (const auto& r : lev.reports) laws.push(report_json(r));
        entry.set("laws", std::move(laws));
        jlevels.push(std::move(entry));
    }
    summary.set("levels", std::move(jlevels));

    bool all_pass = true;
    JsonValue orders = JsonValue::array();
    for (const auto& name : c.laws) {
        std::vector<double> dx, l2;
        for (const auto& lev : levels)
            for (const auto& r : lev.reports)
                if (r.law == name) {
                    dx.push_back(lev.dx);
                    l2.push_back(r.residual_l2);
                }
        JsonValue entry = JsonValue::object();
        entry.set("law", JsonValue::str(name));
        const double order = estimate_order(dx, l2);
        entry.set("order", JsonValue::num(order));
        const bool ok = order >= c.order_min;
        entry.set("pass", JsonValue::boolean(ok));
        all_pass = all_pass && ok;
        orders.push(std::move(entry));
    }
    summary.set("orders", std::move(orders));
    summary.set("all_pass", JsonValue::boolean(all_pass));
    write_text_file((std::filesystem::path(c.out) / "sweep.json").string(), summary.dump());
    std::cout << summary.dump();
    return all_pass ? 0 : kExitTolerance;
}

int cmd_matrices(const std::string& system_name, const std::string& state_csv, int alpha_filter) {
    RunConfig c;
    c.system = system_name;
    const SystemDef sys = build_system(c);
    StatePoint z;
    std::string cur;
    for (char ch : state_csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) z.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (static_cast<int>(z.size()) != sys.n_dep())
        throw ConfigError("state needs " + std::to_string(sys.n_dep()) + " components for " +
                          sys.name);

    JsonValue out = JsonValue::object();
    out.set("system", JsonValue::str(sys.name));
    JsonValue state = JsonValue::array();
    for (double v : z) state.push(JsonValue::num(v));
    out.set("state", std::move(state));
    JsonValue mats = JsonValue::array();
    for (int alpha = 0; alpha < sys.n_indep; ++alpha) {
        if (alpha_filter >= 0 && alpha != alpha_filter) continue;
        const SkewMatrix k = exterior_derivative(sys.oneforms.at(alpha), z);
        JsonValue entry = JsonValue::object();
        entry.set("alpha", JsonValue::integer(alpha));
        JsonValue rows = JsonValue::array();
        for (int i = 0; i < k.n; ++i) {
            JsonValue row = JsonValue::array();
            for (int j = 0; j < k.n; ++j) row.push(JsonValue::num(k.at(i, j)));
            rows.push(std::move(row));
        }
        entry.set("k", std::move(rows));
        JsonValue diffs = JsonValue::array();
        for (const auto& d : compare_reference(sys, alpha, z, 1e-12)) {
            JsonValue m = JsonValue::object();
            m.set("alpha", JsonValue::integer(d.alpha));
            m.set("i", JsonValue::integer(d.i));
            m.set("j", JsonValue::integer(d.j));
            m.set("reference", JsonValue::num(d.reference));
            m.set("derived", JsonValue::num(d.derived));
            diffs.push(std::move(m));
        }
        entry.set("fixture_diffs", std::move(diffs));
        mats.push(std::move(entry));
    }
    out.set("matrices", std::move(mats));
    std::cout << out.dump();
    return 0;
}

int cmd_laws(const std::string& history_dir, std::string out_dir) {
    std::string system_name;
    FieldHistory history;
    try {
        history = read_history(history_dir, &system_name);
    } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("cannot load history: ") + e.what());
    }
    RunConfig c;
    c.system = system_name;
    const SystemDef sys = build_system(c);
    const MetricDef metric = cartesian_metric();
    if (out_dir.empty()) out_dir = history_dir;

    JsonValue summary = JsonValue::object();
    summary.set("command", JsonValue::str("laws"));
    summary.set("system", JsonValue::str(system_name));
    JsonValue laws = JsonValue::array();
    for (const auto& r : all_laws(sys, metric, history)) laws.push(report_json(r));
    summary.set("laws", std::move(laws));
    write_text_file((std::filesystem::path(out_dir) / "laws.json").string(), summary.dump());
    std::cout << summary.dump();
    return 0;
}

int cmd_hamilton(const RunConfig& c) {
    const SystemDef sys = build_system(c);
    const MetricDef metric = build_metric(c);
    if (!metric.is_cartesian()) throw ConfigError("the Hamilton check needs a Cartesian run");
    FieldHistory history;
    try {
        history = simulate(sys, metric, c);
    } catch (const SolverAbort& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return kExitSolver;
    }
    if (has_ramp(history)) throw ConfigError("the Hamilton check needs ramp-free runs (u0 = 0)");
    JsonValue summary = JsonValue::object();
    summary.set("command", JsonValue::str("hamilton"));
    summary.set("config", config_echo(c));
    JsonValue pairs = JsonValue::array();
    for (const auto& r : hamilton_check(sys, history)) pairs.push(hamilton_json(r));
    summary.set("pairs", std::move(pairs));
    write_text_file((std::filesystem::path(c.out) / "hamilton.json").string(), summary.dump());
    std::cout << summary.dump();
    return 0;
}

VectorField3 random_trig_field(std::mt19937_64& rng, int n) {
    const double h = 2.0 * std::numbers::pi / n;
    VectorField3 f = VectorField3::zeros(n, h, h, h);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(1, 3);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (int comp = 0; comp < 3; ++comp) {
        for (int m = 0; m < 3; ++m) {
            const double a = amp(rng);
            const int kx = mode(rng), ky = mode(rng), kz = mode(rng);
            const double ph = phase(rng);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        f.c[comp][f.idx(i, j, k)] +=
                            a * std::sin(kx * i * h + ky * j * h + kz * k * h + ph);
        }
    }
    return f;
}

int cmd_adjoint(int n, int trials, long long seed, double tol) {
    std::mt19937_64 rng(static_cast<uint64_t>(seed));
    bool all_pass = true;
    for (int t = 0; t < trials; ++t) {
        const VectorField3 B = random_trig_field(rng, n);
        const VectorField3 W = random_trig_field(rng, n);
        const auto disc = adjoint_identity_check(B, W);
        const bool ok = disc[0] <= tol && disc[1] <= tol && disc[2] <= tol;
        all_pass = all_pass && ok;
        JsonValue line = JsonValue::object();
        line.set("trial", JsonValue::integer(t));
        line.set("n", JsonValue::integer(n));
        JsonValue d = JsonValue::array();
        for (double v : disc) d.push(JsonValue::num(v));
        line.set("discrepancy", std::move(d));
        line.set("pass", JsonValue::boolean(ok));
        std::cout << line.dump(0);
    }
    return all_pass ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-symplectic fluid/MHD structure toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_flag, system_flag, history_dir;
    long long seed_flag = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_flag, "output directory (fallback: MSYMP_OUT)");
        sub->add_option("--seed", seed_flag, "rng seed")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--system", system_flag, "system name override");
    };

    CLI::App* run = app.add_subcommand("run", "simulate and evaluate conservation laws");
    add_common(run);
    CLI::App* sweep = app.add_subcommand("sweep", "refinement study with order estimates");
    add_common(sweep);
    CLI::App* hamilton = app.add_subcommand("hamilton", "functional-derivative check on a run");
    add_common(hamilton);

    CLI::App* matrices = app.add_subcommand("matrices", "dump structure matrices at a state");
    std::string state_csv;
    int alpha_filter = -1;
    matrices->add_option("--system", system_flag, "system name")->required();
    matrices->add_option("--state", state_csv, "comma-separated state components")->required();
    matrices->add_option("--alpha", alpha_filter, "restrict to one matrix index");

    CLI::App* laws = app.add_subcommand("laws", "evaluate laws on a stored history");
    laws->add_option("--history", history_dir, "directory with manifest.json")->required();
    laws->add_option("--out", out_flag, "output directory (default: the history directory)");

    CLI::App* adjoint = app.add_subcommand("adjoint", "3D transport adjoint-identity trials");
    int adj_n = 16, adj_trials = 10;
    double adj_tol = 1e-12;
    adjoint->add_option("--n", adj_n, "grid nodes per axis");
    adjoint->add_option("--trials", adj_trials, "number of random field pairs");
    adjoint->add_option("--tol", adj_tol, "relative tolerance");
    adjoint->add_option("--seed", seed_flag, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (matrices->parsed()) return cmd_matrices(system_flag, state_csv, alpha_filter);
        if (laws->parsed()) return cmd_laws(history_dir, out_flag);
        if (adjoint->parsed()) return cmd_adjoint(adj_n, adj_trials, seed_flag, adj_tol);
        const RunConfig c =
            load_config(config_path, out_flag, seed_given, seed_flag, system_flag);
        if (run->parsed()) return cmd_run(c);
        if (sweep->parsed()) return cmd_sweep(c);
        if (hamilton->parsed()) return cmd_hamilton(c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SolverAbort& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
