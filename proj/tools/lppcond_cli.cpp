// Command-line front end: reproducible experiment runs over the lppcond
// library. Subcommands: constants | density | conditional | simulate |
// identity-check | limit | convergence.
//
// Configuration is a flat dotted key=value file; the --seed/--threads/
// --out/--format flags override the corresponding config keys. Every output
// artifact embeds the configuration (hash + echo) and the seed so a run can
// be reproduced from any of its outputs.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lppcond/config.hpp"
#include "lppcond/lattice.hpp"
#include "lppcond/limits.hpp"
#include "lppcond/rng.hpp"
#include "lppcond/series.hpp"

using nlohmann::json;
using namespace lppcond;

namespace {

constexpr const char* kDefaultsVersion = "lppcond-defaults-1";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Output plumbing: tables accumulated in memory, written only after the
// whole computation succeeds (no partial artifacts).

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
};

struct RunContext {
    Config cfg;
    std::string command;
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
    std::uint64_t seed = 1;
    int threads = 1;

    void write_table(const std::string& name, const Table& t, const json& extra = {}) const {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        if (format == "csv") {
            const fs::path path = fs::path(out_dir) / (name + ".csv");
            std::ofstream out(path);
            out << "# config_hash=" << cfg.hash() << " seed=" << seed
                << " defaults=" << kDefaultsVersion << "\n";
            for (const auto& [k, v] : cfg.items()) out << "# " << k << "=" << v << "\n";
            for (std::size_t c = 0; c < t.columns.size(); ++c)
                out << (c ? "," : "") << t.columns[c];
            out << "\n";
            for (const auto& row : t.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
                out << "\n";
            }
            std::cerr << "wrote " << path.string() << "\n";
        } else {
            const fs::path path = fs::path(out_dir) / (name + ".json");
            json j;
            j["config_hash"] = cfg.hash();
            j["seed"] = seed;
            j["defaults"] = kDefaultsVersion;
            j["config"] = json::object();
            for (const auto& [k, v] : cfg.items()) j["config"][k] = v;
            j["columns"] = t.columns;
            j["rows"] = json::array();
            for (const auto& row : t.rows) j["rows"].push_back(row);
            for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
            std::ofstream out(path);
            out << j.dump(2) << "\n";
            std::cerr << "wrote " << path.string() << "\n";
        }
    }
};

// ---------------------------------------------------------------------------
// Config helpers.

ModelParams params_from(const Config& cfg) {
    return make_params(cfg.get_double("model.a", 1.0), cfg.get_double("model.b", 1.0),
                       cfg.get_double("model.ell", 5.0));
}

RegionQuery query_from(const Config& cfg) {
    RegionQuery q;
    q.x1 = cfg.require_double("geometry.x1");
    q.y1 = cfg.require_double("geometry.y1");
    q.x2 = cfg.require_double("geometry.x2");
    q.y2 = cfg.require_double("geometry.y2");
    return q;
}

QuadSettings quad_from(const Config& cfg, const RunContext& ctx) {
    QuadSettings qs;
    qs.q_override = static_cast<int>(cfg.get_int("numeric.nodes", 0));
    qs.z_nodes = static_cast<int>(cfg.get_int("numeric.z_nodes", qs.z_nodes));
    qs.n_max = static_cast<int>(cfg.get_int("numeric.n_max", 0));
    qs.qmc_points = static_cast<int>(cfg.get_int("numeric.qmc_points", qs.qmc_points));
    qs.qmc_seed = ctx.seed;
    qs.asymptotic_leading = cfg.get_bool("numeric.asymptotic_leading", false);
    qs.threads = ctx.threads;
    const std::string radii = cfg.get_str("numeric.radii", "default");
    if (radii == "default") qs.radii_mode = RadiiMode::Default;
    else if (radii == "spread") qs.radii_mode = RadiiMode::Spread;
    else if (radii == "steepest") qs.radii_mode = RadiiMode::Steepest;
    else throw ConfigError("numeric.radii must be default|spread|steepest");
    return qs;
}

std::vector<std::string> split_ids(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        const auto b = part.find_first_not_of(" \t");
        const auto e = part.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(part.substr(b, e - b + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_constants(RunContext& ctx) {
    const ModelParams p = params_from(ctx.cfg);
    Table t;
    t.columns = {"key", "value"};
    auto put = [&t](const std::string& k, double v) { t.add_row({k, fmt17(v)}); };
    put("a", p.a);
    put("b", p.b);
    put("ell", p.ell);
    put("D", p.D);
    put("sqrt_D", p.sqrt_D);
    put("m_slope", p.m_slope);
    put("mu", p.mu);
    put("sigma", p.sigma);
    put("c_plus", p.c_plus);
    put("c_minus", p.c_minus);
    put("j_rate", p.j_rate);

    if (ctx.cfg.has("geometry.x1")) {
        const RegionQuery q = query_from(ctx.cfg);
        validate_query(p, q);
        const RegionLabel lbl = classify_region(p, q);
        t.add_row({"region_tag", std::to_string(static_cast<int>(lbl.tag))});
        t.add_row({"region_swapped", lbl.swapped ? "1" : "0"});
        const GStarFamily fam = g_star_family(p, q);
        put("z_c", fam.zc);
        put("z_c_minus", fam.zc_minus);
        for (int s = 0; s < kNumSyms; ++s) {
            const std::string base = std::string("z_") + sym_name(static_cast<Sym>(s));
            put(base + "_minus", fam.by_sym[s].z_minus);
            put(base + "_plus", fam.by_sym[s].z_plus);
        }
    }
    ctx.write_table("constants", t);
    return 0;
}

int cmd_density(RunContext& ctx) {
    const long long M = ctx.cfg.get_int("density.M", 1);
    const long long N = ctx.cfg.get_int("density.N", 1);
    const double t0 = ctx.cfg.get_double("density.T_min", 0.5);
    const double t1 = ctx.cfg.get_double("density.T_max", 5.0);
    const long long steps = ctx.cfg.get_int("density.T_steps", 10);
    if (steps < 1) throw ConfigError("density.T_steps must be >= 1");
    if (!(t1 >= t0)) throw ConfigError("density.T_max must be >= density.T_min");
    const QuadSettings qs = quad_from(ctx.cfg, ctx);

    Table t;
    t.columns = {"T", "density", "density_err", "tail", "tail_err"};
    for (long long k = 0; k < steps; ++k) {
        const double T =
            steps == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps - 1);
        const DensityTail dt = density_and_tail(M, N, T, qs);
        t.add_row({fmt17(T), fmt17(dt.density), fmt17(dt.density_err), fmt17(dt.tail),
                   fmt17(dt.tail_err)});
    }
    ctx.write_table("density", t);
    return 0;
}

ObservationPlan plan_from(const Config& cfg, const ModelParams& p) {
    if (cfg.has("plan.M")) {
        const auto md = cfg.get_list("plan.M");
        const auto nd = cfg.get_list("plan.N");
        const auto td = cfg.get_list("plan.T");
        std::vector<long long> M, N;
        for (double v : md) M.push_back(static_cast<long long>(std::llround(v)));
        for (double v : nd) N.push_back(static_cast<long long>(std::llround(v)));
        return multi_plan(M, N, td);
    }
    const RegionQuery q = query_from(cfg);
    validate_query(p, q);
    return scaled_plan(p, q, cfg.get_double("geometry.r1", 0.0),
                       cfg.get_double("geometry.r2", 0.0), cfg.require_double("geometry.L"));
}

int cmd_conditional(RunContext& ctx) {
    const ModelParams p = params_from(ctx.cfg);
    const ObservationPlan plan = plan_from(ctx.cfg, p);
    const QuadSettings qs = quad_from(ctx.cfg, ctx);
    const ConditionalResult r = conditional_probability(plan, qs);

    Table t;
    t.columns = {"m", "probability", "error_bar", "numerator", "denominator",
                 "num_tail", "num_conv", "den_tail", "den_conv"};
    t.add_row({std::to_string(plan.m), fmt17(r.probability), fmt17(r.error_bar),
               fmt17(r.numerator.value), fmt17(r.denominator.value),
               fmt17(r.numerator.tail_estimate), fmt17(r.numerator.conv_estimate),
               fmt17(r.denominator.tail_estimate), fmt17(r.denominator.conv_estimate)});
    json extra;
    extra["warnings"] = json::array();
    for (const auto& w : r.numerator.warnings) extra["warnings"].push_back(w);
    for (const auto& w : r.denominator.warnings) extra["warnings"].push_back(w);
    ctx.write_table("conditional", t, extra);
    return 0;
}

int cmd_simulate(RunContext& ctx) {
    const ModelParams p = params_from(ctx.cfg);
    const std::string mode = ctx.cfg.get_str("sim.mode", "conditional");
    namespace fs = std::filesystem;

    if (mode == "unconditional") {
        const int N = static_cast<int>(ctx.cfg.get_int("sim.N", 64));
        const int count = static_cast<int>(ctx.cfg.get_int("sim.n_target", 100));
        Table t;
        t.columns = {"replica", "lp_scaled"};
        double mean = 0.0;
        for (int r = 0; r < count; ++r) {
            const LatticeField f = sample_field(N, N, mix64(ctx.seed + 0x1000 + r));
            const double v = f.l(N, N) / static_cast<double>(N);
            mean += v;
            t.add_row({std::to_string(r), fmt17(v)});
        }
        mean /= count;
        json extra;
        extra["mean_lp_scaled"] = mean;
        extra["lln_limit"] = unconditional_lln(p.a, p.b, 1.0, 1.0);
        ctx.write_table("simulate", t, extra);
        return 0;
    }
    if (mode != "conditional") throw ConfigError("sim.mode must be conditional|unconditional");

    const double L = ctx.cfg.get_double("sim.L", 24.0);
    const double delta = ctx.cfg.get_double("sim.delta", 0.2);
    const int n_target = static_cast<int>(ctx.cfg.get_int("sim.n_target", 500));
    const std::uint64_t max_draws =
        static_cast<std::uint64_t>(ctx.cfg.get_int("sim.max_draws", 400000000LL));
    auto xs = ctx.cfg.get_list("sim.observables_x");
    auto ys = ctx.cfg.get_list("sim.observables_y");
    if (xs.empty()) {
        xs = {0.5};
        ys = {0.4};
    }
    if (xs.size() != ys.size())
        throw ConfigError("sim.observables_x and sim.observables_y must have equal length");
    std::vector<std::pair<double, double>> obs;
    for (std::size_t k = 0; k < xs.size(); ++k) obs.emplace_back(xs[k], ys[k]);

    const ConditionalMCResult r =
        conditional_mc(p, L, delta, obs, n_target, ctx.seed, max_draws);

    // Per-accepted-sample table.
    Table samples;
    samples.columns = {"sample"};
    for (const auto& [x, y] : obs) {
        std::ostringstream c;
        c << "lp_scaled_x" << x << "_y" << y;
        samples.columns.push_back(c.str());
    }
    for (int i = 0; i < r.n_accepted; ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (const auto& v : r.samples) row.push_back(fmt17(v[i]));
        samples.rows.push_back(std::move(row));
    }
    ctx.write_table("samples", samples);

    // Summary (always JSON: nested structure).
    fs::create_directories(ctx.out_dir);
    json j;
    j["config_hash"] = ctx.cfg.hash();
    j["seed"] = ctx.seed;
    j["defaults"] = kDefaultsVersion;
    j["config"] = json::object();
    for (const auto& [k, v] : ctx.cfg.items()) j["config"][k] = v;
    j["n_accepted"] = r.n_accepted;
    j["n_draws"] = r.n_draws;
    j["acceptance_rate"] = r.acceptance_rate;
    j["rate_reference_exp_minus_JL"] = r.rate_reference;
    j["window_halfwidth"] = r.window_halfwidth;
    j["target"] = r.target;
    j["observables"] = json::array();
    for (const auto& st : r.observables) {
        json o;
        o["x"] = st.x;
        o["y"] = st.y;
        o["mean_scaled"] = st.mean_scaled;
        o["se_scaled"] = st.se_scaled;
        o["mean_fluct"] = st.mean_fluct;
        o["se_fluct"] = st.se_fluct;
        o["lln_surface"] = lln_surface(p, st.x, st.y);
        o["unconditional_lln"] = unconditional_lln(p.a, p.b, st.x, st.y);
        j["observables"].push_back(o);
    }
    const fs::path path = fs::path(ctx.out_dir) / "simulate.json";
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    std::cerr << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_identity(RunContext& ctx) {
    const ModelParams p = params_from(ctx.cfg);
    const RegionQuery q = query_from(ctx.cfg);
    validate_query(p, q);
    const double L = ctx.cfg.get_double("identity.L", 6.0);
    const double r1 = ctx.cfg.get_double("geometry.r1", 0.0);
    const double r2 = ctx.cfg.get_double("geometry.r2", 0.0);
    Config defaulted = ctx.cfg;
    if (!defaulted.has("numeric.radii")) defaulted.set("numeric.radii", "spread");
    if (!defaulted.has("numeric.nodes")) defaulted.set("numeric.nodes", "16");
    const QuadSettings qs = quad_from(defaulted, ctx);

    std::vector<std::string> ids;
    const std::string id_cfg = ctx.cfg.get_str("identity.ids", "auto");
    if (id_cfg == "auto") {
        ids = identities_for_region(classify_region(p, q).tag);
    } else {
        ids = split_ids(id_cfg);
    }
    const double tol111 = ctx.cfg.get_double("identity.tolerance_qq111", 1e-4);
    const double tol121 = ctx.cfg.get_double("identity.tolerance_qq121", 1e-2);

    Table t;
    t.columns = {"id", "lhs", "rhs", "residual", "conv_estimate", "tolerance", "pass"};
    bool all_pass = true;
    for (const auto& id : ids) {
        const IdentityReport rep = verify_identity(id, p, q, L, qs, r1, r2);
        const double tol = id == "QQ121" ? tol121 : tol111;
        const bool pass = rep.residual <= tol;
        all_pass = all_pass && pass;
        t.add_row({rep.id, fmt17(rep.lhs.real()), fmt17(rep.rhs.real()), fmt17(rep.residual),
                   fmt17(rep.conv_estimate), fmt17(tol), pass ? "1" : "0"});
    }
    ctx.write_table("identity", t);
    if (!all_pass) throw NumericError("identity residual above tolerance");
    return 0;
}

int cmd_limit(RunContext& ctx) {
    const std::string kind = ctx.cfg.get_str("limit.kind", "offdiag");
    Table t;
    if (kind == "bridge") {
        BridgeSpec spec;
        spec.A = ctx.cfg.get_double("bridge.A", 1.0);
        spec.times = ctx.cfg.get_list("bridge.times");
        spec.thresholds = ctx.cfg.get_list("bridge.thresholds");
        const std::string method = ctx.cfg.get_str("bridge.method", "closed_form");
        BridgeMethod m;
        if (method == "closed_form") m = BridgeMethod::ClosedForm;
        else if (method == "gaussian_mc") m = BridgeMethod::GaussianMC;
        else if (method == "contour") m = BridgeMethod::Contour;
        else throw ConfigError("bridge.method must be closed_form|gaussian_mc|contour");
        const long long paths = ctx.cfg.get_int("bridge.paths", 1000000);
        const ProbResult r = bridge_crossing(spec, m, ctx.seed, paths);
        t.columns = {"kind", "method", "probability", "error"};
        t.add_row({"bridge", r.method, fmt17(r.probability), fmt17(r.error)});
    } else if (kind == "diag") {
        DiagSpec spec;
        spec.params = params_from(ctx.cfg);
        const auto s = ctx.cfg.get_list("diag.s");
        const auto tt = ctx.cfg.get_list("diag.t");
        const auto h = ctx.cfg.get_list("diag.h");
        if (s.size() != tt.size() || s.size() != h.size())
            throw ConfigError("diag.s, diag.t, diag.h must have equal length");
        for (std::size_t k = 0; k < s.size(); ++k) spec.points.push_back({s[k], tt[k], h[k]});
        t.columns = {"kind", "probability"};
        t.add_row({"diag", fmt17(diag_limit(spec))});
    } else if (kind == "offdiag") {
        const ModelParams p = params_from(ctx.cfg);
        const RegionQuery q = query_from(ctx.cfg);
        const double r1 = ctx.cfg.get_double("geometry.r1", 0.0);
        const double r2 = ctx.cfg.get_double("geometry.r2", 0.0);
        t.columns = {"kind", "probability"};
        t.add_row({"offdiag", fmt17(offdiag_two_point_limit(p, q, r1, r2))});
    } else {
        throw ConfigError("limit.kind must be bridge|diag|offdiag");
    }
    ctx.write_table("limit", t);
    return 0;
}

int cmd_convergence(RunContext& ctx) {
    const ModelParams p = params_from(ctx.cfg);
    const RegionQuery q = query_from(ctx.cfg);
    validate_query(p, q);
    const double r1 = ctx.cfg.get_double("geometry.r1", 0.0);
    const double r2 = ctx.cfg.get_double("geometry.r2", 0.0);
    auto Ls = ctx.cfg.get_list("convergence.L_list");
    if (Ls.empty()) Ls = {10.0, 20.0, 40.0};
    Config defaulted = ctx.cfg;
    if (!defaulted.has("numeric.asymptotic_leading"))
        defaulted.set("numeric.asymptotic_leading", "true");
    const QuadSettings qs = quad_from(defaulted, ctx);
    const double lim = offdiag_two_point_limit(p, q, r1, r2);

    Table t;
    t.columns = {"L", "probability", "error_bar", "limit", "gap"};
    for (double L : Ls) {
        const ObservationPlan plan = scaled_plan(p, q, r1, r2, L);
        const ConditionalResult r = conditional_probability(plan, qs);
        t.add_row({fmt17(L), fmt17(r.probability), fmt17(r.error_bar), fmt17(lim),
                   fmt17(std::abs(r.probability - lim))});
    }
    ctx.write_table("convergence", t);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional exponential last-passage percolation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format;
    std::uint64_t seed = 0;
    int threads = 0;
    bool have_seed = false;
    app.add_option("--config", config_path, "configuration file (flat key=value)");
    app.add_option("--seed", seed, "RNG seed (overrides config key 'seed')")
        ->each([&](const std::string&) { have_seed = true; });
    app.add_option("--threads", threads, "worker threads (overrides LPPCOND_THREADS)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::vector<std::string> overrides;
    app.add_option("-D,--define", overrides, "override a config key: -D key=value");

    const char* names[] = {"constants", "density",        "conditional", "simulate",
                           "identity-check", "limit",     "convergence"};
    for (const char* n : names) app.add_subcommand(n, "")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx;
        if (!config_path.empty()) ctx.cfg = Config::from_file(config_path);
        for (const auto& ov : overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos) throw ConfigError("-D expects key=value: " + ov);
            ctx.cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
        }
        ctx.command = app.get_subcommands().front()->get_name();

        // Flag > config > environment > default resolution.
        ctx.seed = have_seed ? seed
                             : static_cast<std::uint64_t>(ctx.cfg.get_int("seed", 1));
        if (threads > 0) ctx.threads = threads;
        else if (ctx.cfg.has("threads")) ctx.threads = static_cast<int>(ctx.cfg.get_int("threads", 1));
        else if (const char* env = std::getenv("LPPCOND_THREADS")) ctx.threads = std::max(1, std::atoi(env));
        else ctx.threads = 1;
        ctx.out_dir = !out_dir.empty() ? out_dir : ctx.cfg.get_str("output.dir", ".");
        ctx.format = !format.empty() ? format : ctx.cfg.get_str("output.format", "csv");
        if (ctx.format != "csv" && ctx.format != "json")
            throw ConfigError("output.format must be csv|json");
        // Echo the resolved values so artifacts embed them.
        ctx.cfg.set("seed", std::to_string(ctx.seed));
        ctx.cfg.set("threads", std::to_string(ctx.threads));
        ctx.cfg.set("output.format", ctx.format);

        if (ctx.command == "constants") return cmd_constants(ctx);
        if (ctx.command == "density") return cmd_density(ctx);
        if (ctx.command == "conditional") return cmd_conditional(ctx);
        if (ctx.command == "simulate") return cmd_simulate(ctx);
        if (ctx.command == "identity-check") return cmd_identity(ctx);
        if (ctx.command == "limit") return cmd_limit(ctx);
        if (ctx.command == "convergence") return cmd_convergence(ctx);
        throw ConfigError("unknown subcommand: " + ctx.command);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
