// Command line front end. Subcommands map one-to-one onto the library
// modules; every run that writes artifacts also writes a manifest with
// content checksums so results can be traced back to an invocation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "invpdelta/config.hpp"
#include "invpdelta/core.hpp"
#include "invpdelta/exact.hpp"
#include "invpdelta/invariants.hpp"
#include "invpdelta/lattice.hpp"
#include "invpdelta/manifest.hpp"
#include "invpdelta/schemes.hpp"
#include "invpdelta/solver.hpp"
#include "invpdelta/symmetry.hpp"
#include "invpdelta/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace invpdelta;

// exit codes
constexpr int kOk = 0;
constexpr int kTestFailure = 1;
constexpr int kUsageError = 2;
constexpr int kNumericError = 3;

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

// INVPDELTA_SEED beats the flag, the flag beats the config key.
std::uint64_t resolve_seed(bool flag_set, std::uint64_t flag_seed, const Config* cfg) {
    if (const char* env = std::getenv("INVPDELTA_SEED"); env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw ConfigError(std::string("INVPDELTA_SEED is not an unsigned integer: '") +
                              env + "'");
        }
        return static_cast<std::uint64_t>(v);
    }
    if (flag_set) return flag_seed;
    if (cfg) return cfg->get_u64_or("seed", 1);
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

// Writes report.json (plus extra files already present in out_dir) and the
// manifest that seals them.
void emit_outputs(const std::string& out_dir, const json& report,
                  const std::vector<std::string>& extra_files,
                  const std::string& command, const std::string& config_path,
                  std::uint64_t seed) {
    std::filesystem::create_directories(out_dir);
    write_text(out_dir + "/report.json", report.dump(2) + "\n");

    RunManifest man;
    man.command = command;
    man.config_path = config_path;
    man.seed = seed;
    man.out_dir = out_dir;
    man.timestamp = iso_timestamp_utc();
    man.add_file(out_dir, "report.json");
    for (const auto& f : extra_files) man.add_file(out_dir, f);
    write_manifest(man, out_dir + "/manifest.json");
}

MeshFunctions mesh_from_config(const Config& cfg, const ExactSolution* sol) {
    const std::string preset = cfg.get_or("mesh.preset", sol ? "catalog" : "uniform");
    if (preset == "catalog") {
        if (!sol) throw ConfigError("mesh.preset = catalog needs data.solution");
        return sol->mesh;
    }
    const double h = cfg.get_double("mesh.h");
    const double x0 = cfg.get_double_or("mesh.x0", 0.0);
    const double tau = cfg.get_double("mesh.tau");
    const double t0 = cfg.get_double_or("mesh.t0", 0.0);
    if (preset == "uniform") return MeshFunctions::uniform(h, x0, tau, t0);
    if (preset == "fundamental") return MeshFunctions::fundamental(h, x0, tau, t0);
    if (preset == "galilean") {
        return MeshFunctions::galilean(h, x0, tau, t0, cfg.get_double("mesh.c"));
    }
    throw ConfigError("unknown mesh.preset '" + preset +
                      "' (uniform, fundamental, galilean, catalog)");
}

// Per-component max and mean of |E| over every interior stencil.
struct ComponentStats {
    std::vector<double> max_abs, mean_abs;
    long n_stencils = 0;
};

ComponentStats component_stats(const SchemeDef& def, const MovingLattice& lat) {
    const int reach = def.width == StencilWidth::TenPoint ? 2 : 1;
    const auto mr = lat.m_range();
    const auto nr = lat.n_range();
    ComponentStats st;
    st.max_abs.assign(def.n_residuals(), 0.0);
    st.mean_abs.assign(def.n_residuals(), 0.0);
    const int m_lo = mr.lo + (def.needs_prev_time ? 1 : 0);
    for (int m = m_lo; m < mr.hi; ++m) {
        for (int n = nr.lo + reach; n <= nr.hi - reach; ++n) {
            StencilView s = stencil_at(lat, m, n, def.width);
            Eigen::VectorXd e = residual(def, s);
            for (int c = 0; c < e.size(); ++c) {
                st.max_abs[c] = std::max(st.max_abs[c], std::abs(e[c]));
                st.mean_abs[c] += std::abs(e[c]);
            }
            ++st.n_stencils;
        }
    }
    if (st.n_stencils == 0) throw MeshError("lattice too small for this scheme");
    for (auto& v : st.mean_abs) v /= static_cast<double>(st.n_stencils);
    return st;
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
            throw ConfigError("bad group parameter '" + tok + "' in '" + text + "'");
        }
        out.push_back(v);
    }
    return out;
}

int run_list() {
    const Equation eqs[] = {Equation::Heat, Equation::Burgers,
                            Equation::PotentialBurgers, Equation::Kdv,
                            Equation::WaveDemo};
    std::cout << "equations and scheme variants:\n";
    for (Equation e : eqs) {
        std::cout << "  " << to_string(e) << ":";
        for (Variant v : supported_variants(e)) std::cout << ' ' << to_string(v);
        std::cout << '\n';
    }
    std::cout << "symmetry generators:\n";
    for (Equation e : eqs) {
        auto alg = builtin_algebra(e);
        std::cout << "  " << to_string(e) << ":";
        for (const auto& v : alg.basis) std::cout << ' ' << v.label;
        std::cout << '\n';
    }
    std::cout << "exact solution catalog:\n";
    for (Equation e : eqs) {
        std::cout << "  " << to_string(e) << ":";
        for (const auto& s : catalog(e)) std::cout << ' ' << s.name;
        std::cout << '\n';
    }
    return kOk;
}

struct InvariantsArgs {
    std::string equation, stencil_csv, out_dir;
    int m = 0, n = 0;
    bool m_set = false, n_set = false;
};

int run_invariants(const InvariantsArgs& a, const std::string& command) {
    Equation eq = equation_from_string(a.equation);
    MovingLattice lat = read_csv_file(a.stencil_csv, eq);
    StencilWidth w = eq == Equation::Kdv ? StencilWidth::TenPoint : StencilWidth::SixPoint;
    const int m = a.m_set ? a.m : lat.m_range().lo;
    const int n = a.n_set ? a.n : (lat.n_range().lo + lat.n_range().hi) / 2;
    StencilView s = stencil_at(lat, m, n, w);
    InvariantSet inv = invariants_of(eq, s);
    for (int k = 1; k <= inv.values.size(); ++k) {
        std::cout << inv.names[k - 1] << " = " << format_double(inv[k]) << '\n';
    }
    if (!a.out_dir.empty()) {
        json rep;
        rep["equation"] = to_string(eq);
        rep["stencil"] = a.stencil_csv;
        rep["m"] = m;
        rep["n"] = n;
        rep["invariants"] = json::array();
        for (int k = 1; k <= inv.values.size(); ++k) {
            rep["invariants"].push_back({{"name", inv.names[k - 1]}, {"value", inv[k]}});
        }
        emit_outputs(a.out_dir, rep, {}, command, "", resolve_seed(false, 0, nullptr));
    }
    return kOk;
}

struct CheckArgs {
    std::string equation, variant, lattice_csv, out_dir;
};

int run_check(const CheckArgs& a, const std::string& command) {
    Equation eq = equation_from_string(a.equation);
    SchemeDef def = make_scheme(eq, variant_from_string(a.variant));
    MovingLattice lat = read_csv_file(a.lattice_csv, eq);
    ComponentStats st = component_stats(def, lat);
    std::cout << "scheme " << def.name << " over " << st.n_stencils << " stencils\n";
    for (int c = 0; c < def.n_residuals(); ++c) {
        std::cout << "  " << def.component_names[c]
                  << "  max " << format_double(st.max_abs[c])
                  << "  mean " << format_double(st.mean_abs[c]) << '\n';
    }
    if (!a.out_dir.empty()) {
        json rep;
        rep["scheme"] = def.name;
        rep["lattice"] = a.lattice_csv;
        rep["n_stencils"] = st.n_stencils;
        rep["components"] = json::array();
        for (int c = 0; c < def.n_residuals(); ++c) {
            rep["components"].push_back({{"name", def.component_names[c]},
                                         {"max", st.max_abs[c]},
                                         {"mean", st.mean_abs[c]}});
        }
        emit_outputs(a.out_dir, rep, {}, command, "", resolve_seed(false, 0, nullptr));
    }
    return kOk;
}

struct SolveArgs {
    std::string config_path, out_dir;
};

int run_solve(const SolveArgs& a, const std::string& command) {
    Config cfg = Config::load(a.config_path);
    Equation eq = equation_from_string(cfg.get("equation"));
    Variant var = variant_from_string(cfg.get("variant"));
    ExactSolution sol = find_solution(eq, cfg.get("data.solution"));

    SimConfig sim;
    sim.tag = eq;
    sim.variant = var;
    sim.mesh = mesh_from_config(cfg, &sol);
    sim.m_range = {cfg.get_int_or("window.m_lo", sol.default_m.lo),
                   cfg.get_int_or("window.m_hi", sol.default_m.hi)};
    sim.n_range = {cfg.get_int_or("window.n_lo", sol.default_n.lo),
                   cfg.get_int_or("window.n_hi", sol.default_n.hi)};
    sim.data = sol.u;
    sim.boundary = boundary_policy_from_string(cfg.get_or("boundary", "exact"));
    sim.newton.tol = cfg.get_double_or("newton.tol", sim.newton.tol);
    sim.newton.max_iter = cfg.get_int_or("newton.max_iter", sim.newton.max_iter);
    sim.newton.max_halvings = cfg.get_int_or("newton.max_halvings", sim.newton.max_halvings);

    Trajectory traj = run(sim);

    double worst = 0;
    int newton_total = 0;
    for (const auto& lv : traj.levels) {
        worst = std::max(worst, lv.max_residual / std::max(lv.scale, 1.0));
        newton_total += lv.newton_iters;
    }
    std::cout << "scheme " << traj.scheme_name << ": " << traj.levels.size()
              << " levels, max normalized residual " << format_double(worst)
              << ", newton iterations " << newton_total
              << ", max |sigma/tau| " << format_double(monitor_sigma_tau(traj)) << '\n';

    std::filesystem::create_directories(a.out_dir);
    write_csv_file(traj.lattice, a.out_dir + "/lattice.csv");

    json rep;
    rep["scheme"] = traj.scheme_name;
    rep["data_solution"] = sol.name;
    rep["boundary"] = to_string(sim.boundary);
    rep["sigma_tau_max"] = monitor_sigma_tau(traj);
    rep["levels"] = json::array();
    for (const auto& lv : traj.levels) {
        rep["levels"].push_back({{"m", lv.m},
                                 {"max_residual", lv.max_residual},
                                 {"scale", lv.scale},
                                 {"newton_iters", lv.newton_iters},
                                 {"sigma_tau_max", lv.sigma_tau_max}});
    }
    emit_outputs(a.out_dir, rep, {"lattice.csv"}, command, a.config_path,
                 resolve_seed(false, 0, &cfg));
    return kOk;
}

struct ExactArgs {
    std::string equation, name, out_dir;
    int m_lo = 0, m_hi = 0, n_lo = 0, n_hi = 0;
    bool window_set = false;
};

int run_exact(const ExactArgs& a, const std::string& command) {
    Equation eq = equation_from_string(a.equation);
    ExactSolution sol = find_solution(eq, a.name);
    IndexRange mw = a.window_set ? IndexRange{a.m_lo, a.m_hi} : sol.default_m;
    IndexRange nw = a.window_set ? IndexRange{a.n_lo, a.n_hi} : sol.default_n;
    MovingLattice lat = sample_solution(sol, mw, nw);
    std::vector<ExactCheck> checks = verify_solution(sol, mw, nw);

    bool all = true;
    std::cout << sol.name << " (" << sol.provenance << ") on "
              << mw.count() << " x " << nw.count() << " window\n";
    for (const auto& c : checks) {
        all = all && c.pass;
        std::cout << "  " << c.variant << "  max|E1| " << format_double(c.max_e1)
                  << "  scale " << format_double(c.scale) << "  "
                  << (c.pass ? "pass" : "FAIL") << '\n';
    }
    if (!a.out_dir.empty()) {
        std::filesystem::create_directories(a.out_dir);
        write_csv_file(lat, a.out_dir + "/lattice.csv");
        json rep;
        rep["equation"] = to_string(eq);
        rep["name"] = sol.name;
        rep["provenance"] = sol.provenance;
        rep["all_pass"] = all;
        rep["checks"] = json::array();
        for (const auto& c : checks) {
            rep["checks"].push_back({{"variant", c.variant},
                                     {"max_e1", c.max_e1},
                                     {"scale", c.scale},
                                     {"pass", c.pass}});
        }
        emit_outputs(a.out_dir, rep, {"lattice.csv"}, command, "",
                     resolve_seed(false, 0, nullptr));
    }
    return all ? kOk : kTestFailure;
}

struct InvarianceArgs {
    std::string equation, variant, out_dir;
    int samples = 100;
    std::uint64_t seed = 1;
    bool seed_set = false;
};

int run_invariance(const InvarianceArgs& a, const std::string& command) {
    Equation eq = equation_from_string(a.equation);
    SchemeDef def = make_scheme(eq, variant_from_string(a.variant));
    SymmetryAlgebra alg = builtin_algebra(eq);
    std::uint64_t seed = resolve_seed(a.seed_set, a.seed, nullptr);
    InvarianceReport rep = invariance_suite(def, alg, a.samples, seed);

    std::cout << "scheme " << rep.scheme << ", " << rep.n_samples << " samples (skipped "
              << rep.n_skipped << "), seed " << rep.seed << '\n';
    for (const auto& g : rep.generators) {
        std::cout << "  " << g.generator << "  max " << format_double(g.max_defect)
                  << "  mean " << format_double(g.mean_defect) << "  "
                  << (g.pass ? "pass" : "FAIL") << '\n';
    }
    if (!a.out_dir.empty()) {
        json j;
        j["scheme"] = rep.scheme;
        j["seed"] = rep.seed;
        j["n_samples"] = rep.n_samples;
        j["n_skipped"] = rep.n_skipped;
        j["all_pass"] = rep.all_pass();
        j["generators"] = json::array();
        for (const auto& g : rep.generators) {
            j["generators"].push_back({{"generator", g.generator},
                                       {"max_defect", g.max_defect},
                                       {"mean_defect", g.mean_defect},
                                       {"pass", g.pass}});
        }
        emit_outputs(a.out_dir, j, {}, command, "", seed);
    }
    return rep.all_pass() ? kOk : kTestFailure;
}

struct ConvergeArgs {
    std::string config_path, out_dir;
};

int run_converge(const ConvergeArgs& a, const std::string& command) {
    Config cfg = Config::load(a.config_path);
    Equation eq = equation_from_string(cfg.get("equation"));
    Variant var = variant_from_string(cfg.get("variant"));

    // Reference: a catalog entry ("catalog:<name>") or the built-in
    // manufactured heat solution exp(t + x).
    const std::string ref_key = cfg.get("reference");
    std::function<double(double, double)> reference;
    if (ref_key == "exp_xt") {
        if (eq != Equation::Heat) throw ConfigError("reference exp_xt is heat-only");
        reference = [](double x, double t) { return std::exp(t + x); };
    } else if (ref_key.rfind("catalog:", 0) == 0) {
        reference = find_solution(eq, ref_key.substr(8)).u;
    } else {
        throw ConfigError("reference must be exp_xt or catalog:<name>, got '" + ref_key +
                          "'");
    }

    const std::string preset = cfg.get_or("mesh.preset", "uniform");
    const double h0 = cfg.get_double("mesh.h");
    const double x0 = cfg.get_double_or("mesh.x0", 0.0);
    const double tau0 = cfg.get_double("mesh.tau");
    const double t0 = cfg.get_double_or("mesh.t0", 0.0);
    const double c = cfg.get_double_or("mesh.c", 0.0);
    const int levels = cfg.get_int_or("refine.levels", 4);
    const double tau_exp = cfg.get_double_or("refine.tau_exponent", 2.0);
    const int n_lo0 = cfg.get_int("window.n_lo");
    const int n_hi0 = cfg.get_int("window.n_hi");
    const int m_hi0 = cfg.get_int("window.m_hi");
    BoundaryPolicy bp = boundary_policy_from_string(cfg.get_or("boundary", "exact"));

    auto refinements = dyadic_refinements(h0, tau0, levels, tau_exp);
    auto make_config = [&](const Refinement& r) {
        // Shrink steps, grow the index window, keep the physical domain.
        const double sx = h0 / r.h;
        const double st = tau0 / r.tau;
        SimConfig sim;
        sim.tag = eq;
        sim.variant = var;
        if (preset == "uniform") {
            sim.mesh = MeshFunctions::uniform(r.h, x0, r.tau, t0);
        } else if (preset == "fundamental") {
            sim.mesh = MeshFunctions::fundamental(r.h, x0, r.tau, t0);
        } else if (preset == "galilean") {
            sim.mesh = MeshFunctions::galilean(r.h, x0, r.tau, t0, c);
        } else {
            throw ConfigError("unknown mesh.preset '" + preset + "'");
        }
        sim.m_range = {0, static_cast<int>(std::lround(m_hi0 * st))};
        sim.n_range = {static_cast<int>(std::lround(n_lo0 * sx)),
                       static_cast<int>(std::lround(n_hi0 * sx))};
        sim.data = reference;
        sim.boundary = bp;
        return sim;
    };

    ConvergenceReport rep = convergence_study(make_config, reference, refinements);

    std::cout << "scheme " << rep.scheme << '\n';
    for (const auto& lv : rep.levels) {
        std::cout << "  h " << format_double(lv.h) << "  tau " << format_double(lv.tau)
                  << "  err_max " << format_double(lv.err_max) << "  order "
                  << format_double(lv.order_max) << "  |sigma/tau| "
                  << format_double(lv.sigma_tau_max) << '\n';
    }
    std::cout << "  sigma/tau bounded: " << (rep.sigma_tau_bounded ? "yes" : "no") << '\n';

    if (!a.out_dir.empty()) {
        json j;
        j["scheme"] = rep.scheme;
        j["sigma_tau_bounded"] = rep.sigma_tau_bounded;
        j["levels"] = json::array();
        for (const auto& lv : rep.levels) {
            j["levels"].push_back({{"h", lv.h},
                                   {"tau", lv.tau},
                                   {"err_max", lv.err_max},
                                   {"err_l2", lv.err_l2},
                                   {"order_max", lv.order_max},
                                   {"order_l2", lv.order_l2},
                                   {"sigma_tau_max", lv.sigma_tau_max}});
        }
        emit_outputs(a.out_dir, j, {}, command, a.config_path,
                     resolve_seed(false, 0, &cfg));
    }

    // Optional gate on the observed order of the finest level.
    if (cfg.has("expect.order")) {
        const double want = cfg.get_double("expect.order");
        const double tol = cfg.get_double_or("expect.order_tol", 0.3);
        const double got = rep.levels.back().order_l2;
        if (!(std::abs(got - want) <= tol)) {
            std::cout << "  order check FAIL: got " << format_double(got) << ", want "
                      << format_double(want) << " +- " << format_double(tol) << '\n';
            return kTestFailure;
        }
        std::cout << "  order check pass\n";
    }
    return kOk;
}

struct OrbitArgs {
    std::string equation, variant, solution, eps_text, out_dir;
};

int run_orbit(const OrbitArgs& a, const std::string& command) {
    Equation eq = equation_from_string(a.equation);
    SchemeDef def = make_scheme(eq, variant_from_string(a.variant));
    ExactSolution sol = find_solution(eq, a.solution);
    std::vector<double> eps = parse_eps_list(a.eps_text);
    GroupElement g = group_element(eq, eps);
    OrbitResult res = orbit_test(def, sol, g);

    const bool pass = res.max_e1() <= kOrbitTol * res.scale;
    std::cout << "scheme " << def.name << " on image of " << sol.name << '\n';
    for (int c = 0; c < res.component_max.size(); ++c) {
        std::cout << "  " << def.component_names[c] << "  max "
                  << format_double(res.component_max[c]) << '\n';
    }
    std::cout << "  scale " << format_double(res.scale) << "  "
              << (pass ? "pass" : "FAIL") << '\n';

    if (!a.out_dir.empty()) {
        json j;
        j["scheme"] = def.name;
        j["solution"] = sol.name;
        j["eps"] = eps;
        j["scale"] = res.scale;
        j["pass"] = pass;
        j["component_max"] = json::array();
        for (int c = 0; c < res.component_max.size(); ++c) {
            j["component_max"].push_back(res.component_max[c]);
        }
        emit_outputs(a.out_dir, j, {}, command, "", resolve_seed(false, 0, nullptr));
    }
    return pass ? kOk : kTestFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry-preserving finite difference schemes on evolving lattices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    InvariantsArgs ia;
    auto* sub_inv = app.add_subcommand("invariants",
                                       "Print the difference invariants of one stencil");
    sub_inv->add_option("--equation", ia.equation, "Equation family")->required();
    sub_inv->add_option("--stencil", ia.stencil_csv, "CSV point list (two time levels)")
        ->required();
    auto* om = sub_inv->add_option("--m", ia.m, "Lower time level of the stencil");
    auto* on = sub_inv->add_option("--n", ia.n, "Spatial index of the stencil foot");
    sub_inv->add_option("--out", ia.out_dir, "Output directory");

    CheckArgs ca;
    auto* sub_check = app.add_subcommand("check",
                                         "Evaluate scheme residuals over a lattice file");
    sub_check->add_option("--equation", ca.equation, "Equation family")->required();
    sub_check->add_option("--variant", ca.variant, "Scheme variant")->required();
    sub_check->add_option("--lattice", ca.lattice_csv, "CSV lattice file")->required();
    sub_check->add_option("--out", ca.out_dir, "Output directory");

    SolveArgs sa;
    auto* sub_solve = app.add_subcommand("solve", "March a scheme from config data");
    sub_solve->add_option("--config", sa.config_path, "Config file")->required();
    sub_solve->add_option("--out", sa.out_dir, "Output directory")->required();

    ExactArgs ea;
    auto* sub_exact = app.add_subcommand("exact",
                                         "Sample and verify a catalog exact solution");
    sub_exact->add_option("--equation", ea.equation, "Equation family")->required();
    sub_exact->add_option("--name", ea.name, "Catalog entry name")->required();
    auto* w1 = sub_exact->add_option("--m-lo", ea.m_lo, "First time level");
    auto* w2 = sub_exact->add_option("--m-hi", ea.m_hi, "Last time level");
    auto* w3 = sub_exact->add_option("--n-lo", ea.n_lo, "First spatial index");
    auto* w4 = sub_exact->add_option("--n-hi", ea.n_hi, "Last spatial index");
    sub_exact->add_option("--out", ea.out_dir, "Output directory");

    InvarianceArgs va;
    auto* sub_invar = app.add_subcommand("invariance",
                                         "On-manifold symmetry sweep of a scheme");
    sub_invar->add_option("--equation", va.equation, "Equation family")->required();
    sub_invar->add_option("--variant", va.variant, "Scheme variant")->required();
    sub_invar->add_option("--samples", va.samples, "Number of random on-shell stencils");
    auto* os = sub_invar->add_option("--seed", va.seed, "RNG seed");
    sub_invar->add_option("--out", va.out_dir, "Output directory");

    ConvergeArgs ga;
    auto* sub_conv = app.add_subcommand("converge", "Mesh refinement study from config");
    sub_conv->add_option("--config", ga.config_path, "Config file")->required();
    sub_conv->add_option("--out", ga.out_dir, "Output directory");

    OrbitArgs oa;
    auto* sub_orbit = app.add_subcommand("orbit",
                                         "Residuals on the group image of an exact solution");
    sub_orbit->add_option("--equation", oa.equation, "Equation family")->required();
    sub_orbit->add_option("--variant", oa.variant, "Scheme variant")->required();
    sub_orbit->add_option("--solution", oa.solution, "Catalog entry name")->required();
    sub_orbit->add_option("--eps", oa.eps_text,
                          "Comma separated group parameters, one per generator")
        ->required();
    sub_orbit->add_option("--out", oa.out_dir, "Output directory");

    app.add_subcommand("list", "Enumerate equations, variants, generators, catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    ia.m_set = om->count() > 0;
    ia.n_set = on->count() > 0;
    ea.window_set = w1->count() || w2->count() || w3->count() || w4->count();
    if (ea.window_set && !(w1->count() && w2->count() && w3->count() && w4->count())) {
        std::cerr << "error: --m-lo/--m-hi/--n-lo/--n-hi must be given together\n";
        return kUsageError;
    }
    va.seed_set = os->count() > 0;

    const std::string command = join_args(argc, argv);
    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "list") return run_list();
        if (name == "invariants") return run_invariants(ia, command);
        if (name == "check") return run_check(ca, command);
        if (name == "solve") return run_solve(sa, command);
        if (name == "exact") return run_exact(ea, command);
        if (name == "invariance") return run_invariance(va, command);
        if (name == "converge") return run_converge(ga, command);
        if (name == "orbit") return run_orbit(oa, command);
        std::cerr << "error: unknown subcommand '" << name << "'\n";
        return kUsageError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsageError;
    } catch (const BoundaryError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumericError;
    }
}
