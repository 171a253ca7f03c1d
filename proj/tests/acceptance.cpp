// Acceptance gate for the library: eight independent criteria, one
// PASS/FAIL line each, nonzero exit when any of them fails. Tolerances and
// time budgets are pinned here and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "invpdelta/invariants.hpp"
#include "invpdelta/verify.hpp"

using namespace invpdelta;

namespace {

// pinned gates
constexpr double kAnnihilationTol = 1e-7;   // per invariant, normalized
constexpr double kCollapseTol = 1e-12;      // invariant vs standard, sigma=0
constexpr double kMarchingTol = 1e-9;       // pointwise error, 50 levels
constexpr double kOrderTarget = 2.0;
constexpr double kOrderSlack = 0.3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Gate {
    int id;
    std::string label;
    double budget_s;
    bool ok;
    double elapsed_s;
    std::string detail;
};

std::vector<Gate> g_gates;

void run_gate(int id, const std::string& label, double budget_s,
              const std::function<bool(std::string&)>& body) {
    Gate gate{id, label, budget_s, false, 0, ""};
    auto t0 = Clock::now();
    try {
        gate.ok = body(gate.detail);
    } catch (const std::exception& ex) {
        gate.ok = false;
        gate.detail = std::string("exception: ") + ex.what();
    }
    gate.elapsed_s = seconds_since(t0);
    if (gate.elapsed_s > gate.budget_s) {
        gate.ok = false;
        gate.detail += " [over time budget]";
    }
    std::printf("criterion %d [%s] %s: %s (%.2fs, budget %.0fs)\n", gate.id,
                gate.ok ? "PASS" : "FAIL", gate.label.c_str(),
                gate.detail.c_str(), gate.elapsed_s, gate.budget_s);
    std::fflush(stdout);
    g_gates.push_back(gate);
}

const Equation kEquations[] = {Equation::Heat, Equation::Burgers,
                               Equation::PotentialBurgers, Equation::Kdv};

StencilWidth width_of(Equation e) {
    return e == Equation::Kdv ? StencilWidth::TenPoint
                              : StencilWidth::SixPoint;
}

char buf[256];

std::string fmt(const char* pattern, double a, double b = 0) {
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

// ---- criterion 1: complete invariant set sizes ----------------------------

bool invariant_set_sizes(std::string& detail) {
    const int heat = invariant_count(builtin_algebra(Equation::Heat),
                                     StencilWidth::SixPoint,
                                     six_point_coords(), 11);
    const int burgers = invariant_count(builtin_algebra(Equation::Burgers),
                                        StencilWidth::SixPoint,
                                        six_point_coords(), 11);
    const int kdv = invariant_count(builtin_algebra(Equation::Kdv),
                                    StencilWidth::TenPoint,
                                    ten_point_coords(), 11);
    std::snprintf(buf, sizeof(buf), "heat %d/8, burgers %d/9, kdv %d/18",
                  heat, burgers, kdv);
    detail = buf;
    return heat == 8 && burgers == 9 && kdv == 18;
}

// ---- criterion 2: generators annihilate every invariant --------------------

bool generators_annihilate(std::string& detail) {
    double worst = 0;
    for (Equation e : kEquations) {
        const SymmetryAlgebra alg = builtin_algebra(e);
        Rng rng(271828);
        for (int k = 0; k < 100; ++k) {
            const StencilView s =
                random_generic_stencil(width_of(e), rng, true);
            const InvariantSet inv = invariants_of(e, s);
            for (const VectorField& v : alg.basis) {
                for (int i = 0; i < inv.values.size(); ++i) {
                    auto F = [&, i](const StencilView& sv) {
                        return invariants_of(e, sv).values[i];
                    };
                    const double d = invariance_defect(v, F, s);
                    worst = std::max(
                        worst, std::abs(d) / (1 + std::abs(inv.values[i])));
                }
            }
        }
    }
    detail = fmt("100 stencils/equation, worst normalized defect %.2e",
                 worst);
    return worst <= kAnnihilationTol;
}

// ---- criterion 3: on-manifold invariance separates the families ------------

bool invariance_separation(std::string& detail) {
    double worst_inv = 0;
    for (Equation e : kEquations) {
        const SymmetryAlgebra alg = builtin_algebra(e);
        for (Variant v :
             {Variant::InvariantExplicit, Variant::InvariantImplicit}) {
            const InvarianceReport rep =
                invariance_suite(make_scheme(e, v), alg, 100, 137);
            if (!rep.all_pass()) {
                detail = rep.scheme + " failed the invariance sweep";
                return false;
            }
            for (const auto& g : rep.generators)
                worst_inv = std::max(worst_inv, g.max_defect);
        }
    }
    const InvarianceReport bad =
        invariance_suite(make_scheme(Equation::Heat, Variant::StandardExplicit),
                         builtin_algebra(Equation::Heat), 100, 137);
    double worst_std = 0;
    for (const auto& g : bad.generators)
        if (g.generator == "V5" || g.generator == "V6")
            worst_std = std::max(worst_std, g.max_defect);
    detail = fmt(
        "8 invariant schemes max defect %.2e; classical heat V5/V6 max %.2e",
        worst_inv, worst_std);
    return worst_inv <= kInvarianceTol && worst_std > kNonInvarianceFloor;
}

// ---- criterion 4: the whole catalog is exact to round-off ------------------

bool catalog_exactness(std::string& detail) {
    int n_checks = 0;
    double worst = 0;
    for (Equation e : {Equation::Heat, Equation::Burgers,
                       Equation::PotentialBurgers, Equation::Kdv,
                       Equation::WaveDemo}) {
        for (const ExactSolution& sol : catalog(e)) {
            for (const ExactCheck& c : verify_solution(sol)) {
                ++n_checks;
                worst = std::max(worst, c.max_e1 / c.scale);
                if (!c.pass) {
                    detail = to_string(e) + "/" + sol.name + " fails " +
                             c.variant;
                    return false;
                }
            }
        }
    }
    std::snprintf(buf, sizeof(buf),
                  "%d claims, worst normalized residual %.2e", n_checks,
                  worst);
    detail = buf;
    return true;
}

// ---- criterion 5: invariant schemes collapse on aligned uniform data -------

bool uniform_collapse(std::string& detail) {
    struct Pair {
        Equation e;
        Variant inv, std_v;
    };
    const Pair pairs[] = {
        {Equation::Heat, Variant::InvariantExplicit, Variant::StandardExplicit},
        {Equation::Heat, Variant::InvariantImplicit, Variant::StandardImplicit},
        {Equation::Kdv, Variant::InvariantExplicit, Variant::StandardExplicit},
        {Equation::Kdv, Variant::InvariantImplicit, Variant::StandardImplicit},
    };
    double worst = 0;
    for (const Pair& p : pairs) {
        const SchemeDef inv = make_scheme(p.e, p.inv);
        const SchemeDef std_s = make_scheme(p.e, p.std_v);
        Rng rng(424243);
        for (int k = 0; k < 25; ++k) {
            StencilSpec sp;
            sp.width = width_of(p.e);
            const double h = rng.uniform(0.3, 1.1);
            sp.hp = sp.hm = sp.hpp = sp.hmm = h;
            sp.hhp = sp.hhm = sp.hhpp = sp.hhmm = h;
            sp.sigma = 0;
            sp.tau = rng.uniform(0.2, 0.8);
            sp.x = rng.uniform(-0.5, 0.5);
            sp.t = rng.uniform(0.6, 1.6);
            const int np = stencil_point_count(sp.width);
            double umax = 0;
            for (int i = 0; i < np; ++i) {
                sp.u[static_cast<size_t>(i)] =
                    p.e == Equation::Heat ? rng.uniform(0.6, 1.9)
                                          : rng.uniform(-1.2, 1.2);
                umax = std::max(umax, std::abs(sp.u[static_cast<size_t>(i)]));
            }
            const StencilView s = make_stencil(sp);
            const double scale = std::max(1.0, umax / sp.tau);
            const double gap =
                std::abs(inv.components[0](s) - std_s.components[0](s));
            worst = std::max(worst, gap / scale);
        }
    }
    detail = fmt("4 scheme pairs, worst normalized gap %.2e", worst);
    return worst <= kCollapseTol;
}

// ---- criterion 6: long marching runs reproduce the closed forms ------------

bool long_marching(std::string& detail) {
    struct Run {
        Equation e;
        const char* solution;
        Variant v;
    };
    const Run runs[] = {
        {Equation::Heat, "fundamental", Variant::InvariantExplicit},
        {Equation::Heat, "fundamental", Variant::InvariantImplicit},
        {Equation::Kdv, "rational", Variant::InvariantExplicit},
        {Equation::Kdv, "rational", Variant::InvariantImplicit},
    };
    double worst = 0;
    for (const Run& r : runs) {
        const ExactSolution sol = find_solution(r.e, r.solution);
        SimConfig cfg;
        cfg.tag = r.e;
        cfg.variant = r.v;
        cfg.mesh = sol.mesh;
        cfg.m_range = {0, 50};
        cfg.n_range = sol.default_n;
        cfg.data = sol.u;
        const Trajectory traj = run(cfg);
        const MovingLattice& lat = traj.lattice;
        for (int m = lat.m_range().lo; m <= lat.m_range().hi; ++m)
            for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n)
                worst = std::max(worst, std::abs(lat.u(m, n) -
                                                 sol.u(lat.x(m, n),
                                                       lat.t(m, n))));
    }
    detail = fmt("4 runs x 50 levels, worst pointwise error %.2e", worst);
    return worst <= kMarchingTol;
}

// ---- criterion 7: second-order convergence under refinement ----------------

bool order_two_convergence(std::string& detail) {
    auto make_config = [](const Refinement& r) {
        SimConfig cfg;
        cfg.tag = Equation::Heat;
        cfg.variant = Variant::InvariantExplicit;
        cfg.mesh = MeshFunctions::uniform(r.h, -1.0, r.tau, 0.0);
        cfg.n_range = {0, static_cast<int>(std::lround(10 * 0.2 / r.h))};
        cfg.m_range = {0, static_cast<int>(std::lround(10 * 0.01 / r.tau))};
        cfg.data = [](double x, double t) { return std::exp(x + t); };
        return cfg;
    };
    auto reference = [](double x, double t) { return std::exp(x + t); };
    const ConvergenceReport rep = convergence_study(
        make_config, reference, dyadic_refinements(0.2, 0.01, 4));
    const ConvergenceLevel& last = rep.levels.back();
    detail = fmt("observed orders max %.3f / l2 %.3f", last.order_max,
                 last.order_l2);
    if (!rep.sigma_tau_bounded) detail += "; sigma/tau unbounded";
    return std::abs(last.order_max - kOrderTarget) <= kOrderSlack &&
           std::abs(last.order_l2 - kOrderTarget) <= kOrderSlack &&
           rep.sigma_tau_bounded;
}

// ---- criterion 8: residuals survive finite group transport -----------------

bool orbit_closure(std::string& detail) {
    const ExactSolution fund = find_solution(Equation::Heat, "fundamental");
    const SymmetryAlgebra alg = builtin_algebra(Equation::Heat);

    // One-parameter flows at |eps| = 0.1 on the fundamental solution.  The
    // projective flow runs backwards: forwards its 1 - 4*eps*t denominator
    // crosses zero inside this lattice's time window (t sits near 10).
    double worst = 0;
    for (std::size_t k = 0; k < alg.basis.size(); ++k) {
        std::vector<double> eps(alg.basis.size(), 0.0);
        eps[k] = (k + 1 == alg.basis.size()) ? -0.1 : 0.1;
        const GroupElement g = group_element(Equation::Heat, eps);
        for (Variant v :
             {Variant::InvariantExplicit, Variant::InvariantImplicit}) {
            const OrbitResult res =
                orbit_test(make_scheme(Equation::Heat, v), fund, g);
            worst = std::max(worst, res.max_e1() / res.scale);
        }
    }

    // The classical scheme loses exactness under the boost and projective
    // flows.  On the fundamental lattice its raw residual jumps past the
    // floor; the scale-normalized gap is widest on the constant solution,
    // so that leg carries the > floor * scale requirement.
    const SchemeDef classical =
        make_scheme(Equation::Heat, Variant::StandardExplicit);
    const std::vector<double> boost{0, 0, 0, 0, 0.1, 0};
    const std::vector<double> proj_back{0, 0, 0, 0, 0, -0.1};
    const double raw_boost =
        orbit_test(classical, fund, group_element(Equation::Heat, boost))
            .max_e1();
    const double raw_proj =
        orbit_test(classical, fund, group_element(Equation::Heat, proj_back))
            .max_e1();
    const ExactSolution cons = find_solution(Equation::Heat, "constant");
    const std::vector<double> proj_fwd{0, 0, 0, 0, 0, 0.1};
    const OrbitResult broken =
        orbit_test(classical, cons, group_element(Equation::Heat, proj_fwd));
    std::snprintf(buf, sizeof(buf),
                  "12 one-parameter legs worst %.2e; classical "
                  "boost/projective raw %.1e/%.1e, normalized on constant "
                  "%.2e",
                  worst, raw_boost, raw_proj,
                  broken.max_e1() / broken.scale);
    detail = buf;
    return worst <= kOrbitTol && raw_boost > kNonInvarianceFloor &&
           raw_proj > kNonInvarianceFloor &&
           broken.max_e1() > kNonInvarianceFloor * broken.scale;
}

}  // namespace

int main() {
    run_gate(1, "complete invariant set sizes", 1, invariant_set_sizes);
    run_gate(2, "generators annihilate the invariants", 10,
             generators_annihilate);
    run_gate(3, "invariance sweep separates scheme families", 30,
             invariance_separation);
    run_gate(4, "exact solution catalog verifies", 10, catalog_exactness);
    run_gate(5, "invariant schemes collapse on uniform data", 1,
             uniform_collapse);
    run_gate(6, "long marching matches closed forms", 30, long_marching);
    run_gate(7, "second order convergence", 120, order_two_convergence);
    run_gate(8, "orbit transport keeps exactness", 30, orbit_closure);

    int failed = 0;
    for (const Gate& g : g_gates)
        if (!g.ok) ++failed;
    std::printf("acceptance: %d/8 criteria pass\n",
                static_cast<int>(g_gates.size()) - failed);
    return failed == 0 ? 0 : 1;
}
