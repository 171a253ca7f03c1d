#include "invpdelta/verify.hpp"

#include <cmath>
#include <limits>

namespace invpdelta {

bool InvarianceReport::all_pass() const {
    for (const GeneratorDefectStats& g : generators)
        if (!g.pass) return false;
    return true;
}

namespace {

bool implicit_variant(Variant v) {
    return v == Variant::InvariantImplicit || v == Variant::AdaptedImplicit ||
           v == Variant::StandardImplicit;
}

/// max(1, |u|_max / tau) over the slots a stencil carries; potential values
/// are measured through exp(-w/2).
double sample_scale(Equation tag, const StencilView& s) {
    double umax = 0;
    int np = stencil_point_count(s.width);
    for (int i = 0; i < np; ++i) {
        double v = s.point(i).u;
        if (tag == Equation::PotentialBurgers) v = std::exp(-v / 2);
        umax = std::max(umax, std::abs(v));
    }
    return std::max(1.0, umax / s.tau);
}

}  // namespace

StencilView on_shell_stencil(const SchemeDef& def, Rng& rng) {
    const bool ten = def.width == StencilWidth::TenPoint;
    const int center_lo = ten ? 2 : 1;
    const int center_hi = ten ? 7 : 4;

    StencilSpec sp;
    sp.width = def.width;
    sp.x = rng.uniform(-0.5, 0.5);
    sp.t = rng.uniform(0.6, 1.6);
    sp.tau = rng.uniform(0.2, 0.8);
    auto step = [&] { return rng.uniform(0.3, 1.1); };
    sp.hp = step();
    sp.hm = step();
    sp.hpp = step();
    sp.hmm = step();
    sp.hhp = step();
    sp.hhm = step();
    sp.hhpp = step();
    sp.hhmm = step();
    sp.sigma = rng.uniform(-0.4, 0.4);
    int np = stencil_point_count(def.width);
    for (int i = 0; i < np; ++i)
        sp.u[static_cast<size_t>(i)] = def.tag == Equation::Heat
                                           ? rng.uniform(0.6, 1.9)
                                           : rng.uniform(-1.2, 1.2);

    double adapted_sign = def.tag == Equation::Kdv ? -1 : 1;
    switch (def.variant) {
        case Variant::InvariantExplicit:
            sp.hm = sp.hp;
            break;
        case Variant::InvariantImplicit:
            sp.hhm = sp.hhp;
            break;
        case Variant::AdaptedExplicit:
            sp.sigma = adapted_sign * sp.tau * sp.u[static_cast<size_t>(center_lo)];
            break;
        case Variant::AdaptedImplicit:
            sp.sigma = adapted_sign * sp.tau * sp.u[static_cast<size_t>(center_hi)];
            break;
        case Variant::StandardExplicit:
        case Variant::StandardImplicit:
            sp.sigma = 0;
            sp.hm = sp.hp;
            sp.hhp = sp.hp;
            sp.hhm = sp.hp;
            sp.hpp = sp.hp;
            sp.hmm = sp.hp;
            sp.hhpp = sp.hp;
            sp.hhmm = sp.hp;
            break;
        case Variant::WaveDemo:
            sp.sigma = 0;
            break;
        case Variant::WaveDemoUniform:
            sp.sigma = 0;
            sp.hm = sp.hp;
            break;
    }

    StencilView s = make_stencil(sp);
    if (def.needs_prev_time) {
        s.has_prev_time = true;
        s.t_prev = sp.t - sp.tau;
    }

    if (def.tag == Equation::WaveDemo) {
        // E1 relates the two upper values; the plus slot closes it.
        s.u_hi[3] = s.uh() + s.hhp * (s.up() - s.u()) / s.hp;
        return s;
    }

    if (!implicit_variant(def.variant)) {
        s.set_uh(solve_explicit_update(def, s));
        return s;
    }

    // Implicit variants: solve the evolution residual for one upper edge
    // slot it is affine in. KdV residuals reach the far edge.
    int slot = def.tag == Equation::Kdv ? 0 : 1;
    const bool zspace = def.tag == Equation::PotentialBurgers;
    auto eval = [&](double a) {
        s.u_hi[static_cast<size_t>(slot)] = zspace ? -2 * std::log(a) : a;
        return def.components[0](s);
    };
    double a0 = zspace ? 1.0 : s.u();
    double a1 = zspace ? 2.0 : a0 + 1 + std::abs(a0);
    double f0 = eval(a0);
    double f1 = eval(a1);
    if (!std::isfinite(f0) || !std::isfinite(f1) || f0 == f1)
        throw SolverError("degenerate on-shell projection for '" + def.name +
                          "'");
    double root = a0 - f0 * (a1 - a0) / (f1 - f0);
    if (!std::isfinite(root) || (zspace && root <= 0))
        throw DomainError("on-shell projection left the solution domain for "
                          "'" + def.name + "'");
    s.u_hi[static_cast<size_t>(slot)] = zspace ? -2 * std::log(root) : root;
    return s;
}

InvarianceReport invariance_suite(const SchemeDef& def,
                                  const SymmetryAlgebra& alg, int n_samples,
                                  std::uint64_t seed) {
    InvarianceReport rep;
    rep.scheme = def.name;
    rep.seed = seed;
    rep.n_samples = n_samples;

    Rng rng(seed);
    std::vector<double> worst(static_cast<size_t>(alg.dim()), 0.0);
    std::vector<double> sum(static_cast<size_t>(alg.dim()), 0.0);
    int n_good = 0;
    for (int k = 0; k < n_samples; ++k) {
        StencilView s;
        try {
            s = on_shell_stencil(def, rng);
        } catch (const Error&) {
            ++rep.n_skipped;
            continue;
        }
        ++n_good;
        double scale = sample_scale(def.tag, s);
        for (int a = 0; a < alg.dim(); ++a) {
            double d = 0;
            for (const auto& component : def.components)
                d = std::max(d, std::abs(invariance_defect(
                                    alg.basis[static_cast<size_t>(a)],
                                    component, s,
                                    InvarianceMode::OnManifold)));
            d /= scale;
            worst[static_cast<size_t>(a)] =
                std::max(worst[static_cast<size_t>(a)], d);
            sum[static_cast<size_t>(a)] += d;
        }
    }
    if (n_good == 0)
        throw NumericError("every invariance sample failed projection for '" +
                           def.name + "'");
    for (int a = 0; a < alg.dim(); ++a) {
        GeneratorDefectStats st;
        st.generator = alg.basis[static_cast<size_t>(a)].label;
        st.max_defect = worst[static_cast<size_t>(a)];
        st.mean_defect = sum[static_cast<size_t>(a)] / n_good;
        st.pass = st.max_defect <= kInvarianceTol;
        rep.generators.push_back(st);
    }
    return rep;
}

std::vector<Refinement> dyadic_refinements(double h0, double tau0,
                                           int n_levels,
                                           double tau_exponent) {
    if (!(h0 > 0) || !(tau0 > 0) || n_levels < 1)
        throw ConfigError("refinements need positive h0, tau0 and at least "
                          "one level");
    std::vector<Refinement> out;
    for (int k = 0; k < n_levels; ++k) {
        double factor = std::pow(2.0, k);
        out.push_back({h0 / factor, tau0 / std::pow(factor, tau_exponent)});
    }
    return out;
}

ConvergenceReport convergence_study(
    const std::function<SimConfig(const Refinement&)>& make_config,
    const std::function<double(double, double)>& reference,
    const std::vector<Refinement>& refinements) {
    if (refinements.empty())
        throw ConfigError("convergence study needs at least one refinement");
    for (size_t k = 1; k < refinements.size(); ++k)
        if (!(refinements[k].h < refinements[k - 1].h) ||
            !(refinements[k].tau < refinements[k - 1].tau))
            throw ConfigError(
                "refinements must strictly decrease in h and tau");

    ConvergenceReport rep;
    for (const Refinement& r : refinements) {
        SimConfig cfg = make_config(r);
        Trajectory traj = run(cfg);
        if (rep.scheme.empty()) rep.scheme = traj.scheme_name;
        const MovingLattice& lat = traj.lattice;

        ConvergenceLevel lvl;
        lvl.h = r.h;
        lvl.tau = r.tau;
        double sumsq = 0;
        long count = 0;
        for (int m = lat.m_range().lo + 1; m <= lat.m_range().hi; ++m) {
            for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n) {
                double err =
                    std::abs(lat.u(m, n) - reference(lat.x(m, n), lat.t(m, n)));
                lvl.err_max = std::max(lvl.err_max, err);
                sumsq += err * err;
                ++count;
            }
        }
        lvl.err_l2 = std::sqrt(sumsq / static_cast<double>(count));
        lvl.sigma_tau_max = monitor_sigma_tau(traj);
        lvl.order_max = std::numeric_limits<double>::quiet_NaN();
        lvl.order_l2 = std::numeric_limits<double>::quiet_NaN();
        if (!rep.levels.empty()) {
            const ConvergenceLevel& prev = rep.levels.back();
            double lh = std::log(prev.h / lvl.h);
            lvl.order_max = std::log(prev.err_max / lvl.err_max) / lh;
            lvl.order_l2 = std::log(prev.err_l2 / lvl.err_l2) / lh;
        }
        rep.levels.push_back(lvl);
    }
    double first = rep.levels.front().sigma_tau_max;
    rep.sigma_tau_bounded = true;
    for (const ConvergenceLevel& lvl : rep.levels)
        if (lvl.sigma_tau_max > 2 * first + 1e-9)
            rep.sigma_tau_bounded = false;
    return rep;
}

OrbitResult orbit_test(const SchemeDef& def, const ExactSolution& sol,
                       const GroupElement& g) {
    return orbit_test(def, sol, g, sol.default_m, sol.default_n);
}

OrbitResult orbit_test(const SchemeDef& def, const ExactSolution& sol,
                       const GroupElement& g, IndexRange m_range,
                       IndexRange n_range) {
    MovingLattice base = sample_solution(sol, m_range, n_range);
    MovingLattice mapped = apply_group(g, base);
    OrbitResult res;
    res.component_max = scheme_residual_max(def, mapped);
    res.scale = 1;
    for (int m = m_range.lo; m < m_range.hi; ++m) {
        double tau = mapped.t(m + 1, n_range.lo) - mapped.t(m, n_range.lo);
        res.scale = std::max(res.scale,
                             residual_scale(def.tag, mapped, m, tau));
    }
    return res;
}

}  // namespace invpdelta
