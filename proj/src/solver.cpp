#include "invpdelta/solver.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace invpdelta {

std::string to_string(BoundaryPolicy p) {
    switch (p) {
        case BoundaryPolicy::Exact: return "exact";
        case BoundaryPolicy::Copy: return "copy";
        case BoundaryPolicy::Extrapolate: return "extrapolate";
    }
    throw ConfigError("bad boundary policy value");
}

BoundaryPolicy boundary_policy_from_string(const std::string& text) {
    for (BoundaryPolicy p : {BoundaryPolicy::Exact, BoundaryPolicy::Copy,
                             BoundaryPolicy::Extrapolate}) {
        if (to_string(p) == text) return p;
    }
    throw ConfigError("unknown boundary policy '" + text + "'");
}

namespace {

bool is_adapted(Variant v) {
    return v == Variant::AdaptedExplicit || v == Variant::AdaptedImplicit;
}

bool is_implicit(Variant v) {
    return v == Variant::InvariantImplicit || v == Variant::AdaptedImplicit ||
           v == Variant::StandardImplicit;
}

/// Sign s in the adapted mesh equation x_new = x + s*tau*u; the Burgers
/// lattice follows +v, the KdV lattice follows -u.
double adapted_sign(Equation tag) {
    switch (tag) {
        case Equation::Burgers: return 1;
        case Equation::Kdv: return -1;
        default:
            throw ConfigError("adapted variants exist only for the Burgers "
                              "and KdV equations");
    }
}

struct Stepper {
    const SimConfig& cfg;
    SchemeDef def;
    MovingLattice& lat;
    int reach;
    int n_lo, n_hi;      // full column range
    int i_lo, i_hi;      // interior column range
    int n_int;
    bool adapted;
    double sign = 0;     // adapted mesh-motion sign

    Stepper(const SimConfig& c, SchemeDef d, MovingLattice& l)
        : cfg(c), def(std::move(d)), lat(l) {
        reach = def.width == StencilWidth::TenPoint ? 2 : 1;
        n_lo = lat.n_range().lo;
        n_hi = lat.n_range().hi;
        i_lo = n_lo + reach;
        i_hi = n_hi - reach;
        n_int = i_hi - i_lo + 1;
        if (n_int < 1)
            throw MeshError("window too narrow for the scheme stencil");
        adapted = is_adapted(cfg.variant);
        if (adapted) sign = adapted_sign(cfg.tag);
    }

    double tau_at(int m) const { return lat.t(m + 1, n_lo) - lat.t(m, n_lo); }

    /// Mesh-equation position of the new level at column n given the value
    /// the motion follows (lower-level u when explicit, new-level u when
    /// implicit).
    double adapted_x(int m, int n, double follow) const {
        return lat.x(m, n) + sign * tau_at(m) * follow;
    }

    /// Solves x_new = x + s*tau*data(x_new, t_new) for an edge column of an
    /// adapted implicit level.
    double adapted_exact_x(int m, int n) const {
        double t_new = lat.t(m + 1, n_lo);
        double tau = tau_at(m);
        double x = lat.x(m, n);
        double xn = x;
        for (int it = 0; it < 100; ++it) {
            double next = x + sign * tau * cfg.data(xn, t_new);
            if (std::abs(next - xn) <= 1e-15 * (1 + std::abs(next)))
                return next;
            xn = next;
        }
        throw SolverError("edge-column mesh fixed point did not converge at "
                          "level " + std::to_string(m + 1));
    }

    void fill_boundary_values(int m) {
        double t_new = lat.t(m + 1, n_lo);
        auto one_side = [&](int b_first, int b_last, int i0, int i1) {
            for (int n = b_first; n <= b_last; ++n) {
                switch (cfg.boundary) {
                    case BoundaryPolicy::Exact:
                        lat.set_u(m + 1, n, cfg.data(lat.x(m + 1, n), t_new));
                        break;
                    case BoundaryPolicy::Copy:
                        lat.set_u(m + 1, n, lat.u(m + 1, i0));
                        break;
                    case BoundaryPolicy::Extrapolate: {
                        double x0 = lat.x(m + 1, i0), x1 = lat.x(m + 1, i1);
                        double u0 = lat.u(m + 1, i0), u1 = lat.u(m + 1, i1);
                        double slope = (u1 - u0) / (x1 - x0);
                        lat.set_u(m + 1, n,
                                  u0 + slope * (lat.x(m + 1, n) - x0));
                        break;
                    }
                }
            }
        };
        one_side(n_lo, i_lo - 1, i_lo, i_lo + 1);
        one_side(i_hi + 1, n_hi, i_hi, i_hi - 1);
    }

    void step_explicit(int m) {
        if (adapted)
            for (int n = n_lo; n <= n_hi; ++n)
                lat.set_x(m + 1, n, adapted_x(m, n, lat.u(m, n)));
        for (int n = i_lo; n <= i_hi; ++n) {
            StencilView s = stencil_at(lat, m, n, def.width);
            lat.set_u(m + 1, n, solve_explicit_update(def, s));
        }
        fill_boundary_values(m);
        if (adapted) check_level_monotone(m + 1);
    }

    void check_level_monotone(int m) const {
        for (int n = n_lo; n < n_hi; ++n)
            if (!(lat.x(m, n + 1) > lat.x(m, n)))
                throw MeshError("mesh tangled at level " + std::to_string(m));
    }

    /// Writes the candidate level (values, edge columns, and adapted mesh
    /// positions) for the interior unknowns z.
    void apply_candidate(int m, const Eigen::VectorXd& z) {
        double t_new = lat.t(m + 1, n_lo);
        for (int i = 0; i < n_int; ++i) lat.set_u(m + 1, i_lo + i, z[i]);
        if (adapted)
            for (int i = 0; i < n_int; ++i)
                lat.set_x(m + 1, i_lo + i, adapted_x(m, i_lo + i, z[i]));

        auto one_side = [&](int b_first, int b_last, int i0, int i1) {
            for (int n = b_first; n <= b_last; ++n) {
                switch (cfg.boundary) {
                    case BoundaryPolicy::Exact: {
                        double xb = adapted ? adapted_exact_x(m, n)
                                            : lat.x(m + 1, n);
                        if (adapted) lat.set_x(m + 1, n, xb);
                        lat.set_u(m + 1, n, cfg.data(xb, t_new));
                        break;
                    }
                    case BoundaryPolicy::Copy: {
                        double ub = lat.u(m + 1, i0);
                        lat.set_u(m + 1, n, ub);
                        if (adapted)
                            lat.set_x(m + 1, n, adapted_x(m, n, ub));
                        break;
                    }
                    case BoundaryPolicy::Extrapolate: {
                        double x0 = lat.x(m + 1, i0), x1 = lat.x(m + 1, i1);
                        double u0 = lat.u(m + 1, i0), u1 = lat.u(m + 1, i1);
                        double slope = (u1 - u0) / (x1 - x0);
                        if (!adapted) {
                            lat.set_u(m + 1, n,
                                      u0 + slope * (lat.x(m + 1, n) - x0));
                            break;
                        }
                        // x_b moves with u_b, so the linear continuation is
                        // solved for u_b in closed form.
                        double tau = tau_at(m);
                        double denom = 1 - slope * sign * tau;
                        if (std::abs(denom) < 1e-10)
                            throw SolverError(
                                "degenerate edge extrapolation at level " +
                                std::to_string(m + 1));
                        double ub =
                            (u0 + slope * (lat.x(m, n) - x0)) / denom;
                        lat.set_u(m + 1, n, ub);
                        lat.set_x(m + 1, n, adapted_x(m, n, ub));
                        break;
                    }
                }
            }
        };
        one_side(n_lo, i_lo - 1, i_lo, i_lo + 1);
        one_side(i_hi + 1, n_hi, i_hi, i_hi - 1);
    }

    double residual_row(int m, int i) {
        StencilView s = stencil_at(lat, m, i_lo + i, def.width);
        return def.components[0](s);
    }

    Eigen::VectorXd residual_vec(int m, const Eigen::VectorXd& z) {
        apply_candidate(m, z);
        Eigen::VectorXd r(n_int);
        for (int i = 0; i < n_int; ++i) r[i] = residual_row(m, i);
        return r;
    }

    /// Interior rows whose stencil can see unknown column j, including the
    /// widened coupling through edge-column policies.
    std::vector<int> affected_rows(int j) const {
        std::vector<int> rows;
        for (int i = std::max(0, j - reach);
             i <= std::min(n_int - 1, j + reach); ++i)
            rows.push_back(i);
        auto add = [&](int i) {
            if (i < 0 || i >= n_int) return;
            for (int r : rows)
                if (r == i) return;
            rows.push_back(i);
        };
        if (j <= 1)
            for (int i = 0; i < reach; ++i) add(i);
        if (j >= n_int - 2)
            for (int i = n_int - reach; i < n_int; ++i) add(i);
        return rows;
    }

    int step_implicit(int m, double scale) {
        Eigen::VectorXd z(n_int);
        for (int i = 0; i < n_int; ++i) z[i] = lat.u(m, i_lo + i);

        Eigen::VectorXd r = residual_vec(m, z);
        double rnorm = r.lpNorm<Eigen::Infinity>();
        const double target = cfg.newton.tol * scale;
        int iter = 0;
        while (rnorm > target) {
            if (iter >= cfg.newton.max_iter)
                throw SolverError("Newton did not converge at level " +
                                  std::to_string(m + 1) + " (residual " +
                                  std::to_string(rnorm) + ")");
            Eigen::SparseMatrix<double> jac(n_int, n_int);
            std::vector<Eigen::Triplet<double>> trips;
            for (int j = 0; j < n_int; ++j) {
                double dz = 1e-7 * (1 + std::abs(z[j]));
                Eigen::VectorXd zp = z;
                zp[j] += dz;
                apply_candidate(m, zp);
                for (int i : affected_rows(j)) {
                    double rp = residual_row(m, i);
                    trips.emplace_back(i, j, (rp - r[i]) / dz);
                }
            }
            jac.setFromTriplets(trips.begin(), trips.end());
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.compute(jac);
            if (lu.info() != Eigen::Success)
                throw SolverError("singular Jacobian at level " +
                                  std::to_string(m + 1));
            Eigen::VectorXd dzv = lu.solve(-r);

            double alpha = 1;
            bool accepted = false;
            for (int h = 0; h <= cfg.newton.max_halvings; ++h) {
                Eigen::VectorXd zc = z + alpha * dzv;
                Eigen::VectorXd rc = residual_vec(m, zc);
                double rcnorm = rc.lpNorm<Eigen::Infinity>();
                if (rcnorm < rnorm || rcnorm <= target) {
                    z = zc;
                    r = rc;
                    rnorm = rcnorm;
                    accepted = true;
                    break;
                }
                alpha /= 2;
            }
            if (!accepted)
                throw SolverError("Newton stalled at level " +
                                  std::to_string(m + 1) + " (residual " +
                                  std::to_string(rnorm) + ")");
            ++iter;
        }
        apply_candidate(m, z);
        if (adapted) check_level_monotone(m + 1);
        return iter;
    }

    LevelDiagnostics diagnose(int m, double scale, int iters) {
        LevelDiagnostics d;
        d.m = m + 1;
        d.scale = scale;
        d.newton_iters = iters;
        double tau = tau_at(m);
        for (int n = i_lo; n <= i_hi; ++n) {
            StencilView s = stencil_at(lat, m, n, def.width);
            d.max_residual =
                std::max(d.max_residual, std::abs(def.components[0](s)));
        }
        for (int n = n_lo; n <= n_hi; ++n)
            d.sigma_tau_max =
                std::max(d.sigma_tau_max,
                         std::abs(lat.x(m + 1, n) - lat.x(m, n)) / tau);
        return d;
    }
};

}  // namespace

Trajectory run(const SimConfig& cfg) {
    if (!cfg.data) throw ConfigError("run needs reference data u(x, t)");
    if (cfg.tag == Equation::WaveDemo)
        throw ConfigError("the wave demo schemes are evaluation-only");
    if (!(cfg.newton.tol > 0)) throw ConfigError("newton.tol must be positive");
    if (cfg.m_range.count() < 2)
        throw ConfigError("need at least two time levels to march");

    SchemeDef def = make_scheme(cfg.tag, cfg.variant);
    Trajectory traj{def.name,
                    build_lattice(cfg.tag, cfg.mesh, cfg.m_range, cfg.n_range),
                    {}};
    MovingLattice& lat = traj.lattice;
    Stepper st(cfg, def, lat);

    int m0 = cfg.m_range.lo;
    for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n)
        lat.set_u(m0, n, cfg.data(lat.x(m0, n), lat.t(m0, n)));

    for (int m = m0; m < cfg.m_range.hi; ++m) {
        double scale = residual_scale(cfg.tag, lat, m, st.tau_at(m));
        int iters = 0;
        if (is_implicit(cfg.variant)) {
            iters = st.step_implicit(m, scale);
        } else {
            st.step_explicit(m);
        }
        traj.levels.push_back(st.diagnose(m, scale, iters));
    }
    return traj;
}

double monitor_sigma_tau(const Trajectory& traj) {
    double worst = 0;
    for (const LevelDiagnostics& d : traj.levels)
        worst = std::max(worst, d.sigma_tau_max);
    return worst;
}

}  // namespace invpdelta
