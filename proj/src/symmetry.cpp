#include "invpdelta/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace invpdelta {

namespace {

// Denominators of projective flows must stay on the identity branch.
constexpr double kDenomFloor = 1e-10;

VectorField vf(std::string label,
               std::function<double(double, double, double)> xi,
               std::function<double(double, double, double)> eta,
               std::function<double(double, double, double)> phi) {
    auto zero = [](double, double, double) { return 0.0; };
    VectorField v;
    v.label = std::move(label);
    v.xi = xi ? std::move(xi) : zero;
    v.eta = eta ? std::move(eta) : zero;
    v.phi = phi ? std::move(phi) : zero;
    return v;
}

}  // namespace

SymmetryAlgebra builtin_algebra(Equation tag) {
    SymmetryAlgebra alg;
    alg.tag = tag;
    auto X = [](double x, double, double) { return x; };
    auto T = [](double, double t, double) { return t; };
    auto U = [](double, double, double u) { return u; };
    auto one = [](double, double, double) { return 1.0; };
    switch (tag) {
        case Equation::Heat:
            alg.basis = {
                vf("V1", one, nullptr, nullptr),
                vf("V2", nullptr, one, nullptr),
                vf("V3", nullptr, nullptr, U),
                vf("V4", X, [](double, double t, double) { return 2 * t; },
                   nullptr),
                vf("V5", [](double, double t, double) { return 2 * t; }, nullptr,
                   [](double x, double, double u) { return -x * u; }),
                vf("V6",
                   [](double x, double t, double) { return 4 * t * x; },
                   [](double, double t, double) { return 4 * t * t; },
                   [](double x, double t, double u) {
                       return -(x * x + 2 * t) * u;
                   }),
            };
            break;
        case Equation::Burgers:
            alg.basis = {
                vf("V1", one, nullptr, nullptr),
                vf("V2", nullptr, one, nullptr),
                vf("V3", T, nullptr, one),
                vf("V4", X, [](double, double t, double) { return 2 * t; },
                   [](double, double, double u) { return -u; }),
                vf("V5", [](double x, double t, double) { return t * x; },
                   [](double, double t, double) { return t * t; },
                   [](double x, double t, double u) { return x - t * u; }),
            };
            break;
        case Equation::PotentialBurgers:
            alg.basis = {
                vf("V1", one, nullptr, nullptr),
                vf("V2", nullptr, one, nullptr),
                vf("V3", T, nullptr, X),
                vf("V4", X, [](double, double t, double) { return 2 * t; },
                   nullptr),
                vf("V5", [](double x, double t, double) { return t * x; },
                   [](double, double t, double) { return t * t; },
                   [](double x, double t, double) { return 0.5 * x * x + t; }),
                vf("V6", nullptr, nullptr, one),
            };
            break;
        case Equation::Kdv:
            alg.basis = {
                vf("V1", one, nullptr, nullptr),
                vf("V2", nullptr, one, nullptr),
                vf("V3", T, nullptr, [](double, double, double) { return -1.0; }),
                vf("V4", X, [](double, double t, double) { return 3 * t; },
                   [](double, double, double u) { return -2 * u; }),
            };
            break;
        case Equation::WaveDemo:
            alg.basis = {
                vf("V1", one, nullptr, nullptr),
                vf("V2", nullptr, one, nullptr),
                vf("V3", X, nullptr, nullptr),
                vf("V4", nullptr, T, nullptr),
            };
            break;
    }
    return alg;
}

Eigen::VectorXd prolong(const VectorField& v, const StencilView& s) {
    int np = stencil_point_count(s.width);
    Eigen::VectorXd out(3 * np);
    for (int i = 0; i < np; ++i) {
        StencilPoint p = s.point(i);
        out[3 * i + 0] = v.xi(p.x, p.t, p.u);
        out[3 * i + 1] = v.eta(p.x, p.t, p.u);
        out[3 * i + 2] = v.phi(p.x, p.t, p.u);
    }
    return out;
}

namespace {

StencilPoint rk4_flow(const VectorField& v, const StencilPoint& p, double e) {
    auto f = [&v](const StencilPoint& q) {
        return StencilPoint{v.xi(q.x, q.t, q.u), v.eta(q.x, q.t, q.u),
                            v.phi(q.x, q.t, q.u)};
    };
    auto advance = [](const StencilPoint& q, const StencilPoint& k, double w) {
        return StencilPoint{q.x + w * k.x, q.t + w * k.t, q.u + w * k.u};
    };
    StencilPoint k1 = f(p);
    StencilPoint k2 = f(advance(p, k1, e / 2));
    StencilPoint k3 = f(advance(p, k2, e / 2));
    StencilPoint k4 = f(advance(p, k3, e));
    return {p.x + e / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
            p.t + e / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t),
            p.u + e / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u)};
}

}  // namespace

double invariance_defect(const VectorField& v,
                         const std::function<double(const StencilView&)>& F,
                         const StencilView& s, InvarianceMode mode) {
    (void)mode;  // same computation; the mode documents the caller's claim
    int np = stencil_point_count(s.width);

    // (a) prolonged coefficients against a central-difference gradient.
    double grad_sum = 0;
    for (int i = 0; i < np; ++i) {
        StencilPoint p = s.point(i);
        double coeff[3] = {v.xi(p.x, p.t, p.u), v.eta(p.x, p.t, p.u),
                           v.phi(p.x, p.t, p.u)};
        double base[3] = {p.x, p.t, p.u};
        for (int c = 0; c < 3; ++c) {
            if (coeff[c] == 0.0) continue;
            double step = 1e-6 * (1 + std::abs(base[c]));
            StencilPoint hi = p, lo = p;
            (c == 0 ? hi.x : c == 1 ? hi.t : hi.u) += step;
            (c == 0 ? lo.x : c == 1 ? lo.t : lo.u) -= step;
            double fp = F(s.with_point(i, hi));
            double fm = F(s.with_point(i, lo));
            grad_sum += coeff[c] * (fp - fm) / (2 * step);
        }
    }
    // Third-layer time slot, present only on lattices with a level below
    // the stencil. It participates through its time coordinate alone; eta
    // of every built-in generator depends only on t, so the remaining
    // coordinates of that point are proxied by the stencil base.
    if (s.has_prev_time) {
        double eta_prev = v.eta(s.x(), s.t_prev, s.u());
        if (eta_prev != 0.0) {
            double step = 1e-6 * (1 + std::abs(s.t_prev));
            StencilView hi = s, lo = s;
            hi.t_prev += step;
            lo.t_prev -= step;
            grad_sum += eta_prev * (F(hi) - F(lo)) / (2 * step);
        }
    }

    // (b) flow derivative with one Richardson level.
    auto flowed = [&](double e) {
        StencilView out = s;
        for (int i = 0; i < np; ++i)
            out = out.with_point(i, rk4_flow(v, s.point(i), e));
        if (s.has_prev_time)
            out.t_prev = rk4_flow(v, {s.x(), s.t_prev, s.u()}, e).t;
        return F(out);
    };
    auto central = [&](double e) { return (flowed(e) - flowed(-e)) / (2 * e); };
    const double e0 = 1e-5;
    double d1 = central(e0);
    double d2 = central(e0 / 2);
    double flow_est = (4 * d2 - d1) / 3;

    double f0 = std::abs(F(s));
    double tol = 2e-5 * (1 + std::abs(grad_sum) + f0);
    if (std::abs(grad_sum - flow_est) > tol)
        throw NumericError(
            "invariance defect estimators disagree for " + v.label + ": gradient " +
            std::to_string(grad_sum) + " vs flow " + std::to_string(flow_est));
    return grad_sum;
}

std::vector<Coord> six_point_coords() {
    return {Coord::Xm, Coord::X,  Coord::Xp,  Coord::XHm, Coord::XH,
            Coord::XHp, Coord::T,  Coord::TH,  Coord::Um,  Coord::U,
            Coord::Up,  Coord::UHm, Coord::UH, Coord::UHp};
}

std::vector<Coord> ten_point_coords() {
    return {Coord::Xmm, Coord::Xm,  Coord::X,    Coord::Xp,  Coord::Xpp,
            Coord::XHmm, Coord::XHm, Coord::XH,  Coord::XHp, Coord::XHpp,
            Coord::T,    Coord::TH,  Coord::Umm, Coord::Um,  Coord::U,
            Coord::Up,   Coord::Upp, Coord::UHmm, Coord::UHm, Coord::UH,
            Coord::UHp,  Coord::UHpp};
}

namespace {

// (array selector, slot index) for point-local coordinates; T/TH handled
// separately.
struct CoordRef {
    int kind;  // 0 x_lo, 1 x_hi, 2 u_lo, 3 u_hi, 4 t layer lo, 5 t layer hi
    int idx;
};

CoordRef coord_ref(Coord c) {
    switch (c) {
        case Coord::Xmm: return {0, 0};
        case Coord::Xm: return {0, 1};
        case Coord::X: return {0, 2};
        case Coord::Xp: return {0, 3};
        case Coord::Xpp: return {0, 4};
        case Coord::XHmm: return {1, 0};
        case Coord::XHm: return {1, 1};
        case Coord::XH: return {1, 2};
        case Coord::XHp: return {1, 3};
        case Coord::XHpp: return {1, 4};
        case Coord::Umm: return {2, 0};
        case Coord::Um: return {2, 1};
        case Coord::U: return {2, 2};
        case Coord::Up: return {2, 3};
        case Coord::Upp: return {2, 4};
        case Coord::UHmm: return {3, 0};
        case Coord::UHm: return {3, 1};
        case Coord::UH: return {3, 2};
        case Coord::UHp: return {3, 3};
        case Coord::UHpp: return {3, 4};
        case Coord::T: return {4, 2};
        case Coord::TH: return {5, 2};
    }
    throw DomainError("bad coordinate");
}

}  // namespace

double coord_value(const StencilView& s, Coord c) {
    CoordRef r = coord_ref(c);
    switch (r.kind) {
        case 0: return s.x_lo[r.idx];
        case 1: return s.x_hi[r.idx];
        case 2: return s.u_lo[r.idx];
        case 3: return s.u_hi[r.idx];
        case 4: return s.t_lo[2];
        default: return s.t_hi[2];
    }
}

StencilView shift_coord(const StencilView& s, Coord c, double delta) {
    StencilView out = s;
    CoordRef r = coord_ref(c);
    int reach = s.width == StencilWidth::SixPoint ? 1 : 2;
    switch (r.kind) {
        case 0: out.x_lo[r.idx] += delta; break;
        case 1: out.x_hi[r.idx] += delta; break;
        case 2: out.u_lo[r.idx] += delta; break;
        case 3: out.u_hi[r.idx] += delta; break;
        case 4:
            for (int k = -reach; k <= reach; ++k) out.t_lo[k + 2] += delta;
            break;
        default:
            for (int k = -reach; k <= reach; ++k) out.t_hi[k + 2] += delta;
            break;
    }
    out.finalize();
    return out;
}

namespace {

// Row of prolonged coefficients of v over the reduced flat-layer space.
// X/U coordinates take the coefficient at their own point; the shared T
// coordinate takes eta at the layer; eta must agree across the layer.
Eigen::RowVectorXd reduced_row(const VectorField& v, const StencilView& s,
                               std::span<const Coord> active) {
    int reach = s.width == StencilWidth::SixPoint ? 1 : 2;
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) {
        CoordRef r = coord_ref(active[j]);
        double val = 0;
        switch (r.kind) {
            case 0:
                val = v.xi(s.x_lo[r.idx], s.t_lo[r.idx], s.u_lo[r.idx]);
                break;
            case 1:
                val = v.xi(s.x_hi[r.idx], s.t_hi[r.idx], s.u_hi[r.idx]);
                break;
            case 2:
                val = v.phi(s.x_lo[r.idx], s.t_lo[r.idx], s.u_lo[r.idx]);
                break;
            case 3:
                val = v.phi(s.x_hi[r.idx], s.t_hi[r.idx], s.u_hi[r.idx]);
                break;
            case 4:
            case 5: {
                bool hi = r.kind == 5;
                double base = hi ? v.eta(s.x_hi[2], s.t_hi[2], s.u_hi[2])
                                 : v.eta(s.x_lo[2], s.t_lo[2], s.u_lo[2]);
                for (int k = -reach; k <= reach; ++k) {
                    double e = hi ? v.eta(s.x_hi[k + 2], s.t_hi[k + 2],
                                          s.u_hi[k + 2])
                                  : v.eta(s.x_lo[k + 2], s.t_lo[k + 2],
                                          s.u_lo[k + 2]);
                    if (std::abs(e - base) > 1e-12 * (1 + std::abs(base)))
                        throw NumericError(
                            "eta of " + v.label +
                            " varies along a flat layer; the reduced "
                            "coordinate space does not apply");
                }
                val = base;
                break;
            }
        }
        row[static_cast<Eigen::Index>(j)] = val;
    }
    return row;
}

}  // namespace

StencilView random_generic_stencil(StencilWidth width, Rng& rng,
                                   bool positive_u) {
    StencilSpec spec;
    spec.width = width;
    spec.x = rng.uniform(-0.5, 0.5);
    spec.t = rng.uniform(0.6, 1.6);
    spec.tau = rng.uniform(0.2, 0.8);
    spec.hp = rng.uniform(0.3, 1.1);
    spec.hm = rng.uniform(0.3, 1.1);
    spec.hpp = rng.uniform(0.3, 1.1);
    spec.hmm = rng.uniform(0.3, 1.1);
    spec.hhp = rng.uniform(0.3, 1.1);
    spec.hhm = rng.uniform(0.3, 1.1);
    spec.hhpp = rng.uniform(0.3, 1.1);
    spec.hhmm = rng.uniform(0.3, 1.1);
    spec.sigma = rng.uniform(-0.4, 0.4);
    int np = stencil_point_count(width);
    for (int i = 0; i < np; ++i) {
        if (positive_u) {
            spec.u[static_cast<std::size_t>(i)] = rng.uniform(0.6, 1.9);
        } else {
            double mag = rng.uniform(0.2, 1.2);
            spec.u[static_cast<std::size_t>(i)] =
                rng.next01() < 0.5 ? -mag : mag;
        }
    }
    return make_stencil(spec);
}

int invariant_count(const SymmetryAlgebra& alg, StencilWidth width,
                    std::span<const Coord> active, std::uint64_t seed,
                    int n_samples) {
    n_samples = std::max(n_samples, 5);
    Rng rng(seed);
    std::vector<int> ranks;
    for (int k = 0; k < n_samples; ++k) {
        StencilView s = random_generic_stencil(width, rng, true);
        Eigen::MatrixXd Z(alg.dim(), static_cast<Eigen::Index>(active.size()));
        for (int a = 0; a < alg.dim(); ++a)
            Z.row(a) = reduced_row(alg.basis[static_cast<std::size_t>(a)], s,
                                   active);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z);
        const auto& sv = svd.singularValues();
        double thresh = std::max(Z.rows(), Z.cols()) *
                        std::numeric_limits<double>::epsilon() *
                        (sv.size() ? sv[0] : 0.0);
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > thresh) ++rank;
        ranks.push_back(rank);
    }
    int best = *std::max_element(ranks.begin(), ranks.end());
    int agree = static_cast<int>(std::count(ranks.begin(), ranks.end(), best));
    if (agree < 2)
        throw NumericError("rank sampling degenerate: no two samples agree");
    return static_cast<int>(active.size()) - best;
}

namespace {

// Closed-form one-parameter flows. Every value action is affine in u and
// every point action is independent of u, so the inverse flow is the flow
// at -eps.
StencilPoint flow_point(Equation tag, int gen, double e, StencilPoint p) {
    switch (tag) {
        case Equation::Heat:
            switch (gen) {
                case 0: return {p.x + e, p.t, p.u};
                case 1: return {p.x, p.t + e, p.u};
                case 2: return {p.x, p.t, p.u * std::exp(e)};
                case 3:
                    return {std::exp(e) * p.x, std::exp(2 * e) * p.t, p.u};
                case 4:
                    return {p.x + 2 * e * p.t, p.t,
                            p.u * std::exp(-(e * p.x + e * e * p.t))};
                case 5: {
                    double d = 1 - 4 * e * p.t;
                    if (d < kDenomFloor)
                        throw DomainError(
                            "projective heat flow singular: 1 - 4 eps t = " +
                            std::to_string(d));
                    return {p.x / d, p.t / d,
                            p.u * std::sqrt(d) * std::exp(-e * p.x * p.x / d)};
                }
            }
            break;
        case Equation::Burgers:
            switch (gen) {
                case 0: return {p.x + e, p.t, p.u};
                case 1: return {p.x, p.t + e, p.u};
                case 2: return {p.x + e * p.t, p.t, p.u + e};
                case 3:
                    return {std::exp(e) * p.x, std::exp(2 * e) * p.t,
                            std::exp(-e) * p.u};
                case 4: {
                    double d = 1 - e * p.t;
                    if (d < kDenomFloor)
                        throw DomainError(
                            "projective Burgers flow singular: 1 - eps t = " +
                            std::to_string(d));
                    return {p.x / d, p.t / d, d * p.u + e * p.x};
                }
            }
            break;
        case Equation::PotentialBurgers:
            switch (gen) {
                case 0: return {p.x + e, p.t, p.u};
                case 1: return {p.x, p.t + e, p.u};
                case 2:
                    return {p.x + e * p.t, p.t,
                            p.u + e * p.x + 0.5 * e * e * p.t};
                case 3:
                    return {std::exp(e) * p.x, std::exp(2 * e) * p.t, p.u};
                case 4: {
                    double d = 1 - e * p.t;
                    if (d < kDenomFloor)
                        throw DomainError(
                            "projective potential flow singular: 1 - eps t = " +
                            std::to_string(d));
                    return {p.x / d, p.t / d,
                            p.u + 0.5 * e * p.x * p.x / d - std::log(d)};
                }
                case 5: return {p.x, p.t, p.u + e};
            }
            break;
        case Equation::Kdv:
            switch (gen) {
                case 0: return {p.x + e, p.t, p.u};
                case 1: return {p.x, p.t + e, p.u};
                case 2: return {p.x + e * p.t, p.t, p.u - e};
                case 3:
                    return {std::exp(e) * p.x, std::exp(3 * e) * p.t,
                            std::exp(-2 * e) * p.u};
            }
            break;
        case Equation::WaveDemo:
            switch (gen) {
                case 0: return {p.x + e, p.t, p.u};
                case 1: return {p.x, p.t + e, p.u};
                case 2: return {std::exp(e) * p.x, p.t, p.u};
                case 3: return {p.x, std::exp(e) * p.t, p.u};
            }
            break;
    }
    throw DomainError("generator index out of range for " + to_string(tag));
}

}  // namespace

GroupElement GroupElement::from_factors(Equation tag, std::vector<Factor> f) {
    GroupElement g;
    g.tag_ = tag;
    int dim = builtin_algebra(tag).dim();
    for (const Factor& fac : f)
        if (fac.generator < 0 || fac.generator >= dim)
            throw DomainError("generator index out of range");
    g.factors_ = std::move(f);
    return g;
}

GroupElement group_element(Equation tag, std::span<const double> params) {
    int dim = builtin_algebra(tag).dim();
    if (static_cast<int>(params.size()) != dim)
        throw ConfigError("expected " + std::to_string(dim) +
                          " group parameters for " + to_string(tag) + ", got " +
                          std::to_string(params.size()));
    std::vector<GroupElement::Factor> f;
    for (int a = 0; a < dim; ++a) f.push_back({a, params[static_cast<std::size_t>(a)]});
    return GroupElement::from_factors(tag, std::move(f));
}

StencilPoint GroupElement::map(const StencilPoint& p) const {
    StencilPoint q = p;
    for (const Factor& f : factors_) q = flow_point(tag_, f.generator, f.eps, q);
    return q;
}

void GroupElement::map_point(double x, double t, double& x_out,
                             double& t_out) const {
    StencilPoint q = map({x, t, 0.0});
    x_out = q.x;
    t_out = q.t;
}

void GroupElement::map_point_inverse(double x, double t, double& x_out,
                                     double& t_out) const {
    StencilPoint q{x, t, 0.0};
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
        q = flow_point(tag_, it->generator, -it->eps, q);
    x_out = q.x;
    t_out = q.t;
}

GroupElement GroupElement::inverse() const {
    std::vector<Factor> rev;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
        rev.push_back({it->generator, -it->eps});
    return from_factors(tag_, std::move(rev));
}

MovingLattice apply_group(const GroupElement& g, const MovingLattice& lat) {
    MovingLattice out(lat.tag(), lat.m_range(), lat.n_range());
    for (int m = lat.m_range().lo; m <= lat.m_range().hi; ++m)
        for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n) {
            StencilPoint q = g.map({lat.x(m, n), lat.t(m, n), lat.u(m, n)});
            out.set_x(m, n, q.x);
            out.set_t(m, n, q.t);
            out.set_u(m, n, q.u);
        }
    check_mesh_monotone(out);
    return out;
}

double sigma_tau_under_group(const GroupElement& g, const StencilView& s) {
    if (g.tag() != Equation::Heat)
        throw DomainError("sigma/tau transport law is specific to the heat group");
    const auto& f = g.factors();
    if (f.size() != 6)
        throw DomainError("canonical 6-parameter heat element required");
    for (int a = 0; a < 6; ++a)
        if (f[static_cast<std::size_t>(a)].generator != a)
            throw DomainError("canonical 6-parameter heat element required");

    double xb, tb, xt, tt;
    g.map_point(s.x(), s.t(), xb, tb);
    g.map_point(s.xh(), s.th(), xt, tt);
    double ratio = (xt - xb) / (tt - tb);

    double e1 = f[0].eps, e2 = f[1].eps, e4 = f[3].eps, e5 = f[4].eps,
           e6 = f[5].eps;
    double closed = (s.sigma / s.tau) *
                        (std::exp(-e4) - 4 * e6 * std::exp(e4) * (s.t() + e2)) +
                    2 * e5 + 4 * e6 * std::exp(e4) * (s.x() + e1);
    if (std::abs(ratio - closed) > 1e-10 * (1 + std::abs(closed)))
        throw NumericError("sigma/tau transport law violated: mapped " +
                           std::to_string(ratio) + " vs closed form " +
                           std::to_string(closed));
    return ratio;
}

MovingLattice potential_map(PotentialDirection dir, const MovingLattice& lat) {
    Equation want = dir == PotentialDirection::ToPotential
                        ? Equation::Heat
                        : Equation::PotentialBurgers;
    Equation target = dir == PotentialDirection::ToPotential
                          ? Equation::PotentialBurgers
                          : Equation::Heat;
    if (lat.tag() != want)
        throw DomainError("potential_map expects a " + to_string(want) +
                          " lattice, got " + to_string(lat.tag()));
    MovingLattice out(target, lat.m_range(), lat.n_range());
    for (int m = lat.m_range().lo; m <= lat.m_range().hi; ++m)
        for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n) {
            out.set_x(m, n, lat.x(m, n));
            out.set_t(m, n, lat.t(m, n));
            double val = lat.u(m, n);
            if (std::isnan(val)) continue;
            if (dir == PotentialDirection::ToPotential) {
                if (!(val > 0))
                    throw DomainError(
                        "potential substitution requires positive u; got " +
                        std::to_string(val));
                out.set_u(m, n, -2.0 * std::log(val));
            } else {
                out.set_u(m, n, std::exp(-0.5 * val));
            }
        }
    return out;
}

}  // namespace invpdelta
