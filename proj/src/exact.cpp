#include "invpdelta/exact.hpp"

#include <cmath>
#include <cstdio>

namespace invpdelta {

namespace {

const double kPi = 3.14159265358979323846;

std::vector<ExactSolution> heat_catalog() {
    std::vector<ExactSolution> out;

    ExactSolution constant;
    constant.tag = Equation::Heat;
    constant.name = "constant";
    constant.description = "u = 1.25";
    constant.u = [](double, double) { return 1.25; };
    constant.mesh = MeshFunctions::uniform(0.1, 0.0, 0.02, 0.5);
    constant.exact_for = {Variant::InvariantExplicit,
                          Variant::InvariantImplicit,
                          Variant::StandardExplicit,
                          Variant::StandardImplicit};
    out.push_back(constant);

    ExactSolution linear;
    linear.tag = Equation::Heat;
    linear.name = "linear";
    linear.description = "u = 0.2 x + 2 (kept positive on the window)";
    linear.u = [](double x, double) { return 0.2 * x + 2.0; };
    linear.mesh = MeshFunctions::uniform(0.1, 0.0, 0.01, 0.0);
    linear.exact_for = {Variant::InvariantExplicit,
                        Variant::InvariantImplicit,
                        Variant::StandardExplicit,
                        Variant::StandardImplicit};
    out.push_back(linear);

    ExactSolution fundamental;
    fundamental.tag = Equation::Heat;
    fundamental.name = "fundamental";
    fundamental.description =
        "u = sqrt(1/(4 pi t)) exp(-x^2/(4t)) on the self-similar product "
        "lattice";
    fundamental.u = [](double x, double t) {
        return std::sqrt(1.0 / (4 * kPi * t)) * std::exp(-x * x / (4 * t));
    };
    fundamental.mesh = MeshFunctions::fundamental(0.05, 0.0, 0.005, 10.0);
    fundamental.exact_for = {Variant::InvariantExplicit,
                             Variant::InvariantImplicit};
    out.push_back(fundamental);

    ExactSolution wave;
    wave.tag = Equation::Heat;
    wave.name = "traveling_wave";
    wave.description =
        "u = (a(x - 2ct) + b) exp(-cx + c^2 t) with a=0.2, b=2, c=0.5 on "
        "the uniformly drifting lattice";
    wave.u = [](double x, double t) {
        const double a = 0.2, b = 2.0, c = 0.5;
        return (a * (x - 2 * c * t) + b) * std::exp(-c * x + c * c * t);
    };
    wave.mesh = MeshFunctions::galilean(0.1, 0.0, 0.01, 0.0, 0.5);
    wave.exact_for = {Variant::InvariantExplicit, Variant::InvariantImplicit};
    out.push_back(wave);

    return out;
}

std::vector<ExactSolution> burgers_catalog() {
    std::vector<ExactSolution> out;

    ExactSolution constant;
    constant.tag = Equation::Burgers;
    constant.name = "constant";
    constant.description =
        "v = 0.75 on a lattice drifting with the flow (sigma = tau v)";
    constant.u = [](double, double) { return 0.75; };
    // xorigin follows x0 + v0 (t - t0) so the mesh satisfies the adapted
    // lattice equation as well.
    constant.mesh =
        MeshFunctions{MeshFunction::affine(0.01, 0.0),
                      MeshFunction::constant(0.1),
                      MeshFunction::affine(0.75 * 0.01, 0.0)};
    constant.exact_for = {Variant::InvariantExplicit,
                          Variant::InvariantImplicit,
                          Variant::AdaptedExplicit,
                          Variant::AdaptedImplicit,
                          Variant::StandardExplicit,
                          Variant::StandardImplicit};
    out.push_back(constant);

    ExactSolution rational;
    rational.tag = Equation::Burgers;
    rational.name = "rational";
    rational.description = "v = x/t on the self-similar product lattice";
    rational.u = [](double x, double t) { return x / t; };
    rational.mesh = MeshFunctions::fundamental(0.05, 0.0, 0.005, 10.0);
    rational.exact_for = {Variant::InvariantExplicit,
                          Variant::InvariantImplicit,
                          Variant::AdaptedExplicit,
                          Variant::AdaptedImplicit};
    out.push_back(rational);

    return out;
}

std::vector<ExactSolution> potential_catalog() {
    std::vector<ExactSolution> out;

    ExactSolution constant;
    constant.tag = Equation::PotentialBurgers;
    constant.name = "constant_image";
    constant.description = "w = -2 ln 1.25 (image of the constant heat "
                           "solution)";
    constant.u = [](double, double) { return -2 * std::log(1.25); };
    constant.mesh = MeshFunctions::uniform(0.1, 0.0, 0.02, 0.5);
    constant.exact_for = {Variant::InvariantExplicit,
                          Variant::InvariantImplicit,
                          Variant::StandardExplicit};
    out.push_back(constant);

    ExactSolution linear;
    linear.tag = Equation::PotentialBurgers;
    linear.name = "linear_image";
    linear.description = "w = -2 ln(0.2 x + 2) (image of the linear heat "
                         "solution)";
    linear.u = [](double x, double) { return -2 * std::log(0.2 * x + 2.0); };
    linear.mesh = MeshFunctions::uniform(0.1, 0.0, 0.01, 0.0);
    linear.exact_for = {Variant::InvariantExplicit,
                        Variant::InvariantImplicit};
    out.push_back(linear);

    ExactSolution fundamental;
    fundamental.tag = Equation::PotentialBurgers;
    fundamental.name = "fundamental_image";
    fundamental.description =
        "w = ln(4 pi t) + x^2/(2t) (image of the fundamental heat solution)";
    fundamental.u = [](double x, double t) {
        return std::log(4 * kPi * t) + x * x / (2 * t);
    };
    fundamental.mesh = MeshFunctions::fundamental(0.05, 0.0, 0.005, 10.0);
    fundamental.exact_for = {Variant::InvariantExplicit,
                             Variant::InvariantImplicit};
    out.push_back(fundamental);

    return out;
}

std::vector<ExactSolution> kdv_catalog() {
    std::vector<ExactSolution> out;

    ExactSolution rational;
    rational.tag = Equation::Kdv;
    rational.name = "rational";
    rational.description = "u = -x/t on the self-similar product lattice";
    rational.u = [](double x, double t) { return -x / t; };
    rational.mesh = MeshFunctions::fundamental(0.05, 0.0, 0.005, 10.0);
    rational.exact_for = {Variant::InvariantExplicit,
                          Variant::InvariantImplicit,
                          Variant::AdaptedExplicit,
                          Variant::AdaptedImplicit};
    out.push_back(rational);

    return out;
}

std::vector<ExactSolution> wave_catalog() {
    std::vector<ExactSolution> out;

    ExactSolution separable;
    separable.tag = Equation::WaveDemo;
    separable.name = "separable";
    separable.description = "u = sin x + cos t on an orthogonal lattice";
    separable.u = [](double x, double t) {
        return std::sin(x) + std::cos(t);
    };
    separable.mesh = MeshFunctions::uniform(0.1, 0.0, 0.05, 0.0);
    separable.exact_for = {Variant::WaveDemo, Variant::WaveDemoUniform};
    out.push_back(separable);

    return out;
}

std::string format_eps(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", eps);
    return buf;
}

}  // namespace

std::vector<ExactSolution> catalog(Equation tag) {
    switch (tag) {
        case Equation::Heat: return heat_catalog();
        case Equation::Burgers: return burgers_catalog();
        case Equation::PotentialBurgers: return potential_catalog();
        case Equation::Kdv: return kdv_catalog();
        case Equation::WaveDemo: return wave_catalog();
    }
    throw ConfigError("bad equation tag");
}

ExactSolution find_solution(Equation tag, const std::string& name) {
    std::string known;
    for (ExactSolution& sol : catalog(tag)) {
        if (sol.name == name) return sol;
        if (!known.empty()) known += ", ";
        known += sol.name;
    }
    throw ConfigError("no exact solution '" + name + "' for equation " +
                      to_string(tag) + " (available: " + known + ")");
}

MovingLattice sample_solution(const ExactSolution& sol, IndexRange m_range,
                              IndexRange n_range) {
    return build_lattice(sol.tag, sol.mesh, m_range, n_range, sol.u);
}

std::vector<ExactCheck> verify_solution(const ExactSolution& sol) {
    return verify_solution(sol, sol.default_m, sol.default_n);
}

std::vector<ExactCheck> verify_solution(const ExactSolution& sol,
                                        IndexRange m_range,
                                        IndexRange n_range) {
    MovingLattice lat = sample_solution(sol, m_range, n_range);
    double scale = 1;
    for (int m = m_range.lo; m < m_range.hi; ++m) {
        double tau = lat.t(m + 1, n_range.lo) - lat.t(m, n_range.lo);
        scale = std::max(scale, residual_scale(sol.tag, lat, m, tau));
    }
    std::vector<ExactCheck> checks;
    for (Variant v : sol.exact_for) {
        SchemeDef def = make_scheme(sol.tag, v);
        ExactCheck c;
        c.variant = to_string(v);
        c.max_e1 = scheme_residual_max(def, lat)[0];
        c.scale = scale;
        c.pass = c.max_e1 <= kExactResidualTol * scale;
        checks.push_back(c);
    }
    return checks;
}

ExactSolution generate_by_group(const ExactSolution& seed,
                                const GroupElement& g,
                                const std::string& name) {
    if (g.tag() != seed.tag)
        throw ConfigError("group element belongs to equation " +
                          to_string(g.tag()) + ", solution to " +
                          to_string(seed.tag));

    ExactSolution out;
    out.tag = seed.tag;
    out.name = name;
    out.description = "group image of '" + seed.name + "'";
    out.provenance = seed.provenance;
    const SymmetryAlgebra alg = builtin_algebra(seed.tag);
    for (const GroupElement::Factor& f : g.factors())
        out.provenance += " * exp(" + format_eps(f.eps) + " " +
                          alg.basis[static_cast<size_t>(f.generator)].label +
                          ")";

    GroupElement gg = g;
    std::function<double(double, double)> base = seed.u;
    out.u = [gg, base](double x, double t) {
        double xb = 0, tb = 0;
        gg.map_point_inverse(x, t, xb, tb);
        StencilPoint p{xb, tb, base(xb, tb)};
        return gg.map(p).u;
    };

    // The point action is affine in x at fixed t, so the image of the mesh
    // family is found by probing the images of x = 0 and x = 1 per level.
    MeshFunctions base_mesh = seed.mesh;
    auto probe = [gg, base_mesh](int m, int which) {
        double t = base_mesh.gamma(m);
        double b_x = 0, b_t = 0, a_x = 0, a_t = 0;
        gg.map_point(0.0, t, b_x, b_t);
        if (which == 0) return b_t;
        gg.map_point(1.0, t, a_x, a_t);
        double slope = a_x - b_x;
        if (which == 1) return slope * base_mesh.hstep(m);
        return slope * base_mesh.xorigin(m) + b_x;
    };
    out.mesh.gamma = MeshFunction::generic(
        [probe](int m) { return probe(m, 0); });
    out.mesh.hstep = MeshFunction::generic(
        [probe](int m) { return probe(m, 1); });
    out.mesh.xorigin = MeshFunction::generic(
        [probe](int m) { return probe(m, 2); });

    out.default_m = seed.default_m;
    out.default_n = seed.default_n;
    for (Variant v : seed.exact_for)
        if (v != Variant::StandardExplicit && v != Variant::StandardImplicit)
            out.exact_for.push_back(v);

    for (const ExactCheck& c : verify_solution(out)) {
        if (!c.pass)
            throw NumericError(
                "transformed solution '" + name + "' fails the " + c.variant +
                " residual check: max |E1| = " + std::to_string(c.max_e1) +
                " > " + std::to_string(kExactResidualTol * c.scale));
    }
    return out;
}

}  // namespace invpdelta
