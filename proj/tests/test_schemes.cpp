#include <cmath>

#include "doctest.h"

#include "invpdelta/schemes.hpp"
#include "invpdelta/symmetry.hpp"

using namespace invpdelta;

namespace {

double stencil_scale(const StencilView& s) {
    double umax = 0;
    int np = stencil_point_count(s.width);
    for (int i = 0; i < np; ++i)
        umax = std::max(umax, std::abs(s.point(i).u));
    return std::max(1.0, umax / s.tau);
}

// Random stencil with equal steps on both layers and vertically aligned
// columns, the shape on which the invariant schemes must collapse to the
// standard ones.
StencilView uniform_stencil(StencilWidth w, Rng& rng, bool positive_u) {
    StencilSpec spec;
    spec.width = w;
    double h = rng.uniform(0.3, 1.1);
    spec.hp = spec.hm = spec.hpp = spec.hmm = h;
    spec.hhp = spec.hhm = spec.hhpp = spec.hhmm = h;
    spec.sigma = 0;
    spec.tau = rng.uniform(0.2, 0.8);
    spec.x = rng.uniform(-0.5, 0.5);
    spec.t = rng.uniform(0.6, 1.6);
    int np = stencil_point_count(w);
    for (int i = 0; i < np; ++i)
        spec.u[static_cast<std::size_t>(i)] =
            positive_u ? rng.uniform(0.6, 1.9) : rng.uniform(-1.2, 1.2);
    return make_stencil(spec);
}

}  // namespace

TEST_CASE("scheme builders expose consistent metadata") {
    SchemeDef heat = make_scheme(Equation::Heat, Variant::InvariantExplicit);
    CHECK(heat.name == "heat.invariant_explicit");
    CHECK(heat.width == StencilWidth::SixPoint);
    CHECK(heat.n_residuals() == 3);
    CHECK(heat.component_names.size() == 3);
    CHECK(!heat.needs_prev_time);

    SchemeDef kdv = make_scheme(Equation::Kdv, Variant::AdaptedImplicit);
    CHECK(kdv.width == StencilWidth::TenPoint);
    CHECK(kdv.n_residuals() == 3);

    SchemeDef wave = make_scheme(Equation::WaveDemo, Variant::WaveDemoUniform);
    CHECK(wave.needs_prev_time);
    CHECK(wave.n_residuals() == 5);

    // unsupported pairs are rejected, and supported_variants agrees with
    // scheme_supported
    CHECK_THROWS_AS(make_scheme(Equation::Heat, Variant::AdaptedExplicit),
                    ConfigError);
    CHECK_THROWS_AS(
        make_scheme(Equation::PotentialBurgers, Variant::StandardImplicit),
        ConfigError);
    CHECK_THROWS_AS(make_scheme(Equation::Burgers, Variant::WaveDemo),
                    ConfigError);
    for (Equation e : {Equation::Heat, Equation::Burgers,
                       Equation::PotentialBurgers, Equation::Kdv,
                       Equation::WaveDemo}) {
        for (Variant v : supported_variants(e)) {
            CHECK(scheme_supported(e, v));
            CHECK_NOTHROW(make_scheme(e, v));
        }
        CHECK((!scheme_supported(e, Variant::WaveDemoUniform) ||
               e == Equation::WaveDemo));
    }

    CHECK(to_string(Variant::AdaptedImplicit) == "adapted_implicit");
    CHECK(variant_from_string("invariant_explicit") ==
          Variant::InvariantExplicit);
    CHECK_THROWS_AS(variant_from_string("bogus"), ConfigError);
}

TEST_CASE("invariant schemes collapse to standard ones on aligned uniform stencils") {
    struct Case {
        Equation tag;
        StencilWidth width;
        bool positive_u;
        Variant inv, std_v;
    };
    const Case cases[] = {
        {Equation::Heat, StencilWidth::SixPoint, true,
         Variant::InvariantExplicit, Variant::StandardExplicit},
        {Equation::Heat, StencilWidth::SixPoint, true,
         Variant::InvariantImplicit, Variant::StandardImplicit},
        {Equation::Kdv, StencilWidth::TenPoint, false,
         Variant::InvariantExplicit, Variant::StandardExplicit},
        {Equation::Kdv, StencilWidth::TenPoint, false,
         Variant::InvariantImplicit, Variant::StandardImplicit},
    };
    for (const auto& c : cases) {
        SchemeDef inv = make_scheme(c.tag, c.inv);
        SchemeDef ref = make_scheme(c.tag, c.std_v);
        Rng rng(424242);
        for (int trial = 0; trial < 25; ++trial) {
            StencilView s = uniform_stencil(c.width, rng, c.positive_u);
            double e_inv = inv.components[0](s);
            double e_std = ref.components[0](s);
            CHECK(std::abs(e_inv - e_std) <= 1e-12 * stencil_scale(s));
        }
    }
}

TEST_CASE("heat residuals are linear in the solution slots") {
    for (Variant v : {Variant::InvariantExplicit, Variant::InvariantImplicit,
                      Variant::StandardExplicit, Variant::StandardImplicit}) {
        SchemeDef def = make_scheme(Equation::Heat, v);
        Rng rng(5150);
        for (int trial = 0; trial < 10; ++trial) {
            // general shape: unequal steps and a slanted upper layer
            StencilSpec spec;
            spec.hp = rng.uniform(0.3, 1.1);
            spec.hm = rng.uniform(0.3, 1.1);
            spec.hhp = rng.uniform(0.3, 1.1);
            spec.hhm = rng.uniform(0.3, 1.1);
            spec.sigma = rng.uniform(-0.3, 0.3);
            spec.tau = rng.uniform(0.2, 0.8);
            for (int i = 0; i < 6; ++i)
                spec.u[static_cast<std::size_t>(i)] = rng.uniform(0.6, 1.9);
            StencilView s = make_stencil(spec);

            double e1 = def.components[0](s);
            StencilView s3 = s;
            for (auto& arr : {&s3.u_lo, &s3.u_hi})
                for (double& u : *arr) u *= 3.0;
            CHECK(def.components[0](s3) ==
                  doctest::Approx(3.0 * e1).epsilon(1e-11));
        }
    }
}

TEST_CASE("standard heat scheme is exact on low-degree solutions") {
    SchemeDef def = make_scheme(Equation::Heat, Variant::StandardExplicit);
    auto sample = [&](double (*f)(double, double), double h, double tau) {
        StencilSpec spec;
        spec.hp = spec.hm = spec.hhp = spec.hhm = h;
        spec.tau = tau;
        spec.x = 0.3;
        spec.t = 1.0;
        double xs[3] = {spec.x - h, spec.x, spec.x + h};
        for (int i = 0; i < 3; ++i) {
            spec.u[static_cast<std::size_t>(i)] = f(xs[i], spec.t);
            spec.u[static_cast<std::size_t>(i + 3)] = f(xs[i], spec.t + tau);
        }
        return def.components[0](make_stencil(spec));
    };
    auto one = [](double, double) { return 2.5; };
    auto lin = [](double x, double) { return 0.7 * x + 1.0; };
    auto quad = [](double x, double t) { return x * x + 2 * t; };
    auto expo = [](double x, double t) { return std::exp(t + x); };
    CHECK(std::abs(sample(one, 0.4, 0.05)) <= 1e-13);
    CHECK(std::abs(sample(lin, 0.4, 0.05)) <= 1e-12);
    CHECK(std::abs(sample(quad, 0.4, 0.05)) <= 1e-11);
    // smooth non-polynomial data leaves only truncation error
    CHECK(std::abs(sample(expo, 0.05, 0.001)) <= 1e-2);
    CHECK(std::abs(sample(expo, 0.05, 0.001)) > 1e-8);
}

TEST_CASE("solve_explicit_update roots the evolution residual") {
    struct Case {
        Equation tag;
        Variant v;
        StencilWidth width;
        bool positive_u;
    };
    const Case cases[] = {
        {Equation::Heat, Variant::InvariantExplicit, StencilWidth::SixPoint, true},
        {Equation::Heat, Variant::StandardExplicit, StencilWidth::SixPoint, true},
        {Equation::Burgers, Variant::InvariantExplicit, StencilWidth::SixPoint, false},
        {Equation::Burgers, Variant::AdaptedExplicit, StencilWidth::SixPoint, false},
        {Equation::Burgers, Variant::StandardExplicit, StencilWidth::SixPoint, false},
        {Equation::PotentialBurgers, Variant::InvariantExplicit,
         StencilWidth::SixPoint, true},
        {Equation::PotentialBurgers, Variant::StandardExplicit,
         StencilWidth::SixPoint, true},
        {Equation::Kdv, Variant::InvariantExplicit, StencilWidth::TenPoint, false},
        {Equation::Kdv, Variant::AdaptedExplicit, StencilWidth::TenPoint, false},
        {Equation::Kdv, Variant::StandardExplicit, StencilWidth::TenPoint, false},
    };
    for (const auto& c : cases) {
        SchemeDef def = make_scheme(c.tag, c.v);
        Rng rng(8081);
        int kept = 0;
        for (int trial = 0; trial < 25 && kept < 10; ++trial) {
            StencilView s = random_generic_stencil(c.width, rng, c.positive_u);
            if (c.v == Variant::StandardExplicit) {
                // the standard forms assume aligned uniform columns
                s = uniform_stencil(c.width, rng, c.positive_u);
            }
            double root;
            try {
                root = solve_explicit_update(def, s);
            } catch (const DomainError&) {
                // potential updates may leave the exp(-w/2) > 0 domain on
                // wild data; draw again
                continue;
            }
            ++kept;
            s.set_uh(root);
            CHECK(std::abs(def.components[0](s)) <= 1e-9 * stencil_scale(s));
        }
        CHECK(kept >= 5);
    }

    // standard heat update agrees with the closed form
    SchemeDef heat = make_scheme(Equation::Heat, Variant::StandardExplicit);
    Rng rng(1234);
    StencilView s = uniform_stencil(StencilWidth::SixPoint, rng, true);
    double expect = s.u() + s.tau / (s.hp * s.hp) * (s.up() - 2 * s.u() + s.um());
    CHECK(solve_explicit_update(heat, s) ==
          doctest::Approx(expect).epsilon(1e-12));

    // implicit variants cannot be solved pointwise
    CHECK_THROWS_AS(
        solve_explicit_update(make_scheme(Equation::Heat, Variant::InvariantImplicit), s),
        ConfigError);
}

TEST_CASE("potential update refuses to leave the positive domain") {
    SchemeDef def =
        make_scheme(Equation::PotentialBurgers, Variant::InvariantExplicit);
    StencilSpec spec;
    spec.hp = spec.hm = spec.hhp = spec.hhm = 0.5;
    spec.tau = 1.0;
    // huge neighbour potentials make exp(-w/2) vanish, pushing the root of
    // the affine z-equation negative
    spec.u = {40.0, 0.0, 40.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(solve_explicit_update(def, make_stencil(spec)), DomainError);
}

TEST_CASE("wave demo schemes vanish on additively separable data") {
    SchemeDef wave = make_scheme(Equation::WaveDemo, Variant::WaveDemo);
    auto f = [](double x) { return std::sin(2 * x) + 0.3 * x; };
    auto g = [](double t) { return std::cos(t) - t * t; };
    StencilSpec spec;
    // the cross difference reads only the plus legs; it annihilates
    // separable data once those legs line up across the layers
    spec.hp = 0.35;
    spec.hm = 0.22;
    spec.hhp = 0.35;
    spec.hhm = 0.44;
    spec.sigma = 0.0;
    spec.tau = 0.17;
    spec.x = 0.4;
    spec.t = 0.9;
    double xs_lo[3] = {spec.x - spec.hm, spec.x, spec.x + spec.hp};
    double xs_hi[3] = {spec.x - spec.hhm, spec.x, spec.x + spec.hhp};
    for (int i = 0; i < 3; ++i) {
        spec.u[static_cast<std::size_t>(i)] = f(xs_lo[i]) + g(spec.t);
        spec.u[static_cast<std::size_t>(i + 3)] = f(xs_hi[i]) + g(spec.t + spec.tau);
    }
    StencilView s = make_stencil(spec);
    Eigen::VectorXd e = residual(wave, s);
    CHECK(std::abs(e[0]) <= 1e-12);  // cross difference
    CHECK(e[1] == 0.0);              // layers flat by construction
    CHECK(e[2] == 0.0);              // sigma pinned to zero

    // the uniform variant needs the previous layer time
    SchemeDef uni = make_scheme(Equation::WaveDemo, Variant::WaveDemoUniform);
    CHECK_THROWS_AS(residual(uni, s), DomainError);
    StencilView s2 = s;
    s2.has_prev_time = true;
    s2.t_prev = s.t() - s.tau;  // equispaced levels
    Eigen::VectorXd e2 = residual(uni, s2);
    CHECK(std::abs(e2[3]) <= 1e-13);
    CHECK(e2[4] == doctest::Approx(spec.hp - spec.hm).epsilon(1e-13));
}

TEST_CASE("residual_scale tracks solution magnitude over tau") {
    auto mesh = MeshFunctions::uniform(0.1, 0.0, 0.02, 0.0);
    auto init = [](double x, double) { return 3.0 * std::cos(x); };
    MovingLattice lat = build_lattice(Equation::Heat, mesh, {0, 3}, {-3, 3}, init);
    CHECK(residual_scale(Equation::Heat, lat, 0, 0.02) ==
          doctest::Approx(3.0 / 0.02).epsilon(1e-12));
    CHECK(residual_scale(Equation::Heat, lat, 0, 10.0) == 1.0);

    // potential residuals are measured in exp(-w/2) units
    auto winit = [](double, double) { return -2.0 * std::log(5.0); };
    MovingLattice wlat = build_lattice(Equation::PotentialBurgers, mesh, {0, 3},
                                       {-3, 3}, winit);
    CHECK(residual_scale(Equation::PotentialBurgers, wlat, 0, 0.02) ==
          doctest::Approx(5.0 / 0.02).epsilon(1e-12));
}

TEST_CASE("scheme_residual_max needs a window that fits the stencil") {
    SchemeDef def = make_scheme(Equation::Kdv, Variant::StandardExplicit);
    auto mesh = MeshFunctions::uniform(0.1, 0.0, 0.01, 0.0);
    auto init = [](double x, double) { return x; };
    MovingLattice tiny = build_lattice(Equation::Kdv, mesh, {0, 2}, {-2, 1}, init);
    CHECK_THROWS_AS(scheme_residual_max(def, tiny), MeshError);
}
