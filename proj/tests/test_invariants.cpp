#include <cmath>

#include "doctest.h"

#include <Eigen/SVD>

#include "invpdelta/invariants.hpp"
#include "invpdelta/symmetry.hpp"

using namespace invpdelta;

namespace {

// Fixed six-point stencil with unequal steps and a slanted upper layer.
// The expected values below were evaluated independently at 40-digit
// precision from the closed forms and frozen here.
StencilView oracle_six() {
    StencilSpec spec;
    spec.x = 0.0;
    spec.t = 1.0;
    spec.hp = 1.0;
    spec.hm = 2.0;
    spec.hhp = 0.5;
    spec.hhm = 0.5;
    spec.sigma = 0.3;
    spec.tau = 0.1;
    spec.u = {2.0, 1.0, 1.5, 1.2, 0.8, 0.5};
    return make_stencil(spec);
}

StencilView oracle_ten() {
    StencilSpec spec;
    spec.width = StencilWidth::TenPoint;
    spec.x = 0.0;
    spec.t = 1.0;
    spec.hp = 1.0;
    spec.hm = 2.0;
    spec.hpp = 0.5;
    spec.hmm = 1.5;
    spec.hhp = 0.5;
    spec.hhm = 0.5;
    spec.hhpp = 2.0;
    spec.hhmm = 0.25;
    spec.sigma = 0.3;
    spec.tau = 0.1;
    spec.u = {0.5, 2.0, 1.0, 1.5, 2.5, 0.4, 1.2, 0.8, 0.5, 1.0};
    return make_stencil(spec);
}

// Image of a stencil under a finite group element, point by point. Layers
// stay flat because every built-in eta depends on t alone.
StencilView map_stencil(const GroupElement& g, const StencilView& s) {
    StencilView r = s;
    const int np = stencil_point_count(s.width);
    for (int i = 0; i < np; ++i) r = r.with_point(i, g.map(s.point(i)));
    return r;
}

}  // namespace

TEST_CASE("heat invariants match frozen oracle values") {
    InvariantSet inv = heat_invariants(oracle_six());
    REQUIRE(inv.values.size() == 8);
    CHECK(inv.names[0] == "I1");
    CHECK(inv.names[7] == "I8");
    CHECK(inv[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(inv[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(inv[3] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(inv[4] == doctest::Approx(0.3168153718987934695).epsilon(1e-13));
    CHECK(inv[5] == doctest::Approx(0.5518191617571634824).epsilon(1e-13));
    CHECK(inv[6] == doctest::Approx(4.520658813962112416e-6).epsilon(1e-12));
    CHECK(inv[7] == doctest::Approx(2.471922951825360309).epsilon(1e-13));
    CHECK(inv[8] == doctest::Approx(1.323745353876893028).epsilon(1e-13));
}

TEST_CASE("burgers invariants match frozen oracle values") {
    InvariantSet inv = burgers_invariants(oracle_six());
    REQUIRE(inv.values.size() == 9);
    CHECK(inv[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(inv[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(inv[3] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(inv[4] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(inv[5] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(inv[6] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(inv[7] == doctest::Approx(1.1).epsilon(1e-13));
    CHECK(inv[8] == doctest::Approx(10.5).epsilon(1e-13));
    CHECK(inv[9] == doctest::Approx(-2.65).epsilon(1e-13));
}

TEST_CASE("potential invariants match frozen oracle values") {
    InvariantSet inv = potential_invariants(oracle_six());
    REQUIRE(inv.values.size() == 8);
    CHECK(inv[4] == doctest::Approx(0.4376689192773341062).epsilon(1e-13));
    CHECK(inv[5] == doctest::Approx(0.2865047968601901003).epsilon(1e-13));
    CHECK(inv[6] == doctest::Approx(1.370959086384085506e-6).epsilon(1e-12));
    CHECK(inv[7] == doctest::Approx(4.595143569306688001).epsilon(1e-13));
    CHECK(inv[8] == doctest::Approx(0.7225273536420722463).epsilon(1e-13));
}

TEST_CASE("kdv invariants match frozen oracle values") {
    InvariantSet inv = kdv_invariants(oracle_ten());
    REQUIRE(inv.values.size() == 18);
    const double want[18] = {0.5, 0.5,  2.0 / 1.5, 1.0,  4.0,   2.0,
                             2.0, 10.0, 0.4,       0.1,  -0.05, 0.05,
                             0.2, -0.2, 0.32,      -0.08, -0.06, 0.025};
    for (int k = 1; k <= 18; ++k)
        CHECK(inv[k] == doctest::Approx(want[k - 1]).epsilon(1e-13));
}

TEST_CASE("constant data on uniform meshes gives the known degenerate values") {
    StencilSpec spec;
    spec.hp = spec.hm = spec.hhp = spec.hhm = 0.25;
    spec.tau = 0.02;
    spec.u = {0.75, 0.75, 0.75, 0.75, 0.75, 0.75};
    StencilView s = make_stencil(spec);

    InvariantSet b = burgers_invariants(s);
    CHECK(b[4] == 0.0);
    CHECK(b[5] == 0.0);
    CHECK(b[6] == doctest::Approx(-0.25 * 0.75).epsilon(1e-14));
    CHECK(b[7] == doctest::Approx(-0.25 * 0.75).epsilon(1e-14));
    CHECK(b[8] == doctest::Approx(0.25 * 0.25 / 0.02).epsilon(1e-14));
    CHECK(b[9] == doctest::Approx(-0.25 * 0.25 / 0.02).epsilon(1e-14));

    StencilSpec kspec;
    kspec.width = StencilWidth::TenPoint;
    kspec.hp = kspec.hm = kspec.hpp = kspec.hmm = 0.25;
    kspec.hhp = kspec.hhm = kspec.hhpp = kspec.hhmm = 0.25;
    kspec.tau = 0.02;
    kspec.u.fill(0.6);
    InvariantSet k = kdv_invariants(make_stencil(kspec));
    for (int i = 1; i <= 7; ++i) CHECK(k[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k[8] == doctest::Approx(0.25 * 0.25 * 0.25 / 0.02).epsilon(1e-14));
    CHECK(k[9] == doctest::Approx(0.02 * 0.6 / 0.25).epsilon(1e-14));
    for (int i : {10, 11, 12, 13, 14, 15, 16, 17, 18}) CHECK(k[i] == 0.0);
}

TEST_CASE("domain guards reject degenerate stencils") {
    StencilView s = oracle_six();
    StencilView bad_u = s;
    bad_u.u_lo[2] = 0.0;
    CHECK_THROWS_AS(heat_invariants(bad_u), DomainError);

    StencilView bad_tau = s;
    bad_tau.t_hi = s.t_lo;  // collapse the layer gap
    bad_tau.finalize();
    CHECK_THROWS_AS(heat_invariants(bad_tau), DomainError);
    CHECK_THROWS_AS(burgers_invariants(bad_tau), DomainError);

    StencilSpec flat;
    flat.hp = 0.0;  // coincident points
    CHECK_THROWS_AS(heat_invariants(make_stencil(flat)), DomainError);

    // six-point stencils carry no KdV invariant set
    CHECK_THROWS_AS(kdv_invariants(s), DomainError);
    CHECK_THROWS_AS(invariants_of(Equation::WaveDemo, s), DomainError);

    CHECK_THROWS_AS(kdv_inv::I(0, oracle_ten()), DomainError);
    CHECK_THROWS_AS(kdv_inv::I(19, oracle_ten()), DomainError);
}

TEST_CASE("every generator annihilates every invariant") {
    struct Case {
        Equation tag;
        StencilWidth width;
        bool positive_u;
    };
    const Case cases[] = {
        {Equation::Heat, StencilWidth::SixPoint, true},
        {Equation::Burgers, StencilWidth::SixPoint, false},
        {Equation::PotentialBurgers, StencilWidth::SixPoint, false},
        {Equation::Kdv, StencilWidth::TenPoint, false},
    };
    for (const auto& c : cases) {
        auto alg = builtin_algebra(c.tag);
        Rng rng(314159);
        for (int trial = 0; trial < 10; ++trial) {
            StencilView s = random_generic_stencil(c.width, rng, c.positive_u);
            InvariantSet inv = invariants_of(c.tag, s);
            for (int k = 1; k <= inv.values.size(); ++k) {
                auto F = [&, k](const StencilView& v) {
                    return invariants_of(c.tag, v)[k];
                };
                for (const auto& gen : alg.basis) {
                    double defect = invariance_defect(gen, F, s);
                    CHECK(std::abs(defect) <=
                          1e-7 * (1 + std::abs(inv[k])));
                }
            }
        }
    }
}

TEST_CASE("invariants are constant along finite group orbits") {
    struct Case {
        Equation tag;
        StencilWidth width;
        bool positive_u;
        std::vector<double> eps;
    };
    const Case cases[] = {
        {Equation::Heat, StencilWidth::SixPoint, true,
         {0.03, -0.05, 0.1, 0.05, 0.07, 0.02}},
        {Equation::Burgers, StencilWidth::SixPoint, false,
         {0.05, -0.1, 0.08, 0.06, 0.04}},
        {Equation::PotentialBurgers, StencilWidth::SixPoint, false,
         {0.05, -0.1, 0.08, 0.06, 0.04, 0.2}},
        {Equation::Kdv, StencilWidth::TenPoint, false,
         {0.1, -0.1, 0.09, 0.07}},
    };
    for (const auto& c : cases) {
        GroupElement g = group_element(c.tag, c.eps);
        Rng rng(2718);
        for (int trial = 0; trial < 5; ++trial) {
            StencilView s = random_generic_stencil(c.width, rng, c.positive_u);
            InvariantSet before = invariants_of(c.tag, s);
            InvariantSet after = invariants_of(c.tag, map_stencil(g, s));
            for (int k = 1; k <= before.values.size(); ++k) {
                CHECK(std::abs(after[k] - before[k]) <=
                      1e-9 * (1 + std::abs(before[k])));
            }
        }
    }
}

TEST_CASE("invariant sets are functionally independent") {
    struct Case {
        Equation tag;
        StencilWidth width;
        bool positive_u;
        int expect_rank;
    };
    const Case cases[] = {
        {Equation::Heat, StencilWidth::SixPoint, true, 8},
        {Equation::Burgers, StencilWidth::SixPoint, false, 9},
        {Equation::PotentialBurgers, StencilWidth::SixPoint, false, 8},
        {Equation::Kdv, StencilWidth::TenPoint, false, 18},
    };
    for (const auto& c : cases) {
        auto coords = c.width == StencilWidth::TenPoint ? ten_point_coords()
                                                        : six_point_coords();
        Rng rng(99);
        StencilView s = random_generic_stencil(c.width, rng, c.positive_u);
        const int n_inv =
            static_cast<int>(invariants_of(c.tag, s).values.size());
        Eigen::MatrixXd jac(n_inv, static_cast<int>(coords.size()));
        for (size_t j = 0; j < coords.size(); ++j) {
            double step = 1e-6 * (1 + std::abs(coord_value(s, coords[j])));
            InvariantSet up =
                invariants_of(c.tag, shift_coord(s, coords[j], step));
            InvariantSet dn =
                invariants_of(c.tag, shift_coord(s, coords[j], -step));
            jac.col(static_cast<Eigen::Index>(j)) =
                (up.values - dn.values) / (2 * step);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-6 * sv[0]) ++rank;
        CHECK(rank == c.expect_rank);
    }
}
