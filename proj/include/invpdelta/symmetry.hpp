#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "invpdelta/core.hpp"
#include "invpdelta/lattice.hpp"

namespace invpdelta {

/// Lie point vector field xi(x,t,u) d_x + eta(x,t,u) d_t + phi(x,t,u) d_u.
/// For every built-in algebra eta depends on t alone, which keeps flat time
/// layers flat under the flow.
struct VectorField {
    std::string label;
    std::function<double(double x, double t, double u)> xi;
    std::function<double(double x, double t, double u)> eta;
    std::function<double(double x, double t, double u)> phi;
};

struct SymmetryAlgebra {
    Equation tag;
    std::vector<VectorField> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

/// Finite-dimensional symmetry algebra of the equation family:
/// heat and potential Burgers 6, Burgers 5, KdV 4, wave demo 4 generators.
/// The infinite-dimensional part of the heat algebra (superposition) is not
/// representable as a fixed basis and is exercised through linearity tests
/// instead.
SymmetryAlgebra builtin_algebra(Equation tag);

/// Discrete prolongation of v over the stencil: evaluates (xi, eta, phi) at
/// every stencil point. Layout: one triple per point in canonical point
/// order, so the vector has 3 * stencil_point_count(width) entries
/// (xi_0, eta_0, phi_0, xi_1, ...).
Eigen::VectorXd prolong(const VectorField& v, const StencilView& s);

enum class InvarianceMode {
    /// pr v[F] must vanish identically in a neighbourhood of s.
    Strong,
    /// pr v[F] evaluated where the scheme equations hold; the caller is
    /// responsible for handing in an on-shell stencil.
    OnManifold,
};

/// Numerical pr v[F](s) for a scalar stencil function F. Two independent
/// estimates are formed: (a) prolonged coefficients contracted with a
/// central-difference gradient of F over the raw slots (step 1e-6 scaled by
/// slot magnitude), and (b) the derivative d/de F(exp(e v) . s) at e = 0 by
/// central differences at e = +-1e-5 with one Richardson extrapolation
/// level, the flow integrated by a single fourth-order Runge-Kutta step per
/// point. Returns estimate (a); throws NumericError when the two disagree
/// beyond 2e-5 * (1 + |a| + |F(s)|).
///
/// When the stencil carries a third-layer time slot (t_prev) it is treated
/// as one extra time coordinate; eta is evaluated with the stencil base as
/// a proxy for the unstored x and u there, which is exact for every
/// built-in generator since their eta depends on t alone.
double invariance_defect(const VectorField& v,
                         const std::function<double(const StencilView&)>& F,
                         const StencilView& s,
                         InvarianceMode mode = InvarianceMode::Strong);

/// Coordinates of the flat-layer stencil space. Time layers are flat, so
/// each level contributes one t coordinate; every point keeps its own x and
/// u. Six-point schemes live in the 14-dimensional space without the
/// double-step entries, KdV in the full 22-dimensional one.
enum class Coord {
    Xmm, Xm, X, Xp, Xpp,
    XHmm, XHm, XH, XHp, XHpp,
    T, TH,
    Umm, Um, U, Up, Upp,
    UHmm, UHm, UH, UHp, UHpp,
};

/// The 14 active coordinates of a six-point flat-layer stencil.
std::vector<Coord> six_point_coords();
/// The 22 active coordinates of a ten-point flat-layer stencil.
std::vector<Coord> ten_point_coords();

/// Value of one flat-layer coordinate on a stencil.
double coord_value(const StencilView& s, Coord c);

/// Copy of s with one flat-layer coordinate shifted by delta. Shifting T or
/// TH moves the whole level; shifting an x or u coordinate moves one point.
StencilView shift_coord(const StencilView& s, Coord c, double delta);

/// Number of functionally independent invariants of the algebra acting on
/// the flat-layer stencil space spanned by active: dim - rank Z, where Z
/// stacks one prolonged coefficient row per generator. The rank is computed
/// from singular values with threshold max(rows, cols) * eps * sigma_max
/// and taken as the maximum over n_samples random generic stencils drawn
/// from the seeded generator. Throws NumericError when no two samples agree
/// on the rank.
int invariant_count(const SymmetryAlgebra& alg, StencilWidth width,
                    std::span<const Coord> active, std::uint64_t seed,
                    int n_samples = 5);

/// Generic flat-layer stencil for rank sampling and invariance sweeps.
/// Steps are drawn from [0.3, 1.1], tau from [0.2, 0.8], base x and t from
/// [-0.5, 0.5] and [0.6, 1.6], u slots from [0.6, 1.9] (positive so that
/// heat-family value ratios stay away from zero); when positive_u is false
/// the u slots instead cover [-1.2, 1.2] excluding a small band around 0.
StencilView random_generic_stencil(StencilWidth width, Rng& rng,
                                   bool positive_u = true);

/// Finite symmetry group element: an ordered product of one-parameter
/// flows exp(eps_k v_{a_k}) applied left to right. Point action and value
/// action are closed-form per generator; the value action of every
/// built-in generator is affine in u.
class GroupElement {
  public:
    struct Factor {
        int generator;  // index into builtin_algebra(tag).basis
        double eps;
    };

    Equation tag() const { return tag_; }
    const std::vector<Factor>& factors() const { return factors_; }

    /// (x, t) image under the point action. Throws DomainError on a
    /// singular denominator (projective flows reach one at finite eps).
    void map_point(double x, double t, double& x_out, double& t_out) const;

    /// Full (x, t, u) image.
    StencilPoint map(const StencilPoint& p) const;

    /// Inverse point map (factors applied right to left with negated
    /// parameters).
    void map_point_inverse(double x, double t, double& x_out, double& t_out) const;

    GroupElement inverse() const;

    static GroupElement from_factors(Equation tag, std::vector<Factor> f);

  private:
    Equation tag_ = Equation::Heat;
    std::vector<Factor> factors_;
};

/// Canonical group element exp(eps_1 v_1) ... exp(eps_l v_l) with one
/// parameter per basis generator. params.size() must equal the algebra
/// dimension.
GroupElement group_element(Equation tag, std::span<const double> params);

/// Pointwise image of a lattice: every (x, t, u) is mapped, unset u stays
/// unset. Throws DomainError when any point hits a singular denominator and
/// MeshError when the image mesh loses monotonicity.
MovingLattice apply_group(const GroupElement& g, const MovingLattice& lat);

/// sigma~/tau~ for the image of stencil s under a canonical 6-parameter
/// heat element. The value is also recomputed from the closed-form
/// transport law
///   sigma~/tau~ = (sigma/tau)(e^{-e4} - 4 e6 e^{e4}(t+e2))
///                 + 2 e5 + 4 e6 e^{e4}(x+e1)
/// and the two must agree to 1e-10 relative or NumericError is thrown.
/// Requires g to be canonical (one factor per heat generator, in order).
double sigma_tau_under_group(const GroupElement& g, const StencilView& s);

/// Hopf-Cole style change of variable between the heat equation and the
/// potential Burgers equation: u = exp(-w/2), w = -2 ln u. Direction
/// ToPotential maps u-data (must be positive) to w-data; ToHeat maps back.
enum class PotentialDirection { ToPotential, ToHeat };
MovingLattice potential_map(PotentialDirection dir, const MovingLattice& lat);

}  // namespace invpdelta
