#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "invpdelta/core.hpp"
#include "invpdelta/exact.hpp"
#include "invpdelta/lattice.hpp"
#include "invpdelta/schemes.hpp"
#include "invpdelta/solver.hpp"
#include "invpdelta/symmetry.hpp"

namespace invpdelta {

/// Largest normalized on-manifold defect an invariant scheme may show.
inline constexpr double kInvarianceTol = 1e-7;
/// Defect a genuinely non-invariant scheme must exceed on some sample.
inline constexpr double kNonInvarianceFloor = 1e-3;
/// Largest normalized |E1| an invariant scheme may leave on the group
/// image of one of its exact solutions.
inline constexpr double kOrbitTol = 1e-9;

struct GeneratorDefectStats {
    std::string generator;
    /// Defects are divided by the per-sample residual scale
    /// max(1, |u|_max / tau) before aggregation.
    double max_defect = 0;
    double mean_defect = 0;
    bool pass = false;
};

struct InvarianceReport {
    std::string scheme;
    std::uint64_t seed = 0;
    int n_samples = 0;
    /// Samples dropped because the on-shell projection failed.
    int n_skipped = 0;
    std::vector<GeneratorDefectStats> generators;

    bool all_pass() const;
};

/// Random stencil satisfying every equation of the scheme: layers are flat
/// by construction, the lattice equations fix the constrained steps or
/// sigma, and the evolution residual is solved for one upper-level value
/// (the centre for explicit variants, an edge value for implicit ones;
/// every scheme is affine in the chosen slot). Throws DomainError when the
/// solved value leaves the solution domain (the potential equation needs
/// exp(-w/2) > 0); invariance_suite skips such draws and counts them.
StencilView on_shell_stencil(const SchemeDef& def, Rng& rng);

/// On-manifold invariance sweep of every residual component against every
/// generator of the algebra. The defect of a sample is the largest
/// component defect; stats aggregate over samples.
InvarianceReport invariance_suite(const SchemeDef& def,
                                  const SymmetryAlgebra& alg, int n_samples,
                                  std::uint64_t seed);

struct Refinement {
    double h = 0;
    double tau = 0;
};

/// h_k = h0 / 2^k, tau_k = tau0 / 2^(k*tau_exponent). tau_exponent 2 keeps
/// tau proportional to h^2.
std::vector<Refinement> dyadic_refinements(double h0, double tau0,
                                           int n_levels,
                                           double tau_exponent = 2);

struct ConvergenceLevel {
    double h = 0, tau = 0;
    double err_max = 0;
    /// Root-mean-square error over all computed points.
    double err_l2 = 0;
    /// Observed order vs. the previous level, log(e_prev/e)/log(h_prev/h);
    /// NaN on the first level.
    double order_max = 0, order_l2 = 0;
    double sigma_tau_max = 0;
};

struct ConvergenceReport {
    std::string scheme;
    std::vector<ConvergenceLevel> levels;
    /// True when max |sigma/tau| stays within a factor 2 (plus slack) of
    /// the coarsest level, the operational form of the bounded-ratio
    /// requirement for the continuous limit.
    bool sigma_tau_bounded = false;
};

/// Runs the solver once per refinement and compares against the reference
/// values. make_config receives each refinement and must return a full
/// solver configuration (window sized for that h and tau). Refinements
/// must be strictly decreasing in both h and tau.
ConvergenceReport convergence_study(
    const std::function<SimConfig(const Refinement&)>& make_config,
    const std::function<double(double, double)>& reference,
    const std::vector<Refinement>& refinements);

struct OrbitResult {
    /// Per-component maxima of |E| over the transformed lattice.
    Eigen::VectorXd component_max;
    double scale = 1;

    double max_e1() const { return component_max[0]; }
};

/// Samples the exact solution on its lattice, pushes the whole discrete
/// solution through g, and measures the scheme residuals on the image.
OrbitResult orbit_test(const SchemeDef& def, const ExactSolution& sol,
                       const GroupElement& g);
OrbitResult orbit_test(const SchemeDef& def, const ExactSolution& sol,
                       const GroupElement& g, IndexRange m_range,
                       IndexRange n_range);

}  // namespace invpdelta
