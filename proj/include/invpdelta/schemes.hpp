#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "invpdelta/core.hpp"
#include "invpdelta/lattice.hpp"

namespace invpdelta {

/// Discretization family for one equation.
///
/// The invariant variants are built from the curated invariant sets and keep
/// every residual component unchanged along the symmetry group.  The adapted
/// variants (Burgers, KdV only) replace the a-priori mesh equation by one
/// that moves the grid points with the solution.  The standard variants are
/// the classical uniform-mesh discretizations used for comparison runs.  The
/// wave variants exercise the machinery on a first-order demo equation whose
/// uniform flavor constrains two consecutive time steps.
enum class Variant {
    InvariantExplicit,
    InvariantImplicit,
    AdaptedExplicit,
    AdaptedImplicit,
    StandardExplicit,
    StandardImplicit,
    WaveDemo,
    WaveDemoUniform,
};

std::string to_string(Variant v);

/// Accepts the snake_case names printed by to_string.  Throws ConfigError.
Variant variant_from_string(const std::string& text);

/// One finite-difference scheme as a list of residual components.
///
/// components[0] approximates the evolution equation and is normalized so
/// its magnitude is comparable to the time-derivative term.  The remaining
/// components pin the lattice: flat time layers, step-ratio conditions, or
/// the mesh-motion equation of the adapted variants.  All components are
/// total functions of a stencil; they do not assume any other component
/// vanishes.
struct SchemeDef {
    Equation tag = Equation::Heat;
    Variant variant = Variant::StandardExplicit;
    std::string name;
    StencilWidth width = StencilWidth::SixPoint;
    /// True only for the uniform wave variant whose layer-spacing residual
    /// needs the time level below the stencil.
    bool needs_prev_time = false;
    std::vector<std::string> component_names;
    std::vector<std::function<double(const StencilView&)>> components;

    int n_residuals() const { return static_cast<int>(components.size()); }
};

bool scheme_supported(Equation tag, Variant v);
std::vector<Variant> supported_variants(Equation tag);

/// Builds the scheme for a supported (equation, variant) pair.  Throws
/// ConfigError for unsupported pairs (for example the potential equation has
/// no standard implicit comparison scheme here).
SchemeDef make_scheme(Equation tag, Variant v);

/// Evaluates every residual component on one stencil.
Eigen::VectorXd residual(const SchemeDef& def, const StencilView& s);

/// Magnitude the evolution residual is measured against: max(1, U/tau)
/// where U is the largest solution magnitude on time level m.  For the
/// potential equation U is taken from exp(-w/2) because its evolution
/// residual is expressed in those units.
double residual_scale(Equation tag, const MovingLattice& lat, int m,
                      double tau);

/// Per-component maximum of |residual| over every interior stencil of the
/// lattice.  Schemes needing the earlier time level skip the first level.
Eigen::VectorXd scheme_residual_max(const SchemeDef& def,
                                    const MovingLattice& lat);

/// Solves components[0] == 0 for the upper-center value and returns it.
/// Every explicit scheme here is affine in that value, so two evaluations
/// and one secant step give the exact root.  For the potential equation the
/// solve runs in z = exp(-w/2); a root with z <= 0 throws DomainError.
/// Only explicit variants are supported (ConfigError otherwise).
double solve_explicit_update(const SchemeDef& def, StencilView s);

}  // namespace invpdelta
