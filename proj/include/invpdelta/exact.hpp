#pragma once

#include <functional>
#include <string>
#include <vector>

#include "invpdelta/core.hpp"
#include "invpdelta/lattice.hpp"
#include "invpdelta/schemes.hpp"
#include "invpdelta/symmetry.hpp"

namespace invpdelta {

/// Largest |E1|, relative to the residual scale, an exact discrete
/// solution may leave on its own lattice. The mathematical statement is
/// exact; the slack absorbs exponential round-off.
inline constexpr double kExactResidualTol = 1e-10;

/// Closed-form solution together with the lattice family on which the
/// discrete residual vanishes.
struct ExactSolution {
    Equation tag = Equation::Heat;
    std::string name;
    std::string description;
    /// Construction history: "catalog" for seeds, seeds plus the applied
    /// group factors for transformed entries.
    std::string provenance = "catalog";
    std::function<double(double x, double t)> u;
    MeshFunctions mesh;
    IndexRange default_m{0, 29};
    IndexRange default_n{-15, 14};
    /// Variants whose evolution residual vanishes to round-off on this
    /// lattice.
    std::vector<Variant> exact_for;
};

std::vector<ExactSolution> catalog(Equation tag);

/// Throws ConfigError when the equation has no entry of that name.
ExactSolution find_solution(Equation tag, const std::string& name);

struct ExactCheck {
    std::string variant;
    double max_e1 = 0;
    double scale = 1;
    bool pass = false;
};

/// Evaluates max |E1| of every variant the entry claims exactness for,
/// over the given window (default: the entry's own window). pass means
/// max_e1 <= kExactResidualTol * scale.
std::vector<ExactCheck> verify_solution(const ExactSolution& sol);
std::vector<ExactCheck> verify_solution(const ExactSolution& sol,
                                        IndexRange m_range,
                                        IndexRange n_range);

/// Builds the lattice of the entry over a window and samples u on it.
MovingLattice sample_solution(const ExactSolution& sol, IndexRange m_range,
                              IndexRange n_range);

/// Image of an exact solution under a finite group transformation: points
/// are moved by g and values are transported along. Both stay inside the
/// x = hstep(m) n + xorigin(m) family because every built-in point action
/// is affine in x at fixed t. The standard variants are dropped from
/// exact_for (they are not group-stable); the remaining claims are
/// re-verified on the default window and a failure throws NumericError.
ExactSolution generate_by_group(const ExactSolution& seed,
                                const GroupElement& g,
                                const std::string& name);

}  // namespace invpdelta
