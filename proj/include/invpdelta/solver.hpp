#pragma once

#include <functional>
#include <string>
#include <vector>

#include "invpdelta/core.hpp"
#include "invpdelta/lattice.hpp"
#include "invpdelta/schemes.hpp"

namespace invpdelta {

/// Value supplied for lattice columns too close to the window edge to carry
/// a stencil.  Exact evaluates the reference data at the new point, Copy
/// repeats the nearest interior value, Extrapolate continues the interior
/// values linearly in x.
enum class BoundaryPolicy { Exact, Copy, Extrapolate };

std::string to_string(BoundaryPolicy p);
BoundaryPolicy boundary_policy_from_string(const std::string& text);

struct NewtonOptions {
    /// Convergence threshold, relative to the residual scale of the level.
    double tol = 1e-12;
    int max_iter = 50;
    /// Step halvings tried before the iteration is declared stalled.
    int max_halvings = 8;
};

struct SimConfig {
    Equation tag = Equation::Heat;
    Variant variant = Variant::InvariantExplicit;
    MeshFunctions mesh;
    IndexRange m_range{0, 10};
    IndexRange n_range{-10, 10};
    /// Reference data u(x, t).  Fills the first time level and, under the
    /// Exact boundary policy, the edge columns of every later level.
    std::function<double(double, double)> data;
    BoundaryPolicy boundary = BoundaryPolicy::Exact;
    NewtonOptions newton;
};

struct LevelDiagnostics {
    /// Index of the newly computed level.
    int m = 0;
    /// Largest |E1| over the interior stencils feeding this level.
    double max_residual = 0;
    /// Residual scale the Newton tolerance was measured against.
    double scale = 1;
    /// 0 for explicit marching.
    int newton_iters = 0;
    double sigma_tau_max = 0;
};

struct Trajectory {
    std::string scheme_name;
    MovingLattice lattice;
    std::vector<LevelDiagnostics> levels;
};

/// Marches the scheme over the configured window.  Explicit variants update
/// each interior column in closed form; implicit variants solve one damped
/// Newton system per level with a finite-difference banded Jacobian.  The
/// adapted variants move the new level's x positions with the solution
/// instead of taking them from the mesh functions.  The wave demo schemes
/// are evaluation-only and are rejected here.
Trajectory run(const SimConfig& cfg);

/// Largest |sigma/tau| seen across all computed levels.
double monitor_sigma_tau(const Trajectory& traj);

}  // namespace invpdelta
