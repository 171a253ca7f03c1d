#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "invpdelta/core.hpp"

namespace invpdelta {

/// Scalar map m -> value describing one mesh ingredient. Constant and
/// affine cover every preset; tabulated and generic exist for group-mapped
/// lattices and file input.
class MeshFunction {
  public:
    static MeshFunction constant(double value);

    /// slope * m + intercept.
    static MeshFunction affine(double slope, double intercept);

    /// values[i] |-> m = m_first + i. Evaluation outside the table throws
    /// BoundaryError.
    static MeshFunction tabulated(int m_first, std::vector<double> values);

    static MeshFunction generic(std::function<double(int)> fn);

    /// Default-constructed functions are placeholders; evaluating one
    /// throws ConfigError.
    MeshFunction() = default;

    double operator()(int m) const;

  private:
    std::function<double(int)> eval_;
};

/// The three maps that determine an evolving lattice,
///   t_{m,n} = gamma(m),   x_{m,n} = hstep(m) * n + xorigin(m).
/// Time layers are flat by construction; hstep(m) > 0 keeps each layer
/// strictly increasing in n.
struct MeshFunctions {
    MeshFunction gamma;
    MeshFunction hstep;
    MeshFunction xorigin;

    /// Rectangular uniform mesh: t = tau*m + t0, x = h*n + x0.
    static MeshFunctions uniform(double h, double x0, double tau, double t0);

    /// Self-similar product mesh x = (h*n + x0) * t with t = tau*m + t0.
    /// Written as hstep(m) = h*t, xorigin(m) = x0*t, both affine in m.
    static MeshFunctions fundamental(double h, double x0, double tau, double t0);

    /// Uniformly translating mesh x = h*n + x0 + 2*c*t, t = tau*m + t0.
    /// Every stencil on it has sigma/tau = 2c.
    static MeshFunctions galilean(double h, double x0, double tau, double t0,
                                  double c);
};

/// Inclusive index range.
struct IndexRange {
    int lo = 0;
    int hi = -1;
    int count() const { return hi - lo + 1; }
    bool contains(int i) const { return i >= lo && i <= hi; }
};

/// Two-layer stencils: six points for second-order equations, ten for KdV.
enum class StencilWidth { SixPoint, TenPoint };

/// Number of lattice points a stencil of the given width holds.
int stencil_point_count(StencilWidth w);

/// One (x, t, u) lattice point inside a stencil.
struct StencilPoint {
    double x = 0, t = 0, u = 0;
};

/// Value snapshot of a two-layer stencil plus the derived steps. Raw slots
/// are stored per level at offsets n-2..n+2 (array index = offset + 2); a
/// six-point stencil leaves the |offset| == 2 slots NaN.
///
/// Canonical point order (used by prolongations and coefficient vectors):
/// lower level left to right, then upper level left to right. Six-point:
/// (n-1, n, n+1) twice; ten-point: (n-2..n+2) twice.
struct StencilView {
    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

    StencilWidth width = StencilWidth::SixPoint;

    std::array<double, 5> x_lo{kUnset, kUnset, kUnset, kUnset, kUnset};
    std::array<double, 5> t_lo{kUnset, kUnset, kUnset, kUnset, kUnset};
    std::array<double, 5> u_lo{kUnset, kUnset, kUnset, kUnset, kUnset};
    std::array<double, 5> x_hi{kUnset, kUnset, kUnset, kUnset, kUnset};
    std::array<double, 5> t_hi{kUnset, kUnset, kUnset, kUnset, kUnset};
    std::array<double, 5> u_hi{kUnset, kUnset, kUnset, kUnset, kUnset};

    // Time at (m-1, n) when the lattice provides a third layer. Only the
    // uniform wave-demo scheme reads it (its lattice equation constrains
    // three consecutive time levels).
    bool has_prev_time = false;
    double t_prev = kUnset;

    // Derived steps, recomputed from the raw slots by finalize().
    double hp = kUnset, hm = kUnset, hpp = kUnset, hmm = kUnset;
    double hhp = kUnset, hhm = kUnset, hhpp = kUnset, hhmm = kUnset;
    double sigma = kUnset, sigma_p = kUnset;
    double tau = kUnset, Tp = kUnset, Tm = kUnset;

    // Named accessors for the raw slots.
    double x() const { return x_lo[2]; }
    double xp() const { return x_lo[3]; }
    double xm() const { return x_lo[1]; }
    double xpp() const { return x_lo[4]; }
    double xmm() const { return x_lo[0]; }
    double t() const { return t_lo[2]; }
    double tp() const { return t_lo[3]; }
    double tm() const { return t_lo[1]; }
    double u() const { return u_lo[2]; }
    double up() const { return u_lo[3]; }
    double um() const { return u_lo[1]; }
    double upp() const { return u_lo[4]; }
    double umm() const { return u_lo[0]; }

    double xh() const { return x_hi[2]; }
    double xhp() const { return x_hi[3]; }
    double xhm() const { return x_hi[1]; }
    double xhpp() const { return x_hi[4]; }
    double xhmm() const { return x_hi[0]; }
    double th() const { return t_hi[2]; }
    double uh() const { return u_hi[2]; }
    double uhp() const { return u_hi[3]; }
    double uhm() const { return u_hi[1]; }
    double uhpp() const { return u_hi[4]; }
    double uhmm() const { return u_hi[0]; }

    void set_uh(double v) { u_hi[2] = v; }

    /// Recomputes every step field from the raw slots:
    ///   hp = xp - x, hm = x - xm, hpp = xpp - xp, hmm = xm - xmm,
    ///   same with hats on the upper level, sigma = xh - x,
    ///   sigma_p = xhp - xp, tau = th - t, Tp = tp - t, Tm = t - tm.
    void finalize();

    /// Point in canonical order, i in [0, stencil_point_count(width)).
    StencilPoint point(int i) const;

    /// Copy with point i replaced and steps recomputed.
    StencilView with_point(int i, const StencilPoint& p) const;
};

/// Builds a six- or ten-point stencil from explicit step data on flat
/// layers. Centre of the lower level sits at (x, t); steps fan outwards.
/// Convenience for tests and samplers.
struct StencilSpec {
    StencilWidth width = StencilWidth::SixPoint;
    double x = 0, t = 0;
    double hp = 1, hm = 1, hpp = 1, hmm = 1;
    double hhp = 1, hhm = 1, hhpp = 1, hhmm = 1;
    double sigma = 0, tau = 1;
    // u slots in canonical point order (6 or 10 entries used).
    std::array<double, 10> u{};
};

StencilView make_stencil(const StencilSpec& spec);

/// Rectangular window of an evolving lattice. Arrays are indexed
/// [m - m_range.lo][n - n_range.lo]; u entries may be NaN (unset) where no
/// data was provided yet.
class MovingLattice {
  public:
    MovingLattice(Equation tag, IndexRange m_range, IndexRange n_range);

    Equation tag() const { return tag_; }
    IndexRange m_range() const { return m_range_; }
    IndexRange n_range() const { return n_range_; }

    double x(int m, int n) const { return x_(mi(m), ni(n)); }
    double t(int m, int n) const { return t_(mi(m), ni(n)); }
    double u(int m, int n) const { return u_(mi(m), ni(n)); }
    void set_x(int m, int n, double v) { x_(mi(m), ni(n)) = v; }
    void set_t(int m, int n, double v) { t_(mi(m), ni(n)) = v; }
    void set_u(int m, int n, double v) { u_(mi(m), ni(n)) = v; }
    bool has_u(int m, int n) const { return !std::isnan(u(m, n)); }

    const Eigen::ArrayXXd& x_array() const { return x_; }
    const Eigen::ArrayXXd& t_array() const { return t_; }
    const Eigen::ArrayXXd& u_array() const { return u_; }
    Eigen::ArrayXXd& u_array() { return u_; }

    /// Largest |u| over all set entries; 0 when nothing is set.
    double max_abs_u() const;

  private:
    int mi(int m) const;
    int ni(int n) const;

    Equation tag_;
    IndexRange m_range_, n_range_;
    Eigen::ArrayXXd x_, t_, u_;
};

/// Evaluates the mesh maps over the window and fills u where an initial
/// sampler is given (u_init evaluated at (x, t) of every point). Throws
/// MeshError if any time step gamma(m+1) - gamma(m) or any space step
/// hstep(m) fails to be strictly positive.
MovingLattice build_lattice(
    Equation tag, const MeshFunctions& mesh, IndexRange m_range,
    IndexRange n_range,
    const std::function<double(double x, double t)>& u_init = nullptr);

/// True iff every time layer is exactly flat: t_{m,n} == t_{m,n'} bitwise.
bool flat_time_layers(const MovingLattice& lat);

/// Throws MeshError unless x is strictly increasing in n on every layer and
/// t is strictly increasing in m along every column.
void check_mesh_monotone(const MovingLattice& lat);

/// Extracts the stencil footed at (m, n): lower level m, upper level m+1.
/// Throws BoundaryError when a required neighbour falls outside the window.
/// Fills t_prev when level m-1 is available.
StencilView stencil_at(const MovingLattice& lat, int m, int n, StencilWidth w);

/// CSV exchange format: header "m,n,t,x,u", one row per point, m-major
/// then n, floats with 17 significant digits. Unset u is written as nan.
void write_csv(const MovingLattice& lat, std::ostream& out);
void write_csv_file(const MovingLattice& lat, const std::string& path);

/// Inverse of write_csv. The point set must form a full rectangular index
/// window; anything else throws MeshError.
MovingLattice read_csv(std::istream& in, Equation tag);
MovingLattice read_csv_file(const std::string& path, Equation tag);

/// Shortest formatting that survives a double round trip (17 significant
/// digits).
std::string format_double(double v);

}  // namespace invpdelta
