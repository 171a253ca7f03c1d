#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "invpdelta/core.hpp"
#include "invpdelta/lattice.hpp"

namespace invpdelta {

/// Named values of a complete set of difference invariants on a flat-layer
/// stencil: 8 for heat and potential Burgers, 9 for Burgers, 18 for KdV.
struct InvariantSet {
    Equation tag;
    Eigen::VectorXd values;           // I1..In in order
    std::vector<std::string> names;   // "I1".."In"

    double operator[](int k) const {  // 1-based, matches the names
        return values[k - 1];
    }
};

/// Full invariant sets. Preconditions: tau > 0; every step entering a
/// formula positive; heat additionally needs nonzero u and u-hat at the
/// stencil base (value ratios), potential Burgers needs finite w slots.
/// Violations throw DomainError. Layer flatness is not checked: the values
/// are meaningful on flat layers, and evaluation stays total slightly off
/// them so that derivative probes can cross the manifold.
InvariantSet heat_invariants(const StencilView& s);
InvariantSet burgers_invariants(const StencilView& s);
InvariantSet potential_invariants(const StencilView& s);
InvariantSet kdv_invariants(const StencilView& s);

InvariantSet invariants_of(Equation tag, const StencilView& s);

/// Individual evaluators, used by the schemes module to assemble residuals
/// without touching invariants whose slots may be unknown mid-solve.
/// Unchecked: a zero step yields inf rather than an exception.
namespace heat_inv {
double I1(const StencilView& s);
double I2(const StencilView& s);
double I3(const StencilView& s);
double I4(const StencilView& s);
double I5(const StencilView& s);
double I6(const StencilView& s);
double I7(const StencilView& s);
double I8(const StencilView& s);
}  // namespace heat_inv

namespace burgers_inv {
double I1(const StencilView& s);
double I2(const StencilView& s);
double I3(const StencilView& s);
double I4(const StencilView& s);
double I5(const StencilView& s);
double I6(const StencilView& s);
double I7(const StencilView& s);
double I8(const StencilView& s);
double I9(const StencilView& s);
}  // namespace burgers_inv

namespace potential_inv {
double I1(const StencilView& s);
double I2(const StencilView& s);
double I3(const StencilView& s);
double I4(const StencilView& s);
double I5(const StencilView& s);
double I6(const StencilView& s);
double I7(const StencilView& s);
double I8(const StencilView& s);
}  // namespace potential_inv

namespace kdv_inv {
// I1..I7 are step ratios, I8 = hp^3/tau, I9 = (sigma + tau u)/hp,
// I10..I13 are tau-weighted lower-level difference quotients, I14 =
// hp^2 (uhat - u), I15..I18 the upper-level difference quotients.
double I(int k, const StencilView& s);
}  // namespace kdv_inv

}  // namespace invpdelta
