#include "invpdelta/invariants.hpp"

#include <cmath>

namespace invpdelta {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0)) throw DomainError(std::string(what) + " must be positive");
}

void require_nonzero(double v, const char* what) {
    if (v == 0 || std::isnan(v))
        throw DomainError(std::string(what) + " must be nonzero");
}

void check_six_point_steps(const StencilView& s) {
    require_positive(s.tau, "tau");
    require_positive(s.hp, "h+");
    require_positive(s.hm, "h-");
    require_positive(s.hhp, "h^+");
    require_positive(s.hhm, "h^-");
}

void check_ten_point_steps(const StencilView& s) {
    if (s.width != StencilWidth::TenPoint)
        throw DomainError("ten-point stencil required");
    check_six_point_steps(s);
    require_positive(s.hpp, "h++");
    require_positive(s.hmm, "h--");
    require_positive(s.hhpp, "h^++");
    require_positive(s.hhmm, "h^--");
}

InvariantSet pack(Equation tag, std::initializer_list<double> vals) {
    InvariantSet set;
    set.tag = tag;
    set.values.resize(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double v : vals) set.values[i++] = v;
    for (int k = 1; k <= static_cast<int>(vals.size()); ++k)
        set.names.push_back("I" + std::to_string(k));
    return set;
}

}  // namespace

namespace heat_inv {

double I1(const StencilView& s) { return s.hp / s.hm; }
double I2(const StencilView& s) { return s.hhp / s.hhm; }
double I3(const StencilView& s) { return s.hp * s.hhp / s.tau; }

double I4(const StencilView& s) {
    return std::sqrt(s.tau) / s.hp * (s.uh() / s.u()) *
           std::exp(s.sigma * s.sigma / (4 * s.tau));
}

double I5(const StencilView& s) {
    return s.up() / s.u() *
           std::exp(s.hp / (4 * s.tau) * (2 * s.sigma - s.hp));
}

double I6(const StencilView& s) {
    return s.um() / s.u() *
           std::exp(-s.hm / (4 * s.tau) * (2 * s.sigma + s.hm));
}

double I7(const StencilView& s) {
    return s.uhp() / s.uh() *
           std::exp(s.hhp / (4 * s.tau) * (2 * s.sigma + s.hhp));
}

double I8(const StencilView& s) {
    return s.uhm() / s.uh() *
           std::exp(-s.hhm / (4 * s.tau) * (2 * s.sigma - s.hhm));
}

}  // namespace heat_inv

InvariantSet heat_invariants(const StencilView& s) {
    check_six_point_steps(s);
    require_nonzero(s.u(), "u");
    require_nonzero(s.uh(), "u-hat");
    using namespace heat_inv;
    return pack(Equation::Heat,
                {I1(s), I2(s), I3(s), I4(s), I5(s), I6(s), I7(s), I8(s)});
}

namespace burgers_inv {

namespace {
double vxp(const StencilView& s) { return (s.up() - s.u()) / s.hp; }
double vxm(const StencilView& s) { return (s.u() - s.um()) / s.hm; }
double vhxp(const StencilView& s) { return (s.uhp() - s.uh()) / s.hhp; }
double vhxm(const StencilView& s) { return (s.uh() - s.uhm()) / s.hhm; }
}  // namespace

double I1(const StencilView& s) { return s.hp / s.hm; }
double I2(const StencilView& s) { return s.hhp / s.hhm; }
double I3(const StencilView& s) { return s.hp * s.hhp / s.tau; }
double I4(const StencilView& s) { return s.hp * s.hm * (vxp(s) - vxm(s)); }
double I5(const StencilView& s) { return s.hhp * s.hhm * (vhxp(s) - vhxm(s)); }
double I6(const StencilView& s) { return s.hp * (s.sigma / s.tau - s.u()); }
double I7(const StencilView& s) { return s.hhp * (s.sigma / s.tau - s.uh()); }
double I8(const StencilView& s) {
    return s.hp * s.hp * (vxp(s) + 1 / s.tau);
}
double I9(const StencilView& s) {
    return s.hhp * s.hhp * (vhxp(s) - 1 / s.tau);
}

}  // namespace burgers_inv

InvariantSet burgers_invariants(const StencilView& s) {
    check_six_point_steps(s);
    using namespace burgers_inv;
    return pack(Equation::Burgers, {I1(s), I2(s), I3(s), I4(s), I5(s), I6(s),
                                    I7(s), I8(s), I9(s)});
}

namespace potential_inv {

double I1(const StencilView& s) { return s.hp / s.hm; }
double I2(const StencilView& s) { return s.hhp / s.hhm; }
double I3(const StencilView& s) { return s.hp * s.hhp / s.tau; }

double I4(const StencilView& s) {
    return std::sqrt(s.tau) / s.hp *
           std::exp(-(s.uh() - s.u()) / 2 +
                    s.sigma * s.sigma / (4 * s.tau));
}

double I5(const StencilView& s) {
    return std::exp(-(s.up() - s.u()) / 2 +
                    s.hp / (4 * s.tau) * (2 * s.sigma - s.hp));
}

double I6(const StencilView& s) {
    return std::exp((s.u() - s.um()) / 2 -
                    s.hm / (4 * s.tau) * (2 * s.sigma + s.hm));
}

double I7(const StencilView& s) {
    return std::exp(-(s.uhp() - s.uh()) / 2 +
                    s.hhp / (4 * s.tau) * (2 * s.sigma + s.hhp));
}

double I8(const StencilView& s) {
    return std::exp((s.uh() - s.uhm()) / 2 -
                    s.hhm / (4 * s.tau) * (2 * s.sigma - s.hhm));
}

}  // namespace potential_inv

InvariantSet potential_invariants(const StencilView& s) {
    check_six_point_steps(s);
    using namespace potential_inv;
    return pack(Equation::PotentialBurgers,
                {I1(s), I2(s), I3(s), I4(s), I5(s), I6(s), I7(s), I8(s)});
}

namespace kdv_inv {

double I(int k, const StencilView& s) {
    switch (k) {
        case 1: return s.hp / s.hm;
        case 2: return s.hpp / s.hp;
        case 3: return s.hm / s.hmm;
        case 4: return s.hhp / s.hhm;
        case 5: return s.hhpp / s.hhp;
        case 6: return s.hhm / s.hhmm;
        case 7: return s.hp / s.hhp;
        case 8: return s.hp * s.hp * s.hp / s.tau;
        case 9: return (s.sigma + s.tau * s.u()) / s.hp;
        case 10: return s.tau * (s.um() - s.umm()) / s.hmm;
        case 11: return s.tau * (s.u() - s.um()) / s.hm;
        case 12: return s.tau * (s.up() - s.u()) / s.hp;
        case 13: return s.tau * (s.upp() - s.up()) / s.hpp;
        case 14: return s.hp * s.hp * (s.uh() - s.u());
        case 15: return s.tau * (s.uhm() - s.uhmm()) / s.hhmm;
        case 16: return s.tau * (s.uh() - s.uhm()) / s.hhm;
        case 17: return s.tau * (s.uhp() - s.uh()) / s.hhp;
        case 18: return s.tau * (s.uhpp() - s.uhp()) / s.hhpp;
    }
    throw DomainError("KdV invariant index must be 1..18");
}

}  // namespace kdv_inv

InvariantSet kdv_invariants(const StencilView& s) {
    check_ten_point_steps(s);
    InvariantSet set;
    set.tag = Equation::Kdv;
    set.values.resize(18);
    for (int k = 1; k <= 18; ++k) {
        set.values[k - 1] = kdv_inv::I(k, s);
        set.names.push_back("I" + std::to_string(k));
    }
    return set;
}

InvariantSet invariants_of(Equation tag, const StencilView& s) {
    switch (tag) {
        case Equation::Heat: return heat_invariants(s);
        case Equation::Burgers: return burgers_invariants(s);
        case Equation::PotentialBurgers: return potential_invariants(s);
        case Equation::Kdv: return kdv_invariants(s);
        case Equation::WaveDemo:
            throw DomainError(
                "the wave demo has no curated invariant set; its schemes are "
                "assembled directly");
    }
    throw DomainError("bad equation tag");
}

}  // namespace invpdelta
