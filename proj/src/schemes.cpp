#include "invpdelta/schemes.hpp"

#include <cmath>
#include <limits>

#include "invpdelta/invariants.hpp"

namespace invpdelta {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::InvariantExplicit: return "invariant_explicit";
        case Variant::InvariantImplicit: return "invariant_implicit";
        case Variant::AdaptedExplicit: return "adapted_explicit";
        case Variant::AdaptedImplicit: return "adapted_implicit";
        case Variant::StandardExplicit: return "standard_explicit";
        case Variant::StandardImplicit: return "standard_implicit";
        case Variant::WaveDemo: return "wave_demo";
        case Variant::WaveDemoUniform: return "wave_demo_uniform";
    }
    throw ConfigError("bad variant value");
}

Variant variant_from_string(const std::string& text) {
    for (Variant v :
         {Variant::InvariantExplicit, Variant::InvariantImplicit,
          Variant::AdaptedExplicit, Variant::AdaptedImplicit,
          Variant::StandardExplicit, Variant::StandardImplicit,
          Variant::WaveDemo, Variant::WaveDemoUniform}) {
        if (to_string(v) == text) return v;
    }
    throw ConfigError("unknown variant '" + text + "'");
}

namespace {

using Component = std::function<double(const StencilView&)>;

double flat_lower_layer(const StencilView& s) { return s.Tp; }

Component heat_evolution(bool implicit) {
    if (!implicit) {
        return [](const StencilView& s) {
            using namespace heat_inv;
            double i3 = I3(s);
            double raw = std::pow(i3, 1.5) * I4(s) - i3 -
                         (I5(s) + I6(s)) * std::exp(i3 / 4) + 2;
            return raw * s.u() / (s.hp * s.hhp);
        };
    }
    return [](const StencilView& s) {
        using namespace heat_inv;
        double i3 = I3(s);
        double raw = i3 - std::sqrt(i3) / I4(s) -
                     (I7(s) + I8(s)) * std::exp(-i3 / 4) + 2;
        return raw * s.uh() / (s.hp * s.hhp);
    };
}

Component potential_evolution(bool implicit) {
    if (!implicit) {
        return [](const StencilView& s) {
            using namespace potential_inv;
            double i3 = I3(s);
            double raw = std::pow(i3, 1.5) * I4(s) - i3 -
                         (I5(s) + I6(s)) * std::exp(i3 / 4) + 2;
            return raw * std::exp(-s.u() / 2) / (s.hp * s.hhp);
        };
    }
    return [](const StencilView& s) {
        using namespace potential_inv;
        double i3 = I3(s);
        double raw = i3 - std::sqrt(i3) / I4(s) -
                     (I7(s) + I8(s)) * std::exp(-i3 / 4) + 2;
        return raw * std::exp(-s.uh() / 2) / (s.hp * s.hhp);
    };
}

double kdv_E(int k, const StencilView& s) { return kdv_inv::I(k, s); }

SchemeDef assemble(Equation tag, Variant v, StencilWidth width,
                   Component e1, Component e3) {
    SchemeDef def;
    def.tag = tag;
    def.variant = v;
    def.name = to_string(tag) + "." + to_string(v);
    def.width = width;
    def.component_names = {"E1", "E2", "E3"};
    def.components = {std::move(e1), flat_lower_layer, std::move(e3)};
    return def;
}

SchemeDef make_heat(Variant v) {
    using namespace heat_inv;
    switch (v) {
        case Variant::InvariantExplicit:
            return assemble(Equation::Heat, v, StencilWidth::SixPoint,
                            heat_evolution(false),
                            [](const StencilView& s) { return I1(s) - 1; });
        case Variant::InvariantImplicit:
            return assemble(Equation::Heat, v, StencilWidth::SixPoint,
                            heat_evolution(true),
                            [](const StencilView& s) { return I2(s) - 1; });
        case Variant::StandardExplicit:
            return assemble(
                Equation::Heat, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    return (s.uh() - s.u()) / s.tau -
                           (s.up() - 2 * s.u() + s.um()) / (s.hp * s.hp);
                },
                [](const StencilView& s) { return s.sigma; });
        case Variant::StandardImplicit:
            return assemble(
                Equation::Heat, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    return (s.uh() - s.u()) / s.tau -
                           (s.uhp() - 2 * s.uh() + s.uhm()) / (s.hhp * s.hhp);
                },
                [](const StencilView& s) { return s.sigma; });
        default:
            break;
    }
    throw ConfigError("the heat equation has no '" + to_string(v) +
                      "' scheme");
}

SchemeDef make_burgers(Variant v) {
    using namespace burgers_inv;
    switch (v) {
        case Variant::InvariantExplicit:
            return assemble(
                Equation::Burgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    double num = (2 * I6(s) - I7(s)) * I3(s) -
                                 I8(s) * I6(s) - I4(s);
                    return num / (s.hp * s.hp * s.hp);
                },
                [](const StencilView& s) { return I1(s) - 1; });
        case Variant::InvariantImplicit:
            return assemble(
                Equation::Burgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    double num = (I6(s) - 2 * I7(s)) * I3(s) -
                                 I9(s) * I7(s) - I5(s);
                    return num / (s.hhp * s.hhp * s.hhp);
                },
                [](const StencilView& s) { return I2(s) - 1; });
        case Variant::AdaptedExplicit:
            return assemble(
                Equation::Burgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    return (-I7(s) * I3(s) - I4(s)) /
                           (s.hp * s.hhp * s.hhp);
                },
                [](const StencilView& s) { return I6(s); });
        case Variant::AdaptedImplicit:
            return assemble(
                Equation::Burgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    return (I6(s) * I3(s) - I5(s)) / (s.hp * s.hp * s.hhp);
                },
                [](const StencilView& s) { return I7(s); });
        case Variant::StandardExplicit:
            return assemble(
                Equation::Burgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    double vxp = (s.up() - s.u()) / s.hp;
                    double vxm = (s.u() - s.um()) / s.hm;
                    return (s.uh() - s.u()) / s.tau + s.u() * vxp -
                           (vxp - vxm) / s.hp;
                },
                [](const StencilView& s) { return s.sigma; });
        case Variant::StandardImplicit:
            return assemble(
                Equation::Burgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    double vxp = (s.uhp() - s.uh()) / s.hhp;
                    double vxm = (s.uh() - s.uhm()) / s.hhm;
                    return (s.uh() - s.u()) / s.tau + s.uh() * vxp -
                           (vxp - vxm) / s.hhp;
                },
                [](const StencilView& s) { return s.sigma; });
        default:
            break;
    }
    throw ConfigError("the Burgers equation has no '" + to_string(v) +
                      "' scheme");
}

SchemeDef make_potential(Variant v) {
    using namespace potential_inv;
    switch (v) {
        case Variant::InvariantExplicit:
            return assemble(Equation::PotentialBurgers, v,
                            StencilWidth::SixPoint, potential_evolution(false),
                            [](const StencilView& s) { return I1(s) - 1; });
        case Variant::InvariantImplicit:
            return assemble(Equation::PotentialBurgers, v,
                            StencilWidth::SixPoint, potential_evolution(true),
                            [](const StencilView& s) { return I2(s) - 1; });
        case Variant::StandardExplicit:
            return assemble(
                Equation::PotentialBurgers, v, StencilWidth::SixPoint,
                [](const StencilView& s) {
                    double wxp = (s.up() - s.u()) / s.hp;
                    return (s.uh() - s.u()) / s.tau + wxp * wxp / 2 -
                           (s.up() - 2 * s.u() + s.um()) / (s.hp * s.hp);
                },
                [](const StencilView& s) { return s.sigma; });
        default:
            break;
    }
    throw ConfigError("the potential Burgers equation has no '" +
                      to_string(v) + "' scheme");
}

SchemeDef make_kdv(Variant v) {
    auto I = kdv_E;
    switch (v) {
        case Variant::InvariantExplicit:
            return assemble(
                Equation::Kdv, v, StencilWidth::TenPoint,
                [I](const StencilView& s) {
                    double num = I(14, s) -
                                 I(9, s) * I(8, s) * (I(12, s) + I(11, s)) / 2 -
                                 (I(13, s) - I(12, s) - I(11, s) + I(10, s)) / 2;
                    return num / (s.hp * s.hp * s.tau);
                },
                [I](const StencilView& s) { return I(1, s) - 1; });
        case Variant::InvariantImplicit:
            return assemble(
                Equation::Kdv, v, StencilWidth::TenPoint,
                [I](const StencilView& s) {
                    double i7 = I(7, s);
                    double num =
                        I(14, s) -
                        (I(9, s) * I(8, s) + I(14, s)) *
                            (I(17, s) + I(16, s)) / 2 -
                        (I(18, s) - I(17, s) - I(16, s) + I(15, s)) / 2 * i7 *
                            i7;
                    return num / (s.hp * s.hp * s.tau);
                },
                [I](const StencilView& s) { return I(4, s) - 1; });
        case Variant::AdaptedExplicit:
            return assemble(
                Equation::Kdv, v, StencilWidth::TenPoint,
                [I](const StencilView& s) {
                    double num = I(14, s) -
                                 (I(13, s) - I(12, s) - I(11, s) + I(10, s)) / 2;
                    return num / (s.hp * s.hp * s.tau);
                },
                [I](const StencilView& s) { return I(9, s); });
        case Variant::AdaptedImplicit:
            return assemble(
                Equation::Kdv, v, StencilWidth::TenPoint,
                [I](const StencilView& s) {
                    double i7 = I(7, s);
                    double num =
                        I(14, s) -
                        (I(18, s) - I(17, s) - I(16, s) + I(15, s)) / 2 * i7 *
                            i7;
                    return num / (s.hp * s.hp * s.tau);
                },
                [I](const StencilView& s) {
                    return I(9, s) + I(14, s) / I(8, s);
                });
        case Variant::StandardExplicit:
            return assemble(
                Equation::Kdv, v, StencilWidth::TenPoint,
                [](const StencilView& s) {
                    double h = s.hp;
                    return (s.uh() - s.u()) / s.tau -
                           s.u() * (s.up() - s.um()) / (2 * h) -
                           (s.upp() - 2 * s.up() + 2 * s.um() - s.umm()) /
                               (2 * h * h * h);
                },
                [](const StencilView& s) { return s.sigma; });
        case Variant::StandardImplicit:
            return assemble(
                Equation::Kdv, v, StencilWidth::TenPoint,
                [](const StencilView& s) {
                    double h = s.hhp;
                    return (s.uh() - s.u()) / s.tau -
                           s.uh() * (s.uhp() - s.uhm()) / (2 * h) -
                           (s.uhpp() - 2 * s.uhp() + 2 * s.uhm() - s.uhmm()) /
                               (2 * h * h * h);
                },
                [](const StencilView& s) { return s.sigma; });
        default:
            break;
    }
    throw ConfigError("the KdV equation has no '" + to_string(v) + "' scheme");
}

SchemeDef make_wave(Variant v) {
    if (v != Variant::WaveDemo && v != Variant::WaveDemoUniform)
        throw ConfigError("the wave demo has no '" + to_string(v) +
                          "' scheme");
    SchemeDef def = assemble(
        Equation::WaveDemo, v, StencilWidth::SixPoint,
        [](const StencilView& s) {
            return ((s.uhp() - s.uh()) / s.hhp - (s.up() - s.u()) / s.hp) /
                   s.tau;
        },
        [](const StencilView& s) { return s.sigma; });
    if (v == Variant::WaveDemoUniform) {
        def.needs_prev_time = true;
        def.component_names.push_back("E4");
        def.components.push_back([](const StencilView& s) {
            if (!s.has_prev_time)
                throw DomainError(
                    "uniform wave residual needs the time level below the "
                    "stencil");
            return s.th() - 2 * s.t() + s.t_prev;
        });
        def.component_names.push_back("E5");
        def.components.push_back(
            [](const StencilView& s) { return s.xp() - 2 * s.x() + s.xm(); });
    }
    return def;
}

}  // namespace

bool scheme_supported(Equation tag, Variant v) {
    try {
        make_scheme(tag, v);
        return true;
    } catch (const ConfigError&) {
        return false;
    }
}

std::vector<Variant> supported_variants(Equation tag) {
    std::vector<Variant> out;
    for (Variant v :
         {Variant::InvariantExplicit, Variant::InvariantImplicit,
          Variant::AdaptedExplicit, Variant::AdaptedImplicit,
          Variant::StandardExplicit, Variant::StandardImplicit,
          Variant::WaveDemo, Variant::WaveDemoUniform}) {
        if (scheme_supported(tag, v)) out.push_back(v);
    }
    return out;
}

SchemeDef make_scheme(Equation tag, Variant v) {
    switch (tag) {
        case Equation::Heat: return make_heat(v);
        case Equation::Burgers: return make_burgers(v);
        case Equation::PotentialBurgers: return make_potential(v);
        case Equation::Kdv: return make_kdv(v);
        case Equation::WaveDemo: return make_wave(v);
    }
    throw ConfigError("bad equation tag");
}

Eigen::VectorXd residual(const SchemeDef& def, const StencilView& s) {
    Eigen::VectorXd r(def.n_residuals());
    for (int i = 0; i < def.n_residuals(); ++i) r[i] = def.components[i](s);
    return r;
}

double residual_scale(Equation tag, const MovingLattice& lat, int m,
                      double tau) {
    if (!(tau > 0)) throw DomainError("tau must be positive");
    double umax = 0;
    for (int n = lat.n_range().lo; n <= lat.n_range().hi; ++n) {
        double value = lat.u(m, n);
        if (std::isnan(value)) continue;
        if (tag == Equation::PotentialBurgers) value = std::exp(-value / 2);
        umax = std::max(umax, std::abs(value));
    }
    return std::max(1.0, umax / tau);
}

Eigen::VectorXd scheme_residual_max(const SchemeDef& def,
                                    const MovingLattice& lat) {
    const int reach = def.width == StencilWidth::TenPoint ? 2 : 1;
    Eigen::VectorXd worst = Eigen::VectorXd::Zero(def.n_residuals());
    int m_lo = lat.m_range().lo;
    if (def.needs_prev_time) ++m_lo;
    bool any = false;
    for (int m = m_lo; m < lat.m_range().hi; ++m) {
        for (int n = lat.n_range().lo + reach; n <= lat.n_range().hi - reach;
             ++n) {
            StencilView s = stencil_at(lat, m, n, def.width);
            any = true;
            for (int i = 0; i < def.n_residuals(); ++i)
                worst[i] = std::max(worst[i],
                                    std::abs(def.components[i](s)));
        }
    }
    if (!any)
        throw MeshError("lattice too small to place a single stencil");
    return worst;
}

double solve_explicit_update(const SchemeDef& def, StencilView s) {
    if (def.variant != Variant::InvariantExplicit &&
        def.variant != Variant::AdaptedExplicit &&
        def.variant != Variant::StandardExplicit)
        throw ConfigError("explicit update solve needs an explicit "
                          "single-unknown scheme, got '" +
                          def.name + "'");
    // The invariant potential residual is affine in z = exp(-w-hat/2); the
    // standard one is affine in w-hat itself. Pick the variable in which a
    // single secant step is exact.
    const bool potential = def.tag == Equation::PotentialBurgers &&
                           def.variant != Variant::StandardExplicit;
    const Component& e1 = def.components[0];
    double a0 = potential ? 1.0 : s.u();
    double a1 = potential ? 2.0 : s.u() + 1 + std::abs(s.u());
    auto eval = [&](double a) {
        s.set_uh(potential ? -2 * std::log(a) : a);
        return e1(s);
    };
    double f0 = eval(a0);
    double f1 = eval(a1);
    if (!std::isfinite(f0) || !std::isfinite(f1) || f0 == f1)
        throw SolverError("degenerate explicit update on scheme '" +
                          def.name + "'");
    double root = a0 - f0 * (a1 - a0) / (f1 - f0);
    if (!std::isfinite(root))
        throw SolverError("explicit update diverged on scheme '" + def.name +
                          "'");
    if (potential) {
        if (root <= 0)
            throw DomainError("potential update left the positive domain of "
                              "exp(-w/2)");
        return -2 * std::log(root);
    }
    return root;
}

}  // namespace invpdelta
