#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace invpdelta {

inline constexpr const char* kVersion = "0.1.0";

/// Equation families handled by the library. WaveDemo is the linear wave
/// warm-up model u_xt = 0; it has schemes and exact solutions but no solver
/// support.
enum class Equation {
    Heat,
    Burgers,
    PotentialBurgers,
    Kdv,
    WaveDemo,
};

std::string to_string(Equation tag);

/// Parses the CLI spelling (heat, burgers, potential_burgers, kdv,
/// wave_demo). Throws ConfigError on anything else.
Equation equation_from_string(const std::string& name);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lattice construction or consistency violation (non-monotone mesh,
/// collapsed steps, ragged time layers).
struct MeshError : Error { using Error::Error; };

/// Stencil extraction outside the stored index window.
struct BoundaryError : Error { using Error::Error; };

/// Input outside the mathematical domain of an operation (zero step,
/// zero u where a ratio is taken, singular group denominator).
struct DomainError : Error { using Error::Error; };

/// Internal cross-check failed (two independent estimates disagree,
/// rank sampling degenerate).
struct NumericError : Error { using Error::Error; };

/// Newton breakdown: singular Jacobian, damping exhausted, iteration cap.
struct SolverError : Error { using Error::Error; };

/// Malformed config file, unknown key, missing required entry.
struct ConfigError : Error { using Error::Error; };

/// Deterministic uniform generator. The mt19937_64 engine is fully
/// specified by the standard; only the distribution adapters are not, so
/// doubles are produced by fixed bit manipulation instead of
/// uniform_real_distribution. Streams are reproducible across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 significant bits.
    double next01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * next01(); }

    /// Uniform integer in [0, n). n must be positive.
    int below(int n) { return static_cast<int>(next01() * n); }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace invpdelta
