#pragma once

// Built-in example systems, also shipped as files under corpus/. The selftest
// subcommand and the test suites run against these.

namespace daestruct::corpus {

inline constexpr const char* kPendulum = R"(# Pendulum of length L under gravity g; lam is the force in the bar.
params: g L
unknowns: x1 x2 lam
equations:
  D(x1,2) - lam*x1
  D(x2,2) - lam*x2 + g
  x1^2 + x2^2 - L^2
)";

inline constexpr const char* kPendulumWitness =
    R"({"x1": "3", "x2": "4", "x1'": "4", "x2'": "-3", "g": "10", "L": "5"})";

inline constexpr const char* kHessenberg3 = R"(unknowns: x1 x2 x3
equations:
  x1' - x3
  x2' - x1
  x2 - 1
)";

inline constexpr const char* kHessenberg3Witness = R"({"x1": "0", "x2": "1", "x3": "0"})";

inline constexpr const char* kHessenberg4 = R"(unknowns: x1 x2 x3 x4
equations:
  x1' - x4
  x2' - x1
  x3' - x2
  x3 - 1
)";

inline constexpr const char* kHessenberg5 = R"(unknowns: x1 x2 x3 x4 x5
equations:
  x1' - x5
  x2' - x1
  x3' - x2
  x4' - x3
  x4 - 1
)";

inline constexpr const char* kExplicitOde = R"(unknowns: x1
equations:
  x1' - x1
)";

inline constexpr const char* kExplicitOdeWitness = R"({"x1": "1"})";

// Repeated equation: quasi-regularity fails, the mu sequence never stabilizes.
inline constexpr const char* kNonQuasiRegular = R"(unknowns: x1 x2
equations:
  x1'
  x1'
)";

} // namespace daestruct::corpus
