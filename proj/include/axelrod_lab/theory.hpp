#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace axelrod::theory {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Initial-edge probabilities for two features with q1, q2 opinions.
struct Probabilities {
  Rational p0;   ///< edge empty
  Rational p1;   ///< exactly one particle
  Rational p2;   ///< blockade
  Rational p11;  ///< only level 1 occupied
  Rational p12;  ///< only level 2 occupied
};

/// Throws DomainError when q1 or q2 is below 2.
Probabilities probabilities(int q1, int q2);

/// P(Y > n) = ((q - 2) / (q - 1))^n for the number Y of collisions a
/// particle at a level with q opinions undergoes before it annihilates.
Rational geometric_tail(int q, std::uint64_t n);

/// E[Y] = q - 1.
Rational geometric_mean(int q);

/// Annihilation probability of a collision, (q - 1)^{-1}.
Rational annihilation_probability(int q);

/// Mean weight per edge for the worst-case bookkeeping: positive implies
/// fixation. h1 = (1/2)(q1 + q2 - 4) p2 - p1.
Rational h1(int q1, int q2);

/// h1 plus the corrections for blockade formations and collisions between
/// active particles.
Rational h2(int q1, int q2);

/// Strict inequality F/q < (1 - 1/q)^{F - 1} for F features with q opinions each.
bool symmetric_fixation_condition(int features, int q);

enum class Regime { fluctuates, fixates_weak, fixates_strong, open };

const char* to_string(Regime regime) noexcept;

/// Long-term behaviour on the integers for F = 2 with the product measure.
Regime predict_regime(int q1, int q2);

/// Where each predict_regime branch comes from.
const char* regime_provenance(Regime regime) noexcept;

struct TheoryReport {
  int q1 = 0;
  int q2 = 0;
  Probabilities probs;
  Rational ey1;
  Rational ey2;
  Rational h1;
  Rational h2;
  /// Only defined for q1 == q2.
  std::optional<bool> fixation_condition_holds;
  Regime predicted_regime = Regime::open;
};

TheoryReport report(int q1, int q2);

/// "a/b" (or "a" for integers).
std::string to_fraction(const Rational& value);
/// Fixed-precision decimal rendering used for all file output.
std::string to_decimal(const Rational& value, int digits = 12);
double to_double(const Rational& value);

}  // namespace axelrod::theory
