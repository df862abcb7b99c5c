#include "axelrod_lab/theory.hpp"

#include <string>

#include "axelrod_lab/errors.hpp"

namespace axelrod::theory {

namespace {

void require_opinions(int q, const char* what) {
  if (q < 2) {
    throw DomainError(std::string(what) + ": opinion counts must be at least 2, got " +
                      std::to_string(q));
  }
}

Rational inverse(int q) { return Rational(1, q); }

}  // namespace

Probabilities probabilities(int q1, int q2) {
  require_opinions(q1, "probabilities");
  require_opinions(q2, "probabilities");
  const Rational a = inverse(q1);
  const Rational b = inverse(q2);
  Probabilities p;
  p.p0 = a * b;
  p.p11 = b * (1 - a);
  p.p12 = a * (1 - b);
  p.p1 = p.p11 + p.p12;
  p.p2 = (1 - a) * (1 - b);
  return p;
}

Rational geometric_tail(int q, std::uint64_t n) {
  require_opinions(q, "geometric_tail");
  if (n == 0) return Rational(1);
  Integer num = boost::multiprecision::pow(Integer(q - 2), static_cast<unsigned>(n));
  Integer den = boost::multiprecision::pow(Integer(q - 1), static_cast<unsigned>(n));
  return Rational(num, den);
}

Rational geometric_mean(int q) {
  require_opinions(q, "geometric_mean");
  return Rational(q - 1);
}

Rational annihilation_probability(int q) {
  require_opinions(q, "annihilation_probability");
  return Rational(1, q - 1);
}

Rational h1(int q1, int q2) {
  const Probabilities p = probabilities(q1, q2);
  return Rational(q1 + q2 - 4, 2) * p.p2 - p.p1;
}

Rational h2(int q1, int q2) {
  const Probabilities p = probabilities(q1, q2);
  const Rational corrections = (q1 + q2) * p.p11 * p.p12 +
                               Rational(q1, q1 - 1) * p.p11 * p.p11 +
                               Rational(q2, q2 - 1) * p.p12 * p.p12;
  return h1(q1, q2) + Rational(1, 4) * (1 + Rational(1, 8) * p.p0) * corrections;
}

bool symmetric_fixation_condition(int features, int q) {
  if (features < 1) throw DomainError("symmetric_fixation_condition: F must be positive");
  require_opinions(q, "symmetric_fixation_condition");
  // F/q < ((q - 1)/q)^{F-1}  <=>  F q^{F-1} < q (q - 1)^{F-1}
  const auto e = static_cast<unsigned>(features - 1);
  const Integer lhs = Integer(features) * boost::multiprecision::pow(Integer(q), e);
  const Integer rhs = Integer(q) * boost::multiprecision::pow(Integer(q - 1), e);
  return lhs < rhs;
}

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::fluctuates: return "fluctuates";
    case Regime::fixates_weak: return "fixates_weak";
    case Regime::fixates_strong: return "fixates_strong";
    case Regime::open: return "open";
  }
  return "?";
}

Regime predict_regime(int q1, int q2) {
  require_opinions(q1, "predict_regime");
  require_opinions(q2, "predict_regime");
  const int sum = q1 + q2;
  if (sum == 4) return Regime::fluctuates;
  if (sum == 5) return Regime::open;
  if (sum == 6) return Regime::fixates_strong;
  return Regime::fixates_weak;
}

const char* regime_provenance(Regime regime) noexcept {
  switch (regime) {
    case Regime::fluctuates:
      return "prior result: two features, two opinions each fluctuates and clusters";
    case Regime::fixates_weak:
      return "h1 > 0 for q1 + q2 >= 7";
    case Regime::fixates_strong:
      return "h2 > 0 for q1 + q2 = 6";
    case Regime::open:
      return "q1 + q2 = 5 is not covered by the known results";
  }
  return "";
}

TheoryReport report(int q1, int q2) {
  TheoryReport r;
  r.q1 = q1;
  r.q2 = q2;
  r.probs = probabilities(q1, q2);
  r.ey1 = geometric_mean(q1);
  r.ey2 = geometric_mean(q2);
  r.h1 = h1(q1, q2);
  r.h2 = h2(q1, q2);
  if (q1 == q2) r.fixation_condition_holds = symmetric_fixation_condition(2, q1);
  r.predicted_regime = predict_regime(q1, q2);
  return r;
}

std::string to_fraction(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& value, int digits) {
  // Round half away from zero at `digits` places, in exact arithmetic.
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  const bool negative = num < 0;
  const Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits));
  Integer scaled = (abs(num) * scale * 2 + den) / (den * 2);
  std::string body = scaled.str();
  if (body.size() <= static_cast<std::size_t>(digits)) {
    body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  }
  body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  const bool zero = scaled == 0;
  return (negative && !zero ? "-" : "") + body;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace axelrod::theory
