#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rotocool {

/// Exact fraction with a positive denominator, kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::string to_string(const Rational& r);

/// Rotational/Zeeman state |n, J, M> within an Omega manifold. Angular momenta
/// are stored doubled so half-integers stay exact.
struct RoState {
  int n = 0;
  int twoJ = 0;
  int twoM = 0;
  int twoOmega = 0;

  [[nodiscard]] bool is_valid() const;
  [[nodiscard]] double J() const { return twoJ / 2.0; }
  [[nodiscard]] double M() const { return twoM / 2.0; }
  [[nodiscard]] bool is_corner() const { return twoM == twoJ || twoM == -twoJ; }

  friend bool operator==(const RoState&, const RoState&) = default;
  // (n, J ascending, M ascending); Omega is a manifold label, compared last.
  friend auto operator<=>(const RoState& a, const RoState& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    if (auto c = a.twoJ <=> b.twoJ; c != 0) return c;
    if (auto c = a.twoM <=> b.twoM; c != 0) return c;
    return a.twoOmega <=> b.twoOmega;
  }
};

/// Throws std::invalid_argument if the quantum numbers are inconsistent.
RoState make_state(int twoJ, int twoM, int twoOmega, int n = 0);

/// Column label used in timeline CSV files, e.g. "J10M-2".
std::string state_label(const RoState& s);

/// Emission |J,M> -> |J-1,M-q>.
struct Transition {
  RoState upper;
  RoState lower;
  int q = 0;

  [[nodiscard]] bool is_valid() const;
  /// The M <-> -M partner; equal to *this for M=0 pi transitions.
  [[nodiscard]] Transition mirror() const;
  [[nodiscard]] bool is_self_mirror() const { return upper.twoM == 0 && q == 0; }

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition& a, const Transition& b) {
    if (auto c = a.upper <=> b.upper; c != 0) return c;
    return a.q <=> b.q;
  }
};

Transition make_transition(const RoState& upper, int q);
std::string describe(const Transition& t);

}  // namespace rotocool
