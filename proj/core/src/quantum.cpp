#include "rotocool/quantum.hpp"

#include <cstdlib>
#include <numeric>

namespace rotocool {

namespace {
__extension__ typedef __int128 wide_int;
}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  const std::int64_t d1 = g1 == 0 ? 1 : g1;
  const std::int64_t d2 = g2 == 0 ? 1 : g2;
  return Rational((a.num_ / d1) * (b.num_ / d2), (a.den_ / d2) * (b.den_ / d1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // Denominators are positive, so cross-multiplication preserves order.
  const wide_int lhs = static_cast<wide_int>(a.num_) * b.den_;
  const wide_int rhs = static_cast<wide_int>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Rational& r) {
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

bool RoState::is_valid() const {
  if (n < 0 || twoOmega < 0 || twoJ < twoOmega) return false;
  if (std::abs(twoM) > twoJ) return false;
  if ((twoJ - twoM) % 2 != 0) return false;
  if ((twoJ - twoOmega) % 2 != 0) return false;
  return true;
}

RoState make_state(int twoJ, int twoM, int twoOmega, int n) {
  RoState s{n, twoJ, twoM, twoOmega};
  if (!s.is_valid()) {
    throw std::invalid_argument("invalid state: 2J=" + std::to_string(twoJ) + " 2M=" +
                                std::to_string(twoM) + " 2Omega=" + std::to_string(twoOmega) +
                                " n=" + std::to_string(n));
  }
  return s;
}

std::string state_label(const RoState& s) {
  return "J" + std::to_string(s.twoJ) + "M" + std::to_string(s.twoM);
}

bool Transition::is_valid() const {
  if (!upper.is_valid() || !lower.is_valid()) return false;
  if (q < -1 || q > 1) return false;
  if (upper.n != lower.n || upper.twoOmega != lower.twoOmega) return false;
  return lower.twoJ == upper.twoJ - 2 && lower.twoM == upper.twoM - 2 * q;
}

Transition Transition::mirror() const {
  Transition m = *this;
  m.upper.twoM = -upper.twoM;
  m.lower.twoM = -lower.twoM;
  m.q = -q;
  return m;
}

Transition make_transition(const RoState& upper, int q) {
  Transition t{upper, RoState{upper.n, upper.twoJ - 2, upper.twoM - 2 * q, upper.twoOmega}, q};
  if (!t.is_valid()) {
    throw std::invalid_argument("invalid transition from " + state_label(upper) + " with q=" +
                                std::to_string(q));
  }
  return t;
}

std::string describe(const Transition& t) {
  return state_label(t.upper) + "->" + state_label(t.lower) + " (q=" + std::to_string(t.q) + ")";
}

}  // namespace rotocool
