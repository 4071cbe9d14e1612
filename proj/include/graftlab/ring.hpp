#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace graftlab {

using Scalar = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class RingKind { Integer, Rational, IntMod };

// Coefficient ring. Values are stored as Scalar and kept in normal form by
// reduce(): integers for Integer, fractions for Rational, and representatives
// in [0, p) for IntMod.
class Ring {
 public:
  static Ring integers() { return Ring(RingKind::Integer, 0); }
  static Ring rationals() { return Ring(RingKind::Rational, 0); }
  static Ring modulo(std::uint32_t p);
  // "Z", "Q", "Z/5"
  static Ring parse(std::string_view text);

  RingKind kind() const { return kind_; }
  std::uint32_t modulus() const { return p_; }
  std::string name() const;

  Scalar reduce(const Scalar& x) const;
  bool is_zero(const Scalar& x) const { return reduce(x) == 0; }
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }

  // Small random nonzero element: +-1..3 over Z, +-a/b over Q, any unit mod p.
  Scalar random_nonzero(std::mt19937_64& rng) const;

  bool operator==(const Ring&) const = default;

 private:
  Ring(RingKind k, std::uint32_t p) : kind_(k), p_(p) {}
  RingKind kind_;
  std::uint32_t p_;
};

std::string to_string(const Scalar& x);
Scalar parse_scalar(std::string_view text);

inline Scalar sign_scalar(int parity) { return (parity & 1) ? Scalar(-1) : Scalar(1); }

}  // namespace graftlab
