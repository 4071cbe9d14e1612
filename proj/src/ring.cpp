#include "graftlab/ring.hpp"

#include <stdexcept>

namespace graftlab {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

BigInt mod_positive(const BigInt& a, std::uint32_t p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r;
}

BigInt inverse_mod(const BigInt& a, std::uint32_t p) {
  // Fermat: a^(p-2)
  return boost::multiprecision::powm(mod_positive(a, p), BigInt(p - 2), BigInt(p));
}

}  // namespace

Ring Ring::modulo(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("Z/p requires a prime modulus, got " + std::to_string(p));
  return Ring(RingKind::IntMod, p);
}

Ring Ring::parse(std::string_view text) {
  if (text == "Z" || text == "INT") return integers();
  if (text == "Q" || text == "RATIONAL") return rationals();
  for (std::string_view prefix : {"Z/", "INTMOD"}) {
    if (text.substr(0, prefix.size()) == prefix) {
      std::string rest(text.substr(prefix.size()));
      if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
      try {
        return modulo(static_cast<std::uint32_t>(std::stoul(rest)));
      } catch (const std::logic_error&) {
        break;
      }
    }
  }
  throw std::invalid_argument("unknown ring '" + std::string(text) + "' (expected Z, Q or Z/p)");
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integer: return "Z";
    case RingKind::Rational: return "Q";
    case RingKind::IntMod: return "Z/" + std::to_string(p_);
  }
  return "?";
}

Scalar Ring::reduce(const Scalar& x) const {
  switch (kind_) {
    case RingKind::Rational: return x;
    case RingKind::Integer:
      if (denominator(x) != 1) throw std::domain_error("non-integral coefficient " + to_string(x) + " over Z");
      return x;
    case RingKind::IntMod: {
      BigInt num = mod_positive(numerator(x), p_);
      const BigInt& den = denominator(x);
      if (den != 1) {
        if (den % p_ == 0) throw std::domain_error("denominator divisible by p in " + to_string(x));
        num = mod_positive(num * inverse_mod(den, p_), p_);
      }
      return Scalar(num);
    }
  }
  return x;
}

Scalar Ring::random_nonzero(std::mt19937_64& rng) const {
  switch (kind_) {
    case RingKind::Integer: {
      int v = static_cast<int>(rng() % 3) + 1;
      return Scalar((rng() & 1) ? -v : v);
    }
    case RingKind::Rational: {
      int num = static_cast<int>(rng() % 5) + 1;
      int den = static_cast<int>(rng() % 3) + 1;
      Scalar v(num, den);
      return (rng() & 1) ? Scalar(-v) : v;
    }
    case RingKind::IntMod: return Scalar(static_cast<long long>(rng() % (p_ - 1)) + 1);
  }
  return Scalar(1);
}

std::string to_string(const Scalar& x) { return x.str(); }

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Scalar(BigInt(s));
  return Scalar(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

}  // namespace graftlab
