#include "vpg/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace vpg {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpz_class isqrt_floor(const mpz_class& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const mpz_class& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Rational sqrt_lower_bound(const Rational& q) {
  if (q < 0) throw std::invalid_argument("sqrt of negative");
  if (q == 0) return Rational(0);
  mpq_class c = q;
  c.canonicalize();
  // sqrt(n/d) = sqrt(n*d)/d >= floor(sqrt(n*d))/d
  mpz_class nd = c.get_num() * c.get_den();
  mpz_class fl = isqrt_floor(nd);
  Rational r(fl, c.get_den());
  r.canonicalize();
  return r;
}

bool rational_sqrt_exact(const Rational& q, Rational* root) {
  if (q < 0) return false;
  mpq_class c = q;
  c.canonicalize();
  if (!is_perfect_square(c.get_num()) || !is_perfect_square(c.get_den())) return false;
  if (root) {
    Rational r(isqrt_floor(c.get_num()), isqrt_floor(c.get_den()));
    r.canonicalize();
    *root = r;
  }
  return true;
}

SeededRationals::SeededRationals(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

Rational SeededRationals::next() {
  // splitmix64 step
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  // map to (0,1) with a large odd denominator so values dodge small grids
  const std::uint64_t den = 1000003ULL;  // prime
  std::uint64_t num = z % (den - 1) + 1;
  Rational r(mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den)));
  r.canonicalize();
  return r;
}

std::uint64_t seed_from_env() {
  const char* s = std::getenv("VPG_SEED");
  if (!s || !*s) return 12345;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s) return 12345;
  return static_cast<std::uint64_t>(v);
}

}  // namespace vpg
