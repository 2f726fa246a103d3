#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vpg {

using Rational = mpq_class;

// Parse "num/den" or "num"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);

// Serialize always with an explicit denominator: "num/den".
std::string rational_str(const Rational& q);

// Floor of sqrt for nonnegative integers (exact via GMP).
mpz_class isqrt_floor(const mpz_class& n);

bool is_perfect_square(const mpz_class& n);

// Largest rational r of the form floor(sqrt(num*den))/den with r*r <= q.
// Exact when q is a square of a rational with the same denominator structure;
// in all cases r <= sqrt(q) and r > sqrt(q)/2 for q >= 1 (good enough as a
// conservative positive lower bound when q > 0).
Rational sqrt_lower_bound(const Rational& q);

// True iff q is the square of a rational; if so *root is set.
bool rational_sqrt_exact(const Rational& q, Rational* root);

// Deterministic sequence of "generic" rationals in (0,1), driven by an integer
// seed (VPG_SEED env var by default elsewhere). Used for grid offset fallback.
class SeededRationals {
 public:
  explicit SeededRationals(std::uint64_t seed);
  // k-th element; denominators are odd primes-ish to avoid grid alignments.
  Rational next();

 private:
  std::uint64_t state_;
};

std::uint64_t seed_from_env();  // reads VPG_SEED, defaults to 12345

}  // namespace vpg
