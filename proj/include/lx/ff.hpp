#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lx/rng.hpp"

namespace lx::ff {

// Element of F_{p^r}: polynomial of degree < r over Z_p, coeffs[0] the
// constant term, every coefficient reduced mod p.
struct FieldElement {
  std::vector<std::uint64_t> coeffs;

  bool operator==(const FieldElement&) const = default;
};

// Field context for F_{p^r} = Z_p[x]/(I(x)). Immutable after construction;
// all operations are pure, so instances are freely shared across threads.
class FieldParams {
 public:
  std::uint64_t p = 0;                        // odd prime
  std::uint32_t r = 0;                        // extension degree
  std::vector<std::uint64_t> irreducible;     // monic, length r+1, coeffs mod p
  std::uint64_t order = 0;                    // p^r
  std::uint64_t half_order = 0;               // (p^r - 1) / 2
  std::vector<std::uint64_t> order_factors;   // distinct primes dividing p^r - 1
  std::uint32_t coeff_bits = 0;               // ceil(log2 p), canonical-key width

  FieldElement zero() const;
  FieldElement one() const;
  bool is_zero(const FieldElement& a) const;
  bool is_one(const FieldElement& a) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;

  // Square-and-multiply; 0^0 is rejected (ZeroToZero), a^0 = 1 otherwise.
  FieldElement pow(const FieldElement& a, std::uint64_t e) const;

  // pow(a, p^r - 2); DivisionByZero on a = 0.
  FieldElement inv(const FieldElement& a) const;

  // Generalized quadratic character: 0 at zero, +1 on squares, -1 otherwise.
  int legendre(const FieldElement& a) const;

  // Base-p digit view: bijection between [0, p^r) and the field elements.
  FieldElement element_from_uint(std::uint64_t v) const;
  std::uint64_t uint_from_element(const FieldElement& a) const;

  // "p=<p> r=<r> I=<c0,c1,...,cr>"
  std::string describe() const;

  // Throws FieldMismatch unless a is a well-formed element of this field.
  void check_element(const FieldElement& a) const;
};

inline constexpr std::uint64_t kDefaultOrderCeiling = 1ull << 40;

// Builds and validates a field. Without an explicit irreducible, selects the
// lexicographically smallest monic irreducible of degree r (coefficient tuple
// compared constant term first). allow_large lifts the p^r <= 2^40 ceiling
// (a hard 2^62 cap keeps 128-bit products exact).
FieldParams make_field(std::uint64_t p, std::uint32_t r,
                       const std::optional<std::vector<std::uint64_t>>& irreducible = std::nullopt,
                       bool allow_large = false);

FieldParams parse_field_description(const std::string& text, bool allow_large = false);

// Rabin criterion: f monic over Z_p is irreducible iff x^(p^deg) = x mod f
// and gcd(x^(p^(deg/q)) - x, f) = 1 for every prime q | deg.
bool is_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p);

bool is_primitive(const FieldParams& fp, const FieldElement& g);

// Random sampling with an exhaustive fallback; a generator always exists.
FieldElement find_generator(const FieldParams& fp, SplitMix64& rng);

// Test-scale oracle: smallest i >= 0 with g^i = target. Guarded to
// order <= 10^6; NotInGroup if target is zero or the scan never matches.
std::uint64_t dlog_bruteforce(const FieldParams& fp, const FieldElement& g,
                              const FieldElement& target);

bool is_prime_u64(std::uint64_t n);

namespace detail {

inline constexpr std::uint32_t kMaxDegree = 63;

// Raw-buffer arithmetic shared by FieldParams and the scalar kernel.
// All arrays have length fp.r; no aliasing requirements.
void raw_mul(const FieldParams& fp, const std::uint64_t* a, const std::uint64_t* b,
             std::uint64_t* out);
void raw_pow(const FieldParams& fp, const std::uint64_t* base, std::uint64_t e,
             std::uint64_t* out);
int raw_legendre(const FieldParams& fp, const std::uint64_t* a);

}  // namespace detail

}  // namespace lx::ff
