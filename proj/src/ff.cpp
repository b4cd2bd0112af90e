#include "lx/ff.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "lx/error.hpp"

namespace lx::ff {

namespace {

constexpr std::uint64_t kHardOrderCap = 1ull << 62;  // keeps 128-bit products exact

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) acc = mulmod(acc, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return acc;
}

std::uint64_t invmod_prime(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// --- dense polynomials over Z_p: index = degree, trimmed, zero = {} ---

using Poly = std::vector<std::uint64_t>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& f, std::uint64_t p) {
  ptrim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = f[df] == 1 ? 1 : invmod_prime(f[df], p);
  while (a.size() > df) {
    const std::size_t k = a.size() - 1 - df;
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    if (c != 0) {
      for (std::size_t t = 0; t <= df; ++t) {
        const std::uint64_t s = mulmod(c, f[t], p);
        a[k + t] = (a[k + t] + p - s) % p;
      }
    }
    a.pop_back();
    ptrim(a);
  }
  return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return pmod(std::move(prod), f, p);
}

Poly psub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  ptrim(a);
  return a;
}

Poly pgcd(Poly a, Poly b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    Poly rem = pmod(a, b, p);
    a = std::move(b);
    b = std::move(rem);
  }
  if (!a.empty() && a.back() != 1) {
    const std::uint64_t inv = invmod_prime(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

// x^e mod f by square-and-multiply.
Poly pxpow(std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result = pmod({1}, f, p);
  Poly base = pmod({0, 1}, f, p);
  while (e) {
    if (e & 1) result = pmulmod(result, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t checked_pow_u64(std::uint64_t base, std::uint32_t e, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (acc > cap / base) return 0;  // would overflow cap
    acc *= base;
  }
  return acc;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> search_smallest_irreducible(std::uint64_t p, std::uint32_t r) {
  // Odometer over (c0, ..., c_{r-1}) in lexicographic order, constant term
  // most significant, leading coefficient fixed at 1. For degree >= 2 a zero
  // constant term means divisibility by x, so the scan starts at c0 = 1.
  std::vector<std::uint64_t> digits(r, 0);
  if (r >= 2) digits[0] = 1;
  for (;;) {
    std::vector<std::uint64_t> f(digits);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
    std::size_t i = r;
    while (i-- > 0) {
      if (++digits[i] < p) break;
      digits[i] = 0;
      if (i == 0) fail(Errc::InternalError, "no irreducible polynomial found");
    }
  }
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(const std::vector<std::uint64_t>& f_in, std::uint64_t p) {
  Poly f = f_in;
  for (auto& c : f) c %= p;
  if (f.size() < 2 || f.back() != 1) {
    fail(Errc::DegreeMismatch, "irreducibility test needs a monic polynomial of degree >= 1");
  }
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  const Poly x_mod_f = pmod({0, 1}, f, p);
  for (std::uint64_t q : distinct_prime_factors(deg)) {
    const std::uint64_t e = checked_pow_u64(p, deg / static_cast<std::uint32_t>(q), kHardOrderCap);
    if (e == 0) fail(Errc::OrderTooLarge, "p^(deg/q) exceeds the supported range");
    const Poly h = pxpow(e, f, p);
    const Poly g = pgcd(psub(h, x_mod_f, p), f, p);
    if (g.size() != 1) return false;
  }
  const std::uint64_t e = checked_pow_u64(p, deg, kHardOrderCap);
  if (e == 0) fail(Errc::OrderTooLarge, "p^deg exceeds the supported range");
  return pxpow(e, f, p) == x_mod_f;
}

FieldParams make_field(std::uint64_t p, std::uint32_t r,
                       const std::optional<std::vector<std::uint64_t>>& irreducible,
                       bool allow_large) {
  if (r < 1) fail(Errc::DegreeMismatch, "extension degree must be at least 1");
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p)) {
    fail(Errc::CompositeP, "p must be an odd prime, got " + std::to_string(p));
  }
  const std::uint64_t order = checked_pow_u64(p, r, kHardOrderCap);
  if (order == 0) fail(Errc::OrderTooLarge, "p^r exceeds 2^62");
  if (!allow_large && order > kDefaultOrderCeiling) {
    fail(Errc::OrderTooLarge,
         "p^r = " + std::to_string(order) + " exceeds the 2^40 desk-scale ceiling");
  }

  FieldParams fp;
  fp.p = p;
  fp.r = r;
  fp.order = order;
  fp.half_order = (order - 1) / 2;
  fp.coeff_bits = static_cast<std::uint32_t>(std::bit_width(p - 1));

  if (irreducible) {
    std::vector<std::uint64_t> f = *irreducible;
    if (f.size() != static_cast<std::size_t>(r) + 1) {
      fail(Errc::DegreeMismatch, "irreducible polynomial must have degree exactly r");
    }
    for (auto& c : f) c %= p;
    if (f.back() != 1) fail(Errc::DegreeMismatch, "irreducible polynomial must be monic");
    if (!is_irreducible(f, p)) {
      fail(Errc::ReduciblePolynomial, "supplied polynomial is reducible over Z_p");
    }
    fp.irreducible = std::move(f);
  } else {
    fp.irreducible = search_smallest_irreducible(p, r);
  }

  fp.order_factors = distinct_prime_factors(order - 1);
  return fp;
}

FieldParams parse_field_description(const std::string& text, bool allow_large) {
  std::istringstream in(text);
  std::string tok;
  std::uint64_t p = 0;
  std::uint32_t r = 0;
  std::optional<std::vector<std::uint64_t>> irr;
  bool have_p = false, have_r = false;
  while (in >> tok) {
    try {
      if (tok.rfind("p=", 0) == 0) {
        p = std::stoull(tok.substr(2));
        have_p = true;
      } else if (tok.rfind("r=", 0) == 0) {
        r = static_cast<std::uint32_t>(std::stoul(tok.substr(2)));
        have_r = true;
      } else if (tok.rfind("I=", 0) == 0) {
        std::vector<std::uint64_t> coeffs;
        std::istringstream cs(tok.substr(2));
        std::string c;
        while (std::getline(cs, c, ',')) coeffs.push_back(std::stoull(c));
        irr = std::move(coeffs);
      } else {
        fail(Errc::BadFormat, "unrecognized field token '" + tok + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Errc::BadFormat, "bad field token '" + tok + "'");
    }
  }
  if (!have_p || !have_r) fail(Errc::BadFormat, "field description needs p= and r=");
  return make_field(p, r, irr, allow_large);
}

std::string FieldParams::describe() const {
  std::ostringstream out;
  out << "p=" << p << " r=" << r << " I=";
  for (std::size_t i = 0; i < irreducible.size(); ++i) {
    if (i) out << ',';
    out << irreducible[i];
  }
  return out.str();
}

void FieldParams::check_element(const FieldElement& a) const {
  if (a.coeffs.size() != r) {
    fail(Errc::FieldMismatch, "element has " + std::to_string(a.coeffs.size()) +
                                  " coefficients, field expects " + std::to_string(r));
  }
  for (std::uint64_t c : a.coeffs) {
    if (c >= p) fail(Errc::FieldMismatch, "coefficient not reduced mod p");
  }
}

FieldElement FieldParams::zero() const { return FieldElement{std::vector<std::uint64_t>(r, 0)}; }

FieldElement FieldParams::one() const {
  FieldElement e = zero();
  e.coeffs[0] = 1;
  return e;
}

bool FieldParams::is_zero(const FieldElement& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::uint64_t c) { return c == 0; });
}

bool FieldParams::is_one(const FieldElement& a) const {
  if (a.coeffs.empty() || a.coeffs[0] != 1) return false;
  return std::all_of(a.coeffs.begin() + 1, a.coeffs.end(),
                     [](std::uint64_t c) { return c == 0; });
}

FieldElement FieldParams::add(const FieldElement& a, const FieldElement& b) const {
  check_element(a);
  check_element(b);
  FieldElement out = a;
  for (std::uint32_t i = 0; i < r; ++i) {
    out.coeffs[i] += b.coeffs[i];
    if (out.coeffs[i] >= p) out.coeffs[i] -= p;
  }
  return out;
}

FieldElement FieldParams::sub(const FieldElement& a, const FieldElement& b) const {
  check_element(a);
  check_element(b);
  FieldElement out = a;
  for (std::uint32_t i = 0; i < r; ++i) {
    out.coeffs[i] = out.coeffs[i] >= b.coeffs[i] ? out.coeffs[i] - b.coeffs[i]
                                                 : out.coeffs[i] + p - b.coeffs[i];
  }
  return out;
}

FieldElement FieldParams::neg(const FieldElement& a) const {
  check_element(a);
  FieldElement out = a;
  for (std::uint32_t i = 0; i < r; ++i) {
    out.coeffs[i] = out.coeffs[i] == 0 ? 0 : p - out.coeffs[i];
  }
  return out;
}

FieldElement FieldParams::mul(const FieldElement& a, const FieldElement& b) const {
  check_element(a);
  check_element(b);
  FieldElement out = zero();
  detail::raw_mul(*this, a.coeffs.data(), b.coeffs.data(), out.coeffs.data());
  return out;
}

FieldElement FieldParams::pow(const FieldElement& a, std::uint64_t e) const {
  check_element(a);
  if (e == 0 && is_zero(a)) fail(Errc::ZeroToZero, "0^0 is undefined");
  FieldElement out = zero();
  detail::raw_pow(*this, a.coeffs.data(), e, out.coeffs.data());
  return out;
}

FieldElement FieldParams::inv(const FieldElement& a) const {
  check_element(a);
  if (is_zero(a)) fail(Errc::DivisionByZero, "zero has no multiplicative inverse");
  return pow(a, order - 2);
}

int FieldParams::legendre(const FieldElement& a) const {
  check_element(a);
  return detail::raw_legendre(*this, a.coeffs.data());
}

FieldElement FieldParams::element_from_uint(std::uint64_t v) const {
  if (v >= order) {
    fail(Errc::OutOfRange, "integer view " + std::to_string(v) + " outside [0, p^r)");
  }
  FieldElement e = zero();
  for (std::uint32_t i = 0; i < r && v; ++i) {
    e.coeffs[i] = v % p;
    v /= p;
  }
  return e;
}

std::uint64_t FieldParams::uint_from_element(const FieldElement& a) const {
  std::uint64_t v = 0;
  for (std::uint32_t i = r; i-- > 0;) v = v * p + a.coeffs[i];
  return v;
}

bool is_primitive(const FieldParams& fp, const FieldElement& g) {
  fp.check_element(g);
  if (fp.is_zero(g)) return false;
  for (std::uint64_t q : fp.order_factors) {
    if (fp.is_one(fp.pow(g, (fp.order - 1) / q))) return false;
  }
  return true;
}

FieldElement find_generator(const FieldParams& fp, SplitMix64& rng) {
  constexpr int kSampleAttempts = 512;
  for (int i = 0; i < kSampleAttempts; ++i) {
    FieldElement g = fp.element_from_uint(1 + rng.below(fp.order - 1));
    if (is_primitive(fp, g)) return g;
  }
  for (std::uint64_t v = 1; v < fp.order; ++v) {
    FieldElement g = fp.element_from_uint(v);
    if (is_primitive(fp, g)) return g;
  }
  fail(Errc::InternalError, "no generator found; field construction is broken");
}

std::uint64_t dlog_bruteforce(const FieldParams& fp, const FieldElement& g,
                              const FieldElement& target) {
  fp.check_element(g);
  fp.check_element(target);
  if (fp.order > 1000000) fail(Errc::OutOfRange, "dlog_bruteforce is limited to order <= 10^6");
  if (fp.is_zero(target)) fail(Errc::NotInGroup, "zero is not in the multiplicative group");
  FieldElement acc = fp.one();
  for (std::uint64_t i = 0; i + 1 < fp.order; ++i) {
    if (acc == target) return i;
    acc = fp.mul(acc, g);
  }
  fail(Errc::NotInGroup, "target not generated; g is not a generator");
}

namespace detail {

void raw_mul(const FieldParams& fp, const std::uint64_t* a, const std::uint64_t* b,
             std::uint64_t* out) {
  const std::uint32_t r = fp.r;
  const std::uint64_t p = fp.p;
  std::uint64_t w[2 * kMaxDegree + 1] = {};
  for (std::uint32_t i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j = 0; j < r; ++j) {
      w[i + j] = (w[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  const std::uint64_t* irr = fp.irreducible.data();
  for (std::uint32_t k = 2 * r - 2; k >= r && k < 2 * r; --k) {
    const std::uint64_t c = w[k];
    if (c == 0) continue;
    for (std::uint32_t t = 0; t < r; ++t) {
      if (irr[t] == 0) continue;
      const std::uint64_t s = mulmod(c, irr[t], p);
      w[k - r + t] = (w[k - r + t] + p - s) % p;
    }
  }
  std::copy(w, w + r, out);
}

void raw_pow(const FieldParams& fp, const std::uint64_t* base, std::uint64_t e,
             std::uint64_t* out) {
  const std::uint32_t r = fp.r;
  std::uint64_t acc[kMaxDegree + 1] = {};
  std::uint64_t sq[kMaxDegree + 1];
  acc[0] = 1;
  std::copy(base, base + r, sq);
  while (e) {
    if (e & 1) raw_mul(fp, acc, sq, acc);
    e >>= 1;
    if (e) raw_mul(fp, sq, sq, sq);
  }
  std::copy(acc, acc + r, out);
}

int raw_legendre(const FieldParams& fp, const std::uint64_t* a) {
  const std::uint32_t r = fp.r;
  bool zero = true;
  for (std::uint32_t i = 0; i < r; ++i) {
    if (a[i] != 0) {
      zero = false;
      break;
    }
  }
  if (zero) return 0;
  std::uint64_t t[kMaxDegree + 1];
  raw_pow(fp, a, fp.half_order, t);
  bool tail_zero = true;
  for (std::uint32_t i = 1; i < r; ++i) {
    if (t[i] != 0) {
      tail_zero = false;
      break;
    }
  }
  if (tail_zero && t[0] == 1) return 1;
  if (tail_zero && t[0] == fp.p - 1) return -1;
  fail(Errc::InternalError, "Euler criterion produced a value other than 0, 1, -1");
}

}  // namespace detail

}  // namespace lx::ff
