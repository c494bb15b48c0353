#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skein/errors.hpp"

namespace skein {

using Int = boost::multiprecision::cpp_int;

// Symbols carry a kind in the high byte and an index below; the numeric order
// of the packed ids fixes the canonical term order everywhere.
enum class SymKind : uint32_t { delta = 0, z, q, v, u, omega };

using Sym = uint32_t;

constexpr Sym make_sym(SymKind k, uint32_t index = 0) {
  return (static_cast<uint32_t>(k) << 24) | index;
}

inline constexpr Sym sym_delta = make_sym(SymKind::delta);
inline constexpr Sym sym_z = make_sym(SymKind::z);
inline constexpr Sym sym_q = make_sym(SymKind::q);
inline constexpr Sym sym_v = make_sym(SymKind::v);
constexpr Sym sym_u(uint32_t i) { return make_sym(SymKind::u, i); }
constexpr Sym sym_omega(uint32_t i) { return make_sym(SymKind::omega, i); }

std::string sym_name(Sym s);

// Sorted (symbol, exponent) pairs; exponents are nonzero and may be negative.
using Monomial = std::vector<std::pair<Sym, int64_t>>;

bool mono_less(const Monomial& a, const Monomial& b);
Monomial mono_mul(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Int coeff;
  bool operator==(const Term&) const = default;
};

// Laurent polynomial with integer coefficients. Terms are kept sorted
// descending in the canonical monomial order with no zero coefficients.
class Poly {
 public:
  std::vector<Term> terms;

  Poly() = default;
  static Poly from_int(Int v);
  static Poly variable(Sym s, int64_t exp = 1);

  bool is_zero() const { return terms.empty(); }
  bool is_one() const;
  bool operator==(const Poly&) const = default;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
};

// Exact gcd over the integers, including integer content. Inputs must have
// non-negative exponents. The result has a positive leading coefficient.
Poly poly_gcd(const Poly& a, const Poly& b);

// Exact division; asserts the remainder is zero.
Poly poly_divexact(const Poly& a, const Poly& b);

// Fraction of Laurent polynomials in canonical form: the denominator is a
// genuine polynomial with per-symbol minimum exponent zero, positive leading
// coefficient, and no common factor with the numerator (monomial shifts are
// folded into the numerator, whose exponents may be negative).
class Scalar {
 public:
  Poly num;
  Poly den;  // never zero; equals one in the common case

  Scalar() : den(Poly::from_int(1)) {}
  static Scalar from_int(long v);
  static Scalar from_poly(Poly p);
  static Scalar sym(Sym s, int64_t exp = 1);
  static Scalar ratio(Poly n, Poly d);

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return den.is_one() && num.is_one(); }
  bool operator==(const Scalar&) const = default;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar invert() const;  // throws NonUnit on zero
  Scalar pow(int64_t e) const;

  // Substitute a value for one symbol everywhere (used to specialize q).
  Scalar subst(Sym s, const Scalar& value) const;

  std::string to_string() const;
  static Scalar parse(const std::string& text);
};

// The derived value of the undotted loop: 1 + z^{-1}(delta - delta^{-1}).
// Printed and parsed under the alias "omega0".
const Scalar& omega0_closed();

}  // namespace skein
