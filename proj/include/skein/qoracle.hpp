#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skein/diagram.hpp"
#include "skein/scalar.hpp"

namespace skein {

// Dense integer Laurent polynomial in the single working symbol. Matrix
// entries live here rather than in the general multivariate field: the fast
// paths are convolution and vector addition, never a gcd.
struct QPoly {
  int64_t lo = 0;        // exponent of c.front()
  std::vector<Int> c;    // no zero ends; empty means the zero polynomial

  static QPoly from_int(long v);
  static QPoly mono(Int coef, int64_t exp);

  bool is_zero() const { return c.empty(); }
  bool is_one() const;
  bool operator==(const QPoly&) const = default;

  QPoly operator-() const;
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;

  std::string to_string(const std::string& var) const;
};

// Quotient of Laurent polynomials. Denominators are only simplified when
// they are monomials; equality cross-multiplies, so unreduced values still
// compare correctly and nothing on the matrix path ever factors.
struct QScalar {
  QPoly num;
  QPoly den;

  QScalar() : den(QPoly::from_int(1)) {}
  static QScalar from_int(long v);
  static QScalar from_poly(QPoly p);

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const QScalar& o) const;

  QScalar operator-() const;
  QScalar operator+(const QScalar& o) const;
  QScalar operator-(const QScalar& o) const;
  QScalar operator*(const QScalar& o) const;
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }

  QScalar invert() const;  // throws NonUnit on zero
  QScalar pow(int64_t e) const;

  std::string to_string(const std::string& var) const;
};

enum class LieFamily { B, C, D };

// Natural-module data for so_{2n+1} (B), sp_{2n} (C) and so_{2n} (D).
// Type B computes in v with q = v^2 so the half-integer weight exponents
// stay Laurent; the other families work in q directly.
struct LieType {
  LieFamily family = LieFamily::C;
  int n = 2;

  int N() const;    // module dimension: 2n+1 for B, 2n otherwise
  int eps() const;  // -1 for the symplectic family, +1 otherwise
  int dual(int i) const { return N() + 1 - i; }
  int sign(int i) const;  // -1 on the lower symplectic half, else +1

  int unit() const;         // exponent of q in the working symbol
  std::string var() const;  // "v" for B, else "q"
  int64_t rho_exp(int i) const;  // exponent of q^{rho_i} in the working symbol

  QScalar qdelta() const;   // eps * q^{N - eps}
  QScalar qz() const;       // q - q^{-1}
  QScalar qomega0() const;  // forced by delta^{-1} + z(omega0 - 1) = delta

  // the same quantities in the symbolic field, for display and substitution
  Scalar q() const;
  Scalar q_rho(int i) const;
  Scalar delta() const;
  Scalar z() const;
  Scalar omega0() const;

  std::string name() const;
};

// Sparse matrix over the working-symbol field, stored column-major and
// indexed by tensor words in the module basis, flattened big-endian
// (leftmost tensor factor most significant).
struct OracleMatrix {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<std::map<int64_t, QScalar>> col;

  static OracleMatrix zero(int64_t r, int64_t c);
  static OracleMatrix identity(int64_t d);

  void set(int64_t r, int64_t c, QScalar v);
  QScalar at(int64_t r, int64_t c) const;

  bool is_zero() const;
  bool operator==(const OracleMatrix& o) const;

  OracleMatrix operator+(const OracleMatrix& o) const;
  OracleMatrix operator-(const OracleMatrix& o) const;
  OracleMatrix operator*(const OracleMatrix& o) const;
  OracleMatrix operator*(const QScalar& c) const;
  OracleMatrix kron(const OracleMatrix& o) const;

  std::string to_json(const std::string& var) const;  // sorted sparse triplets
};

// The crossing action on V (x) V. With inverse set this is the explicit
// case-by-case matrix the positive crossing maps to; without it, the other
// crossing, recovered through the skein identity rather than inversion.
OracleMatrix r_matrix(const LieType& t, bool inverse);

struct CapCup {
  OracleMatrix alpha;  // cap, 1 x N^2
  OracleMatrix beta;   // cup, N^2 x 1
  OracleMatrix e;      // beta . alpha
};
CapCup cap_cup(const LieType& t);

// Matrix of a slice word on V^{(x)(buffer + arity)}. Caps and cups act by
// alpha and beta, crossings by the two R actions, and a dot on strand p
// carries slot buffer+p around every slot to its left and back with a double
// crossing chain, scaled by delta^exp. With buffer 0 a dot at position 1
// degenerates to a delta power times the identity; *lossy is set when that
// happens so callers can warn about the lost winding.
OracleMatrix evaluate(const SliceWord& w, const LieType& t, int buffer,
                      bool* lossy = nullptr);

// Linear extension over basis terms via canonical words; closed loops in a
// term evaluate as matrices on the buffer slots. Coefficients specialize
// through delta, z and omega_0; formal admissible or cyclotomic parameters
// have no image here and are rejected.
OracleMatrix evaluate(const Morphism& f, const LieType& t, int buffer,
                      bool* lossy = nullptr);

// Image of an engine coefficient in the working-symbol field.
QScalar q_scalar(const Scalar& c, const LieType& t);

// The same specialization kept in the symbolic field, for printing.
Scalar specialize_scalar(const Scalar& c, const LieType& t);

struct RelationReport {
  std::vector<std::pair<std::string, bool>> checks;
  bool all_ok = true;

  void note(const std::string& name, bool ok) {
    checks.emplace_back(name, ok);
    all_ok = all_ok && ok;
  }
};

// The defining relations of the plain and affine presentations as exact
// matrix identities, the affine ones with buffer 2.
RelationReport verify_category_relations(const LieType& t);

}  // namespace skein
