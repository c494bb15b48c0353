#include "skein/qoracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "skein/errors.hpp"

namespace skein {

namespace {

int64_t ipow(int64_t base, int e) {
  int64_t out = 1;
  while (e-- > 0) out *= base;
  return out;
}

}  // namespace

// -------------------------------- QPoly -----------------------------------

static void qp_trim(QPoly& p) {
  size_t drop = 0;
  while (drop < p.c.size() && p.c[drop] == 0) drop++;
  if (drop) {
    p.c.erase(p.c.begin(), p.c.begin() + static_cast<ptrdiff_t>(drop));
    p.lo += static_cast<int64_t>(drop);
  }
  while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
  if (p.c.empty()) p.lo = 0;
}

QPoly QPoly::from_int(long v) { return mono(Int(v), 0); }

QPoly QPoly::mono(Int coef, int64_t exp) {
  QPoly p;
  if (coef == 0) return p;
  p.lo = exp;
  p.c.push_back(std::move(coef));
  return p;
}

bool QPoly::is_one() const { return lo == 0 && c.size() == 1 && c[0] == 1; }

QPoly QPoly::operator-() const {
  QPoly p = *this;
  for (Int& v : p.c) v = -v;
  return p;
}

QPoly QPoly::operator+(const QPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int64_t nlo = std::min(lo, o.lo);
  int64_t nhi = std::max(lo + static_cast<int64_t>(c.size()),
                         o.lo + static_cast<int64_t>(o.c.size()));
  QPoly p;
  p.lo = nlo;
  p.c.assign(static_cast<size_t>(nhi - nlo), Int(0));
  for (size_t i = 0; i < c.size(); i++)
    p.c[static_cast<size_t>(lo - nlo) + i] += c[i];
  for (size_t i = 0; i < o.c.size(); i++)
    p.c[static_cast<size_t>(o.lo - nlo) + i] += o.c[i];
  qp_trim(p);
  return p;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  QPoly p;
  p.lo = lo + o.lo;
  p.c.assign(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); i++) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); j++) p.c[i + j] += c[i] * o.c[j];
  }
  qp_trim(p);
  return p;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    const Int& coef = c[i];
    if (first) {
      if (coef < 0) os << "-";
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    first = false;
    Int mag = coef < 0 ? Int(-coef) : coef;
    int64_t exp = lo + static_cast<int64_t>(i);
    if (mag != 1 || exp == 0) os << mag.str();
    if (exp != 0) {
      if (mag != 1) os << "*";
      os << var;
      if (exp != 1) os << "^" << exp;
    }
  }
  return os.str();
}

// ------------------------------- QScalar ----------------------------------

static void qs_reduce(QScalar& s) {
  if (s.num.is_zero()) {
    s.den = QPoly::from_int(1);
    return;
  }
  if (s.den.c.size() == 1) {
    s.num.lo -= s.den.lo;
    s.den.lo = 0;
    const Int d = s.den.c[0];
    bool divisible = true;
    for (const Int& v : s.num.c)
      if (v % d != 0) {
        divisible = false;
        break;
      }
    if (divisible) {
      for (Int& v : s.num.c) v /= d;
      s.den = QPoly::from_int(1);
      return;
    }
  }
  if (s.den.c.back() < 0) {
    s.num = -s.num;
    s.den = -s.den;
  }
}

QScalar QScalar::from_int(long v) {
  QScalar s;
  s.num = QPoly::from_int(v);
  return s;
}

QScalar QScalar::from_poly(QPoly p) {
  QScalar s;
  s.num = std::move(p);
  return s;
}

bool QScalar::operator==(const QScalar& o) const {
  if (den == o.den) return num == o.num;
  return num * o.den == o.num * den;
}

QScalar QScalar::operator-() const {
  QScalar s = *this;
  s.num = -s.num;
  return s;
}

QScalar QScalar::operator+(const QScalar& o) const {
  QScalar s;
  if (den == o.den) {
    s.num = num + o.num;
    s.den = den;
  } else {
    s.num = num * o.den + o.num * den;
    s.den = den * o.den;
  }
  qs_reduce(s);
  return s;
}

QScalar QScalar::operator-(const QScalar& o) const { return *this + (-o); }

QScalar QScalar::operator*(const QScalar& o) const {
  QScalar s;
  s.num = num * o.num;
  if (den.is_one())
    s.den = o.den;
  else if (o.den.is_one())
    s.den = den;
  else
    s.den = den * o.den;
  qs_reduce(s);
  return s;
}

QScalar QScalar::invert() const {
  if (num.is_zero()) throw NonUnit("inverting a zero oracle value");
  QScalar s;
  s.num = den;
  s.den = num;
  qs_reduce(s);
  return s;
}

QScalar QScalar::pow(int64_t e) const {
  if (e < 0) return invert().pow(-e);
  QScalar out = QScalar::from_int(1);
  QScalar base = *this;
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

std::string QScalar::to_string(const std::string& var) const {
  if (den.is_one()) return num.to_string(var);
  return "(" + num.to_string(var) + ")/(" + den.to_string(var) + ")";
}

// ------------------------------- LieType ----------------------------------

int LieType::N() const { return family == LieFamily::B ? 2 * n + 1 : 2 * n; }

int LieType::eps() const { return family == LieFamily::C ? -1 : 1; }

int LieType::sign(int i) const {
  return family == LieFamily::C && i > n ? -1 : 1;
}

int LieType::unit() const { return family == LieFamily::B ? 2 : 1; }

std::string LieType::var() const {
  return family == LieFamily::B ? "v" : "q";
}

// 2*rho_i as an integer; rho itself is half-integral in type B
static int rho2(const LieType& t, int i) {
  int half = t.family == LieFamily::B ? t.n + 1 : 0;
  if (t.family == LieFamily::B && i == half) return 0;
  int b = t.family == LieFamily::C ? 1 : 0;
  if (i <= t.n) return t.N() - 2 * i + 2 * b;
  return -(t.N() - 2 * (t.N() + 1 - i) + 2 * b);
}

int64_t LieType::rho_exp(int i) const {
  int r2 = rho2(*this, i);
  return family == LieFamily::B ? r2 : r2 / 2;
}

QScalar LieType::qdelta() const {
  return QScalar::from_poly(
      QPoly::mono(Int(eps()), int64_t{unit()} * (N() - eps())));
}

QScalar LieType::qz() const {
  return QScalar::from_poly(QPoly::mono(Int(1), unit()) +
                            QPoly::mono(Int(-1), -unit()));
}

QScalar LieType::qomega0() const {
  // 1 + (delta - delta^{-1})/z = 1 + eps [N - eps], expanded as a polynomial
  int m = N() - eps();
  QPoly p = QPoly::from_int(1);
  for (int i = 0; i < m; i++)
    p = p + QPoly::mono(Int(eps()), int64_t{unit()} * (m - 1 - 2 * i));
  return QScalar::from_poly(std::move(p));
}

Scalar LieType::q() const {
  return family == LieFamily::B ? Scalar::sym(sym_v, 2) : Scalar::sym(sym_q);
}

Scalar LieType::q_rho(int i) const {
  int r2 = rho2(*this, i);
  if (family == LieFamily::B) return Scalar::sym(sym_v, r2);
  return Scalar::sym(sym_q, r2 / 2);
}

Scalar LieType::delta() const {
  Scalar d = q().pow(N() - eps());
  return eps() < 0 ? -d : d;
}

Scalar LieType::z() const { return q() - q().pow(-1); }

Scalar LieType::omega0() const {
  Scalar d = delta();
  return Scalar::from_int(1) + (d - d.invert()) / z();
}

std::string LieType::name() const {
  const char* f = family == LieFamily::B ? "B" : family == LieFamily::C ? "C" : "D";
  return f + std::to_string(n);
}

// ----------------------------- OracleMatrix -------------------------------

OracleMatrix OracleMatrix::zero(int64_t r, int64_t c) {
  OracleMatrix m;
  m.rows = r;
  m.cols = c;
  m.col.resize(static_cast<size_t>(c));
  return m;
}

OracleMatrix OracleMatrix::identity(int64_t d) {
  OracleMatrix m = zero(d, d);
  for (int64_t i = 0; i < d; i++)
    m.col[static_cast<size_t>(i)][i] = QScalar::from_int(1);
  return m;
}

void OracleMatrix::set(int64_t r, int64_t c, QScalar v) {
  auto& column = col[static_cast<size_t>(c)];
  if (v.is_zero())
    column.erase(r);
  else
    column[r] = std::move(v);
}

QScalar OracleMatrix::at(int64_t r, int64_t c) const {
  const auto& column = col[static_cast<size_t>(c)];
  auto it = column.find(r);
  return it == column.end() ? QScalar() : it->second;
}

bool OracleMatrix::is_zero() const {
  for (const auto& column : col)
    if (!column.empty()) return false;
  return true;
}

bool OracleMatrix::operator==(const OracleMatrix& o) const {
  return rows == o.rows && cols == o.cols && col == o.col;
}

OracleMatrix OracleMatrix::operator+(const OracleMatrix& o) const {
  if (rows != o.rows || cols != o.cols)
    throw SkeinError("matrix shape mismatch in addition");
  OracleMatrix out = *this;
  for (int64_t c = 0; c < cols; c++)
    for (const auto& [r, v] : o.col[static_cast<size_t>(c)]) {
      auto& column = out.col[static_cast<size_t>(c)];
      auto [it, fresh] = column.try_emplace(r, v);
      if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) column.erase(it);
      }
    }
  return out;
}

OracleMatrix OracleMatrix::operator-(const OracleMatrix& o) const {
  return *this + o * QScalar::from_int(-1);
}

OracleMatrix OracleMatrix::operator*(const OracleMatrix& o) const {
  if (cols != o.rows) throw SkeinError("matrix shape mismatch in product");
  OracleMatrix out = zero(rows, o.cols);
  for (int64_t c = 0; c < o.cols; c++) {
    auto& column = out.col[static_cast<size_t>(c)];
    for (const auto& [k, w] : o.col[static_cast<size_t>(c)])
      for (const auto& [r, v] : col[static_cast<size_t>(k)]) {
        QScalar add = v * w;
        if (add.is_zero()) continue;
        auto [it, fresh] = column.try_emplace(r, add);
        if (!fresh) {
          it->second += add;
          if (it->second.is_zero()) column.erase(it);
        }
      }
  }
  return out;
}

OracleMatrix OracleMatrix::operator*(const QScalar& c) const {
  OracleMatrix out = zero(rows, cols);
  if (c.is_zero()) return out;
  for (int64_t j = 0; j < cols; j++)
    for (const auto& [r, v] : col[static_cast<size_t>(j)])
      out.col[static_cast<size_t>(j)][r] = v * c;
  return out;
}

OracleMatrix OracleMatrix::kron(const OracleMatrix& o) const {
  OracleMatrix out = zero(rows * o.rows, cols * o.cols);
  for (int64_t c1 = 0; c1 < cols; c1++)
    for (const auto& [r1, v1] : col[static_cast<size_t>(c1)])
      for (int64_t c2 = 0; c2 < o.cols; c2++)
        for (const auto& [r2, v2] : o.col[static_cast<size_t>(c2)])
          out.col[static_cast<size_t>(c1 * o.cols + c2)][r1 * o.rows + r2] =
              v1 * v2;
  return out;
}

std::string OracleMatrix::to_json(const std::string& var) const {
  std::ostringstream os;
  os << "{\"rows\":" << rows << ",\"cols\":" << cols << ",\"entries\":[";
  // row-major order for output stability
  std::vector<std::pair<std::pair<int64_t, int64_t>, const QScalar*>> items;
  for (int64_t c = 0; c < cols; c++)
    for (const auto& [r, v] : col[static_cast<size_t>(c)])
      items.push_back({{r, c}, &v});
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool first = true;
  for (const auto& [rc, v] : items) {
    if (!first) os << ",";
    first = false;
    os << "{\"row\":" << rc.first << ",\"col\":" << rc.second << ",\"scalar\":\""
       << v->to_string(var) << "\"}";
  }
  os << "]}";
  return os.str();
}

// ------------------------------ generators --------------------------------

OracleMatrix r_matrix(const LieType& t, bool inverse) {
  int N = t.N();
  QScalar q = QScalar::from_poly(QPoly::mono(Int(1), t.unit()));
  QScalar qinv = QScalar::from_poly(QPoly::mono(Int(1), -t.unit()));
  QScalar z = t.qz();
  OracleMatrix m = OracleMatrix::zero(int64_t{N} * N, int64_t{N} * N);
  auto idx = [N](int a, int b) { return int64_t{a - 1} * N + (b - 1); };
  // entries accumulate: on the dual-pair input lines the correction sum can
  // land on the same slot as a plain term
  auto add = [&m](int64_t r, int64_t c, const QScalar& v) {
    m.set(r, c, m.at(r, c) + v);
  };
  // q^{rho_i - rho_k} weighted by the sign pair, as one monomial
  auto corr = [&](int i, int k) {
    return QScalar::from_poly(QPoly::mono(Int(-t.sign(i) * t.sign(k)),
                                          t.rho_exp(i) - t.rho_exp(k))) *
           z;
  };
  int mid = t.family == LieFamily::B ? t.n + 1 : 0;

  for (int k = 1; k <= N; k++)
    for (int l = 1; l <= N; l++) {
      int64_t c = idx(k, l);
      if (k == l && k == mid) {
        // the self-dual middle weight line of the odd orthogonal module
        add(idx(k, k), c, QScalar::from_int(1));
        for (int i = mid + 1; i <= N; i++)
          add(idx(t.dual(i), i), c,
              QScalar::from_poly(QPoly::mono(Int(-1), t.rho_exp(i))) * z);
      } else if (k == l) {
        add(idx(k, k), c, q);
      } else if (k > l && k != t.dual(l)) {
        add(idx(l, k), c, QScalar::from_int(1));
      } else if (k > l) {
        add(idx(l, k), c, qinv);
        for (int i = k + 1; i <= N; i++) add(idx(t.dual(i), i), c, corr(i, k));
      } else if (k != t.dual(l)) {
        add(idx(l, k), c, QScalar::from_int(1));
        add(idx(k, l), c, z);
      } else {
        add(idx(l, k), c, qinv);
        add(idx(k, l), c, z);
        for (int i = k + 1; i <= N; i++) add(idx(t.dual(i), i), c, corr(i, k));
      }
    }

  if (inverse) return m;
  // the other crossing via the skein identity, avoiding matrix inversion
  CapCup cc = cap_cup(t);
  OracleMatrix one = OracleMatrix::identity(int64_t{N} * N);
  return m - (one - cc.e) * t.qz();
}

CapCup cap_cup(const LieType& t) {
  int N = t.N();
  CapCup out;
  out.alpha = OracleMatrix::zero(1, int64_t{N} * N);
  out.beta = OracleMatrix::zero(int64_t{N} * N, 1);
  for (int k = 1; k <= N; k++) {
    int kd = t.dual(k);
    out.alpha.set(
        0, int64_t{k - 1} * N + (kd - 1),
        QScalar::from_poly(QPoly::mono(Int(t.sign(k)), -t.rho_exp(k))));
    out.beta.set(
        int64_t{k - 1} * N + (kd - 1), 0,
        QScalar::from_poly(QPoly::mono(Int(t.sign(kd)), t.rho_exp(kd))));
  }
  out.e = out.beta * out.alpha;
  return out;
}

// ------------------------------- evaluate ---------------------------------

namespace {

// Left-multiplies every column by 1 (x) g (x) 1, the right identity flank of
// the given dimension, without materializing the flanked matrix.
void apply_local(std::vector<std::map<int64_t, QScalar>>& cols,
                 const OracleMatrix& g, int64_t after) {
  for (auto& vec : cols) {
    std::map<int64_t, QScalar> out;
    for (const auto& [i, v] : vec) {
      int64_t lo = i % after;
      int64_t mid = (i / after) % g.cols;
      int64_t hi = i / (after * g.cols);
      for (const auto& [r, gv] : g.col[static_cast<size_t>(mid)]) {
        QScalar add = gv * v;
        if (add.is_zero()) continue;
        int64_t j = (hi * g.rows + r) * after + lo;
        auto [it, fresh] = out.try_emplace(j, add);
        if (!fresh) {
          it->second += add;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
    vec = std::move(out);
  }
}

}  // namespace

OracleMatrix evaluate(const SliceWord& w, const LieType& t, int buffer,
                      bool* lossy) {
  if (buffer < 0) throw SkeinError("oracle buffer must be nonnegative");
  w.target();  // validates every slice position up front
  if (lossy) *lossy = false;

  int64_t N = t.N();
  OracleMatrix rinv = r_matrix(t, true);
  OracleMatrix rmat = r_matrix(t, false);
  CapCup cc = cap_cup(t);
  QScalar del = t.qdelta();

  int row = w.source;
  OracleMatrix m = OracleMatrix::identity(ipow(N, buffer + row));
  int index = 0;
  for (const Slice& s : w.slices) {
    index++;
    int slot = buffer + s.pos;  // leftmost slot the slice touches
    int slots = buffer + row;
    switch (s.kind) {
      case SliceKind::cap:
        apply_local(m.col, cc.alpha, ipow(N, slots - slot - 1));
        break;
      case SliceKind::cup:
        apply_local(m.col, cc.beta, ipow(N, slots - slot + 1));
        break;
      case SliceKind::over:
        apply_local(m.col, rinv, ipow(N, slots - slot - 1));
        break;
      case SliceKind::under:
        apply_local(m.col, rmat, ipow(N, slots - slot - 1));
        break;
      case SliceKind::dot: {
        if (s.exp != 0 && slot == 1 && lossy) *lossy = true;
        // wind slot around everything to its left and back; the negative
        // winding is the same walk through the other crossing
        const OracleMatrix& cr = s.exp >= 0 ? rinv : rmat;
        int64_t reps = std::llabs(s.exp);
        for (int64_t rep = 0; rep < reps; rep++) {
          for (int i = slot - 1; i >= 1; i--)
            apply_local(m.col, cr, ipow(N, slots - i - 1));
          for (int i = 1; i <= slot - 1; i++)
            apply_local(m.col, cr, ipow(N, slots - i - 1));
        }
        if (s.exp != 0) {
          QScalar scale = del.pow(s.exp);
          for (auto& vec : m.col)
            for (auto& [r, v] : vec) v *= scale;
        }
        break;
      }
    }
    row = slice_apply(row, s, index);
  }
  m.rows = ipow(N, buffer + row);
  return m;
}

OracleMatrix evaluate(const Morphism& f, const LieType& t, int buffer,
                      bool* lossy) {
  int64_t N = t.N();
  OracleMatrix acc = OracleMatrix::zero(ipow(N, buffer + f.target),
                                        ipow(N, buffer + f.source));
  if (lossy) *lossy = false;
  for (const auto& [b, c] : f.terms) {
    bool lost = false;
    OracleMatrix mb = evaluate(canonical_word(b), t, buffer, &lost);
    if (lossy && lost) *lossy = true;
    acc = acc + mb * q_scalar(c, t);
  }
  return acc;
}

// -------------------------- coefficient images ----------------------------

namespace {

bool has_formal_symbols(const Poly& p) {
  for (const auto& term : p.terms)
    for (const auto& [s, e] : term.mono) {
      (void)e;
      SymKind k = static_cast<SymKind>(s >> 24);
      if (k == SymKind::u) return true;
      if (k == SymKind::omega && (s & 0xffffffu) != 0) return true;
    }
  return false;
}

QScalar poly_image(const Poly& p, const LieType& t) {
  QScalar acc = QScalar::from_int(0);
  for (const Term& term : p.terms) {
    QScalar tv = QScalar::from_poly(QPoly::mono(term.coeff, 0));
    for (const auto& [s, e] : term.mono) {
      QScalar base;
      switch (static_cast<SymKind>(s >> 24)) {
        case SymKind::delta:
          base = t.qdelta();
          break;
        case SymKind::z:
          base = t.qz();
          break;
        case SymKind::q:
          base = QScalar::from_poly(QPoly::mono(Int(1), t.unit()));
          break;
        case SymKind::v:
          if (t.family != LieFamily::B)
            throw SkeinError("symbol v has no image for " + t.name());
          base = QScalar::from_poly(QPoly::mono(Int(1), 1));
          break;
        case SymKind::omega:
          base = t.qomega0();
          break;
        case SymKind::u:
          base = QScalar();  // unreachable, guarded by the caller
          break;
      }
      tv = tv * base.pow(e);
    }
    acc = acc + tv;
  }
  return acc;
}

}  // namespace

QScalar q_scalar(const Scalar& c, const LieType& t) {
  if (has_formal_symbols(c.num) || has_formal_symbols(c.den))
    throw SkeinError(
        "coefficient " + c.to_string() +
        " has no oracle image; reduce its bubbles in an admissible "
        "environment first");
  return poly_image(c.num, t) * poly_image(c.den, t).invert();
}

Scalar specialize_scalar(const Scalar& c, const LieType& t) {
  if (has_formal_symbols(c.num) || has_formal_symbols(c.den))
    throw SkeinError(
        "coefficient " + c.to_string() +
        " has no oracle image; reduce its bubbles in an admissible "
        "environment first");
  Scalar out = c.subst(sym_omega(0), t.omega0());
  out = out.subst(sym_delta, t.delta());
  out = out.subst(sym_z, t.z());
  if (t.family == LieFamily::B) out = out.subst(sym_q, t.q());
  return out;
}

// ----------------------------- relation suite -----------------------------

RelationReport verify_category_relations(const LieType& t) {
  RelationReport rep;
  int64_t N = t.N();
  auto mat = [&](const char* text, int src, int buffer) {
    return evaluate(SliceWord::parse(text, src), t, buffer, nullptr);
  };
  auto id = [&](int arity, int buffer) {
    return OracleMatrix::identity(ipow(N, buffer + arity));
  };

  OracleMatrix rinv = r_matrix(t, true);
  OracleMatrix rmat = r_matrix(t, false);
  CapCup cc = cap_cup(t);

  rep.note("kink-pair",
           mat("U@2 . Tinv@1 . A@2 . U@2 . T@1 . A@2", 1, 0) == id(1, 0));
  rep.note("crossing-inverse",
           rinv * rmat == id(2, 0) && rmat * rinv == id(2, 0));
  rep.note("braid",
           mat("T@1 . T@2 . T@1", 3, 0) == mat("T@2 . T@1 . T@2", 3, 0));
  rep.note("skein", rinv - rmat == (id(2, 0) - cc.e) * t.qz());
  rep.note("pos-curl", mat("U@2 . T@1 . A@2", 1, 0) == id(1, 0) * t.qdelta());
  rep.note("loop-value", mat("U@1 . A@1", 0, 0) == id(0, 0) * t.qomega0());
  rep.note("zigzag", mat("U@2 . A@1", 1, 0) == id(1, 0) &&
                         mat("U@1 . A@2", 1, 0) == id(1, 0));
  rep.note("rotate-over", mat("U@3 . Tinv@2 . A@1", 2, 0) == rinv);
  rep.note("rotate-under", mat("U@3 . T@2 . A@1", 2, 0) == rmat);
  rep.note("e-projector", cc.e * cc.e == cc.e * t.qomega0());

  rep.note("dot-inverse", mat("X@1 . X@1^-1", 1, 2) == id(1, 2) &&
                              mat("X@1^-1 . X@1", 1, 2) == id(1, 2));
  rep.note("dot-through-crossing",
           mat("T@1 . X@1 . T@1", 2, 2) == mat("X@2", 2, 2));
  rep.note("cap-dot-turn", mat("X@1 . A@1", 2, 2) == mat("X@2^-1 . A@1", 2, 2));
  rep.note("cup-dot-turn", mat("U@1 . X@1", 0, 2) == mat("U@1 . X@2^-1", 0, 2));
  return rep;
}

}  // namespace skein
