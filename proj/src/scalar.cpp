#include "skein/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <optional>

namespace skein {

namespace {

SymKind sym_kind(Sym s) { return static_cast<SymKind>(s >> 24); }
uint32_t sym_index(Sym s) { return s & 0xffffffu; }

Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (!b.is_zero()) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

std::string sym_name(Sym s) {
  switch (sym_kind(s)) {
    case SymKind::delta: return "delta";
    case SymKind::z: return "z";
    case SymKind::q: return "q";
    case SymKind::v: return "v";
    case SymKind::u: return "u" + std::to_string(sym_index(s));
    case SymKind::omega: return "omega" + std::to_string(sym_index(s));
  }
  return "?";
}

bool mono_less(const Monomial& a, const Monomial& b) {
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Sym sa = i < a.size() ? a[i].first : ~0u;
    Sym sb = j < b.size() ? b[j].first : ~0u;
    Sym s = std::min(sa, sb);
    int64_t ea = (sa == s) ? a[i].second : 0;
    int64_t eb = (sb == s) ? b[j].second : 0;
    if (ea != eb) return ea < eb;
    if (sa == s) i++;
    if (sb == s) j++;
  }
  return false;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Sym sa = i < a.size() ? a[i].first : ~0u;
    Sym sb = j < b.size() ? b[j].first : ~0u;
    if (sa < sb) {
      out.push_back(a[i++]);
    } else if (sb < sa) {
      out.push_back(b[j++]);
    } else {
      int64_t e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(sa, e);
      i++, j++;
    }
  }
  return out;
}

namespace {

// Sorted descending, so the leading term sits first.
bool term_before(const Term& x, const Term& y) {
  return mono_less(y.mono, x.mono);
}

void poly_normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_before);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
      if (out.back().coeff.is_zero()) out.pop_back();
    } else if (!t.coeff.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  terms = std::move(out);
}

}  // namespace

Poly Poly::from_int(Int v) {
  Poly p;
  if (!v.is_zero()) p.terms.push_back({{}, std::move(v)});
  return p;
}

Poly Poly::variable(Sym s, int64_t exp) {
  Poly p;
  if (exp == 0) return from_int(1);
  p.terms.push_back({{{s, exp}}, Int(1)});
  return p;
}

bool Poly::is_one() const {
  return terms.size() == 1 && terms[0].mono.empty() && terms[0].coeff == 1;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms) t.coeff = -t.coeff;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly p;
  p.terms.reserve(terms.size() + o.terms.size());
  p.terms.insert(p.terms.end(), terms.begin(), terms.end());
  p.terms.insert(p.terms.end(), o.terms.begin(), o.terms.end());
  poly_normalize(p.terms);
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly p;
  p.terms.reserve(terms.size() * o.terms.size());
  for (const auto& x : terms)
    for (const auto& y : o.terms)
      p.terms.push_back({mono_mul(x.mono, y.mono), x.coeff * y.coeff});
  poly_normalize(p.terms);
  return p;
}

namespace {

// Symbols appearing in p with their maximum exponent.
std::map<Sym, int64_t> sym_degrees(const Poly& p) {
  std::map<Sym, int64_t> out;
  for (const auto& t : p.terms)
    for (const auto& [s, e] : t.mono) {
      auto it = out.find(s);
      if (it == out.end())
        out.emplace(s, e);
      else
        it->second = std::max(it->second, e);
    }
  return out;
}

Int int_content(const Poly& p) {
  Int g = 0;
  for (const auto& t : p.terms) {
    g = int_gcd(g, t.coeff);
    if (g == 1) break;
  }
  return g;
}

// View p as univariate in x: exponent -> coefficient poly, descending.
std::map<int64_t, Poly, std::greater<>> uni_view(const Poly& p, Sym x) {
  std::map<int64_t, Poly, std::greater<>> out;
  for (const auto& t : p.terms) {
    int64_t e = 0;
    Monomial rest;
    for (const auto& f : t.mono) {
      if (f.first == x)
        e = f.second;
      else
        rest.push_back(f);
    }
    out[e].terms.push_back({std::move(rest), t.coeff});
  }
  for (auto& [e, c] : out) poly_normalize(c.terms);
  return out;
}

}  // namespace

Poly poly_divexact(const Poly& a, const Poly& b) {
  assert(!b.is_zero());
  Poly rem = a;
  Poly quot;
  while (!rem.is_zero()) {
    const Term& lr = rem.terms[0];
    const Term& lb = b.terms[0];
    // leading monomial quotient
    Monomial qm;
    {
      size_t i = 0, j = 0;
      const Monomial& ma = lr.mono;
      const Monomial& mb = lb.mono;
      while (i < ma.size() || j < mb.size()) {
        Sym sa = i < ma.size() ? ma[i].first : ~0u;
        Sym sb = j < mb.size() ? mb[j].first : ~0u;
        if (sa < sb) {
          qm.push_back(ma[i++]);
        } else if (sb < sa) {
          qm.emplace_back(sb, -mb[j++].second);
        } else {
          int64_t e = ma[i].second - mb[j].second;
          if (e != 0) qm.emplace_back(sa, e);
          i++, j++;
        }
      }
    }
    assert(lr.coeff % lb.coeff == 0);
    Poly qt;
    qt.terms.push_back({qm, lr.coeff / lb.coeff});
    quot = quot + qt;
    rem = rem - qt * b;
  }
  return quot;
}

namespace {

Poly positive_lead(Poly p) {
  if (!p.terms.empty() && p.terms[0].coeff < 0) p = -p;
  return p;
}

// gcd of a multivariate a against b involving only the symbol x. Any common
// divisor lives in Z[x], so group a's terms by their monomial part outside x
// and fold univariate gcds across the groups.
Poly gcd_against_univariate(const Poly& a, const Poly& b, Sym x) {
  std::map<Monomial, Poly> buckets;
  for (const auto& t : a.terms) {
    Monomial rest;
    Monomial xpart;
    for (const auto& f : t.mono) {
      if (f.first == x)
        xpart.push_back(f);
      else
        rest.push_back(f);
    }
    buckets[std::move(rest)].terms.push_back({std::move(xpart), t.coeff});
  }
  Poly g = b;
  for (auto& [m, p] : buckets) {
    (void)m;
    poly_normalize(p.terms);
    g = poly_gcd(g, p);
    if (g.is_one()) break;
  }
  return positive_lead(g);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  if (a.is_zero()) return positive_lead(b);
  if (b.is_zero()) return positive_lead(a);
  if (a == b) return positive_lead(a);

  // monomial against anything: per-symbol minimum exponent plus integer gcd
  if (a.terms.size() == 1 || b.terms.size() == 1) {
    const Poly& m = a.terms.size() == 1 ? a : b;
    const Poly& o = a.terms.size() == 1 ? b : a;
    Monomial gm;
    for (const auto& [s, e] : m.terms[0].mono) {
      int64_t mn = e;
      for (const auto& t : o.terms) {
        int64_t eo = 0;
        for (const auto& f : t.mono)
          if (f.first == s) {
            eo = f.second;
            break;
          }
        mn = std::min(mn, eo);
        if (mn == 0) break;
      }
      if (mn > 0) gm.emplace_back(s, mn);
    }
    Poly g;
    g.terms.push_back({std::move(gm), int_gcd(m.terms[0].coeff,
                                              int_content(o))});
    return g;
  }

  // a common divisor can only involve symbols present in both operands, so
  // pick the main variable there; with no shared symbol only the integer
  // content is shared
  auto da = sym_degrees(a);
  auto db = sym_degrees(b);
  bool have_common = false;
  Sym x = 0;
  int64_t best_score = 0;
  for (const auto& [s, ea] : da) {
    auto it = db.find(s);
    if (it == db.end()) continue;
    int64_t score = std::max(ea, it->second);
    if (!have_common || score < best_score) {
      x = s;
      best_score = score;
      have_common = true;
    }
  }
  if (!have_common)
    return Poly::from_int(int_gcd(int_content(a), int_content(b)));
  if (db.size() == 1 && da.size() > 1)
    return gcd_against_univariate(a, b, db.begin()->first);
  if (da.size() == 1 && db.size() > 1)
    return gcd_against_univariate(b, a, da.begin()->first);

  auto content_in = [&](const std::map<int64_t, Poly, std::greater<>>& u) {
    Poly c;
    for (const auto& [e, coef] : u) {
      (void)e;
      c = poly_gcd(c, coef);
      if (c.is_one()) break;
    }
    return c;
  };

  auto ua = uni_view(a, x);
  auto ub = uni_view(b, x);
  Poly ca = content_in(ua);
  Poly cb = content_in(ub);
  Poly cg = poly_gcd(ca, cb);

  Poly pa = poly_divexact(a, ca);
  Poly pb = poly_divexact(b, cb);

  // primitive PRS in x
  auto deg = [&](const Poly& p) {
    auto u = uni_view(p, x);
    return u.empty() ? int64_t(-1) : u.begin()->first;
  };
  if (deg(pa) < deg(pb)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    auto vb = uni_view(pb, x);
    int64_t dbx = vb.begin()->first;
    if (dbx == 0) {
      // pb is primitive of degree zero, hence a unit up to sign
      pa = Poly::from_int(1);
      break;
    }
    // pseudo remainder of pa by pb in x, cancelling the shared part of the
    // leading coefficients at each step to keep the intermediates small
    Poly lb = vb.begin()->second;
    Poly r = pa;
    while (true) {
      auto vr = uni_view(r, x);
      if (vr.empty()) break;
      int64_t dr = vr.begin()->first;
      if (dr < dbx) break;
      Poly lr = vr.begin()->second;
      Poly g0 = poly_gcd(lb, lr);
      Poly mb = poly_divexact(lb, g0);
      Poly mr = poly_divexact(lr, g0);
      r = mb * r - mr * Poly::variable(x, dr - dbx) * pb;
      if (!r.is_zero()) {
        Int ic = int_content(r);
        if (ic > 1)
          for (auto& t : r.terms) t.coeff /= ic;
      }
    }
    if (!r.is_zero()) {
      auto vrr = uni_view(r, x);
      Poly cr = content_in(vrr);
      r = poly_divexact(r, cr);
    }
    pa = pb;
    pb = r;
  }
  Poly g = cg * pa;
  return positive_lead(g);
}

// ---------------------------------------------------------------------------

namespace {

// Split a Laurent polynomial into (shift monomial, genuine polynomial with
// per-symbol minimum exponent zero).
std::pair<Monomial, Poly> laurent_split(const Poly& p) {
  if (p.is_zero()) return {{}, p};
  std::map<Sym, int64_t> mins;
  std::map<Sym, size_t> seen;
  for (const auto& t : p.terms)
    for (const auto& [s, e] : t.mono) {
      auto it = mins.find(s);
      if (it == mins.end())
        mins[s] = e;
      else
        it->second = std::min(it->second, e);
      seen[s]++;
    }
  // a symbol missing from some term has exponent 0 there
  for (auto& [s, m] : mins)
    if (seen[s] < p.terms.size()) m = std::min<int64_t>(m, 0);
  Monomial shift;
  for (const auto& [s, m] : mins)
    if (m != 0) shift.emplace_back(s, m);
  if (shift.empty()) return {shift, p};
  Monomial unshift;
  for (const auto& [s, m] : shift) unshift.emplace_back(s, -m);
  Poly q;
  q.terms.reserve(p.terms.size());
  for (const auto& t : p.terms)
    q.terms.push_back({mono_mul(t.mono, unshift), t.coeff});
  poly_normalize(q.terms);
  return {shift, q};
}

Poly mono_poly(const Monomial& m) {
  Poly p;
  p.terms.push_back({m, Int(1)});
  return p;
}

}  // namespace

Scalar Scalar::from_int(long v) {
  Scalar s;
  s.num = Poly::from_int(v);
  return s;
}

Scalar Scalar::from_poly(Poly p) {
  Scalar s;
  s.num = std::move(p);
  return s;
}

Scalar Scalar::sym(Sym s, int64_t exp) {
  Scalar r;
  r.num = Poly::variable(s, exp);
  return r;
}

Scalar Scalar::ratio(Poly n, Poly d) {
  if (d.is_zero()) throw NonUnit("division by zero");
  if (n.is_zero()) return Scalar();

  auto [sn, pn] = laurent_split(n);
  auto [sd, pd] = laurent_split(d);
  Poly g = poly_gcd(pn, pd);
  if (!g.is_one()) {
    pn = poly_divexact(pn, g);
    pd = poly_divexact(pd, g);
  }
  if (pd.terms[0].coeff < 0) {
    pn = -pn;
    pd = -pd;
  }
  Monomial shift = sn;
  for (auto [s, e] : sd) shift = mono_mul(shift, {{s, -e}});
  Scalar out;
  out.num = pn * mono_poly(shift);
  out.den = pd;
  return out;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num = -s.num;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (den == o.den) return ratio(num + o.num, den);
  return ratio(num * o.den + o.num * den, den * o.den);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  return ratio(num * o.num, den * o.den);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw NonUnit("division by zero");
  return ratio(num * o.den, den * o.num);
}

Scalar Scalar::invert() const {
  if (is_zero()) throw NonUnit("inverting zero");
  return ratio(den, num);
}

Scalar Scalar::pow(int64_t e) const {
  if (e == 0) return from_int(1);
  Scalar base = e < 0 ? invert() : *this;
  uint64_t k = e < 0 ? -(uint64_t)e : (uint64_t)e;
  Scalar acc = from_int(1);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Scalar Scalar::subst(Sym s, const Scalar& value) const {
  auto sub_poly = [&](const Poly& p) {
    Scalar acc;
    for (const auto& t : p.terms) {
      Monomial rest;
      int64_t e = 0;
      for (const auto& f : t.mono) {
        if (f.first == s)
          e = f.second;
        else
          rest.push_back(f);
      }
      Poly m;
      m.terms.push_back({rest, t.coeff});
      acc += from_poly(m) * value.pow(e);
    }
    return acc;
  };
  return sub_poly(num) / sub_poly(den);
}

const Scalar& omega0_closed() {
  static const Scalar w = [] {
    Scalar zinv = Scalar::sym(sym_z, -1);
    Scalar d = Scalar::sym(sym_delta);
    return Scalar::from_int(1) + zinv * (d - d.pow(-1));
  }();
  return w;
}

// -------------------------------- printing --------------------------------

namespace {

std::string poly_to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms) {
    if (!first) out += " + ";
    first = false;
    if (t.mono.empty()) {
      out += t.coeff.str();
      continue;
    }
    if (t.coeff == -1)
      out += "-";
    else if (t.coeff != 1)
      out += t.coeff.str() + "*";
    bool f2 = true;
    for (const auto& [s, e] : t.mono) {
      if (!f2) out += "*";
      f2 = false;
      out += sym_name(s);
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace

std::string Scalar::to_string() const {
  if (den.is_one() && *this == omega0_closed()) return "omega0";
  std::string out = poly_to_string(num);
  if (!den.is_one()) out += " / (" + poly_to_string(den) + ")";
  return out;
}

// -------------------------------- parsing ---------------------------------

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;

  explicit Lexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) i++;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      i++;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, 1, static_cast<int>(i) + 1);
  }
  int64_t integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && s[i] == '-') i++;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) i++;
    if (i == digits) fail("expected integer");
    return std::stoll(s.substr(start, i - start));
  }
  Int big_integer() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && s[i] == '-') i++;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) i++;
    if (i == digits) fail("expected integer");
    return Int(s.substr(start, i - start));
  }
  std::string name() {
    skip_ws();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      i++;
    if (i == start) fail("expected symbol name");
    return s.substr(start, i - start);
  }
};

Scalar parse_factor(Lexer& lx) {
  std::string n = lx.name();
  int64_t exp = 1;
  if (lx.eat('^')) exp = lx.integer();

  auto tail_index = [&](size_t preflen) -> std::optional<uint32_t> {
    if (n.size() <= preflen) return std::nullopt;
    for (size_t k = preflen; k < n.size(); k++)
      if (!std::isdigit(static_cast<unsigned char>(n[k]))) return std::nullopt;
    return static_cast<uint32_t>(std::stoul(n.substr(preflen)));
  };

  if (n == "omega0") return omega0_closed().pow(exp);
  if (n == "delta") return Scalar::sym(sym_delta, exp);
  if (n == "z") return Scalar::sym(sym_z, exp);
  if (n == "q") return Scalar::sym(sym_q, exp);
  if (n == "v") return Scalar::sym(sym_v, exp);
  if (n.rfind("u", 0) == 0) {
    if (auto idx = tail_index(1); idx && *idx >= 1)
      return Scalar::sym(sym_u(*idx), exp);
  }
  if (n.rfind("omega", 0) == 0) {
    if (auto idx = tail_index(5); idx && *idx >= 1)
      return Scalar::sym(sym_omega(*idx), exp);
  }
  lx.fail("unknown symbol '" + n + "'");
}

Scalar parse_term(Lexer& lx) {
  bool neg = false;
  char c = lx.peek();
  Scalar acc = Scalar::from_int(1);
  bool have_coeff = false;
  if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
    // either a numeric coefficient or a bare '-' prefix on a symbol
    lx.skip_ws();
    size_t save = lx.i;
    if (c == '-') {
      lx.i++;
      lx.skip_ws();
      if (lx.i < lx.s.size() &&
          !std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
        neg = true;
      } else {
        lx.i = save;
      }
    }
    if (!neg) {
      Int v = lx.big_integer();
      acc = Scalar::from_poly(Poly::from_int(v));
      have_coeff = true;
      if (!lx.eat('*')) return acc;
    }
  }
  // factor list
  while (true) {
    acc = acc * parse_factor(lx);
    if (!lx.eat('*')) break;
  }
  (void)have_coeff;
  return neg ? -acc : acc;
}

Scalar parse_sum(Lexer& lx) {
  Scalar acc = parse_term(lx);
  while (lx.eat('+')) acc = acc + parse_term(lx);
  return acc;
}

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  Lexer lx(text);
  Scalar s = parse_sum(lx);
  if (lx.eat('/')) {
    if (!lx.eat('(')) lx.fail("expected '(' after '/'");
    Scalar d = parse_sum(lx);
    if (!lx.eat(')')) lx.fail("expected ')'");
    s = s / d;
  }
  if (!lx.eof()) lx.fail("trailing input");
  return s;
}

}  // namespace skein
