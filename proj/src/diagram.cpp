#include "skein/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "json.hpp"

namespace skein {

int slice_apply(int r, const Slice& s, int slice_index) {
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << what << " at slice " << slice_index << " (row of " << r << ")";
    throw ArityMismatch(os.str(), slice_index);
  };
  if (s.pos < 1) fail("position must be at least 1");
  switch (s.kind) {
    case SliceKind::cap:
      if (s.pos + 1 > r) fail("cap needs two strands");
      return r - 2;
    case SliceKind::cup:
      if (s.pos > r + 1) fail("cup position past the row");
      return r + 2;
    case SliceKind::over:
    case SliceKind::under:
      if (s.pos + 1 > r) fail("crossing needs two strands");
      return r;
    case SliceKind::dot:
      if (s.pos > r) fail("dot position past the row");
      return r;
  }
  fail("unknown slice");
  return r;
}

int SliceWord::target() const {
  int r = source;
  for (size_t i = 0; i < slices.size(); i++)
    r = slice_apply(r, slices[i], static_cast<int>(i) + 1);
  return r;
}

std::string SliceWord::to_text() const {
  std::ostringstream os;
  for (size_t i = 0; i < slices.size(); i++) {
    if (i) os << " . ";
    const Slice& s = slices[i];
    switch (s.kind) {
      case SliceKind::cap:
        os << "A@" << s.pos;
        break;
      case SliceKind::cup:
        os << "U@" << s.pos;
        break;
      case SliceKind::over:
        os << "T@" << s.pos;
        break;
      case SliceKind::under:
        os << "Tinv@" << s.pos;
        break;
      case SliceKind::dot:
        os << "X@" << s.pos << "^" << s.exp;
        break;
    }
  }
  return os.str();
}

namespace {

struct WordLexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit WordLexer(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line, col);
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void advance() {
    if (text[pos] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    pos++;
  }
  void skip_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                       peek() == '\r'))
      advance();
  }
  std::string name() {
    std::string out;
    while (!done() && std::isalpha(static_cast<unsigned char>(peek()))) {
      out.push_back(peek());
      advance();
    }
    if (out.empty()) fail("expected a generator name");
    return out;
  }
  int64_t integer(bool allow_sign) {
    bool neg = false;
    if (allow_sign && !done() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      advance();
    }
    if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected an integer");
    int64_t v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > (int64_t(1) << 40)) fail("integer out of range");
      advance();
    }
    return neg ? -v : v;
  }
  void expect(char c, const std::string& what) {
    if (done() || peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
    advance();
  }
};

}  // namespace

SliceWord SliceWord::parse(const std::string& text, int source_hint) {
  WordLexer lex(text);
  std::vector<Slice> slices;
  lex.skip_ws();
  bool expect_more = false;
  while (!lex.done() || expect_more) {
    std::string n = lex.name();
    lex.expect('@', "after the generator name");
    int64_t p = lex.integer(false);
    if (p < 1) lex.fail("positions are 1-based");
    Slice s;
    if (n == "A")
      s = cap_slice(static_cast<int>(p));
    else if (n == "U")
      s = cup_slice(static_cast<int>(p));
    else if (n == "T")
      s = over_slice(static_cast<int>(p));
    else if (n == "Tinv")
      s = under_slice(static_cast<int>(p));
    else if (n == "X") {
      int64_t k = 1;
      if (!lex.done() && lex.peek() == '^') {
        lex.advance();
        k = lex.integer(true);
      }
      s = dot_slice(static_cast<int>(p), k);
    } else {
      lex.fail("unknown generator '" + n + "'");
    }
    slices.push_back(s);
    lex.skip_ws();
    expect_more = false;
    if (!lex.done()) {
      lex.expect('.', "between slices");
      lex.skip_ws();
      expect_more = true;
    }
  }

  SliceWord w;
  w.slices = std::move(slices);
  if (source_hint >= 0) {
    w.source = source_hint;
  } else {
    // smallest source arity meeting every slice's row requirement
    int delta = 0;
    int m = 0;
    for (const Slice& s : w.slices) {
      int req = 0;
      switch (s.kind) {
        case SliceKind::cap:
        case SliceKind::over:
        case SliceKind::under:
          req = s.pos + 1;
          break;
        case SliceKind::cup:
          req = s.pos - 1;
          break;
        case SliceKind::dot:
          req = s.pos;
          break;
      }
      m = std::max(m, req - delta);
      if (s.kind == SliceKind::cap) delta -= 2;
      if (s.kind == SliceKind::cup) delta += 2;
    }
    w.source = m;
  }
  w.target();  // validate, throws ArityMismatch with the slice index
  return w;
}

SliceWord flip_word(const SliceWord& w) {
  SliceWord out;
  out.source = w.target();
  out.slices.reserve(w.slices.size());
  for (auto it = w.slices.rbegin(); it != w.slices.rend(); ++it) {
    Slice s = *it;
    if (s.kind == SliceKind::cap)
      s.kind = SliceKind::cup;
    else if (s.kind == SliceKind::cup)
      s.kind = SliceKind::cap;
    out.slices.push_back(s);
  }
  return out;
}

SliceWord eta_word(int m) {
  SliceWord w;
  w.source = 0;
  for (int i = 1; i <= m; i++) w.slices.push_back(cup_slice(i));
  return w;
}

SliceWord gamma_word(int m) {
  SliceWord w;
  w.source = 2 * m;
  for (int i = m; i >= 1; i--) w.slices.push_back(cap_slice(i));
  return w;
}

// ---------------------------------------------------------------------------

Connector Connector::identity(int m) {
  Connector c;
  c.source = c.target = m;
  for (int i = 0; i < m; i++) c.pairs.emplace_back(i, 2 * m - 1 - i);
  std::sort(c.pairs.begin(), c.pairs.end());
  return c;
}

Connector Connector::from_pairs(int m, int s,
                                std::vector<std::pair<int, int>> raw) {
  Connector c;
  c.source = m;
  c.target = s;
  int n = m + s;
  std::vector<char> seen(n, 0);
  for (auto& [a, b] : raw) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n || a == b)
      throw IndexOutOfRange("connector slot out of range");
    if (seen[a] || seen[b])
      throw IndexOutOfRange("connector slot used twice");
    seen[a] = seen[b] = 1;
  }
  for (int i = 0; i < n; i++)
    if (!seen[i]) throw IndexOutOfRange("connector leaves a slot unmatched");
  std::sort(raw.begin(), raw.end());
  c.pairs = std::move(raw);
  return c;
}

int Connector::mate(int slot) const {
  for (const auto& [a, b] : pairs) {
    if (a == slot) return b;
    if (b == slot) return a;
  }
  throw IndexOutOfRange("no such slot");
}

int Connector::label_of_slot(int slot) const {
  if (slot < source) return slot + 1;
  return -(source + target - slot);
}

bool Connector::is_vertical(int k) const {
  return pairs[k].first < source && pairs[k].second >= source;
}
bool Connector::is_cap(int k) const { return pairs[k].second < source; }
bool Connector::is_cup(int k) const { return pairs[k].first >= source; }

bool Connector::crossed(int k, int l) const {
  auto [a1, b1] = pairs[k];
  auto [a2, b2] = pairs[l];
  if (a1 > a2) {
    std::swap(a1, a2);
    std::swap(b1, b2);
  }
  return a2 < b1 && b1 < b2;
}

int Connector::crossing_count() const {
  int n = strands();
  int c = 0;
  for (int k = 0; k < n; k++)
    for (int l = k + 1; l < n; l++)
      if (crossed(k, l)) c++;
  return c;
}

bool Connector::operator<(const Connector& o) const {
  if (source != o.source) return source < o.source;
  if (target != o.target) return target < o.target;
  return pairs < o.pairs;
}

namespace {

void enumerate_rec(std::vector<char>& used,
                   std::vector<std::pair<int, int>>& acc, int m, int s,
                   std::vector<Connector>& out) {
  int n = static_cast<int>(used.size());
  int first = -1;
  for (int i = 0; i < n; i++)
    if (!used[i]) {
      first = i;
      break;
    }
  if (first < 0) {
    Connector c;
    c.source = m;
    c.target = s;
    c.pairs = acc;
    out.push_back(std::move(c));
    return;
  }
  used[first] = 1;
  for (int j = first + 1; j < n; j++) {
    if (used[j]) continue;
    used[j] = 1;
    acc.emplace_back(first, j);
    enumerate_rec(used, acc, m, s, out);
    acc.pop_back();
    used[j] = 0;
  }
  used[first] = 0;
}

}  // namespace

std::vector<Connector> enumerate_connectors(int m, int s) {
  std::vector<Connector> out;
  if (m < 0 || s < 0 || (m + s) % 2 != 0) return out;
  std::vector<char> used(m + s, 0);
  std::vector<std::pair<int, int>> acc;
  enumerate_rec(used, acc, m, s, out);
  return out;
}

// ---------------------------------------------------------------------------

bool BasisDiagram::operator<(const BasisDiagram& o) const {
  if (conn < o.conn) return true;
  if (o.conn < conn) return false;
  if (dots != o.dots) return dots < o.dots;
  return bubbles < o.bubbles;
}

BasisDiagram make_basis(Connector conn, std::map<int, int64_t> dots,
                        std::vector<int64_t> bubbles) {
  BasisDiagram b;
  int n = conn.strands();
  for (auto it = dots.begin(); it != dots.end();) {
    if (it->first < 1 || it->first > n)
      throw IndexOutOfRange("dot strand index out of range");
    if (it->second == 0)
      it = dots.erase(it);
    else
      ++it;
  }
  for (int64_t j : bubbles)
    if (j < 1) throw IndexOutOfRange("loop degrees must be positive");
  std::sort(bubbles.begin(), bubbles.end());
  b.conn = std::move(conn);
  b.dots = std::move(dots);
  b.bubbles = std::move(bubbles);
  return b;
}

// ---------------------------------------------------------------------------

Morphism Morphism::zero(int m, int s) {
  Morphism f;
  f.source = m;
  f.target = s;
  return f;
}

Morphism Morphism::single(BasisDiagram b, Scalar c) {
  Morphism f;
  f.source = b.conn.source;
  f.target = b.conn.target;
  if (!c.is_zero()) f.terms.emplace(std::move(b), std::move(c));
  return f;
}

Morphism Morphism::identity(int m) {
  return single(make_basis(Connector::identity(m)));
}

void Morphism::add(const BasisDiagram& b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(b, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Morphism& Morphism::operator+=(const Morphism& o) {
  assert(source == o.source && target == o.target);
  for (const auto& [b, c] : o.terms) add(b, c);
  return *this;
}

Morphism Morphism::operator+(const Morphism& o) const {
  Morphism out = *this;
  out += o;
  return out;
}

Morphism Morphism::operator*(const Scalar& c) const {
  Morphism out = zero(source, target);
  if (c.is_zero()) return out;
  for (const auto& [b, v] : terms) out.terms.emplace(b, v * c);
  return out;
}

Morphism Morphism::operator-(const Morphism& o) const {
  Morphism out = *this;
  for (const auto& [b, c] : o.terms) out.add(b, -c);
  return out;
}

// ---------------------------------------------------------------------------

using nlohmann::ordered_json;

std::string morphism_to_json(const Morphism& f) {
  ordered_json j;
  j["source"] = f.source;
  j["target"] = f.target;
  auto terms = ordered_json::array();
  for (const auto& [b, c] : f.terms) {
    ordered_json t;
    t["coeff"] = c.to_string();
    auto conn = ordered_json::array();
    for (const auto& [lo, hi] : b.conn.pairs)
      conn.push_back({b.conn.label_of_slot(lo), b.conn.label_of_slot(hi)});
    t["connector"] = std::move(conn);
    auto dots = ordered_json::object();
    for (const auto& [k, e] : b.dots) dots[std::to_string(k)] = e;
    t["dots"] = std::move(dots);
    t["bubbles"] = b.bubbles;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j.dump(2);
}

Morphism morphism_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 1, static_cast<int>(e.byte));
  }
  int m = j.at("source").get<int>();
  int s = j.at("target").get<int>();
  Morphism f = Morphism::zero(m, s);
  for (const auto& t : j.at("terms")) {
    Scalar c = Scalar::parse(t.at("coeff").get<std::string>());
    std::vector<std::pair<int, int>> raw;
    for (const auto& p : t.at("connector")) {
      int x = p.at(0).get<int>();
      int y = p.at(1).get<int>();
      auto to_slot = [&](int label) {
        if (label > 0) {
          if (label > m) throw IndexOutOfRange("bottom label out of range");
          return label - 1;
        }
        if (label == 0 || -label > s)
          throw IndexOutOfRange("top label out of range");
        return m + s + label;
      };
      raw.emplace_back(to_slot(x), to_slot(y));
    }
    // remember the listed order so dot keys can be re-indexed after sorting
    std::vector<std::pair<int, int>> listed = raw;
    for (auto& [a, b] : listed)
      if (a > b) std::swap(a, b);
    Connector conn = Connector::from_pairs(m, s, raw);
    std::map<int, int64_t> dots;
    if (t.contains("dots"))
      for (const auto& [key, val] : t.at("dots").items()) {
        int listed_index = std::stoi(key);
        if (listed_index < 1 || listed_index > static_cast<int>(listed.size()))
          throw IndexOutOfRange("dot strand index out of range");
        const auto& pr = listed[listed_index - 1];
        auto it = std::find(conn.pairs.begin(), conn.pairs.end(), pr);
        int idx = static_cast<int>(it - conn.pairs.begin()) + 1;
        dots[idx] = val.get<int64_t>();
      }
    std::vector<int64_t> bubbles;
    if (t.contains("bubbles"))
      for (const auto& v : t.at("bubbles")) bubbles.push_back(v.get<int64_t>());
    f.add(make_basis(std::move(conn), std::move(dots), std::move(bubbles)), c);
  }
  return f;
}

}  // namespace skein
