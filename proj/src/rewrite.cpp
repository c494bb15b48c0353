#include "skein/rewrite.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace skein {

namespace {

// ---------------------------------------------------------------------------
// Geometric trace of a slice word.
//
// Every (height, column) cell of the picture is traversed exactly once. Each
// boundary strand is walked from its designated endpoint (the strand's low
// slot), collecting the events it meets: turns, crossing passes, dots. From
// the walks we derive everything the repair loop needs: which crossings are
// wrongly ordered, which dots are away from their designated endpoint, and
// the final connector for the readoff.

struct PathEvent {
  enum Kind { turn, cross, dot } kind = dot;
  int slice = 0;  // index of the slice in the word
  int pos = 0;    // the slice's own position p
  // crossing passes
  bool d1 = false;  // travels the (bottom p) -- (top p+1) diagonal
  bool up = false;  // direction of travel along the walk
  bool over = false;
  // turns: leg columns in walk order
  int entry = 0;
  int exit = 0;
  // dots
  int64_t exp = 0;
};

struct StrandPath {
  int lo = 0, hi = 0;  // slot pair
  std::vector<PathEvent> walk;
};

struct DotJob {
  int strand = 0;   // index into Trace::strands
  int devt = 0;     // walk index of the dot event
  int blocker = 0;  // walk index of the nearest turn/cross on the homeward side
};

struct Trace {
  int m = 0;
  int L = 0;
  int s = 0;
  std::vector<int> widths;  // row width at each height 0..L
  std::vector<StrandPath> strands;
  int n_loops = 0;
  std::vector<int> bad;      // slice indices of wrongly ordered crossings
  std::vector<DotJob> jobs;  // dots that still have to travel

  explicit Trace(const SliceWord& w);
  std::array<int64_t, 5> measure(const SliceWord& w) const;
};

struct WalkState {
  int h = 0, c = 0;
  bool up = true;
};

// One step through the picture. Appends the event met, if any.
WalkState step(const std::vector<Slice>& sl, WalkState st,
               std::vector<PathEvent>* out) {
  auto emit = [&](PathEvent ev) {
    if (out) out->push_back(ev);
  };
  if (st.up) {
    const Slice& g = sl[static_cast<size_t>(st.h)];
    int p = g.pos;
    switch (g.kind) {
      case SliceKind::cup:
        return {st.h + 1, st.c < p ? st.c : st.c + 2, true};
      case SliceKind::cap:
        if (st.c == p || st.c == p + 1) {
          PathEvent ev;
          ev.kind = PathEvent::turn;
          ev.slice = st.h;
          ev.pos = p;
          ev.entry = st.c;
          ev.exit = st.c == p ? p + 1 : p;
          emit(ev);
          return {st.h, ev.exit, false};
        }
        return {st.h + 1, st.c < p ? st.c : st.c - 2, true};
      case SliceKind::over:
      case SliceKind::under:
        if (st.c == p || st.c == p + 1) {
          PathEvent ev;
          ev.kind = PathEvent::cross;
          ev.slice = st.h;
          ev.pos = p;
          ev.d1 = st.c == p;
          ev.up = true;
          ev.over = ev.d1 == (g.kind == SliceKind::over);
          emit(ev);
          return {st.h + 1, st.c == p ? p + 1 : p, true};
        }
        return {st.h + 1, st.c, true};
      case SliceKind::dot:
        if (st.c == p) {
          PathEvent ev;
          ev.kind = PathEvent::dot;
          ev.slice = st.h;
          ev.pos = p;
          ev.exp = g.exp;
          emit(ev);
        }
        return {st.h + 1, st.c, true};
    }
  } else {
    const Slice& g = sl[static_cast<size_t>(st.h - 1)];
    int p = g.pos;
    switch (g.kind) {
      case SliceKind::cup:
        if (st.c == p || st.c == p + 1) {
          PathEvent ev;
          ev.kind = PathEvent::turn;
          ev.slice = st.h - 1;
          ev.pos = p;
          ev.entry = st.c;
          ev.exit = st.c == p ? p + 1 : p;
          emit(ev);
          return {st.h, ev.exit, true};
        }
        return {st.h - 1, st.c < p ? st.c : st.c - 2, false};
      case SliceKind::cap:
        return {st.h - 1, st.c < p ? st.c : st.c + 2, false};
      case SliceKind::over:
      case SliceKind::under:
        if (st.c == p || st.c == p + 1) {
          PathEvent ev;
          ev.kind = PathEvent::cross;
          ev.slice = st.h - 1;
          ev.pos = p;
          ev.d1 = st.c == p + 1;
          ev.up = false;
          ev.over = ev.d1 == (g.kind == SliceKind::over);
          emit(ev);
          return {st.h - 1, st.c == p ? p + 1 : p, false};
        }
        return {st.h - 1, st.c, false};
      case SliceKind::dot:
        if (st.c == p) {
          PathEvent ev;
          ev.kind = PathEvent::dot;
          ev.slice = st.h - 1;
          ev.pos = p;
          ev.exp = g.exp;
          emit(ev);
        }
        return {st.h - 1, st.c, false};
    }
  }
  std::abort();  // unreachable
}

Trace::Trace(const SliceWord& w) {
  m = w.source;
  L = static_cast<int>(w.slices.size());
  widths.resize(static_cast<size_t>(L) + 1);
  widths[0] = m;
  for (int h = 0; h < L; ++h)
    widths[static_cast<size_t>(h) + 1] =
        slice_apply(widths[static_cast<size_t>(h)],
                    w.slices[static_cast<size_t>(h)], h + 1);
  s = widths[static_cast<size_t>(L)];

  std::set<std::pair<int, int>> seen;
  auto run = [&](WalkState st, bool mark,
                 std::vector<PathEvent>* ev) -> WalkState {
    for (;;) {
      if (mark) seen.insert({st.h, st.c});
      if (st.up && st.h == L) return st;
      if (!st.up && st.h == 0) return st;
      st = step(w.slices, st, ev);
    }
  };
  auto slot_of = [&](const WalkState& st) {
    return st.up ? m + s - st.c : st.c - 1;
  };

  auto sweep = [&](WalkState start) {
    if (seen.count({start.h, start.c})) return;
    std::vector<PathEvent> ev;
    WalkState end = run(start, true, &ev);
    StrandPath sp;
    // classify the start port by position, not travel direction
    int sa = start.h == 0 ? start.c - 1 : m + s - start.c;
    int sb = slot_of(end);
    sp.lo = std::min(sa, sb);
    sp.hi = std::max(sa, sb);
    if (sa > sb) {
      // re-walk from the designated (low slot) endpoint
      ev.clear();
      WalkState other =
          end.up ? WalkState{L, end.c, false} : WalkState{0, end.c, true};
      run(other, false, &ev);
    }
    sp.walk = std::move(ev);
    strands.push_back(std::move(sp));
  };

  for (int c = 1; c <= m; ++c) sweep({0, c, true});
  for (int c = 1; c <= s; ++c) sweep({L, c, false});

  // anything left unvisited is a closed loop
  for (int h = 0; h <= L; ++h)
    for (int c = 1; c <= widths[static_cast<size_t>(h)]; ++c) {
      if (seen.count({h, c})) continue;
      ++n_loops;
      WalkState st{h, c, true};
      WalkState cur = st;
      do {
        seen.insert({cur.h, cur.c});
        cur = step(w.slices, cur, nullptr);
      } while (!(cur.h == st.h && cur.c == st.c && cur.up == st.up));
    }

  std::sort(strands.begin(), strands.end(),
            [](const StrandPath& a, const StrandPath& b) { return a.lo < b.lo; });

  // first traversal visit of every two-strand crossing must be the over pass
  std::map<int, std::vector<std::pair<int, int>>> passes;
  for (size_t si = 0; si < strands.size(); ++si)
    for (size_t ei = 0; ei < strands[si].walk.size(); ++ei) {
      const PathEvent& ev = strands[si].walk[ei];
      if (ev.kind == PathEvent::cross)
        passes[ev.slice].push_back(
            {static_cast<int>(si), static_cast<int>(ei)});
    }
  for (const auto& [slice, ps] : passes) {
    if (ps.size() != 2 || ps[0].first == ps[1].first) continue;
    auto first = std::min(ps[0], ps[1]);
    const PathEvent& ev =
        strands[static_cast<size_t>(first.first)].walk[static_cast<size_t>(
            first.second)];
    if (!ev.over) bad.push_back(slice);
  }
  std::sort(bad.begin(), bad.end());

  for (size_t si = 0; si < strands.size(); ++si) {
    int last_block = -1;
    for (size_t ei = 0; ei < strands[si].walk.size(); ++ei) {
      const PathEvent& ev = strands[si].walk[ei];
      if (ev.kind == PathEvent::dot) {
        if (last_block >= 0)
          jobs.push_back(
              {static_cast<int>(si), static_cast<int>(ei), last_block});
      } else {
        last_block = static_cast<int>(ei);
      }
    }
  }
}

std::array<int64_t, 5> Trace::measure(const SliceWord& w) const {
  int64_t crossings = 0;
  for (const Slice& g : w.slices)
    if (g.kind == SliceKind::over || g.kind == SliceKind::under) ++crossings;
  return {crossings, static_cast<int64_t>(jobs.size()), n_loops,
          static_cast<int64_t>(w.slices.size()),
          static_cast<int64_t>(bad.size())};
}

// ---------------------------------------------------------------------------
// Connector surgery with strand identity tracking, so stored dot exponents
// follow their strand through re-sorting.

struct Remapped {
  BasisDiagram b;
  std::vector<int> strand_map;  // old 0-based index -> new 0-based index
};

Remapped remap_basis(const BasisDiagram& b, int nm, int ns,
                     const std::function<int(int)>& slot_map, int drop = -1,
                     std::vector<std::pair<int, int>> extra = {}) {
  std::vector<std::pair<std::pair<int, int>, int>> tagged;
  for (int k = 0; k < b.conn.strands(); ++k) {
    if (k == drop) continue;
    int a = slot_map(b.conn.pairs[static_cast<size_t>(k)].first);
    int c = slot_map(b.conn.pairs[static_cast<size_t>(k)].second);
    tagged.push_back({{std::min(a, c), std::max(a, c)}, k});
  }
  for (const auto& pr : extra) tagged.push_back({pr, -1});
  std::sort(tagged.begin(), tagged.end());

  Connector cn;
  cn.source = nm;
  cn.target = ns;
  std::vector<int> map(static_cast<size_t>(b.conn.strands()), -1);
  for (size_t i = 0; i < tagged.size(); ++i) {
    cn.pairs.push_back(tagged[i].first);
    if (tagged[i].second >= 0)
      map[static_cast<size_t>(tagged[i].second)] = static_cast<int>(i);
  }

  BasisDiagram out;
  out.conn = cn;
  out.bubbles = b.bubbles;
  for (const auto& [idx, e] : b.dots) {
    int k = idx - 1;
    if (k == drop) continue;
    out.dots[map[static_cast<size_t>(k)] + 1] = e;
  }
  return {std::move(out), std::move(map)};
}

int strand_at_top(const BasisDiagram& b, int j) {
  int sl = b.conn.slot_of_top(j);
  for (int k = 0; k < b.conn.strands(); ++k)
    if (b.conn.pairs[static_cast<size_t>(k)].first == sl ||
        b.conn.pairs[static_cast<size_t>(k)].second == sl)
      return k;
  throw IndexOutOfRange("no strand at top position " + std::to_string(j));
}

bool strand_clear(const Connector& cn, int k) {
  for (int l = 0; l < cn.strands(); ++l)
    if (l != k && cn.crossed(k, l)) return false;
  return true;
}

BasisDiagram with_dot(const BasisDiagram& b, int k, int64_t e) {
  BasisDiagram out = b;
  if (e == 0)
    out.dots.erase(k + 1);
  else
    out.dots[k + 1] = e;
  return out;
}

BasisDiagram shift_dot(const BasisDiagram& b, int k, int64_t de) {
  int64_t cur = 0;
  auto it = b.dots.find(k + 1);
  if (it != b.dots.end()) cur = it->second;
  return with_dot(b, k, cur + de);
}

// ---------------------------------------------------------------------------
// The exchange of a single dot with an adjacent crossing. Moving the dot to
// the diagonally opposite corner keeps its exponent; the two correction words
// replace the crossing by the identity and by a cap-cup pair, each with one
// deposited dot. Signs and columns depend on crossing type, corner, and the
// dot's sign.

enum Corner { TL, TR, BL, BR };

struct ExchangeRow {
  int id_coef;   // multiple of z on the crossing-removed word
  bool id_left;  // deposited dot at column p (true) or p+1
  int id_sign;
  int e_coef;  // multiple of z on the cap-cup word
  bool e_left;
  int e_sign;
  bool e_above;  // deposited dot above the cap-cup pair or below it
};

ExchangeRow exchange_row(bool over, Corner corner, bool plus) {
  if (over) {
    switch (corner) {
      case TL:
        return plus ? ExchangeRow{-1, false, +1, +1, true, -1, false}
                    : ExchangeRow{+1, true, -1, -1, false, +1, true};
      case TR:
        return plus ? ExchangeRow{+1, false, +1, -1, false, +1, true}
                    : ExchangeRow{-1, true, -1, +1, true, -1, false};
      case BL:
        return plus ? ExchangeRow{-1, false, +1, +1, false, +1, true}
                    : ExchangeRow{+1, true, -1, -1, true, -1, false};
      case BR:
        return plus ? ExchangeRow{+1, false, +1, -1, true, -1, false}
                    : ExchangeRow{-1, true, -1, +1, false, +1, true};
    }
  } else {
    switch (corner) {
      case TL:
        return plus ? ExchangeRow{-1, true, +1, +1, false, -1, true}
                    : ExchangeRow{+1, false, -1, -1, true, +1, false};
      case TR:
        return plus ? ExchangeRow{+1, true, +1, -1, true, +1, false}
                    : ExchangeRow{-1, false, -1, +1, false, -1, true};
      case BL:
        return plus ? ExchangeRow{-1, true, +1, +1, true, +1, false}
                    : ExchangeRow{+1, false, -1, -1, false, -1, true};
      case BR:
        return plus ? ExchangeRow{+1, true, +1, -1, false, -1, true}
                    : ExchangeRow{-1, false, -1, +1, true, +1, false};
    }
  }
  std::abort();
}

// ---------------------------------------------------------------------------

class Engine {
 public:
  Engine(const ParamEnv& env, const RewriteOptions& opts)
      : env_(env),
        opts_(opts),
        rng_(opts.seed),
        fuel_(opts.fuel),
        del_(env.delta()),
        del_inv_(env.delta().invert()),
        z_(env.z()) {}

  Morphism normal_form(const SliceWord& w) {
    return fold(Morphism::identity(w.source), w.slices);
  }

  Morphism fold(Morphism acc, const std::vector<Slice>& slices) {
    int idx = 0;
    for (const Slice& g : slices) {
      ++idx;
      int r = slice_apply(acc.target, g, idx);
      Morphism next = Morphism::zero(acc.source, r);
      for (const auto& [b, c] : acc.terms) next += attach(b, g) * c;
      acc = std::move(next);
    }
    return acc;
  }

  Morphism window_pass(Morphism f);

 private:
  const ParamEnv& env_;
  const RewriteOptions& opts_;
  std::mt19937_64 rng_;
  int64_t fuel_;
  Scalar del_, del_inv_, z_;

  void spend() {
    if (--fuel_ <= 0) throw NonTerminating("rewrite fuel exhausted");
  }

  size_t choose(size_t n) {
    if (n <= 1 || opts_.strategy == Strategy::leftmost_innermost) return 0;
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }

  void emit(const char* rule, const std::array<int64_t, 5>& before,
            const SliceWord& after) {
    if (!opts_.trace) return;
    Trace t(after);
    auto ma = t.measure(after);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\"rule\":\"%s\",\"measure_before\":[%lld,%lld,%lld,%lld,"
                  "%lld],\"measure_after\":[%lld,%lld,%lld,%lld,%lld]}",
                  rule, static_cast<long long>(before[0]),
                  static_cast<long long>(before[1]),
                  static_cast<long long>(before[2]),
                  static_cast<long long>(before[3]),
                  static_cast<long long>(before[4]),
                  static_cast<long long>(ma[0]), static_cast<long long>(ma[1]),
                  static_cast<long long>(ma[2]), static_cast<long long>(ma[3]),
                  static_cast<long long>(ma[4]));
    opts_.trace(buf);
  }

  // -- fast structural cases ------------------------------------------------

  Remapped insert_cup(const BasisDiagram& b, int i) {
    int m = b.conn.source, s = b.conn.target, n = m + s;
    auto slot_map = [=](int u) {
      if (u < m) return u;
      int j = n - u;
      return j >= i ? u : u + 2;
    };
    return remap_basis(b, m, s + 2, slot_map, -1,
                       {{n + 1 - i, n + 2 - i}});
  }

  Remapped swap_tops(const BasisDiagram& b, int i) {
    int n = b.conn.slots();
    int t1 = n - i, t2 = n - i - 1;
    auto slot_map = [=](int u) {
      if (u == t1) return t2;
      if (u == t2) return t1;
      return u;
    };
    return remap_basis(b, b.conn.source, b.conn.target, slot_map);
  }

  Remapped excise_cup(const BasisDiagram& b, int k_cup, int i) {
    int m = b.conn.source, s = b.conn.target, n = m + s;
    auto slot_map = [=](int u) {
      if (u < m) return u;
      int j = n - u;
      return j < i ? u - 2 : u;
    };
    return remap_basis(b, m, s - 2, slot_map, k_cup);
  }

  // dots stored at a designated cup leg sitting at top position i or i+1
  // would end up underneath a newly stacked slice, which the data cases
  // cannot express
  bool dots_block(const BasisDiagram& b, int i) {
    int n = b.conn.slots();
    for (int j : {i, i + 1}) {
      int k = strand_at_top(b, j);
      if (b.conn.is_cup(k) && b.dots.count(k + 1) &&
          n - b.conn.pairs[static_cast<size_t>(k)].first == j)
        return true;
    }
    return false;
  }

  // -- generator attachment --------------------------------------------------

  Morphism attach(const BasisDiagram& b, const Slice& g) {
    spend();
    const Connector& cn = b.conn;
    switch (g.kind) {
      case SliceKind::cup:
        return Morphism::single(insert_cup(b, g.pos).b);

      case SliceKind::dot: {
        if (g.exp == 0) return Morphism::single(b);
        int k = strand_at_top(b, g.pos);
        if (cn.is_cup(k) &&
            cn.slots() - cn.pairs[static_cast<size_t>(k)].first == g.pos)
          return Morphism::single(shift_dot(b, k, g.exp));
        if (strand_clear(cn, k)) {
          // slides freely along its strand; the single turn of a cup
          // negates the exponent
          int64_t de = cn.is_cup(k) ? -g.exp : g.exp;
          return Morphism::single(shift_dot(b, k, de));
        }
        return repair_from(b, g);
      }

      case SliceKind::over:
      case SliceKind::under: {
        int kl = strand_at_top(b, g.pos);
        int kr = strand_at_top(b, g.pos + 1);
        bool pos_over = g.kind == SliceKind::over;
        if (kl == kr) {
          // a cup with adjacent legs: the new crossing is a curl
          if (!b.dots.count(kl + 1))
            return Morphism::single(b) * (pos_over ? del_inv_ : del_);
          return repair_from(b, g);
        }
        if (cn.crossed(kl, kr)) {
          if (dots_block(b, g.pos)) return repair_from(b, g);
          // peel the existing crossing off the top: b = X(t0) . b_minus
          Remapped bm = swap_tops(b, g.pos);
          bool t0_over = kr < kl;
          if (pos_over != t0_over) return Morphism::single(bm.b);
          // doubling the same crossing: square of the skein relation
          Morphism e_part =
              fold(Morphism::single(bm.b), {cap_slice(g.pos), cup_slice(g.pos)});
          if (t0_over)
            return Morphism::single(bm.b) + Morphism::single(b) * z_ -
                   e_part * (z_ * del_inv_);
          return Morphism::single(bm.b) - Morphism::single(b) * z_ +
                 e_part * (z_ * del_);
        }
        if (dots_block(b, g.pos)) return repair_from(b, g);
        Remapped bp = swap_tops(b, g.pos);
        int over_old = pos_over ? kl : kr;
        int under_old = pos_over ? kr : kl;
        if (bp.strand_map[static_cast<size_t>(over_old)] <
            bp.strand_map[static_cast<size_t>(under_old)])
          return Morphism::single(bp.b);
        // wrong sense: exchange the crossing through the skein relation
        Slice other = pos_over ? under_slice(g.pos) : over_slice(g.pos);
        Morphism main = attach(b, other);
        Morphism e_part =
            fold(Morphism::single(b), {cap_slice(g.pos), cup_slice(g.pos)});
        if (pos_over)
          return main + Morphism::single(b) * z_ - e_part * z_;
        return main - Morphism::single(b) * z_ + e_part * z_;
      }

      case SliceKind::cap: {
        int kl = strand_at_top(b, g.pos);
        int kr = strand_at_top(b, g.pos + 1);
        if (kl == kr) {
          // closing an adjacent-legged cup births a free loop carrying the
          // cup's stored exponent, negated by the turn
          int64_t stored = 0;
          auto it = b.dots.find(kl + 1);
          if (it != b.dots.end()) stored = it->second;
          BasisDiagram base = with_dot(b, kl, 0);
          Remapped cut = excise_cup(base, kl, g.pos);
          return close_loop(cut.b, -stored, g.pos - 1);
        }
        if (cn.crossed(kl, kr)) {
          if (dots_block(b, g.pos)) return repair_from(b, g);
          Remapped bm = swap_tops(b, g.pos);
          bool t0_over = kr < kl;
          return attach(bm.b, g) * (t0_over ? del_inv_ : del_);
        }
        return repair_from(b, g);
      }
    }
    std::abort();
  }

  // -- word repair ------------------------------------------------------------

  Morphism reattach_bubbles(Morphism f, const std::vector<int64_t>& bub) {
    if (bub.empty()) return f;
    Morphism out = Morphism::zero(f.source, f.target);
    for (const auto& [b, c] : f.terms) {
      BasisDiagram nb = b;
      nb.bubbles.insert(nb.bubbles.end(), bub.begin(), bub.end());
      std::sort(nb.bubbles.begin(), nb.bubbles.end());
      out.add(nb, c);
    }
    return out;
  }

  Morphism repair_from(const BasisDiagram& b, const Slice& g) {
    BasisDiagram lean = b;
    lean.bubbles.clear();
    SliceWord w = canonical_word(lean);
    w.slices.push_back(g);
    return reattach_bubbles(repair(std::move(w)), b.bubbles);
  }

  Morphism repair(SliceWord w) {
    spend();
    Trace tr(w);
    if (tr.n_loops)
      throw SkeinError("internal: closed loop inside word repair");

    if (!tr.bad.empty()) {
      int k = tr.bad[choose(tr.bad.size())];
      const Slice s = w.slices[static_cast<size_t>(k)];
      bool was_over = s.kind == SliceKind::over;

      SliceWord w1 = w;
      w1.slices[static_cast<size_t>(k)].kind =
          was_over ? SliceKind::under : SliceKind::over;
      SliceWord w2 = w;
      w2.slices.erase(w2.slices.begin() + k);
      SliceWord w3 = w;
      w3.slices[static_cast<size_t>(k)] = cap_slice(s.pos);
      w3.slices.insert(w3.slices.begin() + k + 1, cup_slice(s.pos));

      emit("flip-crossing", tr.measure(w), w1);
      Morphism out = repair(std::move(w1));
      Morphism near = normal_form(w2);
      Morphism split = normal_form(w3);
      if (was_over) {
        out += near * z_;
        out += split * (-z_);
      } else {
        out += near * (-z_);
        out += split * z_;
      }
      return out;
    }

    if (!tr.jobs.empty()) {
      const DotJob job = tr.jobs[choose(tr.jobs.size())];
      const StrandPath& st = tr.strands[static_cast<size_t>(job.strand)];
      const PathEvent dev = st.walk[static_cast<size_t>(job.devt)];
      const PathEvent blk = st.walk[static_cast<size_t>(job.blocker)];
      int d = dev.slice;

      if (blk.kind == PathEvent::turn) {
        // around a turn the whole exponent moves at once and flips sign
        SliceWord w1 = w;
        w1.slices.erase(w1.slices.begin() + d);
        int kt = blk.slice - (d < blk.slice ? 1 : 0);
        bool cup_turn =
            w.slices[static_cast<size_t>(blk.slice)].kind == SliceKind::cup;
        int at = cup_turn ? kt + 1 : kt;
        w1.slices.insert(w1.slices.begin() + at,
                         dot_slice(blk.entry, -dev.exp));
        emit("slide-dot-turn", tr.measure(w), w1);
        return repair(std::move(w1));
      }

      // a crossing: move one unit of the exponent through it
      int64_t sgn = dev.exp > 0 ? 1 : -1;
      int k = blk.slice;
      SliceWord base = w;
      if (dev.exp == sgn) {
        base.slices.erase(base.slices.begin() + d);
        if (d < k) --k;
      } else {
        base.slices[static_cast<size_t>(d)].exp = dev.exp - sgn;
      }
      int p = blk.pos;
      bool exit_above = blk.up;
      int exit_col = blk.d1 ? (blk.up ? p + 1 : p) : (blk.up ? p : p + 1);
      Corner corner = exit_above ? (exit_col == p ? TL : TR)
                                 : (exit_col == p ? BL : BR);
      bool over_kind =
          w.slices[static_cast<size_t>(blk.slice)].kind == SliceKind::over;
      ExchangeRow row = exchange_row(over_kind, corner, sgn > 0);

      // main term: the unit lands on the diagonally opposite corner
      SliceWord w1 = base;
      bool entry_above = !exit_above;
      int entry_col = exit_col == p ? p + 1 : p;
      w1.slices.insert(w1.slices.begin() + (entry_above ? k + 1 : k),
                       dot_slice(entry_col, sgn));

      SliceWord w2 = base;
      w2.slices[static_cast<size_t>(k)] =
          dot_slice(row.id_left ? p : p + 1, row.id_sign);

      SliceWord w3 = base;
      w3.slices[static_cast<size_t>(k)] = cap_slice(p);
      w3.slices.insert(w3.slices.begin() + k + 1, cup_slice(p));
      {
        int col = row.e_left ? p : p + 1;
        int at = row.e_above ? k + 2 : k;
        w3.slices.insert(w3.slices.begin() + at, dot_slice(col, row.e_sign));
      }

      emit("slide-dot-crossing", tr.measure(w), w1);
      Morphism out = repair(std::move(w1));
      out += normal_form(w2) * (z_ * Scalar::from_int(row.id_coef));
      out += normal_form(w3) * (z_ * Scalar::from_int(row.e_coef));
      return out;
    }

    return readoff(tr);
  }

  Morphism readoff(const Trace& tr) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(tr.strands.size());
    for (const StrandPath& st : tr.strands) pairs.push_back({st.lo, st.hi});
    Connector cn = Connector::from_pairs(tr.m, tr.s, pairs);

    std::map<int, int64_t> dots;
    for (size_t si = 0; si < tr.strands.size(); ++si) {
      int64_t e = 0;
      for (const PathEvent& ev : tr.strands[si].walk)
        if (ev.kind == PathEvent::dot) e += ev.exp;
      if (e != 0) dots[static_cast<int>(si) + 1] = e;
    }

    // a crossing both of whose passes lie on one strand is a curl; it
    // straightens against a factor of delta. Crossings between distinct
    // strands are descending here and contribute nothing.
    int64_t eps_sum = 0;
    std::map<int, std::vector<std::pair<size_t, const PathEvent*>>> passes;
    for (size_t si = 0; si < tr.strands.size(); ++si)
      for (const PathEvent& ev : tr.strands[si].walk)
        if (ev.kind == PathEvent::cross) passes[ev.slice].push_back({si, &ev});
    for (const auto& [slice, ps] : passes) {
      if (ps.size() != 2 || ps[0].first != ps[1].first) continue;
      const PathEvent* overp = ps[0].second->over ? ps[0].second : ps[1].second;
      const PathEvent* underp =
          ps[0].second->over ? ps[1].second : ps[0].second;
      auto dir = [](const PathEvent* ev) {
        int dx = ev->d1 ? 1 : -1;
        if (!ev->up) dx = -dx;
        return std::pair<int, int>{dx, ev->up ? 1 : -1};
      };
      auto [ux, uy] = dir(underp);
      auto [ox, oy] = dir(overp);
      int cross = ux * oy - uy * ox;
      eps_sum += cross > 0 ? 1 : -1;
    }

    return Morphism::single(make_basis(std::move(cn), std::move(dots)),
                            del_.pow(-eps_sum));
  }

  // -- loop extraction ---------------------------------------------------------

  using LoopCombo = std::vector<std::pair<Scalar, std::vector<int64_t>>>;

  LoopCombo loop_expansion(int64_t j) {
    if (j >= 1) return {{Scalar::from_int(1), {j}}};
    if (j == 0) return {{env_.omega(0), {}}};
    int64_t a = -j;
    LoopCombo out;
    auto push_scaled = [&](const LoopCombo& src, const Scalar& c) {
      for (const auto& [cc, degs] : src) out.push_back({cc * c, degs});
    };
    push_scaled(loop_expansion(a), del_inv_ * del_inv_);
    Scalar dz = del_inv_ * z_;
    for (int64_t l = 1; l < a; ++l) {
      push_scaled(loop_expansion(2 * l - a), dz);
      LoopCombo left = loop_expansion(l);
      LoopCombo right = loop_expansion(l - a);
      for (const auto& [c1, d1] : left)
        for (const auto& [c2, d2] : right) {
          std::vector<int64_t> degs = d1;
          degs.insert(degs.end(), d2.begin(), d2.end());
          out.push_back({-(dz * c1 * c2), std::move(degs)});
        }
    }
    return out;
  }

  Morphism attach_bubble(const BasisDiagram& b, int64_t j) {
    if (env_.bubbles_formal()) {
      BasisDiagram nb = b;
      nb.bubbles.insert(
          std::upper_bound(nb.bubbles.begin(), nb.bubbles.end(), j), j);
      return Morphism::single(nb);
    }
    return Morphism::single(b) * env_.omega(j);
  }

  // A loop of positive degree j sits immediately right of the strands whose
  // top endpoints occupy columns 1..col. One winding of the loop unwraps
  // into a crossing pair with the strand at this column, after which the
  // closing cap turns over; the dot exchange then resolves the threaded
  // pair. Every loop spawned along the way has strictly smaller degree, so
  // the walk terminates.
  Morphism slide_loop(const BasisDiagram& b, int64_t j, int col) {
    spend();
    if (col == 0) return attach_bubble(b, j);
    if (j < 1) {
      Morphism out = Morphism::zero(b.conn.source, b.conn.target);
      for (auto& [c, degs] : loop_expansion(j)) {
        std::sort(degs.begin(), degs.end(), std::greater<int64_t>());
        Morphism acc = Morphism::single(b, c);
        for (int64_t d : degs) {
          Morphism next = Morphism::zero(acc.source, acc.target);
          for (const auto& [bt, ct] : acc.terms)
            next += slide_loop(bt, d, col) * ct;
          acc = std::move(next);
        }
        out += acc;
      }
      return out;
    }
    std::vector<Slice> word;
    word.push_back(cup_slice(col + 1));
    if (j > 1) word.push_back(dot_slice(col + 1, j - 1));
    word.push_back(over_slice(col));
    word.push_back(under_slice(col + 1));
    word.push_back(dot_slice(col, 1));
    word.push_back(cap_slice(col));
    return fold(Morphism::single(b), word);
  }

  Morphism close_loop(const BasisDiagram& cut, int64_t j0, int cols) {
    Morphism out = Morphism::zero(cut.conn.source, cut.conn.target);
    for (auto& [c0, degs] : loop_expansion(j0)) {
      std::sort(degs.begin(), degs.end(), std::greater<int64_t>());
      Morphism acc = Morphism::single(cut, c0);
      for (int64_t j : degs) {
        Morphism next = Morphism::zero(out.source, out.target);
        for (const auto& [bt, ct] : acc.terms)
          next += slide_loop(bt, j, cols) * ct;
        acc = std::move(next);
      }
      out += acc;
    }
    return out;
  }

 public:
  Morphism loop_value(int64_t j) {
    Morphism out = Morphism::zero(0, 0);
    BasisDiagram empty = make_basis(Connector::from_pairs(0, 0, {}));
    for (auto& [c, degs] : loop_expansion(j)) {
      if (env_.bubbles_formal()) {
        std::sort(degs.begin(), degs.end());
        out.add(make_basis(empty.conn, {}, degs), c);
      } else {
        Scalar cc = c;
        for (int64_t deg : degs) cc *= env_.omega(deg);
        out.add(empty, cc);
      }
    }
    return out;
  }

 private:
  // -- cyclotomic exponent windows ---------------------------------------------

  struct Violation {
    BasisDiagram b;
    Scalar c;
    int k = 0;
    int64_t e = 0;
    bool bottom = false;
    int pos = 0;  // designated bottom position, or the cup's left-leg column
  };

  std::optional<Violation> find_violation(const Morphism& f) {
    for (const auto& [b, c] : f.terms) {
      const Connector& cn = b.conn;
      for (const auto& [idx, e] : b.dots) {
        int k = idx - 1;
        const auto& pr = cn.pairs[static_cast<size_t>(k)];
        if (pr.first < cn.source) {
          if (e < env_.window_bot_lo() || e > env_.window_bot_hi())
            return Violation{b, c, k, e, true, pr.first + 1};
        } else {
          if (e < env_.window_top_lo() || e > env_.window_top_hi())
            return Violation{b, c, k, e, false, cn.slots() - pr.second};
        }
      }
    }
    return std::nullopt;
  }

  // one monic-relation step on an exponent stored at a bottom designated
  // endpoint in column 1; pure data because nothing separates the dot from
  // the boundary
  Morphism bottom_step(const BasisDiagram& b, int k, int64_t e) {
    const std::vector<Scalar> fc = env_.bmw_f_coeffs();
    int64_t a = env_.a();
    Morphism out = Morphism::zero(b.conn.source, b.conn.target);
    if (e > env_.window_bot_hi()) {
      for (int64_t jx = 0; jx < a; ++jx)
        out.add(with_dot(b, k, e - a + jx), -fc[static_cast<size_t>(jx)]);
    } else {
      Scalar b0_inv = fc[0].invert();
      for (int64_t jx = 1; jx <= a; ++jx) {
        Scalar cj = jx == a ? Scalar::from_int(1) : fc[static_cast<size_t>(jx)];
        out.add(with_dot(b, k, e + jx), -(cj * b0_inv));
      }
    }
    return out;
  }

  Morphism windowed_bottom1(const BasisDiagram& u, const Scalar& cu) {
    Morphism out = Morphism::zero(u.conn.source, u.conn.target);
    std::vector<std::pair<BasisDiagram, Scalar>> work{{u, cu}};
    while (!work.empty()) {
      spend();
      auto [t, c] = std::move(work.back());
      work.pop_back();
      int64_t e = 0;
      auto it = t.dots.find(1);
      if (it != t.dots.end()) e = it->second;
      bool designated_bottom1 =
          !t.conn.pairs.empty() && t.conn.pairs[0].first == 0;
      if (!designated_bottom1 || (e >= env_.window_bot_lo() &&
                                  e <= env_.window_bot_hi())) {
        out.add(t, c);
        continue;
      }
      for (const auto& [b2, c2] : bottom_step(t, 0, e).terms)
        work.push_back({b2, c2 * c});
    }
    return out;
  }

  Morphism fix_bottom_far(const BasisDiagram& b, int p) {
    int m = b.conn.source;
    SliceWord walk;
    walk.source = m;
    for (int i = 1; i < p; ++i) walk.slices.push_back(over_slice(i));
    SliceWord down = canonical_word(b);
    SliceWord whole;
    whole.source = m;
    whole.slices = walk.slices;
    whole.slices.insert(whole.slices.end(), down.slices.begin(),
                        down.slices.end());
    Morphism g = normal_form(whole);

    Morphism g2 = Morphism::zero(g.source, g.target);
    for (const auto& [u, cu] : g.terms) g2 += windowed_bottom1(u, cu);

    SliceWord back;
    back.source = m;
    for (int i = p - 1; i >= 1; --i) back.slices.push_back(under_slice(i));
    Morphism out = Morphism::zero(b.conn.source, b.conn.target);
    for (const auto& [u, cu] : g2.terms) {
      SliceWord wu;
      wu.source = m;
      wu.slices = back.slices;
      SliceWord cw = canonical_word(u);
      wu.slices.insert(wu.slices.end(), cw.slices.begin(), cw.slices.end());
      out += normal_form(wu) * cu;
    }
    return out;
  }

  // one monic-relation step against a cup whose left leg sits in the top
  // column 1; the composed dots travel through the engine, so entanglement
  // of the cup is handled by the ordinary exchange machinery
  Morphism cup_step(const BasisDiagram& u, int64_t e) {
    const std::vector<Scalar> fc = env_.bmw_f_coeffs();
    int64_t a = env_.a();
    Morphism out = Morphism::zero(u.conn.source, u.conn.target);
    if (e > env_.window_top_hi()) {
      Scalar b0_inv = fc[0].invert();
      for (int64_t jx = 1; jx <= a; ++jx) {
        Scalar cj = jx == a ? Scalar::from_int(1) : fc[static_cast<size_t>(jx)];
        out += fold(Morphism::single(u), {dot_slice(1, jx)}) * (-(cj * b0_inv));
      }
    } else {
      for (int64_t jx = 0; jx < a; ++jx)
        out += fold(Morphism::single(u), {dot_slice(1, jx - a)}) *
               (-fc[static_cast<size_t>(jx)]);
    }
    return out;
  }

  std::optional<std::pair<BasisDiagram, int64_t>> cup1_violation(
      const Morphism& g) {
    for (const auto& [u, cu] : g.terms) {
      if (u.conn.target == 0) continue;
      int k = strand_at_top(u, 1);
      if (!u.conn.is_cup(k)) continue;
      auto it = u.dots.find(k + 1);
      if (it == u.dots.end()) continue;
      int64_t e = it->second;
      if (e < env_.window_top_lo() || e > env_.window_top_hi())
        return std::make_pair(u, e);
    }
    return std::nullopt;
  }

  Morphism fix_cup_far(const BasisDiagram& b, int jl) {
    SliceWord whole = canonical_word(b);
    for (int i = jl - 1; i >= 1; --i) whole.slices.push_back(over_slice(i));
    Morphism g = normal_form(whole);

    for (;;) {
      spend();
      auto v = cup1_violation(g);
      if (!v) break;
      Scalar cu = g.terms.at(v->first);
      g.terms.erase(v->first);
      g += cup_step(v->first, v->second) * cu;
    }

    Morphism out = Morphism::zero(b.conn.source, b.conn.target);
    for (const auto& [u, cu] : g.terms) {
      SliceWord wu = canonical_word(u);
      for (int i = 1; i <= jl - 1; ++i) wu.slices.push_back(under_slice(i));
      out += normal_form(wu) * cu;
    }
    return out;
  }
};

Morphism Engine::window_pass(Morphism f) {
  if (env_.kind() != EnvKind::cyclotomic) return f;
  for (;;) {
    spend();
    auto v = find_violation(f);
    if (!v) return f;
    f.terms.erase(v->b);
    Morphism fix;
    if (v->bottom) {
      fix = v->pos == 1 ? bottom_step(v->b, v->k, v->e)
                        : fix_bottom_far(v->b, v->pos);
    } else {
      fix = v->pos == 1 ? cup_step(v->b, v->e) : fix_cup_far(v->b, v->pos);
    }
    f += fix * v->c;
  }
}

Morphism finalize(Engine& eng, const ParamEnv& env, const RewriteOptions& opts,
                  Morphism f) {
  if (env.kind() == EnvKind::cyclotomic && opts.apply_window)
    return eng.window_pass(std::move(f));
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

Morphism normalize(const SliceWord& w, const ParamEnv& env,
                   const RewriteOptions& opts) {
  Engine eng(env, opts);
  return finalize(eng, env, opts, eng.normal_form(w));
}

Morphism normalize(const Morphism& f, const ParamEnv& env,
                   const RewriteOptions& opts) {
  Engine eng(env, opts);
  Morphism out = Morphism::zero(f.source, f.target);
  for (const auto& [b, c] : f.terms) out += eng.normal_form(canonical_word(b)) * c;
  return finalize(eng, env, opts, std::move(out));
}

Morphism compose(const Morphism& f, const Morphism& g, const ParamEnv& env,
                 const RewriteOptions& opts) {
  if (f.target != g.source)
    throw ArityMismatch("compose: target " + std::to_string(f.target) +
                            " does not meet source " +
                            std::to_string(g.source),
                        0);
  Engine eng(env, opts);
  Morphism out = Morphism::zero(f.source, g.target);
  for (const auto& [bf, cf] : f.terms) {
    SliceWord wf = canonical_word(bf);
    for (const auto& [bg, cg] : g.terms) {
      SliceWord w = wf;
      SliceWord wg = canonical_word(bg);
      w.slices.insert(w.slices.end(), wg.slices.begin(), wg.slices.end());
      out += eng.normal_form(w) * (cf * cg);
    }
  }
  return finalize(eng, env, opts, std::move(out));
}

Morphism tensor(const Morphism& f, const Morphism& g, const ParamEnv& env,
                const RewriteOptions& opts) {
  Engine eng(env, opts);
  Morphism out = Morphism::zero(f.source + g.source, f.target + g.target);
  for (const auto& [bf, cf] : f.terms) {
    SliceWord wf = canonical_word(bf);
    for (const auto& [bg, cg] : g.terms) {
      SliceWord w;
      w.source = f.source + g.source;
      w.slices = wf.slices;
      SliceWord wg = canonical_word(bg);
      for (Slice s : wg.slices) {
        s.pos += f.target;
        w.slices.push_back(s);
      }
      out += eng.normal_form(w) * (cf * cg);
    }
  }
  return finalize(eng, env, opts, std::move(out));
}

Morphism flip(const Morphism& f, const ParamEnv& env,
              const RewriteOptions& opts) {
  Engine eng(env, opts);
  Morphism out = Morphism::zero(f.target, f.source);
  for (const auto& [b, c] : f.terms)
    out += eng.normal_form(flip_word(canonical_word(b))) * c;
  return finalize(eng, env, opts, std::move(out));
}

Morphism bend(const Morphism& f, const ParamEnv& env,
              const RewriteOptions& opts) {
  Engine eng(env, opts);
  int m = f.source;
  Morphism out = Morphism::zero(0, f.target + m);
  SliceWord eta = eta_word(m);
  for (const auto& [b, c] : f.terms) {
    // the held legs stay on the left; the morphism acts on the right half
    // of the nested cups, so unbend can cap the legs back in order
    SliceWord w = eta;
    SliceWord wb = canonical_word(b);
    for (Slice s : wb.slices) {
      s.pos += m;
      w.slices.push_back(s);
    }
    out += eng.normal_form(w) * c;
  }
  return finalize(eng, env, opts, std::move(out));
}

Morphism unbend(const Morphism& g, int m, const ParamEnv& env,
                const RewriteOptions& opts) {
  if (g.source != 0 || g.target < m)
    throw ArityMismatch(
        "unbend expects a morphism from the empty object covering " +
            std::to_string(m) + " bent strands",
        0);
  Engine eng(env, opts);
  Morphism out = Morphism::zero(m, g.target - m);
  SliceWord gamma = gamma_word(m);
  for (const auto& [b, c] : g.terms) {
    SliceWord w;
    w.source = m;
    SliceWord wb = canonical_word(b);
    for (Slice s : wb.slices) {
      s.pos += m;
      w.slices.push_back(s);
    }
    w.slices.insert(w.slices.end(), gamma.slices.begin(), gamma.slices.end());
    out += eng.normal_form(w) * c;
  }
  return finalize(eng, env, opts, std::move(out));
}

Morphism bubble_reduce(int64_t j, const ParamEnv& env) {
  RewriteOptions opts;
  Engine eng(env, opts);
  return eng.loop_value(j);
}

Morphism window_reduce(const Morphism& f, const ParamEnv& env,
                       const RewriteOptions& opts) {
  if (env.kind() != EnvKind::cyclotomic)
    throw RequiresCyclotomic("window reduction needs a cyclotomic environment");
  Engine eng(env, opts);
  return eng.window_pass(f);
}

}  // namespace skein
