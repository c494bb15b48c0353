#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skein/errors.hpp"
#include "skein/scalar.hpp"

namespace skein {

// One horizontal layer of a tangle word acting on a row of strands.
enum class SliceKind { cap, cup, over, under, dot };

struct Slice {
  SliceKind kind;
  int pos;          // 1-based strand position
  int64_t exp = 0;  // dot exponent, used by SliceKind::dot only

  bool operator==(const Slice&) const = default;
};

inline Slice cap_slice(int i) { return {SliceKind::cap, i, 0}; }
inline Slice cup_slice(int i) { return {SliceKind::cup, i, 0}; }
inline Slice over_slice(int i) { return {SliceKind::over, i, 0}; }
inline Slice under_slice(int i) { return {SliceKind::under, i, 0}; }
inline Slice dot_slice(int i, int64_t k) { return {SliceKind::dot, i, k}; }

// Arity after applying one slice to a row of r strands. Throws ArityMismatch
// with the supplied 1-based slice index when the position does not fit.
int slice_apply(int r, const Slice& s, int slice_index);

// A composable word of slices. The first slice acts on the source row, so
// text order is application order (bottom of the picture first).
struct SliceWord {
  int source = 0;
  std::vector<Slice> slices;

  int target() const;  // validates the whole word
  std::string to_text() const;

  // Parses the `.`-separated token grammar {A@i, U@i, T@i, Tinv@i, X@i^k}.
  // With source_hint < 0 the smallest consistent source arity is inferred.
  static SliceWord parse(const std::string& text, int source_hint = -1);

  bool operator==(const SliceWord&) const = default;
};

// Vertical mirror: reverses the word, exchanges caps and cups, and keeps
// crossings and dots as they are.
SliceWord flip_word(const SliceWord& w);

// Nested cups 0 -> 2m and the matching caps 2m -> 0.
SliceWord eta_word(int m);
SliceWord gamma_word(int m);

// Perfect matching on the m+s endpoints of a diagram, stored on the clockwise
// slot walk: bottom position i at slot i-1, top position j at slot m+s-j.
// Pairs are (lo, hi) slot pairs sorted by lo; the strand's designated
// endpoint is its lo slot, and the k-th pair is strand k+1.
struct Connector {
  int source = 0;
  int target = 0;
  std::vector<std::pair<int, int>> pairs;

  int slots() const { return source + target; }
  int strands() const { return static_cast<int>(pairs.size()); }

  static Connector identity(int m);
  static Connector from_pairs(int m, int s,
                              std::vector<std::pair<int, int>> raw);

  int mate(int slot) const;
  bool is_bottom_slot(int slot) const { return slot < source; }
  // bottom position i -> i, top position j -> -j
  int label_of_slot(int slot) const;
  int slot_of_bottom(int i) const { return i - 1; }
  int slot_of_top(int j) const { return source + target - j; }

  // strand classification by 0-based pair index
  bool is_vertical(int k) const;
  bool is_cap(int k) const;  // both endpoints on the bottom
  bool is_cup(int k) const;  // both endpoints on the top

  // strands k and l interleave, i.e. must cross in any picture
  bool crossed(int k, int l) const;
  int crossing_count() const;

  bool operator==(const Connector&) const = default;
  bool operator<(const Connector& o) const;
};

std::vector<Connector> enumerate_connectors(int m, int s);

// A normal-form diagram class: connector, dot exponents at the designated
// endpoint per strand (1-based strand index, zero exponents dropped), and a
// multiset of closed-loop degrees (ascending, all >= 1).
struct BasisDiagram {
  Connector conn;
  std::map<int, int64_t> dots;
  std::vector<int64_t> bubbles;

  bool operator==(const BasisDiagram&) const = default;
  bool operator<(const BasisDiagram& o) const;
};

BasisDiagram make_basis(Connector conn, std::map<int, int64_t> dots = {},
                        std::vector<int64_t> bubbles = {});

// Finite linear combination of basis diagrams sharing one (source, target).
struct Morphism {
  int source = 0;
  int target = 0;
  std::map<BasisDiagram, Scalar> terms;

  static Morphism zero(int m, int s);
  static Morphism single(BasisDiagram b, Scalar c = Scalar::from_int(1));
  static Morphism identity(int m);

  void add(const BasisDiagram& b, const Scalar& c);
  Morphism& operator+=(const Morphism& o);
  Morphism operator+(const Morphism& o) const;
  Morphism operator*(const Scalar& c) const;
  Morphism operator-(const Morphism& o) const;
  bool is_zero() const { return terms.empty(); }

  bool operator==(const Morphism&) const = default;
};

std::string morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const std::string& text);

// A slice word that re-normalizes to exactly 1 * b: loop degrees first, then
// dots at bottom designated endpoints, then a reduced totally descending
// tangle word for the connector, then dots at top designated endpoints.
SliceWord canonical_word(const BasisDiagram& b);

}  // namespace skein
