#include "skein/diagram.hpp"

#include "doctest.h"

using namespace skein;

namespace {

int crossing_slices(const SliceWord& w) {
  int c = 0;
  for (const Slice& s : w.slices)
    if (s.kind == SliceKind::over || s.kind == SliceKind::under) c++;
  return c;
}

}  // namespace

TEST_CASE("canonical words for the small landmarks") {
  BasisDiagram dotted = make_basis(Connector::identity(1), {{1, 1}});
  CHECK(canonical_word(dotted).to_text() == "X@1^1");

  BasisDiagram e = make_basis(
      Connector::from_pairs(2, 2, {{0, 1}, {2, 3}}));
  CHECK(canonical_word(e).to_text() == "A@1 . U@1");

  BasisDiagram cross = make_basis(
      Connector::from_pairs(2, 2, {{0, 2}, {1, 3}}));
  CHECK(canonical_word(cross).to_text() == "T@1");

  BasisDiagram cup_dotted = make_basis(
      Connector::from_pairs(0, 2, {{0, 1}}), {{1, 3}});
  CHECK(canonical_word(cup_dotted).to_text() == "U@1 . X@2^3");

  BasisDiagram bubbled = make_basis(Connector::identity(0), {}, {2, 1});
  CHECK(canonical_word(bubbled).to_text() ==
        "U@1 . X@1^1 . A@1 . U@1 . X@1^2 . A@1");
}

TEST_CASE("canonical words are reduced and well formed") {
  for (auto [m, s] : {std::pair<int, int>{2, 2}, {4, 2}, {3, 3}, {0, 6}}) {
    for (const Connector& c : enumerate_connectors(m, s)) {
      BasisDiagram b = make_basis(c);
      SliceWord w = canonical_word(b);
      CHECK(w.source == m);
      CHECK(w.target() == s);
      CHECK(crossing_slices(w) == c.crossing_count());
    }
  }
}

TEST_CASE("canonical word places cap and vertical dots on the source row") {
  // cap over a crossing vertical: connector (3,1) pairing bottoms 1,3
  Connector c = Connector::from_pairs(3, 1, {{0, 2}, {1, 3}});
  BasisDiagram b = make_basis(c, {{1, 2}, {2, -1}});
  SliceWord w = canonical_word(b);
  REQUIRE(w.slices.size() >= 2);
  CHECK(w.slices[0] == dot_slice(1, 2));
  CHECK(w.slices[1] == dot_slice(2, -1));
  CHECK(w.target() == 1);
}
