#include "skein/diagram.hpp"

#include "doctest.h"

using namespace skein;

TEST_CASE("slice word parsing and printing") {
  SliceWord w = SliceWord::parse("U@1 . A@1");
  CHECK(w.source == 0);
  CHECK(w.target() == 0);
  REQUIRE(w.slices.size() == 2);
  CHECK(w.slices[0] == cup_slice(1));
  CHECK(w.slices[1] == cap_slice(1));
  CHECK(w.to_text() == "U@1 . A@1");

  SliceWord x = SliceWord::parse("X@2^-3 . T@1");
  CHECK(x.source == 2);
  CHECK(x.target() == 2);
  CHECK(x.slices[0] == dot_slice(2, -3));
  CHECK(x.to_text() == "X@2^-3 . T@1");
  CHECK(SliceWord::parse(x.to_text()) == x);

  // bare X defaults to one dot and prints with the exponent
  CHECK(SliceWord::parse("X@1").slices[0] == dot_slice(1, 1));
  CHECK(SliceWord::parse("X@1").to_text() == "X@1^1");

  CHECK(SliceWord::parse("").slices.empty());
}

TEST_CASE("parse rejects malformed words with positions") {
  CHECK_THROWS_AS(SliceWord::parse("B@1"), ParseError);
  CHECK_THROWS_AS(SliceWord::parse("T@"), ParseError);
  CHECK_THROWS_AS(SliceWord::parse("T@1 ."), ParseError);
  CHECK_THROWS_AS(SliceWord::parse("T@0"), ParseError);
  try {
    SliceWord::parse("U@1 , A@1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 5);
  }
}

TEST_CASE("source arity inference and checking") {
  CHECK(SliceWord::parse("A@1").source == 2);
  CHECK(SliceWord::parse("T@3").source == 4);
  CHECK(SliceWord::parse("U@3").source == 2);
  CHECK(SliceWord::parse("U@1 . U@2 . A@1 . A@1").source == 0);

  try {
    SliceWord::parse("U@1 . A@3", 0);
    FAIL("expected an arity error");
  } catch (const ArityMismatch& e) {
    CHECK(e.slice_index == 2);
  }
  // an explicit wider source is fine
  CHECK(SliceWord::parse("A@1", 4).target() == 2);
}

TEST_CASE("connector enumeration has double factorial size") {
  CHECK(enumerate_connectors(0, 2).size() == 1);
  CHECK(enumerate_connectors(1, 1).size() == 1);
  CHECK(enumerate_connectors(2, 2).size() == 3);
  CHECK(enumerate_connectors(3, 3).size() == 15);
  CHECK(enumerate_connectors(4, 4).size() == 105);
  CHECK(enumerate_connectors(1, 2).empty());
  CHECK(enumerate_connectors(5, 1).size() == 15);
}

TEST_CASE("connector slot encoding and strand classes") {
  Connector id2 = Connector::identity(2);
  REQUIRE(id2.pairs.size() == 2);
  CHECK(id2.pairs[0] == std::pair<int, int>(0, 3));
  CHECK(id2.pairs[1] == std::pair<int, int>(1, 2));
  CHECK(id2.label_of_slot(0) == 1);
  CHECK(id2.label_of_slot(3) == -1);
  CHECK(id2.label_of_slot(2) == -2);
  CHECK(id2.is_vertical(0));
  CHECK(!id2.crossed(0, 1));
  CHECK(id2.crossing_count() == 0);

  Connector cross = Connector::from_pairs(2, 2, {{0, 2}, {1, 3}});
  CHECK(cross.crossed(0, 1));
  CHECK(cross.crossing_count() == 1);

  Connector cup = Connector::from_pairs(0, 2, {{0, 1}});
  CHECK(cup.is_cup(0));
  // the designated endpoint is the lo slot, which sits at the right leg
  CHECK(cup.label_of_slot(cup.pairs[0].first) == -2);

  Connector cap = Connector::from_pairs(2, 0, {{1, 0}});
  CHECK(cap.is_cap(0));
  CHECK(cap.label_of_slot(cap.pairs[0].first) == 1);

  CHECK_THROWS_AS(Connector::from_pairs(2, 0, {{0, 0}}), IndexOutOfRange);
  CHECK_THROWS_AS(Connector::from_pairs(2, 2, {{0, 1}, {0, 2}}),
                  IndexOutOfRange);
  CHECK_THROWS_AS(Connector::from_pairs(2, 2, {{0, 1}}), IndexOutOfRange);
}

TEST_CASE("basis diagram construction rules") {
  Connector id1 = Connector::identity(1);
  BasisDiagram b = make_basis(id1, {{1, 0}});
  CHECK(b.dots.empty());

  CHECK_THROWS_AS(make_basis(id1, {{2, 1}}), IndexOutOfRange);
  CHECK_THROWS_AS(make_basis(id1, {}, {0}), IndexOutOfRange);
  CHECK_THROWS_AS(make_basis(id1, {}, {-2}), IndexOutOfRange);

  BasisDiagram c = make_basis(id1, {}, {3, 1, 1});
  CHECK(c.bubbles == std::vector<int64_t>{1, 1, 3});
}

TEST_CASE("morphism accumulation cancels") {
  BasisDiagram b = make_basis(Connector::identity(1));
  Morphism f = Morphism::zero(1, 1);
  f.add(b, Scalar::sym(sym_z));
  f.add(b, -Scalar::sym(sym_z));
  CHECK(f.is_zero());
  f.add(b, Scalar::from_int(2));
  Morphism g = f * Scalar::sym(sym_delta);
  CHECK(g.terms.at(b) == Scalar::from_int(2) * Scalar::sym(sym_delta));
  CHECK((f - f).is_zero());
}

TEST_CASE("morphism json round trip") {
  Morphism f = Morphism::zero(2, 2);
  f.add(make_basis(Connector::identity(2), {{1, 2}}), omega0_closed());
  f.add(make_basis(Connector::from_pairs(2, 2, {{0, 2}, {1, 3}}), {{2, -1}},
                   {1, 3}),
        Scalar::ratio(Poly::variable(sym_z), Poly::variable(sym_delta, 2) +
                                                 Poly::from_int(1)));
  std::string text = morphism_to_json(f);
  Morphism g = morphism_from_json(text);
  CHECK(f == g);
  CHECK(morphism_to_json(g) == text);

  // the strand from bottom 1 to top 1 is written [[1,-1]]
  Morphism id = morphism_from_json(
      R"({"source":1,"target":1,"terms":[{"coeff":"1","connector":[[1,-1]],"dots":{},"bubbles":[]}]})");
  CHECK(id == Morphism::identity(1));

  CHECK_THROWS_AS(morphism_from_json("{"), ParseError);
}

TEST_CASE("word flip swaps turns and keeps crossings") {
  SliceWord cup = SliceWord::parse("U@1");
  SliceWord flipped = flip_word(cup);
  CHECK(flipped.source == 2);
  REQUIRE(flipped.slices.size() == 1);
  CHECK(flipped.slices[0] == cap_slice(1));

  SliceWord w = SliceWord::parse("U@2 . T@1 . X@3^2 . A@2");
  CHECK(flip_word(flip_word(w)) == w);
  CHECK(flip_word(w).slices[0] == cup_slice(2));
  CHECK(flip_word(w).slices[1] == dot_slice(3, 2));
}

TEST_CASE("bending words") {
  CHECK(eta_word(0).slices.empty());
  CHECK(eta_word(2).target() == 4);
  CHECK(gamma_word(2).source == 4);
  CHECK(gamma_word(2).target() == 0);
  CHECK(gamma_word(1).slices[0] == cap_slice(1));
}
