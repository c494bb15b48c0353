#include "skein/rewrite.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "skein/diagram.hpp"
#include "skein/param_env.hpp"

using namespace skein;

namespace {

Morphism nf(const ParamEnv& env, const std::string& text, int src = -1) {
  return normalize(SliceWord::parse(text, src), env);
}

bool same(const Morphism& a, const Morphism& b) { return (a - b).is_zero(); }

// arbitrary valid slice words, biased toward small widths
SliceWord random_word(std::mt19937_64& rng, int source, int len,
                      int max_width) {
  SliceWord w;
  w.source = source;
  int r = source;
  for (int i = 0; i < len; ++i) {
    std::vector<Slice> options;
    if (r + 2 <= max_width)
      for (int p = 1; p <= r + 1; ++p) options.push_back(cup_slice(p));
    for (int p = 1; p + 1 <= r; ++p) {
      options.push_back(cap_slice(p));
      options.push_back(over_slice(p));
      options.push_back(under_slice(p));
    }
    for (int p = 1; p <= r; ++p)
      for (int64_t e : {-2, -1, 1, 2}) options.push_back(dot_slice(p, e));
    if (options.empty()) break;
    Slice pick =
        options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(
            rng)];
    w.slices.push_back(pick);
    r = slice_apply(r, pick, static_cast<int>(w.slices.size()));
  }
  return w;
}

}  // namespace

TEST_CASE("inverse crossings cancel in both orders") {
  auto env = ParamEnv::generic_affine();
  Morphism id2 = Morphism::identity(2);
  CHECK(same(nf(env, "T@1 . Tinv@1", 2), id2));
  CHECK(same(nf(env, "Tinv@1 . T@1", 2), id2));
}

TEST_CASE("zig-zags straighten to the identity strand") {
  auto env = ParamEnv::generic_affine();
  Morphism id1 = Morphism::identity(1);
  CHECK(same(nf(env, "U@1 . A@2", 1), id1));
  CHECK(same(nf(env, "U@2 . A@1", 1), id1));
}

TEST_CASE("curls contribute one loop factor each") {
  auto env = ParamEnv::generic_affine();
  const Scalar d = env.delta();
  const Scalar di = env.delta().invert();

  // curl against a cup or a cap
  Morphism cup = nf(env, "U@1", 0);
  Morphism cap = nf(env, "A@1", 2);
  CHECK(same(nf(env, "U@1 . T@1", 0), cup * di));
  CHECK(same(nf(env, "U@1 . Tinv@1", 0), cup * d));
  CHECK(same(nf(env, "T@1 . A@1", 2), cap * di));
  CHECK(same(nf(env, "Tinv@1 . A@1", 2), cap * d));

  // curl threaded through a neighbouring strand
  Morphism id1 = Morphism::identity(1);
  CHECK(same(nf(env, "U@2 . T@1 . A@2", 1), id1 * d));
  CHECK(same(nf(env, "U@2 . Tinv@1 . A@2", 1), id1 * di));
  CHECK(same(nf(env, "U@1 . Tinv@2 . A@1", 1), id1 * di));
  CHECK(same(nf(env, "U@1 . T@2 . A@1", 1), id1 * d));
}

TEST_CASE("tangle generator presentation holds symbolically") {
  auto env = ParamEnv::generic_affine();
  const Scalar z = env.z();

  // double zig-zag with opposite crossings
  CHECK(same(nf(env, "U@2 . Tinv@1 . A@2 . U@2 . T@1 . A@2", 1),
             Morphism::identity(1)));

  // braid move
  CHECK(same(nf(env, "T@1 . T@2 . T@1", 3), nf(env, "T@2 . T@1 . T@2", 3)));

  // crossing difference against the cap-cup projector
  Morphism lhs = nf(env, "T@1", 2) - nf(env, "Tinv@1", 2);
  Morphism rhs =
      (Morphism::identity(2) - nf(env, "A@1 . U@1", 2)) * z;
  CHECK(same(lhs, rhs));

  // free loop
  CHECK(same(nf(env, "U@1 . A@1", 0), Morphism::identity(0) * env.omega(0)));

  // sliding a crossing over a bent strand turns it over
  CHECK(same(nf(env, "U@3 . Tinv@2 . A@1", 2), nf(env, "T@1", 2)));
  CHECK(same(nf(env, "U@3 . T@2 . A@1", 2), nf(env, "Tinv@1", 2)));
}

TEST_CASE("dot generator presentation holds symbolically") {
  auto env = ParamEnv::generic_affine();

  CHECK(same(nf(env, "X@1^1 . X@1^-1", 1), Morphism::identity(1)));
  CHECK(same(nf(env, "X@1^-1 . X@1^1", 1), Morphism::identity(1)));

  CHECK(same(nf(env, "T@1 . X@1 . T@1", 2), nf(env, "X@2", 2)));
  CHECK(same(nf(env, "Tinv@1 . X@2 . Tinv@1", 2), nf(env, "X@1", 2)));

  CHECK(same(nf(env, "X@1 . A@1", 2), nf(env, "X@2^-1 . A@1", 2)));
  CHECK(same(nf(env, "U@1 . X@1", 0), nf(env, "U@1 . X@2^-1", 0)));
}

TEST_CASE("dotted strand basis landmarks") {
  auto env = ParamEnv::generic_affine();

  // a dot slides through a crossing at the cost of turning it over
  CHECK(same(nf(env, "X@1 . T@1 . X@2^-1", 2), nf(env, "Tinv@1", 2)));
  CHECK(same(nf(env, "X@2 . Tinv@1 . X@1^-1", 2), nf(env, "T@1", 2)));

  // exponents accumulate on the designated leg of a cup
  Morphism c3 = nf(env, "U@1 . X@2 . X@2 . X@2", 0);
  BasisDiagram cup3 =
      make_basis(Connector::from_pairs(0, 2, {{0, 1}}), {{1, 3}});
  CHECK(same(c3, Morphism::single(cup3)));

  // the same exponent through the left leg arrives negated
  Morphism l3 = nf(env, "U@1 . X@1^3", 0);
  BasisDiagram cupm3 =
      make_basis(Connector::from_pairs(0, 2, {{0, 1}}), {{1, -3}});
  CHECK(same(l3, Morphism::single(cupm3)));
}

TEST_CASE("basis diagrams round-trip through their canonical words") {
  auto env = ParamEnv::generic_affine();
  using P = std::pair<int, int>;
  for (auto [m, s] :
       {P{1, 1}, P{2, 0}, P{0, 2}, P{2, 2}, P{1, 3}, P{3, 1}, P{0, 4},
        P{4, 0}, P{3, 3}, P{2, 4}}) {
    for (const Connector& c : enumerate_connectors(m, s)) {
      BasisDiagram plain = make_basis(c);
      CHECK(same(nf(env, canonical_word(plain).to_text(), m),
                 Morphism::single(plain)));
    }
  }
}

TEST_CASE("dotted and bubbled diagrams round-trip") {
  auto env = ParamEnv::generic_affine();
  for (auto [m, s] : {std::pair<int, int>{2, 2}, {1, 3}, {0, 4}, {3, 1}}) {
    for (const Connector& c : enumerate_connectors(m, s)) {
      std::map<int, int64_t> dots;
      for (int k = 0; k < c.strands(); ++k) dots[k + 1] = (k % 2 == 0) ? 2 : -1;
      BasisDiagram b = make_basis(c, dots, {1, 3});
      Morphism f = Morphism::single(b);
      CHECK(same(normalize(f, env), f));
    }
  }
}

TEST_CASE("normalization is idempotent on random words") {
  auto env = ParamEnv::generic_affine();
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    SliceWord w = random_word(rng, trial % 3 == 0 ? 2 : 1, 8, 5);
    Morphism f = normalize(w, env);
    CHECK(same(normalize(f, env), f));
  }
}

TEST_CASE("composition agrees with word concatenation") {
  auto env = ParamEnv::generic_affine();
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    SliceWord w1 = random_word(rng, 2, 5, 5);
    SliceWord w2 = random_word(rng, w1.target(), 5, 5);
    SliceWord joined;
    joined.source = w1.source;
    joined.slices = w1.slices;
    joined.slices.insert(joined.slices.end(), w2.slices.begin(),
                         w2.slices.end());
    Morphism expect = normalize(joined, env);
    Morphism got = compose(normalize(w1, env), normalize(w2, env), env);
    CHECK(same(got, expect));
  }
}

TEST_CASE("tensor splices side by side") {
  auto env = ParamEnv::generic_affine();
  Morphism x = nf(env, "X@1", 1);
  Morphism t = nf(env, "T@1", 2);
  Morphism xt = tensor(x, t, env);
  CHECK(xt.source == 3);
  CHECK(same(xt, nf(env, "X@1 . T@2", 3)));

  // a loop on the right walks home across the left factor
  Morphism loop = nf(env, "U@1 . X@2 . A@1", 0);
  Morphism idl = Morphism::identity(1);
  CHECK(same(tensor(idl, loop, env), nf(env, "U@2 . X@3 . A@2", 1)));
}

TEST_CASE("flip reverses a morphism and is an involution") {
  auto env = ParamEnv::generic_affine();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    SliceWord w = random_word(rng, 2, 6, 4);
    Morphism f = normalize(w, env);
    Morphism rev = flip(f, env);
    CHECK(rev.source == f.target);
    CHECK(rev.target == f.source);
    CHECK(same(flip(rev, env), f));
  }
}

TEST_CASE("bend and unbend are mutually inverse") {
  auto env = ParamEnv::generic_affine();
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 8; ++trial) {
    SliceWord w = random_word(rng, 2, 5, 4);
    Morphism f = normalize(w, env);
    Morphism bent = bend(f, env);
    CHECK(bent.source == 0);
    CHECK(bent.target == f.target + f.source);
    CHECK(same(unbend(bent, f.source, env), f));
  }
}

TEST_CASE("rewrite strategies agree on random words") {
  auto env = ParamEnv::generic_affine();
  std::mt19937_64 rng(99);
  RewriteOptions left;
  for (int trial = 0; trial < 20; ++trial) {
    SliceWord w = random_word(rng, 1 + trial % 3, 7, 5);
    Morphism a = normalize(w, env, left);
    for (uint64_t seed : {1u, 2u}) {
      RewriteOptions rnd;
      rnd.strategy = Strategy::random_seeded;
      rnd.seed = seed + trial;
      CHECK(same(normalize(w, env, rnd), a));
    }
  }
}

TEST_CASE("trace reports rewrite steps as json lines") {
  auto env = ParamEnv::generic_affine();
  std::vector<std::string> lines;
  RewriteOptions opts;
  opts.trace = [&](const std::string& s) { lines.push_back(s); };
  normalize(SliceWord::parse("U@2 . X@2 . Tinv@1 . A@2", 1), env, opts);
  REQUIRE(!lines.empty());
  for (const std::string& l : lines) {
    CHECK(l.front() == '{');
    CHECK(l.find("\"rule\"") != std::string::npos);
    CHECK(l.find("measure_before") != std::string::npos);
  }
}
