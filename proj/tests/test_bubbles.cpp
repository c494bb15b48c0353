#include <string>

#include "doctest.h"
#include "skein/diagram.hpp"
#include "skein/param_env.hpp"
#include "skein/rewrite.hpp"

using namespace skein;

namespace {

Morphism nf(const ParamEnv& env, const std::string& text, int src = -1) {
  return normalize(SliceWord::parse(text, src), env);
}

bool same(const Morphism& a, const Morphism& b) { return (a - b).is_zero(); }

const Connector& cup_conn() {
  static const Connector c = Connector::from_pairs(0, 2, {{0, 1}});
  return c;
}

const Connector& strand_conn() {
  static const Connector c = Connector::from_pairs(1, 1, {{0, 1}});
  return c;
}

const Connector& empty_conn() {
  static const Connector c = Connector::from_pairs(0, 0, {});
  return c;
}

}  // namespace

TEST_CASE("closed loops record their winding as a bubble") {
  auto env = ParamEnv::generic_affine();

  CHECK(same(nf(env, "U@1 . X@1^1 . A@1", 0),
             Morphism::single(make_basis(empty_conn(), {}, {1}))));
  CHECK(same(nf(env, "U@1 . X@1^2 . A@1", 0),
             Morphism::single(make_basis(empty_conn(), {}, {2}))));

  // the same winding measured through the other leg
  CHECK(same(nf(env, "U@1 . X@2^-1 . A@1", 0),
             nf(env, "U@1 . X@1^1 . A@1", 0)));

  // separate closures stack up as a multiset, in either order
  Morphism pair = Morphism::single(make_basis(empty_conn(), {}, {1, 2}));
  CHECK(same(nf(env, "U@1 . X@1^1 . A@1 . U@1 . X@1^2 . A@1", 0), pair));
  CHECK(same(nf(env, "U@1 . X@1^2 . A@1 . U@1 . X@1^1 . A@1", 0), pair));
}

TEST_CASE("reflected closures expand into smaller data") {
  auto env = ParamEnv::generic_affine();
  const Scalar di = env.delta().invert();
  const Scalar z = env.z();

  Morphism m1 = nf(env, "U@1 . X@2^1 . A@1", 0);
  CHECK(same(m1, Morphism::single(make_basis(empty_conn(), {}, {1})) *
                     di.pow(2)));

  Morphism m2 = nf(env, "U@1 . X@2^2 . A@1", 0);
  Morphism want2 =
      Morphism::single(make_basis(empty_conn())) * (di * z * env.omega(0)) -
      Morphism::single(make_basis(empty_conn(), {}, {1, 1})) * (di.pow(3) * z) +
      Morphism::single(make_basis(empty_conn(), {}, {2})) * di.pow(2);
  CHECK(same(m2, want2));

  // the closure over the designated leg is the reflected loop
  CHECK(same(m1, bubble_reduce(-1, env)));
  CHECK(same(m2, bubble_reduce(-2, env)));
  CHECK(same(nf(env, "U@1 . X@1^1 . A@1", 0), bubble_reduce(1, env)));
  CHECK(same(nf(env, "U@1 . X@1^2 . A@1", 0), bubble_reduce(2, env)));
  CHECK(same(nf(env, "U@1 . A@1", 0), bubble_reduce(0, env)));
}

TEST_CASE("bubble reduction matches the scalar recursion") {
  auto affine = ParamEnv::generic_affine();
  auto adm = ParamEnv::admissible_symbolic();
  const Scalar di = adm.delta().invert();
  const Scalar z = adm.z();

  // scalar route and diagram route express the same reflection
  CHECK((adm.omega(-1) - di.pow(2) * adm.omega(1)).is_zero());
  Scalar w2 = di.pow(2) * adm.omega(2) +
              di * z * (adm.omega(0) - di.pow(2) * adm.omega(1) * adm.omega(1));
  CHECK((adm.omega(-2) - w2).is_zero());

  for (int64_t j : {-2, -1, 0, 1, 2, 3}) {
    Morphism val = bubble_reduce(j, adm);
    CHECK(same(val, Morphism::identity(0) * adm.omega(j)));
  }

  // in the formal environment only the degree-zero loop has a scalar value
  CHECK(same(bubble_reduce(0, affine),
             Morphism::identity(0) * affine.omega(0)));
  CHECK(same(bubble_reduce(3, affine),
             Morphism::single(make_basis(empty_conn(), {}, {3}))));
}

TEST_CASE("closing a dotted loop in an evaluating environment yields omega") {
  auto adm = ParamEnv::admissible_symbolic();
  for (int64_t j = 1; j <= 4; ++j) {
    std::string word = "U@1 . X@1^" + std::to_string(j) + " . A@1";
    CHECK(same(nf(adm, word, 0), Morphism::identity(0) * adm.omega(j)));
  }
}

TEST_CASE("a loop exchanges dots with the strand it walks past") {
  auto env = ParamEnv::generic_affine();
  const Scalar d = env.delta();
  const Scalar z = env.z();
  const Scalar two = Scalar::from_int(2);

  // one winding deposits a single exchange pair
  Morphism n1 = Morphism::single(make_basis(strand_conn(), {}, {1})) +
                Morphism::single(make_basis(strand_conn(), {{1, 1}})) * (d * z) -
                Morphism::single(make_basis(strand_conn(), {{1, -1}})) * (d * z);
  CHECK(same(nf(env, "U@2 . X@2^1 . A@2", 1), n1));

  // two windings spawn the full double-exchange tail
  Morphism n2 =
      Morphism::single(make_basis(strand_conn(), {}, {2})) -
      Morphism::single(make_basis(strand_conn())) * (d * z.pow(3)) -
      Morphism::single(make_basis(strand_conn(), {{1, -2}})) * (two * d * z) -
      Morphism::single(make_basis(strand_conn(), {{1, -1}}, {1})) * z.pow(2) +
      Morphism::single(make_basis(strand_conn(), {{1, 1}}, {1})) * z.pow(2) +
      Morphism::single(make_basis(strand_conn(), {{1, 2}})) *
          (d * z.pow(3) + two * d * z);
  CHECK(same(nf(env, "U@2 . X@2^2 . A@2", 1), n2));

  // stacking the one-winding picture twice agrees with its square
  CHECK(same(nf(env, "U@2 . X@2 . A@2 . U@2 . X@2 . A@2", 1),
             compose(n1, n1, env)));
}

TEST_CASE("crossings absorb into dotted cups") {
  auto env = ParamEnv::generic_affine();
  const Scalar d = env.delta();
  const Scalar di = env.delta().invert();
  const Scalar z = env.z();

  auto cup = [&](int64_t e) {
    return e == 0 ? Morphism::single(make_basis(cup_conn()))
                  : Morphism::single(make_basis(cup_conn(), {{1, e}}));
  };
  Morphism cup_bub = Morphism::single(make_basis(cup_conn(), {}, {1}));

  CHECK(same(nf(env, "U@1 . X@2^-1 . T@1", 0), cup(1) * d));
  CHECK(same(nf(env, "U@1 . X@2^1 . Tinv@1", 0), cup(-1) * di));
  CHECK(same(nf(env, "U@1 . X@2^-1 . Tinv@1", 0),
             cup_bub * z - cup(-1) * z + cup(1) * d));
  CHECK(same(nf(env, "U@1 . X@2^1 . T@1", 0),
             cup(-1) * di + cup(1) * z - cup_bub * (di.pow(2) * z)));
}
