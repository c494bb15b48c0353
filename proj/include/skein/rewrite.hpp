#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "skein/diagram.hpp"
#include "skein/param_env.hpp"

namespace skein {

// Order in which competing rewrite positions are attacked. Results agree for
// both (tested); the random strategy exists to exercise that independence.
enum class Strategy { leftmost_innermost, random_seeded };

struct RewriteOptions {
  Strategy strategy = Strategy::leftmost_innermost;
  uint64_t seed = 0;
  // optional JSON-lines sink for rewrite steps
  std::function<void(const std::string&)> trace;
  // hard stop for the recursion; generous because it should never fire
  int64_t fuel = 50'000'000;
  // internal: suppress the final window pass (used by window_reduce itself)
  bool apply_window = true;
};

// Normal form of a slice word as a linear combination of basis diagrams.
Morphism normalize(const SliceWord& w, const ParamEnv& env,
                   const RewriteOptions& opts = {});

// Re-expresses a morphism under the environment's policies (bubble
// evaluation, cyclotomic windows). On basis input in its own environment this
// is the identity.
Morphism normalize(const Morphism& f, const ParamEnv& env,
                   const RewriteOptions& opts = {});

// f then g; requires f.target == g.source.
Morphism compose(const Morphism& f, const Morphism& g, const ParamEnv& env,
                 const RewriteOptions& opts = {});

// f beside g, f on the left.
Morphism tensor(const Morphism& f, const Morphism& g, const ParamEnv& env,
                const RewriteOptions& opts = {});

// The contravariant vertical mirror, normalized.
Morphism flip(const Morphism& f, const ParamEnv& env,
              const RewriteOptions& opts = {});

// Hom(m,s) -> Hom(0,m+s) and back; mutually inverse.
Morphism bend(const Morphism& f, const ParamEnv& env,
              const RewriteOptions& opts = {});
Morphism unbend(const Morphism& g, int m, const ParamEnv& env,
                const RewriteOptions& opts = {});

// Normal form of the degree-j loop as an endomorphism of the empty object;
// negative degrees unwind through the reflection recursion.
Morphism bubble_reduce(int64_t j, const ParamEnv& env);

// Rewrites every dot exponent into the environment's designated windows
// (cyclotomic only); the identity on already-windowed input.
Morphism window_reduce(const Morphism& f, const ParamEnv& env,
                       const RewriteOptions& opts = {});

}  // namespace skein
