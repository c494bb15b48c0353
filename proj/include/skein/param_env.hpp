#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "skein/scalar.hpp"

namespace skein {

enum class EnvKind { generic_affine, admissible, cyclotomic };

// Sign choice for the loop parameter in a cyclotomic environment. The parity
// of the number of eigenvalues constrains which choices are consistent.
enum class AlphaChoice { plus, minus, qminus, qinv };

// A coefficient environment. It owns the ground ring conventions (which
// symbols are free), the loop parameter values, and the bubble evaluation
// policy, and it memoizes the omega sequence.
class ParamEnv {
 public:
  static ParamEnv generic_affine();
  static ParamEnv admissible_symbolic();
  static ParamEnv admissible_seeded(std::map<int64_t, Scalar> seeds);
  static ParamEnv cyclotomic(int a, AlphaChoice alpha);
  static ParamEnv cyclotomic_with_units(std::vector<Scalar> units,
                                        AlphaChoice alpha);

  EnvKind kind() const { return kind_; }
  int a() const { return a_; }
  const std::vector<Scalar>& units() const { return u_; }

  const Scalar& delta() const { return delta_; }
  const Scalar& z() const { return z_; }

  // omega(0) is always the derived closed form; negative indices go through
  // the reflection recursion, indices >= a (cyclotomic) through the
  // eigenvalue recursion. Generic affine environments refuse i != 0 because
  // their bubbles stay formal.
  Scalar omega(int64_t i) const;

  bool bubbles_formal() const { return kind_ == EnvKind::generic_affine; }

  // Monic polynomial coefficients b_0..b_{a-1} with f(t) = t^a + sum b_j t^j
  // vanishing on the eigenvalues. Cyclotomic only.
  std::vector<Scalar> bmw_f_coeffs() const;

  // Dot exponent windows for designated endpoints. Cyclotomic only.
  int64_t window_top_lo() const;
  int64_t window_top_hi() const;
  int64_t window_bot_lo() const;
  int64_t window_bot_hi() const;

  // Independent series route: omega_i for |i| <= max_index computed from the
  // generating function in t = u^{-1} (positives and negatives from the two
  // separate closed forms). Cyclotomic only.
  std::map<int64_t, Scalar> omega_from_u(int64_t max_index) const;

 private:
  ParamEnv() = default;

  EnvKind kind_ = EnvKind::generic_affine;
  int a_ = 0;
  std::vector<Scalar> u_;
  AlphaChoice alpha_ = AlphaChoice::plus;
  std::optional<std::map<int64_t, Scalar>> seeds_;
  Scalar delta_;
  Scalar z_;
  mutable std::map<int64_t, Scalar> omega_memo_;

  Scalar omega_base(int64_t i) const;  // i >= 0
};

}  // namespace skein
