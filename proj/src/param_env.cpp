#include "skein/param_env.hpp"

#include <cassert>

namespace skein {

namespace {

Scalar sym_scalar(Sym s) { return Scalar::sym(s); }

}  // namespace

ParamEnv ParamEnv::generic_affine() {
  ParamEnv e;
  e.kind_ = EnvKind::generic_affine;
  e.delta_ = sym_scalar(sym_delta);
  e.z_ = sym_scalar(sym_z);
  return e;
}

ParamEnv ParamEnv::admissible_symbolic() {
  ParamEnv e;
  e.kind_ = EnvKind::admissible;
  e.delta_ = sym_scalar(sym_delta);
  e.z_ = sym_scalar(sym_z);
  return e;
}

ParamEnv ParamEnv::admissible_seeded(std::map<int64_t, Scalar> seeds) {
  ParamEnv e = admissible_symbolic();
  e.seeds_ = std::move(seeds);
  return e;
}

ParamEnv ParamEnv::cyclotomic(int a, AlphaChoice alpha) {
  std::vector<Scalar> units;
  for (int i = 1; i <= a; i++) units.push_back(Scalar::sym(sym_u(i)));
  return cyclotomic_with_units(std::move(units), alpha);
}

ParamEnv ParamEnv::cyclotomic_with_units(std::vector<Scalar> units,
                                         AlphaChoice alpha) {
  ParamEnv e;
  e.kind_ = EnvKind::cyclotomic;
  e.a_ = static_cast<int>(units.size());
  if (e.a_ < 1) throw IndexOutOfRange("need at least one eigenvalue");
  e.u_ = std::move(units);
  e.alpha_ = alpha;

  bool odd = e.a_ % 2 == 1;
  Scalar alpha_value;
  switch (alpha) {
    case AlphaChoice::plus:
      if (!odd) throw InconsistentSign("alpha=plus needs an odd count");
      alpha_value = Scalar::from_int(1);
      break;
    case AlphaChoice::minus:
      if (!odd) throw InconsistentSign("alpha=minus needs an odd count");
      alpha_value = Scalar::from_int(-1);
      break;
    case AlphaChoice::qminus:
      if (odd) throw InconsistentSign("alpha=qminus needs an even count");
      alpha_value = -Scalar::sym(sym_q);
      break;
    case AlphaChoice::qinv:
      if (odd) throw InconsistentSign("alpha=qinv needs an even count");
      alpha_value = Scalar::sym(sym_q, -1);
      break;
  }
  Scalar prod = Scalar::from_int(1);
  for (const auto& ui : e.u_) prod *= ui;
  e.delta_ = alpha_value * prod;
  Scalar q = Scalar::sym(sym_q);
  e.z_ = q - q.pow(-1);
  return e;
}

Scalar ParamEnv::omega_base(int64_t i) const {
  assert(i >= 0);
  if (i == 0)
    return Scalar::from_int(1) + z_.invert() * (delta_ - delta_.invert());

  switch (kind_) {
    case EnvKind::generic_affine:
      throw MissingSeed("generic affine bubbles are formal; omega_" +
                        std::to_string(i) + " has no scalar value");
    case EnvKind::admissible:
      if (seeds_) {
        auto it = seeds_->find(i);
        if (it == seeds_->end())
          throw MissingSeed("no seed for omega_" + std::to_string(i));
        return it->second;
      }
      return Scalar::sym(sym_omega(static_cast<uint32_t>(i)));
    case EnvKind::cyclotomic: {
      if (i < a_) {
        auto series = omega_from_u(a_ > 1 ? a_ - 1 : 1);
        return series.at(i);
      }
      // eigenvalue recursion: omega_i = -sum_{j=1..a} b_{a-j} omega_{i-j}
      auto b = bmw_f_coeffs();
      Scalar acc;
      for (int j = 1; j <= a_; j++) acc -= b[a_ - j] * omega(i - j);
      return acc;
    }
  }
  throw SkeinError("unreachable");
}

Scalar ParamEnv::omega(int64_t i) const {
  auto it = omega_memo_.find(i);
  if (it != omega_memo_.end()) return it->second;

  Scalar value;
  if (i >= 0) {
    value = omega_base(i);
  } else {
    // reflection: omega_{-i} = delta^{-2} omega_i
    //   + delta^{-1} z sum_{l=1..i-1} (omega_{2l-i} - omega_l omega_{l-i})
    int64_t k = -i;
    Scalar dinv = delta_.invert();
    value = dinv * dinv * omega(k);
    Scalar sum;
    for (int64_t l = 1; l <= k - 1; l++)
      sum += omega(2 * l - k) - omega(l) * omega(l - k);
    value += dinv * z_ * sum;
  }
  omega_memo_.emplace(i, value);
  return value;
}

std::vector<Scalar> ParamEnv::bmw_f_coeffs() const {
  if (kind_ != EnvKind::cyclotomic)
    throw RequiresCyclotomic("f-coefficients need a cyclotomic environment");
  // expand prod (t - u_i); coeffs[j] multiplies t^j
  std::vector<Scalar> coeffs{Scalar::from_int(1)};
  for (const auto& ui : u_) {
    std::vector<Scalar> next(coeffs.size() + 1);
    for (size_t j = 0; j < coeffs.size(); j++) {
      next[j + 1] += coeffs[j];
      next[j] -= ui * coeffs[j];
    }
    coeffs = std::move(next);
  }
  assert(coeffs.back().is_one());
  coeffs.pop_back();
  return coeffs;
}

int64_t ParamEnv::window_top_lo() const {
  if (kind_ != EnvKind::cyclotomic)
    throw RequiresCyclotomic("windows need a cyclotomic environment");
  return -((a_ - 1) / 2);
}
int64_t ParamEnv::window_top_hi() const {
  if (kind_ != EnvKind::cyclotomic)
    throw RequiresCyclotomic("windows need a cyclotomic environment");
  return a_ / 2;
}
int64_t ParamEnv::window_bot_lo() const { return -window_top_hi(); }
int64_t ParamEnv::window_bot_hi() const { return -window_top_lo(); }

namespace {

// truncated power series with Scalar coefficients, index 0..n
using Series = std::vector<Scalar>;

Series series_mul(const Series& a, const Series& b, size_t n) {
  Series out(n + 1);
  for (size_t i = 0; i <= n && i < a.size(); i++) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; i + j <= n && j < b.size(); j++)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_inv(const Series& s, size_t n) {
  if (s.empty() || s[0].is_zero())
    throw SeriesDivergence("series has no invertible constant term");
  Series out(n + 1);
  Scalar c0 = s[0].invert();
  out[0] = c0;
  for (size_t k = 1; k <= n; k++) {
    Scalar acc;
    for (size_t j = 1; j <= k && j < s.size(); j++) acc += s[j] * out[k - j];
    out[k] = -c0 * acc;
  }
  return out;
}

Series series_add(const Series& a, const Series& b, size_t n) {
  Series out(n + 1);
  for (size_t i = 0; i <= n; i++) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += b[i];
  }
  return out;
}

Series series_scale(const Series& a, const Scalar& c, size_t n) {
  Series out(n + 1);
  for (size_t i = 0; i <= n && i < a.size(); i++) out[i] = a[i] * c;
  return out;
}

// 1/(1 - t^2) truncated
Series geom_t2(size_t n) {
  Series out(n + 1);
  for (size_t i = 0; i <= n; i += 2) out[i] = Scalar::from_int(1);
  return out;
}

Series constant(const Scalar& c, size_t n) {
  Series out(n + 1);
  out[0] = c;
  return out;
}

}  // namespace

std::map<int64_t, Scalar> ParamEnv::omega_from_u(int64_t max_index) const {
  if (kind_ != EnvKind::cyclotomic)
    throw RequiresCyclotomic("the series route needs a cyclotomic environment");
  size_t n = static_cast<size_t>(max_index);
  bool odd = a_ % 2 == 1;

  Scalar prod_u = Scalar::from_int(1);
  for (const auto& ui : u_) prod_u *= ui;
  Scalar zd_inv = (z_ * delta_).invert();

  // positive side:
  //   sum_{i>=0} omega_i t^i = 1/(1-t^2) - (z delta)^{-1}
  //     + [ (z delta)^{-1} prod_u + G(t) ] * prod_u * prod (1-t/u_i)/(1-t u_i)
  // where G = t/(1-t^2) for odd counts and -1/(1-t^2) for even counts.
  Series pos;
  {
    Series g = geom_t2(n);
    Series G;
    if (odd) {
      G.assign(n + 1, Scalar());
      for (size_t i = 1; i <= n; i += 2) G[i] = Scalar::from_int(1);
    } else {
      G = series_scale(g, Scalar::from_int(-1), n);
    }
    Series bracket = series_add(constant(zd_inv * prod_u, n), G, n);
    Series ratio = constant(prod_u, n);
    for (const auto& ui : u_) {
      Series top(n + 1), bot(n + 1);
      top[0] = Scalar::from_int(1);
      bot[0] = Scalar::from_int(1);
      if (n >= 1) {
        top[1] = -ui.invert();
        bot[1] = -ui;
      }
      ratio = series_mul(ratio, top, n);
      ratio = series_mul(ratio, series_inv(bot, n), n);
    }
    pos = series_add(g, constant(-zd_inv, n), n);
    pos = series_add(pos, series_mul(bracket, ratio, n), n);
  }

  // negative side:
  //   sum_{i>=1} omega_{-i} t^i = t^2/(1-t^2) + (z delta)^{-1}
  //     - [ (z delta)^{-1} prod_u - H(t) ] * prod_u^{-1} * prod (1-t u_i)/(1-t/u_i)
  // where H = t/(1-t^2) for odd counts and -t^2/(1-t^2) for even counts.
  Series neg;
  {
    Series g2(n + 1);
    for (size_t i = 2; i <= n; i += 2) g2[i] = Scalar::from_int(1);
    Series H(n + 1);
    if (odd) {
      for (size_t i = 1; i <= n; i += 2) H[i] = Scalar::from_int(1);
    } else {
      for (size_t i = 2; i <= n; i += 2) H[i] = Scalar::from_int(-1);
    }
    Series bracket =
        series_add(constant(zd_inv * prod_u, n),
                   series_scale(H, Scalar::from_int(-1), n), n);
    Series ratio = constant(prod_u.invert(), n);
    for (const auto& ui : u_) {
      Series top(n + 1), bot(n + 1);
      top[0] = Scalar::from_int(1);
      bot[0] = Scalar::from_int(1);
      if (n >= 1) {
        top[1] = -ui;
        bot[1] = -ui.invert();
      }
      ratio = series_mul(ratio, top, n);
      ratio = series_mul(ratio, series_inv(bot, n), n);
    }
    neg = series_add(g2, constant(zd_inv, n), n);
    neg = series_add(neg,
                     series_scale(series_mul(bracket, ratio, n),
                                  Scalar::from_int(-1), n),
                     n);
  }

  if (!neg[0].is_zero())
    throw SkeinError("negative omega series has a constant term");

  std::map<int64_t, Scalar> out;
  for (size_t i = 0; i <= n; i++) out[static_cast<int64_t>(i)] = pos[i];
  for (size_t i = 1; i <= n; i++) out[-static_cast<int64_t>(i)] = neg[i];
  return out;
}

}  // namespace skein
