// Copyright 2026 The mia-llr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIA_FAMILIES_HPP
#define MIA_FAMILIES_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "mia/errors.hpp"
#include "mia/math.hpp"

namespace mia {

struct ExpParams {
  double rate = 1.0;  // lambda > 0
};

struct GammaParams {
  double shape = 1.0;  // kappa, clamped into [kParamMin, kParamMax]
  double scale = 1.0;  // theta, clamped into [kParamMin, kParamMax]
};

struct BetaParams {
  double a = 1.0;  // alpha, clamped into [kParamMin, kParamMax]
  double b = 1.0;  // beta, clamped into [kParamMin, kParamMax]
};

struct GaussParams {
  double mean = 0.0;
  double var = 1.0;  // maximum-likelihood (1/n) variance, floored
};

namespace detail {

inline void require_positive(std::span<const double> xs) {
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DomainError("sample outside (0, inf)");
    }
  }
}

inline void require_unit_interval(std::span<const double> xs) {
  for (double x : xs) {
    if (!(x > 0.0 && x < 1.0)) {
      throw DomainError("sample outside (0, 1)");
    }
  }
}

inline bool all_equal(std::span<const double> xs) {
  for (double x : xs) {
    if (x != xs[0]) return false;
  }
  return true;
}

}  // namespace detail

/* lambda-hat = 1 / sample mean. */
inline ExpParams fit_exponential(std::span<const double> xs) {
  if (xs.empty()) throw InsufficientDataError("fit_exponential needs >= 1");
  detail::require_positive(xs);
  return ExpParams{1.0 / mean(xs)};
}

/* Maximum-likelihood Gaussian: sample mean and biased (1/n) variance with
   the global floor. A single sample yields the floored variance. */
inline GaussParams fit_gaussian(std::span<const double> xs) {
  if (xs.empty()) throw InsufficientDataError("fit_gaussian needs >= 1");
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError("non-finite sample");
  }
  double mu = mean(xs);
  double var = xs.size() == 1 ? 0.0 : variance_biased(xs, mu);
  return GaussParams{mu, floor_variance(var)};
}

/* Gamma MLE. Newton on log(kappa) - psi(kappa) = log(mean) - mean(log),
   method-of-moments start, steps halved whenever the residual grows.
   theta-hat = mean / kappa-hat, so kappa*theta reproduces the mean exactly. */
inline GammaParams fit_gamma(std::span<const double> xs) {
  if (xs.size() < 2) throw InsufficientDataError("fit_gamma needs >= 2");
  detail::require_positive(xs);
  if (detail::all_equal(xs)) {
    throw DegenerateSampleError("fit_gamma: all samples equal");
  }
  double m = mean(xs);
  std::vector<double> logs(xs.size());
  std::transform(xs.begin(), xs.end(), logs.begin(),
                 [](double x) { return std::log(x); });
  double s = std::log(m) - mean(logs);
  if (!(s > 0.0)) {
    /* Distinct samples whose Jensen gap rounds to zero: the profile equation
       has no finite root, so the shape clamp takes over. theta keeps the
       mean identity. */
    return GammaParams{kParamMax, m / kParamMax};
  }

  double v = variance_biased(xs, m);
  double kappa = std::clamp(m * m / v, 1e-8, 1e8);
  double resid = std::log(kappa) - digamma(kappa) - s;
  for (int iter = 0; iter < 100; ++iter) {
    if (std::abs(resid) < 1e-10) {
      kappa = clamp_param(kappa);
      return GammaParams{kappa, m / kappa};
    }
    double deriv = 1.0 / kappa - trigamma(kappa);
    double step = -resid / deriv;
    double next = kappa + step;
    double next_resid = 0.0;
    for (int halve = 0; halve < 60; ++halve) {
      if (next > 0.0) {
        next_resid = std::log(next) - digamma(next) - s;
        if (std::abs(next_resid) <= std::abs(resid)) break;
      }
      step *= 0.5;
      next = kappa + step;
    }
    kappa = next;
    resid = next_resid;
  }
  throw NumericalError("fit_gamma: Newton did not converge");
}

namespace detail {

/* Starting point for the Beta solve: first two probability-weighted moments
   give the L-scale; sqrt(pi)*L2 serves as a spread proxy fed through the
   moment inversion. Plain moments take over when that is out of range. */
inline BetaParams beta_init(std::span<const double> xs, double m, double v) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t n = sorted.size();
  double b1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    b1 += sorted[i] * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  b1 /= static_cast<double>(n);
  double l2 = 2.0 * b1 - m;
  double v_pwm = kPi * l2 * l2;
  double vv = (v_pwm > 0.0 && v_pwm < m * (1.0 - m)) ? v_pwm : v;
  if (!(vv > 0.0 && vv < m * (1.0 - m))) {
    return BetaParams{0.5, 0.5};
  }
  double common = m * (1.0 - m) / vv - 1.0;
  return BetaParams{std::clamp(m * common, 1e-6, 1e8),
                    std::clamp((1.0 - m) * common, 1e-6, 1e8)};
}

}  // namespace detail

/* Beta MLE via damped 2-D Newton on the coupled digamma score equations
     psi(a) - psi(a+b) = mean log p
     psi(b) - psi(a+b) = mean log(1-p)
   stopping when both residuals are below 1e-10. */
inline BetaParams fit_beta(std::span<const double> xs) {
  if (xs.size() < 2) throw InsufficientDataError("fit_beta needs >= 2");
  detail::require_unit_interval(xs);
  if (detail::all_equal(xs)) {
    throw DegenerateSampleError("fit_beta: all samples equal");
  }
  double m = mean(xs);
  double v = variance_biased(xs, m);
  std::vector<double> lp(xs.size()), lq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lp[i] = std::log(xs[i]);
    lq[i] = std::log1p(-xs[i]);
  }
  double m1 = mean(lp), m2 = mean(lq);

  BetaParams p = detail::beta_init(xs, m, v);
  double a = p.a, b = p.b;
  auto resid = [&](double aa, double bb, double& f1, double& f2) {
    double d = digamma(aa + bb);
    f1 = digamma(aa) - d - m1;
    f2 = digamma(bb) - d - m2;
    return std::max(std::abs(f1), std::abs(f2));
  };
  double f1, f2;
  double fn = resid(a, b, f1, f2);
  for (int iter = 0; iter < 100; ++iter) {
    if (fn < 1e-10) {
      return BetaParams{clamp_param(a), clamp_param(b)};
    }
    double tab = trigamma(a + b);
    double j11 = trigamma(a) - tab, j22 = trigamma(b) - tab, j12 = -tab;
    double det = j11 * j22 - j12 * j12;
    if (det == 0.0 || !std::isfinite(det)) {
      throw NumericalError("fit_beta: singular Jacobian");
    }
    double da = -(j22 * f1 - j12 * f2) / det;
    double db = -(j11 * f2 - j12 * f1) / det;
    double na = a + da, nb = b + db, nf1 = f1, nf2 = f2, nfn = fn;
    for (int halve = 0; halve < 60; ++halve) {
      if (na > 0.0 && nb > 0.0) {
        nfn = resid(na, nb, nf1, nf2);
        if (nfn <= fn) break;
      }
      da *= 0.5;
      db *= 0.5;
      na = a + da;
      nb = b + db;
    }
    a = na;
    b = nb;
    f1 = nf1;
    f2 = nf2;
    fn = nfn;
  }
  throw NumericalError("fit_beta: Newton did not converge");
}

/* Each llr_* below is assembled from terms that negate exactly when (out, in_)
   swap, so antisymmetry holds bitwise. */

inline ExpParams validate(const ExpParams& p) {
  if (!(p.rate > 0.0) || !std::isfinite(p.rate)) {
    throw DomainError("exponential rate must be positive");
  }
  return p;
}

inline double llr_exponential(double loss, const ExpParams& out,
                              const ExpParams& in_) {
  validate(out);
  validate(in_);
  if (!(loss > 0.0) || !std::isfinite(loss)) {
    throw DomainError("loss outside (0, inf)");
  }
  return (std::log(in_.rate) - std::log(out.rate)) -
         (in_.rate - out.rate) * loss;
}

enum class GammaConstraint { General, SharedScale, SharedShape };

inline double llr_gamma(double loss, const GammaParams& out,
                        const GammaParams& in_,
                        GammaConstraint c = GammaConstraint::General) {
  if (!(out.shape > 0.0 && out.scale > 0.0 && in_.shape > 0.0 &&
        in_.scale > 0.0)) {
    throw DomainError("gamma parameters must be positive");
  }
  if (!(loss > 0.0) || !std::isfinite(loss)) {
    throw DomainError("loss outside (0, inf)");
  }
  switch (c) {
    case GammaConstraint::General: {
      double t1 = (1.0 / out.scale - 1.0 / in_.scale) * loss;
      double t2 = (in_.shape - out.shape) * std::log(loss);
      double t3 = (std::lgamma(out.shape) + out.shape * std::log(out.scale)) -
                  (std::lgamma(in_.shape) + in_.shape * std::log(in_.scale));
      return t1 + t2 + t3;
    }
    case GammaConstraint::SharedScale: {
      if (out.scale != in_.scale) {
        throw ConstraintError("shared-scale gamma LLR needs equal scales");
      }
      double t2 = (in_.shape - out.shape) * std::log(loss);
      double t3 = (std::lgamma(out.shape) + out.shape * std::log(out.scale)) -
                  (std::lgamma(in_.shape) + in_.shape * std::log(in_.scale));
      return t2 + t3;
    }
    case GammaConstraint::SharedShape: {
      if (out.shape != in_.shape) {
        throw ConstraintError("shared-shape gamma LLR needs equal shapes");
      }
      double t1 = (1.0 / out.scale - 1.0 / in_.scale) * loss;
      double t3 = out.shape * (std::log(out.scale) - std::log(in_.scale));
      return t1 + t3;
    }
  }
  throw ConfigError("unknown gamma constraint");
}

inline double llr_beta(double p, const BetaParams& out, const BetaParams& in_) {
  if (!(out.a > 0.0 && out.b > 0.0 && in_.a > 0.0 && in_.b > 0.0)) {
    throw DomainError("beta parameters must be positive");
  }
  if (!(p > 0.0 && p < 1.0)) throw DomainError("confidence outside (0, 1)");
  double t1 = (in_.a - out.a) * std::log(p);
  double t2 = (in_.b - out.b) * std::log1p(-p);
  double t3 = log_beta_fn(out.a, out.b) - log_beta_fn(in_.a, in_.b);
  return t1 + t2 + t3;
}

/* Equal variances reduce to the linear equal-variance form exactly; that
   branch is taken on bitwise-equal variances. */
inline double llr_gaussian(double z, const GaussParams& out,
                           const GaussParams& in_) {
  if (!(out.var > 0.0 && in_.var > 0.0)) {
    throw DomainError("gaussian variances must be positive");
  }
  if (!std::isfinite(z)) throw DomainError("non-finite statistic");
  if (out.var == in_.var) {
    return ((in_.mean - out.mean) / out.var) * (z - 0.5 * (out.mean + in_.mean));
  }
  double d0 = z - out.mean, d1 = z - in_.mean;
  double quad = 0.5 * (d0 * d0 / out.var - d1 * d1 / in_.var);
  double logterm = 0.5 * (std::log(out.var) - std::log(in_.var));
  return quad + logterm;
}

}  // namespace mia

#endif  // MIA_FAMILIES_HPP
