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

#ifndef MIA_ELSA_HPP
#define MIA_ELSA_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "mia/dataset.hpp"
#include "mia/errors.hpp"
#include "mia/math.hpp"
#include "mia/parallel.hpp"
#include "mia/scores.hpp"
#include "mia/statistic.hpp"

namespace mia {

/* Base feature layout over a confidence p (clamped into the open unit
   interval first), with phi = log(p / (1 - p)):
     0: 1    1: log(-log p)    2: log p    3: log(1 - p)
     4: phi^2    5: p    6: p^2
   Slot 7 is the composite phi feature, available to masks that want the
   plain rescaled logit. */
inline constexpr std::size_t kElsaFeatures = 8;

inline std::array<double, 7> feature_map(double p) {
  p = clamp_prob(p);
  double lp = std::log(p);
  double lq = std::log1p(-p);
  double phi = lp - lq;
  return {1.0, std::log(-lp), lp, lq, phi * phi, p, p * p};
}

inline double feature_phi(double p) {
  p = clamp_prob(p);
  return std::log(p) - std::log1p(-p);
}

struct FeatureMask {
  std::array<bool, kElsaFeatures> active{};  // slot 7 = composite phi
  std::string token;

  static FeatureMask from_token(const std::string& tok) {
    FeatureMask m;
    m.token = tok;
    m.active[0] = true;  // intercept always participates
    if (tok == "elsa1") {
    } else if (tok == "elsa2phi") {
      m.active[7] = true;
    } else if (tok == "elsa3beta") {
      m.active[2] = m.active[3] = true;
    } else if (tok == "elsa3gamma") {
      m.active[1] = m.active[2] = true;
    } else if (tok == "elsa3phi") {
      m.active[4] = m.active[7] = true;
    } else if (tok == "elsafull") {
      for (std::size_t j = 0; j < 7; ++j) m.active[j] = true;
    } else {
      throw ConfigError("unknown mask token '" + tok + "'");
    }
    return m;
  }

  std::vector<std::size_t> active_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < kElsaFeatures; ++j) {
      if (active[j]) out.push_back(j);
    }
    return out;
  }
};

inline double feature_slot(double p, std::size_t slot) {
  if (slot == 7) return feature_phi(p);
  return feature_map(p)[slot];
}

/* Fit result. `w` lives in raw feature space (inactive slots exactly zero);
   the standardized-space weights, centers/scales, final ridge objective, and
   gradient norm are kept so optimality can be checked without refitting. */
struct ElsaWeights {
  std::array<double, kElsaFeatures> w{};
  double lambda = 0.0;
  FeatureMask mask;
  double objective = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  std::vector<double> w_std;    // aligned with mask.active_slots()
  std::vector<double> centers;
  std::vector<double> scales;

  double score(double p) const {
    double s = 0.0;
    for (std::size_t j = 0; j < kElsaFeatures; ++j) {
      if (w[j] != 0.0) s += w[j] * feature_slot(p, j);
    }
    return s;
  }
};

namespace detail {

/* Ridge-penalized logistic objective on a given design; the intercept
   column (index 0) is unpenalized. */
inline double ridge_logistic_objective(const std::vector<std::vector<double>>& x,
                                       const std::vector<double>& y,
                                       const std::vector<double>& w,
                                       double lambda) {
  double obj = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double eta = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) eta += x[k][j] * w[j];
    obj += softplus(eta) - y[k] * eta;
  }
  for (std::size_t j = 1; j < w.size(); ++j) obj += lambda * w[j] * w[j];
  return obj;
}

/* Cholesky solve of the (small, SPD) Newton system; returns false when the
   factorization breaks down. */
inline bool cholesky_solve(std::vector<std::vector<double>> a,
                           std::vector<double> b, std::vector<double>& out) {
  std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
      if (i == j) {
        if (!(s > 0.0)) return false;
        a[i][i] = std::sqrt(s);
      } else {
        a[i][j] = s / a[j][j];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
    b[i] = s / a[i][i];
  }
  out.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a[k][ii] * out[k];
    out[ii] = s / a[ii][ii];
  }
  return true;
}

}  // namespace detail

/* Per-point ridge logistic fit of shadow memberships on the masked features.
   The non-intercept columns are z-scored for the solve (the penalty acts on
   that scale) and the weights are mapped back to raw feature space. Damped
   Newton, stopping when the standardized-space gradient 2-norm drops below
   1e-8; 100 iterations or a saturated unpenalized fit raise NumericalError
   with the suggestion to use lambda > 0. */
inline ElsaWeights fit_elsa(const PointRecord& pt, double lambda,
                            const FeatureMask& mask) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be finite and >= 0");
  }
  std::size_t n = pt.shadow_stats.size();
  bool any0 = false, any1 = false;
  for (auto b : pt.shadow_members) (b ? any1 : any0) = true;
  if (!any0 || !any1) {
    throw MissingClassError("elsa fit needs both classes", pt.point_id);
  }

  auto slots = mask.active_slots();
  std::size_t d = slots.size();
  std::vector<std::vector<double>> x(n, std::vector<double>(d));
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      x[k][j] = feature_slot(pt.shadow_stats[k], slots[j]);
    }
    y[k] = pt.shadow_members[k];
  }

  /* z-score non-intercept columns; constant columns keep scale 1. */
  std::vector<double> centers(d, 0.0), scales(d, 1.0);
  for (std::size_t j = 1; j < d; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += x[k][j];
    centers[j] = s / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double dd = x[k][j] - centers[j];
      ss += dd * dd;
    }
    double sd = std::sqrt(ss / static_cast<double>(n));
    if (sd > 1e-12) scales[j] = sd;
    for (std::size_t k = 0; k < n; ++k) {
      x[k][j] = (x[k][j] - centers[j]) / scales[j];
    }
  }

  std::vector<double> w(d, 0.0), grad(d), mu(n);
  double obj = detail::ridge_logistic_objective(x, y, w, lambda);
  double gnorm = 0.0;
  int iter = 0;
  for (; iter < 100; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      double eta = 0.0;
      for (std::size_t j = 0; j < d; ++j) eta += x[k][j] * w[j];
      mu[k] = sigmoid(eta);
    }
    for (std::size_t j = 0; j < d; ++j) {
      double g = 0.0;
      for (std::size_t k = 0; k < n; ++k) g += x[k][j] * (mu[k] - y[k]);
      if (j > 0) g += 2.0 * lambda * w[j];
      grad[j] = g;
    }
    gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-8) break;

    if (lambda == 0.0) {
      bool saturated = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(mu[k] - y[k]) >= 1e-4) {
          saturated = false;
          break;
        }
      }
      if (saturated) {
        throw NumericalError(
            "elsa fit diverged: data appear separable; use lambda > 0");
      }
    }

    std::vector<std::vector<double>> h(d, std::vector<double>(d, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      double wk = mu[k] * (1.0 - mu[k]);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          h[i][j] += wk * x[k][i] * x[k][j];
        }
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) h[i][j] = h[j][i];
      if (i > 0) h[i][i] += 2.0 * lambda;
    }

    std::vector<double> step, rhs(d);
    for (std::size_t j = 0; j < d; ++j) rhs[j] = -grad[j];
    if (!detail::cholesky_solve(h, rhs, step)) {
      /* Singular curvature: fall back to a scaled gradient step. */
      step.assign(d, 0.0);
      for (std::size_t j = 0; j < d; ++j) step[j] = -grad[j];
    }

    /* Monotone up to roundoff: near the optimum the Newton decrement drops
       below one ulp of the objective, so a strict non-increase test would
       reject the finishing step and leave the gradient stalled just above
       tolerance. */
    const double slack = 1e-12 * (1.0 + std::abs(obj));
    std::vector<double> wn(d);
    double scale = 1.0;
    bool improved = false;
    for (int halve = 0; halve < 60; ++halve) {
      for (std::size_t j = 0; j < d; ++j) wn[j] = w[j] + scale * step[j];
      double on = detail::ridge_logistic_objective(x, y, wn, lambda);
      if (on <= obj + slack) {
        w = wn;
        obj = on;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      throw NumericalError("elsa fit stalled; use lambda > 0");
    }
  }
  if (gnorm >= 1e-8) {
    throw NumericalError("elsa fit did not converge in 100 iterations; "
                         "use lambda > 0");
  }

  ElsaWeights ew;
  ew.lambda = lambda;
  ew.mask = mask;
  ew.objective = obj;
  ew.grad_norm = gnorm;
  ew.iterations = iter;
  ew.w_std = w;
  ew.centers = centers;
  ew.scales = scales;
  double intercept = w[0];
  for (std::size_t j = 1; j < d; ++j) {
    double raw = w[j] / scales[j];
    ew.w[slots[j]] = raw;
    intercept -= raw * centers[j];
  }
  ew.w[0] = intercept;
  return ew;
}

/* Per-point ELSA scores on the confidence-converted dataset. Points whose
   fit fails land in the failure report instead of the score vector. Offline
   (single-class) data cannot be fit at all. */
inline ScoreReport score_elsa(const AuditDataset& ds, double lambda,
                              const FeatureMask& mask) {
  if (!ds.has_in_shadows() && !ds.points.empty()) {
    throw MissingClassError("elsa is undefined on OUT-only data",
                            ds.points[0].point_id);
  }
  AuditDataset conf = convert_dataset(ds, StatisticKind::Conf);

  struct Slot {
    bool ok = false;
    double score = 0.0;
    std::string error;
  };
  std::vector<Slot> slots(conf.points.size());
  parallel_for(conf.points.size(), [&](std::size_t i) {
    const auto& pt = conf.points[i];
    try {
      ElsaWeights ew = fit_elsa(pt, lambda, mask);
      slots[i].score = ew.score(pt.target_stat);
      slots[i].ok = true;
    } catch (const Error& e) {
      slots[i].error = e.what();
    }
  });

  ScoreReport rep;
  rep.scores.method = "elsa";
  rep.scores.config =
      "mask=" + mask.token + ",lambda=" + std::to_string(lambda);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].ok) {
      rep.scores.point_ids.push_back(conf.points[i].point_id);
      rep.scores.values.push_back(slots[i].score);
    } else {
      rep.failures.push_back({conf.points[i].point_id, slots[i].error});
    }
  }
  return rep;
}

}  // namespace mia

#endif  // MIA_ELSA_HPP
