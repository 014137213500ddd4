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

#ifndef MIA_BAVARIA_HPP
#define MIA_BAVARIA_HPP

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "mia/base_scores.hpp"
#include "mia/dataset.hpp"
#include "mia/errors.hpp"
#include "mia/families.hpp"
#include "mia/kv.hpp"
#include "mia/math.hpp"
#include "mia/scores.hpp"

namespace mia {

/* Normal-inverse-gamma prior with per-class location and scale-sum, shared
   kappa and alpha. Requires alpha > 1 so the prior-implied variance
   beta/(alpha-1) exists for the Gaussian variant. */
struct NIGPrior {
  double mu0 = 0.0;
  double mu1 = 0.0;
  double kappa = 1.0;
  double alpha = 2.0;
  double beta0 = 1.0;
  double beta1 = 1.0;

  double loc(int m) const { return m ? mu1 : mu0; }
  double beta(int m) const { return m ? beta1 : beta0; }
};

/* One class's posterior slice (also usable as a prior slice). */
struct NIGPosterior {
  double mu = 0.0;
  double kappa = 1.0;
  double alpha = 2.0;
  double beta = 1.0;
};

/* Student-t posterior predictive: nu dof, location, squared scale. */
struct TPredictive {
  double nu = 4.0;
  double loc = 0.0;
  double scale2 = 1.0;
};

inline NIGPrior set_prior(double mu0, double mu1, double kappa, double alpha,
                          double beta0, double beta1) {
  if (!(kappa > 0.0) || !(alpha > 1.0) || !(beta0 > 0.0) || !(beta1 > 0.0) ||
      !std::isfinite(mu0) || !std::isfinite(mu1) || !std::isfinite(kappa) ||
      !std::isfinite(alpha) || !std::isfinite(beta0) || !std::isfinite(beta1)) {
    throw ConfigError(
        "prior needs finite mu, kappa > 0, alpha > 1, beta > 0");
  }
  return NIGPrior{mu0, mu1, kappa, alpha, beta0, beta1};
}

/* Empirical-Bayes prior from global per-class moments of the shadow stats:
   locations are the pooled class means, kappa = 1, alpha = 2, and beta
   matches the pooled (biased, floored) class variance via
   beta = var * (alpha - 1). */
inline NIGPrior fit_prior(const AuditDataset& ds) {
  if (ds.stat_kind != StatisticKind::LogOdds) {
    throw ConfigError("fit_prior expects log-odds statistics; convert first");
  }
  std::vector<double> cls[2];
  for (const auto& pt : ds.points) {
    for (std::size_t i = 0; i < pt.shadow_stats.size(); ++i) {
      cls[pt.shadow_members[i]].push_back(pt.shadow_stats[i]);
    }
  }
  for (int m : {0, 1}) {
    if (cls[m].empty()) {
      throw MissingClassError(
          "class " + std::to_string(m) +
              " absent from all shadows; supply an explicit prior",
          ds.points.empty() ? "" : ds.points[0].point_id);
    }
  }
  const double kappa = 1.0, alpha = 2.0;
  double mu[2], beta[2];
  for (int m : {0, 1}) {
    mu[m] = mean(cls[m]);
    double var = cls[m].size() == 1 ? 0.0 : variance_biased(cls[m], mu[m]);
    beta[m] = floor_variance(var) * (alpha - 1.0);
  }
  return NIGPrior{mu[0], mu[1], kappa, alpha, beta[0], beta[1]};
}

/* Conjugate update from the sufficient statistics (n, sample mean, sum of
   squared deviations about that mean). n = 0 returns the prior unchanged. */
inline NIGPosterior nig_update(const NIGPosterior& prior, std::size_t n,
                               double sample_mean, double sum_sq) {
  if (n == 0) return prior;
  if (!(sum_sq >= 0.0) || !std::isfinite(sample_mean)) {
    throw DomainError("nig_update needs finite mean and sum_sq >= 0");
  }
  double nn = static_cast<double>(n);
  NIGPosterior post;
  post.kappa = prior.kappa + nn;
  post.mu = (prior.kappa * prior.mu + nn * sample_mean) / post.kappa;
  post.alpha = prior.alpha + 0.5 * nn;
  double gap = sample_mean - prior.mu;
  post.beta = prior.beta + 0.5 * sum_sq +
              0.5 * prior.kappa * nn * gap * gap / post.kappa;
  return post;
}

inline NIGPosterior prior_slice(const NIGPrior& prior, int m) {
  return NIGPosterior{prior.loc(m), prior.kappa, prior.alpha, prior.beta(m)};
}

/* Predictive for one future draw: Student-t with nu = 2 alpha, the posterior
   location, and scale^2 = beta (kappa + 1) / (alpha kappa). */
inline TPredictive predictive(const NIGPosterior& post) {
  if (!(post.kappa > 0.0 && post.alpha > 0.0 && post.beta > 0.0)) {
    throw DomainError("predictive needs positive kappa, alpha, beta");
  }
  return TPredictive{2.0 * post.alpha, post.mu,
                     post.beta * (post.kappa + 1.0) / (post.alpha * post.kappa)};
}

/* Log-density of the location-scale Student-t predictive at z. */
inline double t_log_density(double z, const TPredictive& pred) {
  double s = std::sqrt(pred.scale2);
  return student_t_log_pdf((z - pred.loc) / s, pred.nu) - std::log(s);
}

namespace detail {

inline void require_logodds(const AuditDataset& ds, const char* who) {
  if (ds.stat_kind != StatisticKind::LogOdds) {
    throw ConfigError(std::string(who) +
                      " requires log-odds statistics; convert first");
  }
}

struct ClassStats {
  std::size_t n = 0;
  double mean = 0.0;
  double sum_sq = 0.0;
};

inline ClassStats class_stats(const PointRecord& pt, int m) {
  auto vals = pt.class_values(m);
  ClassStats cs;
  cs.n = vals.size();
  if (cs.n > 0) {
    cs.mean = mia::mean(vals);
    cs.sum_sq = sum_sq_dev(vals, cs.mean);
  }
  return cs;
}

}  // namespace detail

/* Full posterior-predictive likelihood ratio: per point and class, update the
   prior with that class's shadows (an empty class keeps the prior) and score
   log t_in(z0) - log t_out(z0) under the Student-t predictives. */
inline ScoreVector score_bavaria_t(const AuditDataset& ds,
                                   const NIGPrior& prior) {
  detail::require_logodds(ds, "bavaria_t");
  ScoreVector sv;
  sv.method = "bavaria_t";
  for (const auto& pt : ds.points) {
    TPredictive pred[2];
    for (int m : {0, 1}) {
      auto cs = detail::class_stats(pt, m);
      pred[m] =
          predictive(nig_update(prior_slice(prior, m), cs.n, cs.mean, cs.sum_sq));
    }
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(t_log_density(pt.target_stat, pred[1]) -
                        t_log_density(pt.target_stat, pred[0]));
  }
  return sv;
}

/* Gaussian variant: MLE class means (prior location when a class is empty)
   with the posterior-mean variance beta' / (alpha' - 1) in place of the MLE
   variance. */
inline ScoreVector score_bavaria_n(const AuditDataset& ds,
                                   const NIGPrior& prior) {
  detail::require_logodds(ds, "bavaria_n");
  ScoreVector sv;
  sv.method = "bavaria_n";
  for (const auto& pt : ds.points) {
    GaussParams g[2];
    for (int m : {0, 1}) {
      auto cs = detail::class_stats(pt, m);
      NIGPosterior post =
          nig_update(prior_slice(prior, m), cs.n, cs.mean, cs.sum_sq);
      g[m].mean = cs.n > 0 ? cs.mean : prior.loc(m);
      g[m].var = post.beta / (post.alpha - 1.0);
    }
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(llr_gaussian(pt.target_stat, g[0], g[1]));
  }
  return sv;
}

enum class OfflineForm { Linear, LogCdf };

/* Mean-shift delta estimated from labeled reference shadows: global IN mean
   minus global OUT mean, in the reference dataset's statistic kind. */
inline double offline_mean_shift(const AuditDataset& reference) {
  std::vector<double> cls[2];
  for (const auto& pt : reference.points) {
    for (std::size_t i = 0; i < pt.shadow_stats.size(); ++i) {
      cls[pt.shadow_members[i]].push_back(pt.shadow_stats[i]);
    }
  }
  if (cls[0].empty() || cls[1].empty()) {
    throw InsufficientDataError(
        "offline_mean_shift needs both classes in the reference data");
  }
  return mean(cls[1]) - mean(cls[0]);
}

/* OUT-only Gaussian scorer on log-odds. Linear: (delta / var) *
   (phi0 - mu_out - delta/2) with the global OUT residual variance; LogCdf:
   log Phi((phi0 - mu_out) / sigma), same global sigma, no delta. */
inline ScoreVector score_lira_offline(const AuditDataset& ds, double delta,
                                      OfflineForm form = OfflineForm::Linear) {
  detail::require_logodds(ds, "lira_offline");
  if (ds.has_in_shadows()) {
    throw ConfigError("lira_offline expects OUT-only shadows");
  }
  detail::require_shadows(ds, 1, "lira_offline");
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");

  double gvar = detail::global_residual_variance(ds, 0);
  double gsd = std::sqrt(gvar);

  ScoreVector sv;
  sv.method = "lira_offline";
  sv.config = form == OfflineForm::Linear ? "form=linear" : "form=logcdf";
  for (const auto& pt : ds.points) {
    auto v0 = pt.class_values(0);
    double mu_out = mean(v0);
    double score;
    if (form == OfflineForm::Linear) {
      score = (delta / gvar) * (pt.target_stat - mu_out - 0.5 * delta);
    } else {
      score = log_norm_cdf((pt.target_stat - mu_out) / gsd);
    }
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(score);
  }
  return sv;
}

/* OUT-only loss centering with attenuation alpha in [0, 1]; alpha = 1 is the
   plain LogSumExp center. */
inline ScoreVector score_base_offline(const AuditDataset& ds, double alpha) {
  if (ds.stat_kind != StatisticKind::Loss) {
    throw ConfigError("base_offline requires loss statistics; convert first");
  }
  if (ds.has_in_shadows()) {
    throw ConfigError("base_offline expects OUT-only shadows");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
  detail::require_shadows(ds, 1, "base_offline");
  ScoreVector sv;
  sv.method = "base_offline";
  sv.config = "alpha=" + std::to_string(alpha);
  for (const auto& pt : ds.points) {
    std::vector<double> neg(pt.shadow_stats.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -pt.shadow_stats[i];
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(-pt.target_stat - alpha * log_mean_exp(neg));
  }
  return sv;
}

/* Prior file: `key = value` lines for mu0, mu1, kappa, alpha, beta0, beta1. */
inline NIGPrior read_prior(std::istream& in) {
  auto kv = parse_kv(in);
  return set_prior(kv_double(kv, "mu0"), kv_double(kv, "mu1"),
                   kv_double(kv, "kappa"), kv_double(kv, "alpha"),
                   kv_double(kv, "beta0"), kv_double(kv, "beta1"));
}

inline void write_prior(std::ostream& out, const NIGPrior& p) {
  out << "mu0 = " << detail::format_double_exact(p.mu0) << '\n'
      << "mu1 = " << detail::format_double_exact(p.mu1) << '\n'
      << "kappa = " << detail::format_double_exact(p.kappa) << '\n'
      << "alpha = " << detail::format_double_exact(p.alpha) << '\n'
      << "beta0 = " << detail::format_double_exact(p.beta0) << '\n'
      << "beta1 = " << detail::format_double_exact(p.beta1) << '\n';
}

}  // namespace mia

#endif  // MIA_BAVARIA_HPP
