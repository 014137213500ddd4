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

#ifndef MIA_BASE_SCORES_HPP
#define MIA_BASE_SCORES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mia/dataset.hpp"
#include "mia/errors.hpp"
#include "mia/families.hpp"
#include "mia/math.hpp"
#include "mia/scores.hpp"
#include "mia/statistic.hpp"

namespace mia {

enum class Centering { Arithmetic, LogSumExp };

/* Variance handling for the per-point Gaussian scorer. HardSwitch falls back
   to the global per-class variance for the whole dataset when any point has
   fewer than `threshold` shadows in either class; exactly `threshold` stays
   per-point. */
struct VarianceMode {
  enum class Kind { PerPoint, Global, HardSwitch };
  Kind kind = Kind::HardSwitch;
  std::size_t threshold = 32;

  static VarianceMode per_point() { return {Kind::PerPoint, 32}; }
  static VarianceMode global() { return {Kind::Global, 32}; }
  static VarianceMode hard_switch(std::size_t t = 32) {
    return {Kind::HardSwitch, t};
  }

  std::string to_config() const {
    switch (kind) {
      case Kind::PerPoint: return "vmode=perpoint";
      case Kind::Global: return "vmode=global";
      case Kind::HardSwitch:
        return "vmode=hardswitch" + std::to_string(threshold);
    }
    return "";
  }
};

namespace detail {

inline std::vector<double> oriented_shadows(const PointRecord& pt,
                                            StatisticKind kind) {
  std::vector<double> out(pt.shadow_stats.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = oriented(pt.shadow_stats[i], kind);
  }
  return out;
}

inline void require_shadows(const AuditDataset& ds, std::size_t n,
                            const char* who) {
  if (ds.k < n) {
    throw InsufficientDataError(std::string(who) + " needs >= " +
                                std::to_string(n) + " shadows per point");
  }
}

/* Per-class variance of residuals about each point's own class mean, pooled
   over the whole dataset with a 1/N denominator. */
inline double global_residual_variance(const AuditDataset& ds, int m) {
  double ss = 0.0, comp = 0.0;
  std::size_t n = 0;
  for (const auto& pt : ds.points) {
    auto vals = pt.class_values(m);
    if (vals.empty()) continue;
    double mu = mean(vals);
    double d = sum_sq_dev(vals, mu);
    double t = ss + d;
    comp += (ss >= d) ? (ss - t) + d : (d - t) + ss;
    ss = t;
    n += vals.size();
  }
  if (n == 0) {
    throw MissingClassError("no shadows in class " + std::to_string(m),
                            ds.points.empty() ? "" : ds.points[0].point_id);
  }
  return floor_variance((ss + comp) / static_cast<double>(n));
}

}  // namespace detail

/* Score the target statistic against the pooled shadow population by simple
   centering: z0 - center(shadows), statistics oriented so larger is more
   IN-like. LogSumExp centering is defined on losses only and uses the
   max-shifted stable form. */
inline ScoreVector score_base1(const AuditDataset& ds,
                               Centering centering = Centering::Arithmetic) {
  if (centering == Centering::LogSumExp &&
      ds.stat_kind != StatisticKind::Loss) {
    throw ConfigError("LogSumExp centering requires loss statistics");
  }
  detail::require_shadows(ds, 1, "base1");
  ScoreVector sv;
  sv.method = "base1";
  sv.config =
      centering == Centering::Arithmetic ? "centering=arith" : "centering=lse";
  for (const auto& pt : ds.points) {
    double score;
    if (centering == Centering::Arithmetic) {
      auto z = detail::oriented_shadows(pt, ds.stat_kind);
      score = oriented(pt.target_stat, ds.stat_kind) - mean(z);
    } else {
      std::vector<double> neg(pt.shadow_stats.size());
      for (std::size_t i = 0; i < neg.size(); ++i) {
        neg[i] = -pt.shadow_stats[i];
      }
      score = -pt.target_stat - log_mean_exp(neg);
    }
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(score);
  }
  return sv;
}

/* Pooled-Gaussian score ignoring shadow membership:
   (z0 - pooled mean) / pooled variance. */
inline ScoreVector score_base2(const AuditDataset& ds) {
  detail::require_shadows(ds, 2, "base2");
  ScoreVector sv;
  sv.method = "base2";
  for (const auto& pt : ds.points) {
    auto z = detail::oriented_shadows(pt, ds.stat_kind);
    double mu = mean(z);
    double var = floor_variance(variance_biased(z, mu));
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back((oriented(pt.target_stat, ds.stat_kind) - mu) / var);
  }
  return sv;
}

/* Equal-variance two-class score: ((mu1 - mu0) / pooled var) *
   (z0 - (mu0 + mu1)/2), the pooled variance combining both classes'
   squared deviations over n0 + n1. */
inline ScoreVector score_base3(const AuditDataset& ds) {
  detail::require_shadows(ds, 2, "base3");
  ScoreVector sv;
  sv.method = "base3";
  for (const auto& pt : ds.points) {
    auto z = detail::oriented_shadows(pt, ds.stat_kind);
    std::vector<double> z0, z1;
    for (std::size_t i = 0; i < z.size(); ++i) {
      (pt.shadow_members[i] ? z1 : z0).push_back(z[i]);
    }
    if (z0.empty() || z1.empty()) {
      throw MissingClassError("base3 needs both classes", pt.point_id);
    }
    double mu0 = mean(z0), mu1 = mean(z1);
    double pooled =
        floor_variance((sum_sq_dev(z0, mu0) + sum_sq_dev(z1, mu1)) /
                       static_cast<double>(z0.size() + z1.size()));
    double zt = oriented(pt.target_stat, ds.stat_kind);
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(((mu1 - mu0) / pooled) * (zt - 0.5 * (mu0 + mu1)));
  }
  return sv;
}

/* Per-class Gaussian plug-in: llr_gaussian with each class's own MLE fit. */
inline ScoreVector score_base4(const AuditDataset& ds) {
  detail::require_shadows(ds, 2, "base4");
  ScoreVector sv;
  sv.method = "base4";
  for (const auto& pt : ds.points) {
    auto z = detail::oriented_shadows(pt, ds.stat_kind);
    std::vector<double> z0, z1;
    for (std::size_t i = 0; i < z.size(); ++i) {
      (pt.shadow_members[i] ? z1 : z0).push_back(z[i]);
    }
    if (z0.empty() || z1.empty()) {
      throw MissingClassError("base4 needs both classes", pt.point_id);
    }
    GaussParams out = fit_gaussian(z0);
    GaussParams in_ = fit_gaussian(z1);
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(
        llr_gaussian(oriented(pt.target_stat, ds.stat_kind), out, in_));
  }
  return sv;
}

/* Per-point Gaussian likelihood ratio on log-odds with configurable variance
   handling. PerPoint coincides with score_base4; Global (and a triggered
   HardSwitch) substitutes the pooled per-class residual variance for both
   classes while keeping per-point means. */
inline ScoreVector score_lira(const AuditDataset& ds,
                              VarianceMode vmode = VarianceMode::hard_switch()) {
  if (ds.stat_kind != StatisticKind::LogOdds) {
    throw ConfigError("lira requires log-odds statistics; convert first");
  }
  detail::require_shadows(ds, 2, "lira");

  std::size_t min_class = std::numeric_limits<std::size_t>::max();
  for (const auto& pt : ds.points) {
    std::size_t n0 = pt.class_count(0), n1 = pt.class_count(1);
    if (n0 == 0 || n1 == 0) {
      throw MissingClassError("lira needs both classes", pt.point_id);
    }
    min_class = std::min({min_class, n0, n1});
  }

  bool use_global = vmode.kind == VarianceMode::Kind::Global ||
                    (vmode.kind == VarianceMode::Kind::HardSwitch &&
                     !ds.points.empty() && min_class < vmode.threshold);

  double gvar0 = 0.0, gvar1 = 0.0;
  if (use_global) {
    gvar0 = detail::global_residual_variance(ds, 0);
    gvar1 = detail::global_residual_variance(ds, 1);
  }

  ScoreVector sv;
  sv.method = "lira";
  sv.config = vmode.to_config();
  for (const auto& pt : ds.points) {
    auto v0 = pt.class_values(0);
    auto v1 = pt.class_values(1);
    GaussParams out = fit_gaussian(v0);
    GaussParams in_ = fit_gaussian(v1);
    if (use_global) {
      out.var = gvar0;
      in_.var = gvar1;
    }
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(llr_gaussian(pt.target_stat, out, in_));
  }
  return sv;
}

/* Loss-domain population centering; equals score_base1 with LogSumExp on the
   loss-converted dataset, value for value. */
inline ScoreVector score_rmia(const AuditDataset& ds) {
  ScoreVector sv = score_base1(convert_dataset(ds, StatisticKind::Loss),
                               Centering::LogSumExp);
  sv.method = "rmia";
  sv.config = "gamma=1";
  return sv;
}

}  // namespace mia

#endif  // MIA_BASE_SCORES_HPP
