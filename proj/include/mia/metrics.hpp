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

#ifndef MIA_METRICS_HPP
#define MIA_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mia/errors.hpp"
#include "mia/scores.hpp"

namespace mia {

/* One operating point per distinct score threshold (ties collapse into a
   single point). Cumulative integer counts ride along so AUC can be summed
   in count space. */
struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  std::size_t fp = 0;
  std::size_t tp = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last, both nondecreasing
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

/* Thresholds sweep descending; equal scores enter together. O(N log N) and
   independent of input order. */
inline RocCurve roc(const std::vector<double>& scores,
                    const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw ConfigError("scores and labels differ in length");
  }
  if (scores.empty()) throw InsufficientDataError("roc needs samples");
  RocCurve curve;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw DomainError("non-finite score");
    if (labels[i] != 0 && labels[i] != 1) {
      throw DomainError("labels must be 0 or 1");
    }
    (labels[i] ? curve.n_pos : curve.n_neg)++;
  }
  if (curve.n_pos == 0 || curve.n_neg == 0) {
    throw InsufficientDataError("roc needs both label classes");
  }

  /* Per distinct score value: positive and negative counts. */
  std::map<double, std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    auto& g = groups[scores[i]];
    (labels[i] ? g.first : g.second)++;
  }

  curve.points.push_back({0.0, 0.0, 0, 0});
  std::size_t tp = 0, fp = 0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    tp += it->second.first;
    fp += it->second.second;
    curve.points.push_back({static_cast<double>(fp) / curve.n_neg,
                            static_cast<double>(tp) / curve.n_pos, fp, tp});
  }
  return curve;
}

/* Trapezoidal area accumulated over the integer counts and divided once, so
   the result equals the pairwise Mann-Whitney statistic (ties at half
   credit) bit for bit. */
inline double auc(const RocCurve& curve) {
  double acc = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    acc += static_cast<double>(b.fp - a.fp) * static_cast<double>(b.tp + a.tp);
  }
  return acc / (2.0 * static_cast<double>(curve.n_pos) *
                static_cast<double>(curve.n_neg));
}

/* TPR of the upper envelope at the target FPR, linearly interpolated between
   operating points; nondecreasing in the target. */
inline double tpr_at_fpr(const RocCurve& curve, double target) {
  if (!(target >= 0.0 && target <= 1.0)) {
    throw ConfigError("target fpr must lie in [0, 1]");
  }
  const auto& pts = curve.points;
  std::size_t lo = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].fpr <= target) lo = i;
  }
  if (lo + 1 >= pts.size() || pts[lo].fpr == target) return pts[lo].tpr;
  const auto& a = pts[lo];
  const auto& b = pts[lo + 1];
  return a.tpr + (b.tpr - a.tpr) * (target - a.fpr) / (b.fpr - a.fpr);
}

struct DeltaRow {
  std::string method;
  double delta_auc = 0.0;
  std::vector<double> delta_tpr;  // aligned with DeltaTable::fprs
};

struct DeltaTable {
  std::string baseline;
  std::vector<double> fprs;
  std::vector<DeltaRow> rows;
};

namespace detail {

inline void align_scores(const ScoreVector& sv,
                         const std::vector<std::pair<std::string, int>>& labels,
                         std::vector<double>& scores_out,
                         std::vector<int>& labels_out) {
  std::map<std::string, double> by_id;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    by_id[sv.point_ids[i]] = sv.values[i];
  }
  if (by_id.size() != sv.size() || by_id.size() != labels.size()) {
    throw ConfigError("score vector '" + sv.method +
                      "' does not cover the labeled points exactly");
  }
  scores_out.clear();
  labels_out.clear();
  for (const auto& [pid, lab] : labels) {
    auto it = by_id.find(pid);
    if (it == by_id.end()) {
      throw ConfigError("score vector '" + sv.method + "' lacks point_id=" +
                        pid);
    }
    scores_out.push_back(it->second);
    labels_out.push_back(lab);
  }
}

}  // namespace detail

/* AUC and TPR@FPR gaps of each method against the baseline, all score
   vectors aligned to the same labeled point set. */
inline DeltaTable delta_table(
    const std::vector<ScoreVector>& methods, const ScoreVector& baseline,
    const std::vector<std::pair<std::string, int>>& labels,
    const std::vector<double>& fprs) {
  DeltaTable table;
  table.baseline = baseline.method;
  table.fprs = fprs;

  std::vector<double> s;
  std::vector<int> l;
  detail::align_scores(baseline, labels, s, l);
  RocCurve base_curve = roc(s, l);
  double base_auc = auc(base_curve);
  std::vector<double> base_tpr;
  for (double f : fprs) base_tpr.push_back(tpr_at_fpr(base_curve, f));

  for (const auto& sv : methods) {
    detail::align_scores(sv, labels, s, l);
    RocCurve c = roc(s, l);
    DeltaRow row;
    row.method = sv.method;
    row.delta_auc = auc(c) - base_auc;
    for (std::size_t i = 0; i < fprs.size(); ++i) {
      row.delta_tpr.push_back(tpr_at_fpr(c, fprs[i]) - base_tpr[i]);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace mia

#endif  // MIA_METRICS_HPP
