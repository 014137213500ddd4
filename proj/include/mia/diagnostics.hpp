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

#ifndef MIA_DIAGNOSTICS_HPP
#define MIA_DIAGNOSTICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "mia/dataset.hpp"
#include "mia/errors.hpp"
#include "mia/math.hpp"

namespace mia {

/* 5% critical value for the size-corrected statistic. */
inline constexpr double kAdCriticalValue = 0.748;
inline constexpr std::size_t kAdMinSamples = 8;

struct AdResult {
  double statistic = 0.0;  // A^2 * (1 + 4/n - 25/n^2)
  bool reject = false;     // statistic > 0.748
};

/* Anderson-Darling normality check with estimated mean and (unbiased) sd.
   Needs n >= 8; a zero-spread sample is degenerate. */
inline AdResult anderson_darling(std::span<const double> xs) {
  std::size_t n = xs.size();
  if (n < kAdMinSamples) {
    throw InsufficientDataError("anderson_darling needs >= 8 samples");
  }
  double mu = mean(xs);
  double sd = std::sqrt(variance_unbiased(xs, mu));
  if (!(sd > 0.0)) {
    throw DegenerateSampleError("anderson_darling: zero variance");
  }
  std::vector<double> y(xs.begin(), xs.end());
  for (auto& v : y) v = (v - mu) / sd;
  std::sort(y.begin(), y.end());

  double nn = static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 2.0 * static_cast<double>(i) + 1.0;
    acc += w * (log_norm_cdf(y[i]) + log_norm_cdf(-y[n - 1 - i]));
  }
  double a2 = -nn - acc / nn;
  double corrected = a2 * (1.0 + 4.0 / nn - 25.0 / (nn * nn));
  return AdResult{corrected, corrected > kAdCriticalValue};
}

struct ClassDiagnostics {
  int class_label = 0;
  std::size_t n_tested = 0;
  std::size_t n_skipped = 0;  // too few shadows or zero spread
  double median_stat = std::numeric_limits<double>::quiet_NaN();
  double reject_pct = 0.0;
};

struct DiagnosticsReport {
  std::array<ClassDiagnostics, 2> per_class;
};

/* Per-point, per-class normality screen of the log-odds shadows. Points with
   fewer than 8 shadows in a class, or no spread, are counted as skipped. */
inline DiagnosticsReport diagnose_dataset(const AuditDataset& ds) {
  if (ds.stat_kind != StatisticKind::LogOdds) {
    throw ConfigError("diagnose expects log-odds statistics; convert first");
  }
  DiagnosticsReport rep;
  for (int m : {0, 1}) {
    ClassDiagnostics& cd = rep.per_class[m];
    cd.class_label = m;
    std::vector<double> stats;
    std::size_t rejects = 0;
    for (const auto& pt : ds.points) {
      auto vals = pt.class_values(m);
      try {
        AdResult r = anderson_darling(vals);
        stats.push_back(r.statistic);
        if (r.reject) ++rejects;
      } catch (const InsufficientDataError&) {
        ++cd.n_skipped;
      } catch (const DegenerateSampleError&) {
        ++cd.n_skipped;
      }
    }
    cd.n_tested = stats.size();
    if (!stats.empty()) {
      std::sort(stats.begin(), stats.end());
      std::size_t half = stats.size() / 2;
      cd.median_stat = stats.size() % 2 == 1
                           ? stats[half]
                           : 0.5 * (stats[half - 1] + stats[half]);
      cd.reject_pct =
          100.0 * static_cast<double>(rejects) / static_cast<double>(cd.n_tested);
    }
  }
  return rep;
}

}  // namespace mia

#endif  // MIA_DIAGNOSTICS_HPP
