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

#ifndef MIA_STATISTIC_HPP
#define MIA_STATISTIC_HPP

#include <cmath>
#include <string>

#include "mia/errors.hpp"
#include "mia/math.hpp"

namespace mia {

/* The three interchangeable per-example statistics:
     Loss      l   in (0, inf)
     Conf      p   in (0, 1)
     LogOdds   phi in (-inf, inf)
   with l = -log p and phi = log(p / (1 - p)). */
enum class StatisticKind { Loss, Conf, LogOdds };

inline std::string to_token(StatisticKind k) {
  switch (k) {
    case StatisticKind::Loss: return "loss";
    case StatisticKind::Conf: return "conf";
    case StatisticKind::LogOdds: return "logodds";
  }
  throw ConfigError("unknown statistic kind");
}

inline StatisticKind statistic_kind_from_token(const std::string& s) {
  if (s == "loss") return StatisticKind::Loss;
  if (s == "conf") return StatisticKind::Conf;
  if (s == "logodds") return StatisticKind::LogOdds;
  throw ConfigError("unknown statistic token '" + s + "'");
}

inline bool in_domain(StatisticKind k, double v) {
  if (!std::isfinite(v)) return false;
  switch (k) {
    case StatisticKind::Loss: return v > 0.0;
    case StatisticKind::Conf: return v > 0.0 && v < 1.0;
    case StatisticKind::LogOdds: return true;
  }
  return false;
}

inline void check_domain(StatisticKind k, double v, const std::string& ctx) {
  if (!in_domain(k, v)) {
    throw DomainError("value " + std::to_string(v) + " outside " +
                      to_token(k) + " domain" +
                      (ctx.empty() ? "" : " [" + ctx + "]"));
  }
}

inline double clamp_prob(double p) {
  if (p < kProbGuard) return kProbGuard;
  if (p > 1.0 - kProbGuard) return 1.0 - kProbGuard;
  return p;
}

/* All routes pass through a guarded confidence, so every output lands inside
   its open domain. Identity conversions return the input untouched. */
inline double convert_statistic(double v, StatisticKind from,
                                StatisticKind to) {
  check_domain(from, v, "");
  if (from == to) return v;
  double p;
  switch (from) {
    case StatisticKind::Loss: p = clamp_prob(std::exp(-v)); break;
    case StatisticKind::Conf: p = clamp_prob(v); break;
    case StatisticKind::LogOdds: p = clamp_prob(sigmoid(v)); break;
    default: throw ConfigError("unknown statistic kind");
  }
  switch (to) {
    case StatisticKind::Loss: return -std::log(p);
    case StatisticKind::Conf: return p;
    case StatisticKind::LogOdds: return std::log(p) - std::log1p(-p);
    default: throw ConfigError("unknown statistic kind");
  }
}

/* Orientation used by the BASE family: larger oriented value means more
   IN-like. Loss flips sign; the other kinds already point that way. */
inline double oriented(double v, StatisticKind k) {
  return k == StatisticKind::Loss ? -v : v;
}

}  // namespace mia

#endif  // MIA_STATISTIC_HPP
