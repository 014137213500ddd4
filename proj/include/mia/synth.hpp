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

#ifndef MIA_SYNTH_HPP
#define MIA_SYNTH_HPP

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mia/dataset.hpp"
#include "mia/errors.hpp"
#include "mia/families.hpp"
#include "mia/kv.hpp"
#include "mia/math.hpp"
#include "mia/scores.hpp"

namespace mia {

/* Counter-based generator: every draw is a pure function of
   (seed, point index, stream, counter), so points are independent streams
   and regenerating with a different shadow count leaves the per-point truth
   draws untouched. */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t point, std::uint64_t stream) {
    std::uint64_t k = mix(seed ^ 0x243f6a8885a308d3ULL);
    k = mix(k ^ (point + 1) * 0x9e3779b97f4a7c15ULL);
    key_ = mix(k ^ (stream + 1) * 0xd1b54a32d192ed03ULL);
  }

  /* Uniform on the open interval (0, 1). */
  double u01(std::uint64_t counter) const {
    std::uint64_t bits = mix(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  /* Box-Muller normal consuming counters 2i and 2i+1. */
  double normal(std::uint64_t i) const {
    double u1 = u01(2 * i), u2 = u01(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double exponential(std::uint64_t counter, double rate) const {
    return -std::log(u01(counter)) / rate;
  }

  double log_uniform(std::uint64_t counter, double lo, double hi) const {
    return std::exp(std::log(lo) + u01(counter) * (std::log(hi) - std::log(lo)));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
};

struct SynthConfig {
  enum class Family { Gaussian, Exponential };

  Family family = Family::Gaussian;
  std::size_t n_points = 1000;
  std::size_t k_shadows = 64;
  std::uint64_t seed = 1;
  double in_fraction = 0.5;             // exact round(K * frac) IN shadows
  double target_member_fraction = 0.5;  // Bernoulli per point
  bool offline = false;                 // all shadows OUT

  /* Gaussian hyperdistributions (log-odds statistics):
       mu0 ~ Normal(mu0_loc, mu0_scale^2)
       mu1 = mu0 + gap, gap ~ LogNormal(log(gap_loc), gap_scale)
       var_m ~ LogUniform(var_lo, var_hi) per class. */
  double mu0_loc = 0.0;
  double mu0_scale = 1.0;
  double gap_loc = 1.0;
  double gap_scale = 0.5;
  double var_lo = 0.25;
  double var_hi = 4.0;

  /* Exponential hyperdistributions (loss statistics):
       lam0 ~ LogUniform(lam0_lo, lam0_hi)
       lam1 = lam0 * LogUniform(ratio_lo, ratio_hi), ratio > 1 means smaller
       IN losses. */
  double lam0_lo = 0.5;
  double lam0_hi = 2.0;
  double ratio_lo = 1.5;
  double ratio_hi = 3.0;

  StatisticKind stat_kind() const {
    return family == Family::Gaussian ? StatisticKind::LogOdds
                                      : StatisticKind::Loss;
  }

  void validate() const {
    if (n_points < 1) throw ConfigError("n_points must be >= 1");
    if (k_shadows < 1) throw ConfigError("k_shadows must be >= 1");
    if (!(in_fraction >= 0.0 && in_fraction <= 1.0)) {
      throw ConfigError("in_fraction must lie in [0, 1]");
    }
    if (!(target_member_fraction >= 0.0 && target_member_fraction <= 1.0)) {
      throw ConfigError("target_member_fraction must lie in [0, 1]");
    }
    if (!(mu0_scale >= 0.0) || !(gap_loc > 0.0) || !(gap_scale >= 0.0)) {
      throw ConfigError("bad gaussian hyperparameters");
    }
    if (!(0.0 < var_lo && var_lo <= var_hi)) {
      throw ConfigError("need 0 < var_lo <= var_hi");
    }
    if (!(0.0 < lam0_lo && lam0_lo <= lam0_hi) ||
        !(0.0 < ratio_lo && ratio_lo <= ratio_hi)) {
      throw ConfigError("bad exponential hyperparameters");
    }
  }
};

/* True per-point parameters behind a generated dataset. */
struct PointTruth {
  double mu0 = 0.0, mu1 = 0.0, var0 = 1.0, var1 = 1.0;  // gaussian
  double lam0 = 1.0, lam1 = 1.0;                        // exponential
  int member = 0;
};

struct SynthTruth {
  SynthConfig::Family family = SynthConfig::Family::Gaussian;
  std::vector<std::string> point_ids;
  std::vector<PointTruth> truths;
  std::unordered_map<std::string, std::size_t> index;

  const PointTruth& at(const std::string& point_id) const {
    auto it = index.find(point_id);
    if (it == index.end()) {
      throw KeyError("unknown point_id '" + point_id + "'");
    }
    return truths[it->second];
  }
};

/* Exact log-likelihood ratio under the generating parameters; z is in the
   dataset's native kind (log-odds for Gaussian, loss for Exponential). */
inline double true_llr(const SynthTruth& truth, const std::string& point_id,
                       double z) {
  const PointTruth& t = truth.at(point_id);
  if (truth.family == SynthConfig::Family::Gaussian) {
    return llr_gaussian(z, GaussParams{t.mu0, t.var0},
                        GaussParams{t.mu1, t.var1});
  }
  return llr_exponential(z, ExpParams{t.lam0}, ExpParams{t.lam1});
}

inline ScoreVector score_true_llr(const AuditDataset& ds,
                                  const SynthTruth& truth) {
  ScoreVector sv;
  sv.method = "true_llr";
  for (const auto& pt : ds.points) {
    sv.point_ids.push_back(pt.point_id);
    sv.values.push_back(true_llr(truth, pt.point_id, pt.target_stat));
  }
  return sv;
}

namespace detail {

/* Stream ids within a point. */
inline constexpr std::uint64_t kStreamParams = 0;
inline constexpr std::uint64_t kStreamMembers = 1;
inline constexpr std::uint64_t kStreamShadows = 2;
inline constexpr std::uint64_t kStreamTarget = 3;

inline double draw_stat(const CounterRng& rng, std::uint64_t slot,
                        const SynthConfig& cfg, const PointTruth& t, int m) {
  if (cfg.family == SynthConfig::Family::Gaussian) {
    double mu = m ? t.mu1 : t.mu0;
    double sd = std::sqrt(m ? t.var1 : t.var0);
    return mu + sd * rng.normal(slot);
  }
  return rng.exponential(slot, m ? t.lam1 : t.lam0);
}

}  // namespace detail

/* Deterministic synthetic benchmark: per point, draw true parameters, the
   target membership bit, an exactly-balanced shadow membership pattern
   (round(K * in_fraction) IN, Fisher-Yates order), then every statistic from
   its class-conditional law. */
inline std::pair<AuditDataset, SynthTruth> generate(const SynthConfig& cfg) {
  cfg.validate();
  AuditDataset ds;
  ds.stat_kind = cfg.stat_kind();
  ds.k = cfg.k_shadows;
  SynthTruth truth;
  truth.family = cfg.family;

  std::size_t n_in = cfg.offline
                         ? 0
                         : static_cast<std::size_t>(std::llround(
                               cfg.in_fraction *
                               static_cast<double>(cfg.k_shadows)));

  for (std::size_t i = 0; i < cfg.n_points; ++i) {
    PointTruth t;
    CounterRng params(cfg.seed, i, detail::kStreamParams);
    if (cfg.family == SynthConfig::Family::Gaussian) {
      t.mu0 = cfg.mu0_loc + cfg.mu0_scale * params.normal(0);
      double gap = std::exp(std::log(cfg.gap_loc) +
                            cfg.gap_scale * params.normal(1));
      t.mu1 = t.mu0 + gap;
      t.var0 = params.log_uniform(4, cfg.var_lo, cfg.var_hi);
      t.var1 = params.log_uniform(5, cfg.var_lo, cfg.var_hi);
    } else {
      t.lam0 = params.log_uniform(0, cfg.lam0_lo, cfg.lam0_hi);
      t.lam1 = t.lam0 * params.log_uniform(1, cfg.ratio_lo, cfg.ratio_hi);
    }

    CounterRng members(cfg.seed, i, detail::kStreamMembers);
    t.member = members.u01(0) < cfg.target_member_fraction ? 1 : 0;

    std::vector<std::uint8_t> pattern(cfg.k_shadows, 0);
    if (!cfg.offline) {
      for (std::size_t j = 0; j < n_in && j < cfg.k_shadows; ++j) {
        pattern[j] = 1;
      }
      for (std::size_t j = cfg.k_shadows; j-- > 1;) {
        std::size_t pick = static_cast<std::size_t>(
            members.u01(1 + j) * static_cast<double>(j + 1));
        if (pick > j) pick = j;
        std::swap(pattern[j], pattern[pick]);
      }
    }

    PointRecord rec;
    rec.point_id = "p" + std::to_string(i);
    rec.target_member = t.member;
    CounterRng target(cfg.seed, i, detail::kStreamTarget);
    rec.target_stat = detail::draw_stat(target, 0, cfg, t, t.member);
    CounterRng shadows(cfg.seed, i, detail::kStreamShadows);
    for (std::size_t k = 0; k < cfg.k_shadows; ++k) {
      rec.shadow_members.push_back(pattern[k]);
      rec.shadow_stats.push_back(
          detail::draw_stat(shadows, k, cfg, t, pattern[k]));
    }
    ds.points.push_back(std::move(rec));
    truth.point_ids.push_back("p" + std::to_string(i));
    truth.truths.push_back(t);
    truth.index.emplace(truth.point_ids.back(), i);
  }
  return {std::move(ds), std::move(truth)};
}

/* Flat key-value config file; unknown keys are rejected. */
inline SynthConfig read_synth_config(std::istream& in) {
  auto kv = parse_kv(in);
  SynthConfig cfg;
  for (const auto& [key, val] : kv) {
    if (key == "family") {
      if (val == "gaussian") {
        cfg.family = SynthConfig::Family::Gaussian;
      } else if (val == "exponential") {
        cfg.family = SynthConfig::Family::Exponential;
      } else {
        throw ConfigError("family must be gaussian or exponential");
      }
    } else if (key == "n_points") {
      cfg.n_points = static_cast<std::size_t>(kv_double(kv, key));
    } else if (key == "k_shadows") {
      cfg.k_shadows = static_cast<std::size_t>(kv_double(kv, key));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(kv_double(kv, key));
    } else if (key == "in_fraction") {
      cfg.in_fraction = kv_double(kv, key);
    } else if (key == "target_member_fraction") {
      cfg.target_member_fraction = kv_double(kv, key);
    } else if (key == "offline") {
      cfg.offline = kv_double(kv, key) != 0.0;
    } else if (key == "mu0_loc") {
      cfg.mu0_loc = kv_double(kv, key);
    } else if (key == "mu0_scale") {
      cfg.mu0_scale = kv_double(kv, key);
    } else if (key == "gap_loc") {
      cfg.gap_loc = kv_double(kv, key);
    } else if (key == "gap_scale") {
      cfg.gap_scale = kv_double(kv, key);
    } else if (key == "var_lo") {
      cfg.var_lo = kv_double(kv, key);
    } else if (key == "var_hi") {
      cfg.var_hi = kv_double(kv, key);
    } else if (key == "lam0_lo") {
      cfg.lam0_lo = kv_double(kv, key);
    } else if (key == "lam0_hi") {
      cfg.lam0_hi = kv_double(kv, key);
    } else if (key == "ratio_lo") {
      cfg.ratio_lo = kv_double(kv, key);
    } else if (key == "ratio_hi") {
      cfg.ratio_hi = kv_double(kv, key);
    } else {
      throw ConfigError("unknown synth config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline void write_truth(std::ostream& out, const SynthTruth& truth) {
  if (truth.family == SynthConfig::Family::Gaussian) {
    out << "point_id,mu0,mu1,var0,var1,member\n";
    for (std::size_t i = 0; i < truth.truths.size(); ++i) {
      const auto& t = truth.truths[i];
      out << truth.point_ids[i] << ',' << detail::format_double_exact(t.mu0)
          << ',' << detail::format_double_exact(t.mu1) << ','
          << detail::format_double_exact(t.var0) << ','
          << detail::format_double_exact(t.var1) << ',' << t.member << '\n';
    }
  } else {
    out << "point_id,lam0,lam1,member\n";
    for (std::size_t i = 0; i < truth.truths.size(); ++i) {
      const auto& t = truth.truths[i];
      out << truth.point_ids[i] << ',' << detail::format_double_exact(t.lam0)
          << ',' << detail::format_double_exact(t.lam1) << ',' << t.member
          << '\n';
    }
  }
}

}  // namespace mia

#endif  // MIA_SYNTH_HPP
