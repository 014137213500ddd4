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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "mia/dataset.hpp"
#include "mia/diagnostics.hpp"
#include "mia/errors.hpp"
#include "mia/statistic.hpp"
#include "support/test_support.hpp"

using Catch::Approx;
using mia::AuditDataset;
using mia::PointRecord;
using mia::StatisticKind;

namespace {

std::vector<double> normal_sample(std::uint64_t seed, std::size_t n,
                                  double mu = 0.0, double sd = 1.0) {
  testsup::Sampler rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = mu + sd * rng.normal();
  return xs;
}

void add_point(AuditDataset& ds, const std::string& id, double target,
               std::vector<double> stats, std::vector<std::uint8_t> members) {
  PointRecord pt;
  pt.point_id = id;
  pt.target_stat = target;
  pt.shadow_stats = std::move(stats);
  pt.shadow_members = std::move(members);
  ds.k = pt.shadow_stats.size();
  ds.points.push_back(std::move(pt));
}

}  // namespace

TEST_CASE("anderson_darling accepts draws that really are normal") {
  // A handful of seeded normal samples; the statistic should sit well under
  // the 5% critical value most of the time. Require 8 of 10 accepts.
  int accepts = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = mia::anderson_darling(normal_sample(seed, 1000, 2.0, 3.0));
    REQUIRE(std::isfinite(r.statistic));
    REQUIRE(r.statistic > 0.0);
    if (!r.reject) ++accepts;
    REQUIRE(r.reject == (r.statistic > mia::kAdCriticalValue));
  }
  REQUIRE(accepts >= 8);
}

TEST_CASE("anderson_darling rejects clearly non-normal samples") {
  // Uniform draws.
  testsup::Sampler rng(5);
  std::vector<double> unif(1000);
  for (auto& x : unif) x = rng.uniform();
  REQUIRE(mia::anderson_darling(unif).reject);

  // Exponential draws.
  std::vector<double> expo(1000);
  for (auto& x : expo) x = rng.exponential(1.0);
  REQUIRE(mia::anderson_darling(expo).reject);

  // Strong bimodality.
  std::vector<double> bim(600);
  for (std::size_t i = 0; i < bim.size(); ++i) {
    bim[i] = (i % 2 ? 4.0 : -4.0) + 0.3 * rng.normal();
  }
  REQUIRE(mia::anderson_darling(bim).reject);
}

TEST_CASE("a single wild outlier forces rejection") {
  auto xs = normal_sample(77, 127);
  xs.push_back(50.0);  // 50 sigma
  auto r = mia::anderson_darling(xs);
  REQUIRE(r.reject);
}

TEST_CASE("anderson_darling is affine invariant") {
  auto xs = normal_sample(21, 256);
  double base = mia::anderson_darling(xs).statistic;
  std::vector<double> moved(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) moved[i] = 5.0 - 2.5 * -xs[i];
  REQUIRE(mia::anderson_darling(moved).statistic ==
          Approx(base).epsilon(1e-9));
}

TEST_CASE("anderson_darling needs eight spread-out samples") {
  std::vector<double> seven = {1, 2, 3, 4, 5, 6, 7};
  REQUIRE_THROWS_AS(mia::anderson_darling(seven),
                    mia::InsufficientDataError);
  std::vector<double> flat(20, 3.25);
  REQUIRE_THROWS_AS(mia::anderson_darling(flat), mia::DegenerateSampleError);
  std::vector<double> eight = {1, 2, 3, 4, 5, 6, 7, 8};
  REQUIRE_NOTHROW(mia::anderson_darling(eight));
}

TEST_CASE("anderson_darling calibration is roughly five percent") {
  // Light version of the Monte-Carlo calibration: 300 standard-normal trials
  // of n = 500; the rejection rate must land near the nominal level.
  int rejects = 0;
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    if (mia::anderson_darling(normal_sample(seed, 500)).reject) ++rejects;
  }
  double rate = rejects / 3.0;  // percent
  REQUIRE(rate > 2.0);
  REQUIRE(rate < 9.0);
}

TEST_CASE("diagnose_dataset splits by class and counts skips") {
  AuditDataset ds;
  ds.stat_kind = StatisticKind::LogOdds;
  testsup::Sampler rng(31);
  // Class 0 shadows are normal; class 1 shadows are strongly skewed.
  for (int i = 0; i < 40; ++i) {
    std::vector<double> stats;
    std::vector<std::uint8_t> members;
    for (int j = 0; j < 24; ++j) {
      stats.push_back(rng.normal());
      members.push_back(0);
    }
    for (int j = 0; j < 24; ++j) {
      stats.push_back(std::exp(1.5 * rng.normal()));
      members.push_back(1);
    }
    add_point(ds, "p" + std::to_string(i), 0.0, std::move(stats),
              std::move(members));
    ds.k = 48;
  }
  auto rep = mia::diagnose_dataset(ds);
  REQUIRE(rep.per_class[0].class_label == 0);
  REQUIRE(rep.per_class[1].class_label == 1);
  REQUIRE(rep.per_class[0].n_tested == 40);
  REQUIRE(rep.per_class[1].n_tested == 40);
  REQUIRE(rep.per_class[0].n_skipped == 0);
  REQUIRE(rep.per_class[0].reject_pct < 25.0);
  REQUIRE(rep.per_class[1].reject_pct > 75.0);
  REQUIRE(rep.per_class[1].median_stat > rep.per_class[0].median_stat);
}

TEST_CASE("diagnose_dataset skips classes below the sample minimum") {
  AuditDataset ds;
  ds.stat_kind = StatisticKind::LogOdds;
  // 4 shadows per class: every test is skipped.
  testsup::Sampler rng(32);
  for (int i = 0; i < 5; ++i) {
    std::vector<double> stats(8);
    std::vector<std::uint8_t> members(8);
    for (int j = 0; j < 8; ++j) {
      stats[j] = rng.normal();
      members[j] = j < 4 ? 0 : 1;
    }
    add_point(ds, "p" + std::to_string(i), 0.0, std::move(stats),
              std::move(members));
    ds.k = 8;
  }
  auto rep = mia::diagnose_dataset(ds);
  for (int m : {0, 1}) {
    REQUIRE(rep.per_class[m].n_tested == 0);
    REQUIRE(rep.per_class[m].n_skipped == 5);
    REQUIRE(std::isnan(rep.per_class[m].median_stat));
  }
}

TEST_CASE("diagnose_dataset requires log-odds input") {
  AuditDataset ds;
  ds.stat_kind = StatisticKind::Loss;
  add_point(ds, "a", 1.0, {1.0, 2.0}, {0, 1});
  REQUIRE_THROWS_AS(mia::diagnose_dataset(ds), mia::ConfigError);
}
