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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "mia/errors.hpp"
#include "mia/metrics.hpp"
#include "support/test_support.hpp"

using Catch::Approx;
using mia::RocCurve;
using mia::ScoreVector;

TEST_CASE("roc sweeps thresholds with ties grouped") {
  // Perfect separation.
  RocCurve c = mia::roc({3.0, 2.0, 1.0, 0.0}, {1, 1, 0, 0});
  REQUIRE(c.n_pos == 2);
  REQUIRE(c.n_neg == 2);
  REQUIRE(c.points.size() == 5);
  REQUIRE(c.points.front().fpr == 0.0);
  REQUIRE(c.points.front().tpr == 0.0);
  REQUIRE(c.points[2].tpr == 1.0);
  REQUIRE(c.points[2].fpr == 0.0);
  REQUIRE(c.points.back().fpr == 1.0);
  REQUIRE(c.points.back().tpr == 1.0);
  REQUIRE(mia::auc(c) == 1.0);

  // All scores tied: one diagonal segment.
  RocCurve tied = mia::roc({5.0, 5.0, 5.0, 5.0}, {1, 0, 1, 0});
  REQUIRE(tied.points.size() == 2);
  REQUIRE(tied.points[1].fp == 2);
  REQUIRE(tied.points[1].tp == 2);
  REQUIRE(mia::auc(tied) == 0.5);
  // The diagonal interpolates to the target itself.
  REQUIRE(mia::tpr_at_fpr(tied, 0.01) == Approx(0.01).epsilon(1e-15));
  REQUIRE(mia::tpr_at_fpr(tied, 0.25) == Approx(0.25).epsilon(1e-15));
}

TEST_CASE("roc validates its inputs") {
  REQUIRE_THROWS_AS(mia::roc({1.0}, {1, 0}), mia::ConfigError);
  REQUIRE_THROWS_AS(mia::roc({}, {}), mia::InsufficientDataError);
  REQUIRE_THROWS_AS(mia::roc({1.0, 2.0}, {1, 1}),
                    mia::InsufficientDataError);
  REQUIRE_THROWS_AS(mia::roc({1.0, NAN}, {1, 0}), mia::DomainError);
  REQUIRE_THROWS_AS(mia::roc({1.0, 2.0}, {1, 2}), mia::DomainError);
}

TEST_CASE("roc is independent of input order") {
  std::vector<double> scores = {0.3, -1.0, 0.3, 2.5, 0.0, 2.5, -1.0, 7.0};
  std::vector<int> labels = {1, 0, 0, 1, 0, 0, 1, 1};
  RocCurve before = mia::roc(scores, labels);

  std::vector<std::size_t> perm(scores.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 eng(3);
  for (int rep = 0; rep < 20; ++rep) {
    std::shuffle(perm.begin(), perm.end(), eng);
    std::vector<double> s(scores.size());
    std::vector<int> l(scores.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      s[i] = scores[perm[i]];
      l[i] = labels[perm[i]];
    }
    RocCurve after = mia::roc(s, l);
    REQUIRE(after.points.size() == before.points.size());
    for (std::size_t i = 0; i < after.points.size(); ++i) {
      REQUIRE(after.points[i].fp == before.points[i].fp);
      REQUIRE(after.points[i].tp == before.points[i].tp);
    }
    REQUIRE(mia::auc(after) == mia::auc(before));
  }
}

TEST_CASE("auc equals the pairwise comparison count exactly") {
  testsup::Sampler rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 198);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    bool has0 = false, has1 = false;
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse quantization forces plenty of exact ties.
      scores[i] = std::floor(rng.normal() * 4.0) / 4.0;
      labels[i] = rng.uniform() < 0.4 ? 1 : 0;
      (labels[i] ? has1 : has0) = true;
    }
    if (!has0 || !has1) continue;
    INFO("rep " << rep << " n " << n);
    REQUIRE(mia::auc(mia::roc(scores, labels)) ==
            testsup::pairwise_auc(scores, labels));
  }
}

TEST_CASE("negating scores flips AUC around one half") {
  testsup::Sampler rng(43);
  std::vector<double> scores(120);
  std::vector<int> labels(120);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    labels[i] = i % 3 == 0 ? 1 : 0;
    scores[i] = (labels[i] ? 0.6 : 0.0) + rng.normal();
  }
  std::vector<double> neg(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) neg[i] = -scores[i];
  double a = mia::auc(mia::roc(scores, labels));
  double b = mia::auc(mia::roc(neg, labels));
  REQUIRE(a + b == Approx(1.0).epsilon(1e-15));
  REQUIRE(a > 0.5);
}

TEST_CASE("tpr_at_fpr interpolates between operating points") {
  // 5 clean positives, 2 clean negatives, then one mixed tie group, so the
  // curve runs (0,0) -> (0,0.5) -> (0.2,0.5) -> (1,1).
  std::vector<double> scores;
  std::vector<int> labels;
  auto add = [&](double s, int lab, int times) {
    for (int i = 0; i < times; ++i) {
      scores.push_back(s);
      labels.push_back(lab);
    }
  };
  add(5.0, 1, 5);
  add(4.0, 0, 2);
  add(3.0, 1, 5);
  add(3.0, 0, 8);
  RocCurve c = mia::roc(scores, labels);

  // Vertical segment at fpr 0: the highest tpr reachable there wins.
  REQUIRE(mia::tpr_at_fpr(c, 0.0) == 0.5);
  // Horizontal stretch between (0,0.5) and (0.2,0.5).
  REQUIRE(mia::tpr_at_fpr(c, 0.1) == 0.5);
  // Exact operating point.
  REQUIRE(mia::tpr_at_fpr(c, 0.2) == 0.5);
  // Interior of the diagonal tie segment from (0.2,0.5) to (1,1).
  REQUIRE(mia::tpr_at_fpr(c, 0.6) == Approx(0.75).epsilon(1e-15));
  REQUIRE(mia::tpr_at_fpr(c, 1.0) == 1.0);
  REQUIRE_THROWS_AS(mia::tpr_at_fpr(c, -0.1), mia::ConfigError);
  REQUIRE_THROWS_AS(mia::tpr_at_fpr(c, 1.5), mia::ConfigError);

  // Nondecreasing in the target.
  double prev = 0.0;
  for (double f = 0.0; f <= 1.0; f += 0.01) {
    double t = mia::tpr_at_fpr(c, f);
    REQUIRE(t >= prev);
    prev = t;
  }
}

TEST_CASE("monotone transforms leave the curve unchanged") {
  testsup::Sampler rng(44);
  std::vector<double> scores(80);
  std::vector<int> labels(80);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    labels[i] = i % 2;
    scores[i] = (labels[i] ? 0.8 : -0.2) + rng.normal();
  }
  std::vector<double> warped(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    warped[i] = std::atan(scores[i]) * 3.0 + 7.0;
  }
  REQUIRE(mia::auc(mia::roc(warped, labels)) ==
          mia::auc(mia::roc(scores, labels)));
}

TEST_CASE("delta_table compares methods against a baseline") {
  std::vector<std::pair<std::string, int>> labels = {
      {"a", 1}, {"b", 0}, {"c", 1}, {"d", 0}, {"e", 1}, {"f", 0}};

  ScoreVector base;
  base.method = "base";
  base.point_ids = {"a", "b", "c", "d", "e", "f"};
  base.values = {5.0, 4.0, 3.0, 2.0, 1.0, 0.0};

  // A monotone transform of the baseline: all deltas vanish.
  ScoreVector same = base;
  same.method = "same";
  for (auto& v : same.values) v = std::exp(v) + 3.0;

  // A different ordering, delivered with point ids shuffled.
  ScoreVector other;
  other.method = "other";
  other.point_ids = {"f", "a", "b", "c", "d", "e"};
  other.values = {9.0, 8.0, 1.0, 7.0, 2.0, 6.5};

  auto table = mia::delta_table({same, other}, base, labels, {0.01, 0.5});
  REQUIRE(table.baseline == "base");
  REQUIRE(table.rows.size() == 2);
  REQUIRE(table.rows[0].delta_auc == 0.0);
  REQUIRE(table.rows[0].delta_tpr[0] == 0.0);
  REQUIRE(table.rows[0].delta_tpr[1] == 0.0);

  // Independent AUCs for the second method.
  std::vector<double> o_scores = {8.0, 1.0, 7.0, 2.0, 6.5, 9.0};
  std::vector<int> o_labels = {1, 0, 1, 0, 1, 0};
  double want =
      mia::auc(mia::roc(o_scores, o_labels)) -
      mia::auc(mia::roc(base.values, {1, 0, 1, 0, 1, 0}));
  REQUIRE(table.rows[1].delta_auc == Approx(want).margin(1e-15));
}

TEST_CASE("delta_table rejects point-set mismatches") {
  std::vector<std::pair<std::string, int>> labels = {{"a", 1}, {"b", 0}};
  ScoreVector base;
  base.method = "base";
  base.point_ids = {"a", "b"};
  base.values = {1.0, 0.0};

  ScoreVector missing;
  missing.method = "m";
  missing.point_ids = {"a", "zz"};
  missing.values = {1.0, 0.0};
  REQUIRE_THROWS_AS(mia::delta_table({missing}, base, labels, {0.1}),
                    mia::ConfigError);

  ScoreVector dup;
  dup.method = "d";
  dup.point_ids = {"a", "a"};
  dup.values = {1.0, 0.0};
  REQUIRE_THROWS_AS(mia::delta_table({dup}, base, labels, {0.1}),
                    mia::ConfigError);

  ScoreVector shorter;
  shorter.method = "s";
  shorter.point_ids = {"a"};
  shorter.values = {1.0};
  REQUIRE_THROWS_AS(mia::delta_table({shorter}, base, labels, {0.1}),
                    mia::ConfigError);
}
