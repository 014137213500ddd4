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
#include <sstream>
#include <string>

#include "mia/dataset.hpp"
#include "mia/errors.hpp"
#include "mia/statistic.hpp"

using mia::AuditDataset;
using mia::StatisticKind;
using mia::load_dataset;

namespace {

AuditDataset load_str(const std::string& text,
                      StatisticKind kind = StatisticKind::Loss) {
  std::istringstream in(text);
  return load_dataset(in, kind);
}

const char* kSmall =
    "point_id,model_id,stat,member\n"
    "a,0,0.5,1\n"
    "a,1,0.25,0\n"
    "a,2,1.5,1\n"
    "b,0,2.0,\n"
    "b,2,0.125,1\n"
    "b,1,3.0,0\n";

}  // namespace

TEST_CASE("load_dataset parses records and preserves order") {
  AuditDataset ds = load_str(kSmall);
  REQUIRE(ds.points.size() == 2);
  REQUIRE(ds.k == 2);
  REQUIRE(ds.stat_kind == StatisticKind::Loss);

  const auto& a = ds.points[0];
  REQUIRE(a.point_id == "a");
  REQUIRE(a.target_stat == 0.5);
  REQUIRE(a.target_member.has_value());
  REQUIRE(*a.target_member == 1);
  REQUIRE(a.shadow_stats == std::vector<double>{0.25, 1.5});
  REQUIRE(a.shadow_members == std::vector<std::uint8_t>{0, 1});

  // Shadows keep file order, not model-id order.
  const auto& b = ds.points[1];
  REQUIRE(b.point_id == "b");
  REQUIRE_FALSE(b.target_member.has_value());
  REQUIRE(b.shadow_stats == std::vector<double>{0.125, 3.0});
  REQUIRE(b.shadow_members == std::vector<std::uint8_t>{1, 0});

  REQUIRE(a.class_values(1) == std::vector<double>{1.5});
  REQUIRE(a.class_values(0) == std::vector<double>{0.25});
  REQUIRE(a.class_count(1) == 1);
  REQUIRE(ds.has_in_shadows());
  REQUIRE_FALSE(ds.all_labeled());
}

TEST_CASE("load_dataset accepts CRLF line endings") {
  std::string crlf =
      "point_id,model_id,stat,member\r\n"
      "a,0,0.5,1\r\n"
      "a,1,0.25,0\r\n";
  AuditDataset ds = load_str(crlf);
  REQUIRE(ds.points.size() == 1);
  REQUIRE(ds.points[0].shadow_stats == std::vector<double>{0.25});
}

TEST_CASE("write_dataset round-trips bit-exactly") {
  AuditDataset ds = load_str(kSmall);
  // Values chosen to stress shortest-round-trip formatting.
  ds.points[0].target_stat = 0.1;
  ds.points[0].shadow_stats[0] = 1e-300;
  ds.points[0].shadow_stats[1] = 12345.678900000001;
  ds.points[1].shadow_stats[0] = 3.141592653589793;

  std::ostringstream out;
  mia::write_dataset(out, ds);
  AuditDataset back = load_str(out.str());
  REQUIRE(back.points.size() == ds.points.size());
  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    REQUIRE(back.points[i].point_id == ds.points[i].point_id);
    REQUIRE(back.points[i].target_stat == ds.points[i].target_stat);
    REQUIRE(back.points[i].target_member == ds.points[i].target_member);
    REQUIRE(back.points[i].shadow_stats == ds.points[i].shadow_stats);
    REQUIRE(back.points[i].shadow_members == ds.points[i].shadow_members);
  }

  // Writing the reloaded dataset reproduces the same bytes.
  std::ostringstream again;
  mia::write_dataset(again, back);
  REQUIRE(again.str() == out.str());
}

TEST_CASE("load_dataset rejects malformed input") {
  // Wrong header.
  REQUIRE_THROWS_AS(load_str("id,model,stat,member\na,0,0.5,1\n"),
                    mia::ParseError);
  // Empty stream.
  REQUIRE_THROWS_AS(load_str(""), mia::ParseError);
  // Wrong field count.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\na,0,0.5\n"),
                    mia::ParseError);
  // Unparseable number.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\na,0,xyz,1\n"),
                    mia::ParseError);
  // Bad member flag.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\n"
                             "a,0,0.5,1\n"
                             "a,1,0.5,2\n"),
                    mia::ParseError);
  // Shadow rows must be labeled.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\n"
                             "a,0,0.5,1\n"
                             "a,1,0.5,\n"),
                    mia::ParseError);
  // Negative model id.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\n"
                             "a,-1,0.5,1\n"),
                    mia::ParseError);
}

TEST_CASE("parse errors carry one-based line numbers") {
  try {
    load_str("point_id,model_id,stat,member\n"
             "a,0,0.5,1\n"
             "a,1,bogus,0\n");
    FAIL("expected ParseError");
  } catch (const mia::ParseError& e) {
    REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("load_dataset rejects structural violations") {
  // Duplicate (point, model) pair.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\n"
                             "a,0,0.5,1\n"
                             "a,1,0.25,0\n"
                             "a,1,0.75,1\n"),
                    mia::RaggedRecordError);
  // Missing target row.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\n"
                             "a,1,0.25,0\n"),
                    mia::RaggedRecordError);
  // Ragged shadow counts.
  REQUIRE_THROWS_AS(load_str("point_id,model_id,stat,member\n"
                             "a,0,0.5,1\n"
                             "a,1,0.25,0\n"
                             "b,0,0.5,1\n"),
                    mia::RaggedRecordError);
}

TEST_CASE("load_dataset enforces the statistic domain") {
  // Losses must be strictly positive.
  try {
    load_str("point_id,model_id,stat,member\n"
             "a,0,0.0,1\n");
    FAIL("expected DomainError");
  } catch (const mia::DomainError& e) {
    REQUIRE(std::string(e.what()).find("a") != std::string::npos);
  }
  // Confidences live in the open unit interval.
  std::istringstream in(
      "point_id,model_id,stat,member\n"
      "a,0,1.5,1\n");
  REQUIRE_THROWS_AS(load_dataset(in, StatisticKind::Conf), mia::DomainError);
  // Log-odds accept any finite value.
  std::istringstream in2(
      "point_id,model_id,stat,member\n"
      "a,0,-35.5,1\n"
      "a,1,0.0,0\n");
  REQUIRE_NOTHROW(load_dataset(in2, StatisticKind::LogOdds));
}

TEST_CASE("k = 0 datasets load when every point has only a target") {
  AuditDataset ds = load_str(
      "point_id,model_id,stat,member\n"
      "a,0,0.5,1\n"
      "b,0,1.5,0\n");
  REQUIRE(ds.k == 0);
  REQUIRE(ds.all_labeled());
  REQUIRE_FALSE(ds.has_in_shadows());
}

TEST_CASE("convert_dataset converts every field and retags the kind") {
  AuditDataset ds = load_str(kSmall);
  AuditDataset conv = mia::convert_dataset(ds, StatisticKind::LogOdds);
  REQUIRE(conv.stat_kind == StatisticKind::LogOdds);
  REQUIRE(conv.k == ds.k);
  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    REQUIRE(conv.points[i].point_id == ds.points[i].point_id);
    REQUIRE(conv.points[i].target_member == ds.points[i].target_member);
    REQUIRE(conv.points[i].shadow_members == ds.points[i].shadow_members);
    REQUIRE(conv.points[i].target_stat ==
            mia::convert_statistic(ds.points[i].target_stat,
                                   StatisticKind::Loss,
                                   StatisticKind::LogOdds));
    for (std::size_t j = 0; j < ds.k; ++j) {
      REQUIRE(conv.points[i].shadow_stats[j] ==
              mia::convert_statistic(ds.points[i].shadow_stats[j],
                                     StatisticKind::Loss,
                                     StatisticKind::LogOdds));
    }
  }
  // Same-kind conversion is the identity.
  AuditDataset same = mia::convert_dataset(ds, StatisticKind::Loss);
  REQUIRE(same.points[0].target_stat == ds.points[0].target_stat);
}
