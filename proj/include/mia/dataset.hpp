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

#ifndef MIA_DATASET_HPP
#define MIA_DATASET_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mia/errors.hpp"
#include "mia/statistic.hpp"

namespace mia {

/* One audited example: the target-model statistic plus K shadow statistics
   with their IN (1) / OUT (0) membership bits. target_member is ground truth
   for evaluation only; scorers never read it. */
struct PointRecord {
  std::string point_id;
  double target_stat = 0.0;
  std::optional<int> target_member;
  std::vector<double> shadow_stats;
  std::vector<std::uint8_t> shadow_members;

  std::vector<double> class_values(int m) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < shadow_stats.size(); ++i) {
      if (shadow_members[i] == m) out.push_back(shadow_stats[i]);
    }
    return out;
  }

  std::size_t class_count(int m) const {
    std::size_t n = 0;
    for (auto b : shadow_members) {
      if (b == m) ++n;
    }
    return n;
  }
};

/* Rectangular audit dataset: every point carries the same shadow count k.
   Treated as immutable once built. */
struct AuditDataset {
  StatisticKind stat_kind = StatisticKind::Loss;
  std::size_t k = 0;
  std::vector<PointRecord> points;

  bool has_in_shadows() const {
    for (const auto& pt : points) {
      if (pt.class_count(1) > 0) return true;
    }
    return false;
  }

  bool all_labeled() const {
    for (const auto& pt : points) {
      if (!pt.target_member.has_value()) return false;
    }
    return true;
  }
};

namespace detail {

inline double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad numeric field '" + std::string(s) + "'", line);
  }
  return v;
}

inline long parse_long(std::string_view s, std::size_t line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer field '" + std::string(s) + "'", line);
  }
  return v;
}

inline std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

/* Shortest decimal form that parses back to the identical double. */
inline std::string format_double_exact(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

/* Reads the long CSV form `point_id,model_id,stat,member`, model_id 0 being
   the target row. Validation: header, field counts, domains, one target row
   per point, no duplicate (point_id, model_id), equal shadow counts, and
   member bits present on every shadow row. Point order follows first
   appearance; shadow order follows file order. */
inline AuditDataset load_dataset(std::istream& in, StatisticKind kind) {
  struct Builder {
    PointRecord rec;
    std::set<long> model_ids;
    bool has_target = false;
  };
  std::vector<std::string> order;
  std::map<std::string, Builder> by_id;

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "point_id,model_id,stat,member") {
    throw ParseError("expected header 'point_id,model_id,stat,member'",
                     lineno);
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_csv(line);
    if (fields.size() != 4) throw ParseError("expected 4 fields", lineno);

    std::string pid(fields[0]);
    if (pid.empty()) throw ParseError("empty point_id", lineno);
    long model_id = detail::parse_long(fields[1], lineno);
    if (model_id < 0) throw ParseError("negative model_id", lineno);
    double stat = detail::parse_double(fields[2], lineno);
    check_domain(kind, stat, "point_id=" + pid);

    auto [it, inserted] = by_id.try_emplace(pid);
    if (inserted) {
      it->second.rec.point_id = pid;
      order.push_back(pid);
    }
    Builder& b = it->second;
    if (!b.model_ids.insert(model_id).second) {
      throw RaggedRecordError("duplicate record for point_id=" + pid +
                              " model_id=" + std::to_string(model_id));
    }

    if (model_id == 0) {
      b.has_target = true;
      b.rec.target_stat = stat;
      if (!fields[3].empty()) {
        long m = detail::parse_long(fields[3], lineno);
        if (m != 0 && m != 1) throw ParseError("member must be 0 or 1", lineno);
        b.rec.target_member = static_cast<int>(m);
      }
    } else {
      if (fields[3].empty()) {
        throw ParseError("shadow row needs a member bit", lineno);
      }
      long m = detail::parse_long(fields[3], lineno);
      if (m != 0 && m != 1) throw ParseError("member must be 0 or 1", lineno);
      b.rec.shadow_stats.push_back(stat);
      b.rec.shadow_members.push_back(static_cast<std::uint8_t>(m));
    }
  }

  AuditDataset ds;
  ds.stat_kind = kind;
  bool first = true;
  for (const auto& pid : order) {
    Builder& b = by_id.at(pid);
    if (!b.has_target) {
      throw RaggedRecordError("point_id=" + pid + " lacks a model_id 0 row");
    }
    if (first) {
      ds.k = b.rec.shadow_stats.size();
      first = false;
    } else if (b.rec.shadow_stats.size() != ds.k) {
      throw RaggedRecordError(
          "point_id=" + pid + " has " +
          std::to_string(b.rec.shadow_stats.size()) + " shadows, expected " +
          std::to_string(ds.k));
    }
    ds.points.push_back(std::move(b.rec));
  }
  return ds;
}

/* Inverse of load_dataset: shortest round-trip decimals, LF endings, so
   load(write(ds)) reproduces ds bit-exactly. */
inline void write_dataset(std::ostream& out, const AuditDataset& ds) {
  out << "point_id,model_id,stat,member\n";
  for (const auto& pt : ds.points) {
    out << pt.point_id << ",0," << detail::format_double_exact(pt.target_stat)
        << ',';
    if (pt.target_member.has_value()) out << *pt.target_member;
    out << '\n';
    for (std::size_t i = 0; i < pt.shadow_stats.size(); ++i) {
      out << pt.point_id << ',' << (i + 1) << ','
          << detail::format_double_exact(pt.shadow_stats[i]) << ','
          << int(pt.shadow_members[i]) << '\n';
    }
  }
}

/* Maps every statistic (target and shadows) into the requested kind. */
inline AuditDataset convert_dataset(const AuditDataset& ds, StatisticKind to) {
  if (ds.stat_kind == to) return ds;
  AuditDataset out = ds;
  out.stat_kind = to;
  for (auto& pt : out.points) {
    pt.target_stat = convert_statistic(pt.target_stat, ds.stat_kind, to);
    for (auto& s : pt.shadow_stats) {
      s = convert_statistic(s, ds.stat_kind, to);
    }
  }
  return out;
}

}  // namespace mia

#endif  // MIA_DATASET_HPP
