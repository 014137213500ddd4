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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mia/mia.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string stat = "logodds";
  std::string out_dir = ".";
  bool raw = false;
  bool offline = false;
  std::string centering = "arith";
  std::string vmode = "hardswitch";
  std::string form = "linear";
  double lambda = 1.0;
  double alpha = 1.0;
  double delta = std::numeric_limits<double>::quiet_NaN();
  std::string prior_file;
  std::string delta_ref;
  std::string fprs_csv = "0.01,0.001";
  std::string methods_csv;
  std::string baseline;
  std::string scores_file;
  std::string config_file;
  std::string sweep_k;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::vector<std::string> inputs;
};

std::string fmt_num(double v, bool raw) {
  if (raw) return mia::detail::format_double_exact(v);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt_fpr(double f) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", f);
  return buf;
}

/* All outputs land via a temp file plus rename, so readers never observe a
   half-written file. */
void atomic_write(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw mia::ConfigError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

mia::AuditDataset load_file(const std::string& path, mia::StatisticKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mia::ConfigError("cannot open " + path);
  return mia::load_dataset(in, kind);
}

std::vector<double> parse_fprs(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(mia::detail::parse_double(item, 0));
  }
  if (out.empty()) throw mia::ConfigError("--fprs needs at least one value");
  for (double f : out) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw mia::ConfigError("fpr targets must lie in [0, 1]");
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool is_elsa_token(const std::string& m) { return m.rfind("elsa", 0) == 0; }

bool is_online_only(const std::string& m) {
  return m == "base3" || m == "base4" || m == "lira" || is_elsa_token(m);
}

const std::set<std::string> kMethodTokens = {
    "base1",     "base2",        "base3",     "base4",    "lira",
    "rmia",      "bavaria_n",    "bavaria_t", "elsa1",    "elsa2phi",
    "elsa3beta", "elsa3gamma",   "elsa3phi",  "elsafull", "lira_offline",
    "base_offline"};

mia::AuditDataset ensure_kind(const mia::AuditDataset& ds,
                              mia::StatisticKind kind,
                              const std::string& method,
                              std::vector<std::string>& notes) {
  if (ds.stat_kind == kind) return ds;
  notes.push_back("method " + method + ": converted " +
                  mia::to_token(ds.stat_kind) + " statistics to " +
                  mia::to_token(kind));
  return mia::convert_dataset(ds, kind);
}

mia::NIGPrior resolve_prior(const mia::AuditDataset& ds_logodds,
                            const Options& opt,
                            std::vector<std::string>& notes) {
  if (!opt.prior_file.empty()) {
    std::ifstream in(opt.prior_file);
    if (!in) throw mia::ConfigError("cannot open " + opt.prior_file);
    notes.push_back("prior read from " + opt.prior_file);
    return mia::read_prior(in);
  }
  if (ds_logodds.has_in_shadows()) {
    notes.push_back("prior fit from the audit dataset's shadow moments");
    return mia::fit_prior(ds_logodds);
  }
  if (!opt.delta_ref.empty()) {
    auto ref = mia::convert_dataset(
        load_file(opt.delta_ref, mia::statistic_kind_from_token(opt.stat)),
        mia::StatisticKind::LogOdds);
    notes.push_back("prior fit from reference data " + opt.delta_ref);
    return mia::fit_prior(ref);
  }
  throw mia::ConfigError(
      "OUT-only data: bavaria_* needs --prior FILE or --delta-ref "
      "REFERENCE.csv to supply the IN-class prior");
}

/* Scores one method token on a dataset in its native kind, handling kind
   conversion, prior/delta resolution, and option validation. */
mia::ScoreReport score_method(const std::string& method,
                              const mia::AuditDataset& ds, const Options& opt) {
  if (!kMethodTokens.count(method)) {
    throw mia::ConfigError("unknown method '" + method + "'");
  }
  std::vector<std::string> notes;
  if (opt.offline && ds.has_in_shadows()) {
    throw mia::ConfigError("--offline given but IN shadows are present");
  }
  if (opt.offline && is_online_only(method)) {
    throw mia::ConfigError(
        "method " + method +
        " needs IN shadows; with OUT-only data use lira_offline, "
        "base_offline, or bavaria_n/bavaria_t with --prior");
  }

  mia::ScoreReport rep;
  if (method == "base1") {
    if (opt.centering == "lse") {
      auto loss = ensure_kind(ds, mia::StatisticKind::Loss, method, notes);
      rep.scores = mia::score_base1(loss, mia::Centering::LogSumExp);
    } else if (opt.centering == "arith") {
      rep.scores = mia::score_base1(ds, mia::Centering::Arithmetic);
    } else {
      throw mia::ConfigError("--centering must be arith or lse");
    }
  } else if (method == "base2") {
    rep.scores = mia::score_base2(ds);
  } else if (method == "base3") {
    rep.scores = mia::score_base3(ds);
  } else if (method == "base4") {
    rep.scores = mia::score_base4(ds);
  } else if (method == "lira") {
    auto lo = ensure_kind(ds, mia::StatisticKind::LogOdds, method, notes);
    mia::VarianceMode vm;
    if (opt.vmode == "perpoint") {
      vm = mia::VarianceMode::per_point();
    } else if (opt.vmode == "global") {
      vm = mia::VarianceMode::global();
    } else if (opt.vmode == "hardswitch") {
      vm = mia::VarianceMode::hard_switch();
    } else {
      throw mia::ConfigError("--vmode must be perpoint, global, or hardswitch");
    }
    rep.scores = mia::score_lira(lo, vm);
  } else if (method == "rmia") {
    if (ds.stat_kind != mia::StatisticKind::Loss) {
      notes.push_back("method rmia: converted " +
                      mia::to_token(ds.stat_kind) + " statistics to loss");
    }
    rep.scores = mia::score_rmia(ds);
  } else if (method == "bavaria_n" || method == "bavaria_t") {
    auto lo = ensure_kind(ds, mia::StatisticKind::LogOdds, method, notes);
    mia::NIGPrior prior = resolve_prior(lo, opt, notes);
    rep.scores = method == "bavaria_n" ? mia::score_bavaria_n(lo, prior)
                                       : mia::score_bavaria_t(lo, prior);
  } else if (method == "lira_offline") {
    auto lo = ensure_kind(ds, mia::StatisticKind::LogOdds, method, notes);
    mia::OfflineForm form;
    if (opt.form == "linear") {
      form = mia::OfflineForm::Linear;
    } else if (opt.form == "logcdf") {
      form = mia::OfflineForm::LogCdf;
    } else {
      throw mia::ConfigError("--form must be linear or logcdf");
    }
    double delta = opt.delta;
    if (form == mia::OfflineForm::Linear && !std::isfinite(delta)) {
      if (opt.delta_ref.empty()) {
        throw mia::ConfigError(
            "lira_offline (linear) needs --delta VALUE or --delta-ref "
            "REFERENCE.csv with labeled shadows");
      }
      auto ref = mia::convert_dataset(
          load_file(opt.delta_ref, mia::statistic_kind_from_token(opt.stat)),
          mia::StatisticKind::LogOdds);
      delta = mia::offline_mean_shift(ref);
      notes.push_back("delta = " + mia::detail::format_double_exact(delta) +
                      " estimated from " + opt.delta_ref);
    }
    if (!std::isfinite(delta)) delta = 0.0;
    rep.scores = mia::score_lira_offline(lo, delta, form);
  } else if (method == "base_offline") {
    auto loss = ensure_kind(ds, mia::StatisticKind::Loss, method, notes);
    rep.scores = mia::score_base_offline(loss, opt.alpha);
  } else {
    if (ds.stat_kind != mia::StatisticKind::Conf) {
      notes.push_back("method " + method + ": converted " +
                      mia::to_token(ds.stat_kind) + " statistics to conf");
    }
    rep = mia::score_elsa(ds, opt.lambda, mia::FeatureMask::from_token(method));
    rep.scores.method = method;
  }
  if (rep.scores.method.empty()) rep.scores.method = method;
  for (auto& n : notes) rep.notes.push_back(n);
  return rep;
}

std::vector<std::pair<std::string, int>> labels_of(
    const mia::AuditDataset& ds) {
  std::vector<std::pair<std::string, int>> labels;
  for (const auto& pt : ds.points) {
    if (!pt.target_member.has_value()) {
      throw mia::ConfigError(
          "point_id=" + pt.point_id +
          " lacks target_member; evaluation needs ground-truth labels");
    }
    labels.emplace_back(pt.point_id, *pt.target_member);
  }
  return labels;
}

struct MetricsRow {
  std::string method;
  std::vector<double> auc;             // per replicate
  std::vector<std::vector<double>> tpr;  // [fpr][replicate]
};

double vec_mean(const std::vector<double>& v) {
  return mia::mean(std::span<const double>(v.data(), v.size()));
}

double vec_se(const std::vector<double>& v) {
  double m = vec_mean(v);
  double var = mia::variance_unbiased(std::span<const double>(v.data(), v.size()), m);
  return std::sqrt(var / static_cast<double>(v.size()));
}

int cmd_score(const Options& opt) {
  auto kind = mia::statistic_kind_from_token(opt.stat);
  auto ds = load_file(opt.inputs.at(0), kind);
  auto rep = score_method(opt.methods_csv, ds, opt);

  std::ostringstream scores;
  scores << "point_id,score\n";
  for (std::size_t i = 0; i < rep.scores.size(); ++i) {
    scores << rep.scores.point_ids[i] << ','
           << fmt_num(rep.scores.values[i], opt.raw) << '\n';
  }
  fs::create_directories(opt.out_dir);
  atomic_write(fs::path(opt.out_dir) / "scores.csv", scores.str());

  std::ostringstream report;
  report << "method: " << rep.scores.method << '\n'
         << "config: " << rep.scores.config << '\n'
         << "points scored: " << rep.scores.size() << '\n'
         << "points failed: " << rep.failures.size() << '\n';
  for (const auto& n : rep.notes) report << "note: " << n << '\n';
  for (const auto& f : rep.failures) {
    report << "failed point_id=" << f.point_id << ": " << f.message << '\n';
  }
  atomic_write(fs::path(opt.out_dir) / "report.txt", report.str());
  std::cout << "wrote " << (fs::path(opt.out_dir) / "scores.csv").string()
            << " (" << rep.scores.size() << " points, "
            << rep.failures.size() << " failures)\n";
  return 0;
}

/* Evaluation core shared by eval and compare: per replicate, per method,
   aligned scores -> metric rows. */
void check_same_points(const std::vector<mia::AuditDataset>& dss) {
  std::set<std::string> first;
  for (const auto& pt : dss.at(0).points) first.insert(pt.point_id);
  for (std::size_t r = 1; r < dss.size(); ++r) {
    std::set<std::string> ids;
    for (const auto& pt : dss[r].points) ids.insert(pt.point_id);
    if (ids != first) {
      throw mia::ConfigError("replicate datasets cover different point sets");
    }
  }
}

int cmd_eval(const Options& opt) {
  auto kind = mia::statistic_kind_from_token(opt.stat);
  auto fprs = parse_fprs(opt.fprs_csv);
  std::vector<mia::AuditDataset> dss;
  for (const auto& f : opt.inputs) dss.push_back(load_file(f, kind));
  check_same_points(dss);

  std::vector<MetricsRow> rows;
  bool replicated = dss.size() > 1;
  fs::create_directories(opt.out_dir);

  auto eval_scores = [&](const std::string& name, const mia::ScoreVector& sv,
                         const mia::AuditDataset& ds, std::size_t rep_idx,
                         MetricsRow& row) {
    auto labels = labels_of(ds);
    std::vector<double> s;
    std::vector<int> l;
    mia::detail::align_scores(sv, labels, s, l);
    auto curve = mia::roc(s, l);
    row.auc.push_back(mia::auc(curve));
    for (std::size_t i = 0; i < fprs.size(); ++i) {
      row.tpr[i].push_back(mia::tpr_at_fpr(curve, fprs[i]));
    }
    std::ostringstream rc;
    rc << "fpr,tpr\n";
    for (const auto& p : curve.points) {
      rc << fmt_num(p.fpr, opt.raw) << ',' << fmt_num(p.tpr, opt.raw) << '\n';
    }
    std::string fname = "roc_" + name +
                        (replicated ? "_r" + std::to_string(rep_idx) : "") +
                        ".csv";
    atomic_write(fs::path(opt.out_dir) / fname, rc.str());
  };

  if (!opt.scores_file.empty()) {
    std::ifstream in(opt.scores_file);
    if (!in) throw mia::ConfigError("cannot open " + opt.scores_file);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw mia::ParseError("empty scores file", 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "point_id,score") {
      throw mia::ParseError("expected header 'point_id,score'", lineno);
    }
    mia::ScoreVector sv;
    sv.method = fs::path(opt.scores_file).stem().string();
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = mia::detail::split_csv(line);
      if (fields.size() != 2) throw mia::ParseError("expected 2 fields", lineno);
      sv.point_ids.emplace_back(fields[0]);
      sv.values.push_back(mia::detail::parse_double(fields[1], lineno));
    }
    MetricsRow row;
    row.method = sv.method;
    row.tpr.resize(fprs.size());
    eval_scores(sv.method, sv, dss.at(0), 0, row);
    rows.push_back(std::move(row));
  } else {
    auto methods = split_list(opt.methods_csv);
    if (methods.empty()) {
      throw mia::ConfigError("eval needs --methods or --scores");
    }
    for (const auto& m : methods) {
      MetricsRow row;
      row.method = m;
      row.tpr.resize(fprs.size());
      for (std::size_t r = 0; r < dss.size(); ++r) {
        auto rep = score_method(m, dss[r], opt);
        if (!rep.failures.empty()) {
          std::cerr << "warning: " << m << " replicate " << r << ": "
                    << rep.failures.size() << " points failed\n";
        }
        eval_scores(m, rep.scores, dss[r], r, row);
      }
      rows.push_back(std::move(row));
    }
  }

  std::ostringstream out;
  out << "method,auc";
  if (replicated) out << ",auc_se";
  for (double f : fprs) {
    out << ",tpr_at_" << fmt_fpr(f);
    if (replicated) out << ",tpr_at_" << fmt_fpr(f) << "_se";
  }
  out << '\n';
  for (const auto& row : rows) {
    out << row.method << ',' << fmt_num(vec_mean(row.auc), opt.raw);
    if (replicated) out << ',' << fmt_num(vec_se(row.auc), opt.raw);
    for (std::size_t i = 0; i < fprs.size(); ++i) {
      out << ',' << fmt_num(vec_mean(row.tpr[i]), opt.raw);
      if (replicated) out << ',' << fmt_num(vec_se(row.tpr[i]), opt.raw);
    }
    out << '\n';
  }
  atomic_write(fs::path(opt.out_dir) / "metrics.csv", out.str());
  std::cout << out.str();
  return 0;
}

int cmd_compare(const Options& opt) {
  auto kind = mia::statistic_kind_from_token(opt.stat);
  auto fprs = parse_fprs(opt.fprs_csv);
  auto methods = split_list(opt.methods_csv);
  if (methods.empty()) throw mia::ConfigError("compare needs --methods");
  if (opt.baseline.empty()) throw mia::ConfigError("compare needs --baseline");

  std::vector<mia::AuditDataset> dss;
  for (const auto& f : opt.inputs) dss.push_back(load_file(f, kind));
  check_same_points(dss);
  bool replicated = dss.size() > 1;

  /* delta[m][fpr-or-auc][replicate] */
  std::vector<std::vector<double>> dauc(methods.size());
  std::vector<std::vector<std::vector<double>>> dtpr(
      methods.size(), std::vector<std::vector<double>>(fprs.size()));

  for (const auto& ds : dss) {
    auto labels = labels_of(ds);
    auto base = score_method(opt.baseline, ds, opt);
    std::vector<mia::ScoreVector> svs;
    for (const auto& m : methods) svs.push_back(score_method(m, ds, opt).scores);
    auto table = mia::delta_table(svs, base.scores, labels, fprs);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      dauc[mi].push_back(table.rows[mi].delta_auc);
      for (std::size_t fi = 0; fi < fprs.size(); ++fi) {
        dtpr[mi][fi].push_back(table.rows[mi].delta_tpr[fi]);
      }
    }
  }

  std::ostringstream out;
  out << "method,delta_auc";
  if (replicated) out << ",delta_auc_se";
  for (double f : fprs) {
    out << ",delta_tpr_at_" << fmt_fpr(f);
    if (replicated) out << ",delta_tpr_at_" << fmt_fpr(f) << "_se";
  }
  out << '\n';
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    out << methods[mi] << ',' << fmt_num(vec_mean(dauc[mi]), opt.raw);
    if (replicated) out << ',' << fmt_num(vec_se(dauc[mi]), opt.raw);
    for (std::size_t fi = 0; fi < fprs.size(); ++fi) {
      out << ',' << fmt_num(vec_mean(dtpr[mi][fi]), opt.raw);
      if (replicated) out << ',' << fmt_num(vec_se(dtpr[mi][fi]), opt.raw);
    }
    out << '\n';
  }
  fs::create_directories(opt.out_dir);
  atomic_write(fs::path(opt.out_dir) / "delta.csv", out.str());
  std::cout << "baseline: " << opt.baseline << '\n' << out.str();
  return 0;
}

int cmd_diagnose(const Options& opt) {
  auto kind = mia::statistic_kind_from_token(opt.stat);
  auto ds = load_file(opt.inputs.at(0), kind);
  if (ds.stat_kind != mia::StatisticKind::LogOdds) {
    std::cout << "note: converted " << mia::to_token(ds.stat_kind)
              << " statistics to logodds\n";
    ds = mia::convert_dataset(ds, mia::StatisticKind::LogOdds);
  }
  auto rep = mia::diagnose_dataset(ds);
  std::ostringstream out;
  out << "class,median_ad,reject_pct\n";
  for (const auto& cd : rep.per_class) {
    out << cd.class_label << ',' << fmt_num(cd.median_stat, opt.raw) << ','
        << fmt_num(cd.reject_pct, opt.raw) << '\n';
  }
  fs::create_directories(opt.out_dir);
  atomic_write(fs::path(opt.out_dir) / "diagnostics.csv", out.str());
  std::cout << out.str();
  for (const auto& cd : rep.per_class) {
    std::cout << "class " << cd.class_label << ": " << cd.n_tested
              << " points tested, " << cd.n_skipped
              << " skipped (fewer than " << mia::kAdMinSamples
              << " shadows or no spread)\n";
  }
  return 0;
}

int cmd_simulate(const Options& opt) {
  mia::SynthConfig cfg;
  if (!opt.config_file.empty()) {
    std::ifstream in(opt.config_file);
    if (!in) throw mia::ConfigError("cannot open " + opt.config_file);
    cfg = mia::read_synth_config(in);
  }
  if (opt.seed_set) cfg.seed = opt.seed;

  std::vector<std::size_t> ks;
  if (!opt.sweep_k.empty()) {
    for (const auto& tok : split_list(opt.sweep_k)) {
      long v = mia::detail::parse_long(tok, 0);
      if (v < 1) throw mia::ConfigError("--sweep-k entries must be >= 1");
      ks.push_back(static_cast<std::size_t>(v));
    }
  } else {
    ks.push_back(cfg.k_shadows);
  }

  fs::create_directories(opt.out_dir);
  bool sweep = ks.size() > 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    cfg.k_shadows = ks[i];
    auto [ds, truth] = mia::generate(cfg);
    std::ostringstream data;
    mia::write_dataset(data, ds);
    std::string fname =
        sweep ? "dataset_k" + std::to_string(ks[i]) + ".csv" : "dataset.csv";
    atomic_write(fs::path(opt.out_dir) / fname, data.str());
    if (i == 0) {
      /* Truths are keyed by (seed, point) only, so one sidecar covers every
         K in the sweep. */
      std::ostringstream ts;
      mia::write_truth(ts, truth);
      atomic_write(fs::path(opt.out_dir) / "truth.csv", ts.str());
    }
    std::cout << "wrote " << (fs::path(opt.out_dir) / fname).string() << " ("
              << ds.points.size() << " points, k=" << ks[i] << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"membership-inference scoring over shadow-model statistics"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub, bool multi_input) {
    sub->add_option("--stat", opt.stat, "statistic kind: loss|conf|logodds")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_flag("--raw", opt.raw, "full-precision numeric output");
    if (multi_input) {
      sub->add_option("inputs", opt.inputs, "dataset CSV (replicates allowed)")
          ->required()
          ->expected(-1);
    } else {
      sub->add_option("input", opt.inputs, "dataset CSV")
          ->required()
          ->expected(1);
    }
  };
  auto add_method_params = [&](CLI::App* sub) {
    sub->add_flag("--offline", opt.offline,
                  "declare OUT-only shadows; online-only methods refuse");
    sub->add_option("--centering", opt.centering, "base1: arith|lse");
    sub->add_option("--vmode", opt.vmode,
                    "lira: perpoint|global|hardswitch (threshold 32)");
    sub->add_option("--form", opt.form, "lira_offline: linear|logcdf");
    sub->add_option("--lambda", opt.lambda, "elsa ridge strength (default 1)");
    sub->add_option("--alpha", opt.alpha,
                    "base_offline attenuation in [0,1] (default 1)");
    sub->add_option("--delta", opt.delta, "lira_offline explicit mean shift");
    sub->add_option("--delta-ref", opt.delta_ref,
                    "labeled reference CSV for delta / offline prior");
    sub->add_option("--prior", opt.prior_file, "prior key-value file");
  };

  auto* score = app.add_subcommand("score", "score one method on a dataset");
  score->add_option("--method", opt.methods_csv, "method token")->required();
  add_method_params(score);
  add_io(score, false);

  auto* eval = app.add_subcommand("eval", "score methods and report metrics");
  eval->add_option("--methods", opt.methods_csv, "comma-separated tokens");
  eval->add_option("--scores", opt.scores_file,
                   "evaluate an existing scores.csv instead");
  eval->add_option("--fprs", opt.fprs_csv, "TPR targets (default 0.01,0.001)");
  add_method_params(eval);
  add_io(eval, true);

  auto* compare =
      app.add_subcommand("compare", "delta table against a baseline");
  compare->add_option("--methods", opt.methods_csv, "comma-separated tokens")
      ->required();
  compare->add_option("--baseline", opt.baseline, "baseline method token")
      ->required();
  compare->add_option("--fprs", opt.fprs_csv,
                      "TPR targets (default 0.01,0.001)");
  add_method_params(compare);
  add_io(compare, true);

  auto* diagnose =
      app.add_subcommand("diagnose", "per-class normality screen");
  add_io(diagnose, false);

  auto* simulate =
      app.add_subcommand("simulate", "generate a synthetic benchmark");
  simulate->add_option("--config", opt.config_file, "key-value config file");
  simulate->add_option("--seed", opt.seed, "override config seed")
      ->each([&](const std::string&) { opt.seed_set = true; });
  simulate->add_option("--sweep-k", opt.sweep_k,
                       "comma-separated shadow counts sharing one truth");
  simulate->add_option("--out", opt.out_dir, "output directory (default .)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return cmd_score(opt);
    if (eval->parsed()) return cmd_eval(opt);
    if (compare->parsed()) return cmd_compare(opt);
    if (diagnose->parsed()) return cmd_diagnose(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
