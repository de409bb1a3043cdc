#include "p123/sweep.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "p123/constructive.hpp"
#include "p123/labelling.hpp"

namespace p123 {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json base_anomaly(const SweepRow& r, const char* check) {
  return nlohmann::json{{"schema", 1},     {"graph6", r.id},
                        {"n", r.n},        {"m", r.m},
                        {"check", check},  {"verdict", r.verdict},
                        {"detail", r.detail}};
}

void run_p123(const Graph& g, const SweepOptions& opt, SweepRow& r) {
  if (!is_nice(g)) {
    r.verdict = "skipped: not nice";
    return;
  }
  ChiResult res = chi_p(g, opt.budget);
  for (const SearchResult& a : res.attempts) r.nodes += a.nodes;
  r.detail = "chi-p=" + std::to_string(res.value);
  if (res.value <= 3) {
    r.verdict = "pass";
  } else {
    r.verdict = "fail";
    r.anomaly = base_anomaly(r, "p123");
    r.anomaly["witness"] =
        labelling_to_json(g, *res.attempts.back().witness);
  }
}

void run_weak_forest(const Graph& g, const SweepOptions& opt, SweepRow& r) {
  SearchResult res = forest_two_labelling(g, opt.budget);
  r.nodes = res.nodes;
  if (res.outcome == SearchOutcome::WITNESS) {
    r.verdict = "pass";
    r.detail = "forest2=witness";
  } else {
    r.verdict = "fail";
    r.detail = "forest2=exhausted";
    r.anomaly = base_anomaly(r, "weak-forest");
  }
}

void run_mult123_via_alg(const Graph& g, SweepRow& r) {
  LabelledResult res = label_generic(g);
  ShapeReport shape = check_shape(g, res.labelling, Requirement::S1_MATCHING);
  r.detail = std::string("shape=s1-matching") +
             (res.anomalies.empty() ? "" : " (repaired)");
  if (shape.ok) {
    r.verdict = "pass";
  } else {
    r.verdict = "fail";
    r.anomaly = base_anomaly(r, "mult123-via-alg");
    r.anomaly["labelling"] = labelling_to_json(g, res.labelling);
    r.anomaly["violations"] = shape.violations;
  }
  if (!res.anomalies.empty() && r.anomaly.is_object())
    r.anomaly["construction_notes"] = res.anomalies;
}

void run_total(const Graph& g, SweepRow& r) {
  TotalResult res = label_total(g);
  bool ok = is_total_p_proper(g, res.labelling);
  r.detail = "total-p-proper";
  if (ok) {
    r.verdict = "pass";
  } else {
    r.verdict = "fail";
    r.anomaly = base_anomaly(r, "total");
    r.anomaly["labelling"] = labelling_to_json(g, res.labelling);
  }
}

void run_regular_obs(const Graph& g, const SweepOptions& opt, SweepRow& r) {
  if (!g.is_regular()) {
    r.verdict = "skipped: not regular";
    return;
  }
  if (!is_nice(g)) {
    r.verdict = "skipped: not nice";
    return;
  }
  RegularCheck res = verify_regular_via_multiset(g, opt.budget);
  r.nodes = res.search.nodes;
  if (res.ok && !res.anomaly) {
    r.verdict = "pass";
    r.detail = "m-proper witness is p-proper";
  } else {
    r.verdict = "fail";
    r.detail = res.anomaly ? "no m-proper 3-labelling" : "witness not p-proper";
    r.anomaly = base_anomaly(r, "regular-obs");
    if (!res.anomaly)
      r.anomaly["witness"] = labelling_to_json(g, res.witness);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const char* sweep_check_name(SweepCheck c) {
  switch (c) {
    case SweepCheck::P123: return "p123";
    case SweepCheck::WEAK_FOREST: return "weak-forest";
    case SweepCheck::MULT123_VIA_ALG: return "mult123-via-alg";
    case SweepCheck::TOTAL: return "total";
    case SweepCheck::REGULAR_OBS: return "regular-obs";
  }
  return "?";
}

std::optional<SweepCheck> sweep_check_from_name(const std::string& s) {
  if (s == "p123") return SweepCheck::P123;
  if (s == "weak-forest") return SweepCheck::WEAK_FOREST;
  if (s == "mult123-via-alg") return SweepCheck::MULT123_VIA_ALG;
  if (s == "total") return SweepCheck::TOTAL;
  if (s == "regular-obs") return SweepCheck::REGULAR_OBS;
  return std::nullopt;
}

SweepRow sweep_one(const Graph& g, const SweepOptions& opt) {
  SweepRow r;
  r.id = to_graph6(g);
  r.n = g.n;
  r.m = g.m();
  auto t0 = Clock::now();
  try {
    switch (opt.check) {
      case SweepCheck::P123: run_p123(g, opt, r); break;
      case SweepCheck::WEAK_FOREST: run_weak_forest(g, opt, r); break;
      case SweepCheck::MULT123_VIA_ALG: run_mult123_via_alg(g, r); break;
      case SweepCheck::TOTAL: run_total(g, r); break;
      case SweepCheck::REGULAR_OBS: run_regular_obs(g, opt, r); break;
    }
  } catch (const budget_error& e) {
    r.verdict = "error: budget exceeded";
    r.detail = e.what();
    r.anomaly = base_anomaly(r, sweep_check_name(opt.check));
  } catch (const construction_error& e) {
    r.verdict = std::string("error: construction: ") + e.what();
    r.anomaly = base_anomaly(r, sweep_check_name(opt.check));
    r.anomaly["trace_entries"] = e.trace.entries.size();
  } catch (const std::exception& e) {
    r.verdict = std::string("error: ") + e.what();
    r.anomaly = base_anomaly(r, sweep_check_name(opt.check));
  } catch (...) {
    r.verdict = "error: unknown";
    r.anomaly = base_anomaly(r, sweep_check_name(opt.check));
  }
  r.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return r;
}

std::vector<SweepRow> sweep_graphs_serial(const std::vector<Graph>& graphs,
                                          const SweepOptions& opt) {
  std::vector<SweepRow> rows(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i)
    rows[i] = sweep_one(graphs[i], opt);
  return rows;
}

std::vector<SweepRow> sweep_graphs(const std::vector<Graph>& graphs,
                                   const SweepOptions& opt) {
#ifdef _OPENMP
  if (opt.jobs > 1) {
    std::vector<SweepRow> rows(graphs.size());
    const std::int64_t count = static_cast<std::int64_t>(graphs.size());
#pragma omp parallel for schedule(dynamic) num_threads(opt.jobs)
    for (std::int64_t i = 0; i < count; ++i)
      rows[static_cast<std::size_t>(i)] =
          sweep_one(graphs[static_cast<std::size_t>(i)], opt);
    return rows;
  }
#endif
  return sweep_graphs_serial(graphs, opt);
}

std::string sweep_csv_header() { return "id,n,m,verdict,detail,nodes,ms"; }

std::string sweep_csv_row(const SweepRow& r) {
  char msbuf[32];
  std::snprintf(msbuf, sizeof msbuf, "%.3f", r.ms);
  return csv_field(r.id) + "," + std::to_string(r.n) + "," +
         std::to_string(r.m) + "," + csv_field(r.verdict) + "," +
         csv_field(r.detail) + "," + std::to_string(r.nodes) + "," + msbuf;
}

}  // namespace p123
