#include "p123/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "p123/colouring.hpp"
#include "p123/constructive.hpp"
#include "p123/enumerate.hpp"
#include "p123/graph.hpp"
#include "p123/labelling.hpp"
#include "p123/oracle.hpp"
#include "p123/sweep.hpp"

namespace p123 {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- input ----

std::string slurp(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") {
    std::ostringstream ss;
    ss << stdin_stream.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string strip_line(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' '))
    s.pop_back();
  std::size_t at = 0;
  while (at < s.size() && s[at] == ' ') ++at;
  s.erase(0, at);
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s.erase(0, header.size());
  return s;
}

// Decides between graph6 and edge-list input: an explicit --format wins,
// otherwise a ".edges" suffix selects the edge-list reader.
Graph load_graph(const std::string& path, const std::string& format,
                 std::istream& stdin_stream, std::ostream& err) {
  std::string fmt = format;
  if (fmt.empty()) {
    fmt = "g6";
    if (path.size() > 6 && path.substr(path.size() - 6) == ".edges")
      fmt = "edges";
  }
  std::string text = slurp(path, stdin_stream);
  if (fmt == "edges") {
    EdgeListResult r = parse_edge_list(text);
    for (const std::string& w : r.warnings) err << "note: " << w << "\n";
    return r.graph;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = strip_line(line);
    if (!line.empty()) return parse_graph6(line);
  }
  throw parse_error("no graph found in input");
}

int write_text(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open output file: " + path);
  f << text;
  return 0;
}

// --------------------------------------------------------------- reports ---

json graph_json(const Graph& g) {
  json j{{"n", g.n}, {"m", g.m()}};
  if (g.n <= 1000) j["graph6"] = to_graph6(g);
  return j;
}

json trace_summary(const ConstructionTrace& t) {
  std::map<std::string, int> stages;
  for (const TraceEntry& e : t.entries) ++stages[e.stage];
  return json{{"entries", t.entries.size()}, {"stages", stages}};
}

const char* outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::WITNESS: return "witness";
    case SearchOutcome::EXHAUSTED: return "exhausted";
    case SearchOutcome::UNDEFINED_NICENESS: return "undefined";
  }
  return "?";
}

// Re-reads the labelling from its serialized JSON form and recomputes every
// verdict from that copy, so the report can never show a stale or
// unserializable answer.
json recomputed_verdicts(const Graph& g, const json& labj) {
  LoadedLabelling ll = labelling_from_json(g, labj);
  json v;
  v["p-proper"] = is_p_proper(g, ll.edge);
  v["m-proper"] = is_m_proper(g, ll.edge);
  v["s-proper"] = is_s_proper(g, ll.edge);
  for (Requirement r :
       {Requirement::ALL_INDEPENDENT, Requirement::S1_MATCHING,
        Requirement::ONE_EDGE, Requirement::ONE_STAR, Requirement::ALL_FORESTS})
    v[requirement_name(r)] = check_shape(g, ll.edge, r).ok;
  if (ll.vertex) {
    TotalLabelling t{ll.edge, *ll.vertex};
    bool ranges = true;
    for (int lbl : t.vertex)
      if (lbl < 1 || lbl > 2) ranges = false;
    for (int lbl : t.edge.lab)
      if (lbl < 1 || lbl > 3) ranges = false;
    v["total-p-proper"] = is_total_p_proper(g, t);
    v["total-label-ranges"] = ranges;
  }
  return v;
}

json conflict_json(const Graph& g, const json& labj) {
  LoadedLabelling ll = labelling_from_json(g, labj);
  ConflictReport rep = ll.vertex
                           ? total_conflicts(g, TotalLabelling{ll.edge, *ll.vertex})
                           : conflicts(g, ll.edge);
  json arr = json::array();
  for (auto [u, v] : rep.conflict_edges) arr.push_back(json::array({u, v}));
  return arr;
}

// ----------------------------------------------------------------- label ---

struct LabelOpts {
  std::string alg = "auto";
  std::string in;
  std::string format;
  std::string out;
  int root = 0;
  int n = -1;
};

// Dispatch order for --alg auto.  The rules are checked top to bottom:
//   1. complete graph (n >= 2)  ->  complete   (but K_4 -> four-chromatic,
//      since the four-part scheme covers it and exercises the 4-chromatic
//      machinery; K_1 has no join step and falls through)
//   2. connected bipartite      ->  bipartite
//   3. maximum degree <= 3      ->  subcubic
//   4. chromatic number 4       ->  four-chromatic
//   5. otherwise                ->  generic
std::string pick_auto(const Graph& g) {
  if (g.n >= 2 && g.is_complete()) return g.n == 4 ? "four-chromatic" : "complete";
  if (g.n >= 1 && connected_components(g).size() == 1 &&
      check_bipartite(g).bipartite)
    return "bipartite";
  if (g.n >= 1 && g.max_degree() <= 3) return "subcubic";
  if (chromatic_number(g) == 4) return "four-chromatic";
  return "generic";
}

int cmd_label(const LabelOpts& o, std::istream& in, std::ostream& out,
              std::ostream& err) {
  std::optional<Graph> g;
  std::string alg = o.alg;

  if (alg == "complete" && o.n >= 0) {
    if (o.n < 2 || o.n > 2000) {
      err << "usage: --n must be between 2 and 2000\n";
      return 2;
    }
    g = complete_graph(o.n);
  } else {
    if (o.in.empty()) {
      err << "usage: --in is required (or --alg complete with --n)\n";
      return 2;
    }
    g = load_graph(o.in, o.format, in, err);
    if (alg == "auto") alg = pick_auto(*g);
  }

  auto t0 = std::chrono::steady_clock::now();
  json labj;
  std::string reqname;
  std::vector<std::string> anomalies;
  json tracej;

  try {
    if (alg == "four-chromatic") {
      LabelledResult r = label_four_chromatic(*g);
      labj = labelling_to_json(*g, r.labelling);
      reqname = requirement_name(Requirement::ALL_INDEPENDENT);
      anomalies = r.anomalies;
      tracej = trace_summary(r.trace);
    } else if (alg == "generic") {
      LabelledResult r = label_generic(*g);
      labj = labelling_to_json(*g, r.labelling);
      reqname = requirement_name(Requirement::S1_MATCHING);
      anomalies = r.anomalies;
      tracej = trace_summary(r.trace);
    } else if (alg == "total") {
      TotalResult r = label_total(*g);
      labj = labelling_to_json(*g, r.labelling);
      reqname = "total-p-proper";
      anomalies = r.anomalies;
      tracej = trace_summary(r.trace);
    } else if (alg == "complete") {
      if (!g->is_complete() || g->n < 2)
        throw precondition_error(
            "the complete-graph labeller needs a complete graph on >= 2 "
            "vertices");
      LabelledResult r = label_complete(g->n);
      labj = labelling_to_json(*g, r.labelling);
      reqname = requirement_name(Requirement::ONE_EDGE);
      anomalies = r.anomalies;
      tracej = trace_summary(r.trace);
    } else if (alg == "bipartite") {
      LabelledResult r = label_bipartite_two(*g, o.root);
      labj = labelling_to_json(*g, r.labelling);
      reqname = requirement_name(Requirement::ONE_STAR);
      anomalies = r.anomalies;
      tracej = trace_summary(r.trace);
    } else if (alg == "subcubic") {
      LabelledResult r = label_subcubic_two(*g);
      labj = labelling_to_json(*g, r.labelling);
      reqname = requirement_name(Requirement::ALL_FORESTS);
      anomalies = r.anomalies;
      tracej = trace_summary(r.trace);
    } else {
      err << "usage: unknown --alg value: " << alg << "\n";
      return 2;
    }
  } catch (const construction_error& e) {
    json report{{"schema", 1},
                {"command", "label"},
                {"algorithm", alg},
                {"graph", graph_json(*g)},
                {"error", e.what()},
                {"trace", trace_summary(e.trace)}};
    write_text(o.out, report.dump(2), out);
    err << "construction anomaly: " << e.what() << "\n";
    return 3;
  }

  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  json verdicts = recomputed_verdicts(*g, labj);
  bool ok = verdicts.at(reqname).get<bool>();
  json report{{"schema", 1},
              {"command", "label"},
              {"algorithm", alg},
              {"graph", graph_json(*g)},
              {"requirement", reqname},
              {"labelling", labj},
              {"verdicts", verdicts},
              {"ok", ok},
              {"conflicts", conflict_json(*g, labj)},
              {"timing_ms", ms},
              {"trace", tracej}};
  if (!anomalies.empty()) report["anomalies"] = anomalies;
  write_text(o.out, report.dump(2), out);
  if (!ok) {
    err << "verification failed: labelling does not satisfy " << reqname
        << "\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------- verify ---

struct VerifyOpts {
  std::string graph;
  std::string labelling;
  std::string require;
  std::string format;
  std::string out;
};

int cmd_verify(const VerifyOpts& o, std::istream& in, std::ostream& out,
               std::ostream& err) {
  if (o.graph == "-" && o.labelling == "-") {
    err << "usage: --graph and --labelling cannot both read stdin\n";
    return 2;
  }
  Graph g = load_graph(o.graph, o.format, in, err);
  json labj;
  try {
    labj = json::parse(slurp(o.labelling, in));
  } catch (const json::exception& e) {
    throw parse_error(std::string("labelling JSON: ") + e.what());
  }
  LoadedLabelling ll = labelling_from_json(g, labj);

  std::string name = o.require;
  if (name == "forests") name = "all-forests";
  bool ok = false;
  json violations = json::array();
  if (name == "p-proper") {
    ok = ll.vertex ? is_total_p_proper(g, TotalLabelling{ll.edge, *ll.vertex})
                   : is_p_proper(g, ll.edge);
  } else if (name == "m-proper") {
    ok = is_m_proper(g, ll.edge);
  } else if (name == "s-proper") {
    ok = is_s_proper(g, ll.edge);
  } else if (auto req = requirement_from_name(name)) {
    ShapeReport rep = check_shape(g, ll.edge, *req);
    ok = rep.ok;
    for (const std::string& v : rep.violations) violations.push_back(v);
  } else {
    err << "usage: unknown --require value: " << o.require << "\n";
    return 2;
  }

  json report{{"schema", 1},        {"command", "verify"},
              {"require", name},    {"graph", graph_json(g)},
              {"ok", ok},           {"conflicts", conflict_json(g, labj)},
              {"violations", violations}};
  write_text(o.out, report.dump(2), out);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- oracle ---

struct OracleOpts {
  std::string param;
  std::string in;
  std::string format;
  std::string out;
  long long max_nodes = -1;
  double max_seconds = -1;
};

int cmd_oracle(const OracleOpts& o, std::istream& in, std::ostream& out,
               std::ostream& err) {
  Graph g = load_graph(o.in, o.format, in, err);
  SearchBudget budget;
  if (o.max_nodes > 0) budget.max_nodes = o.max_nodes;
  if (o.max_seconds > 0) budget.max_seconds = o.max_seconds;

  json report{{"schema", 1},
              {"command", "oracle"},
              {"param", o.param},
              {"graph", graph_json(g)}};

  auto attempts_json = [&](const std::vector<SearchResult>& as) {
    json arr = json::array();
    for (std::size_t i = 0; i < as.size(); ++i)
      arr.push_back(json{{"k", i + 1},
                         {"outcome", outcome_name(as[i].outcome)},
                         {"nodes", as[i].nodes},
                         {"seconds", as[i].seconds}});
    return arr;
  };

  if (o.param == "chi-p" || o.param == "chi-m" || o.param == "chi-s") {
    ChiResult r = o.param == "chi-p"   ? chi_p(g, budget)
                  : o.param == "chi-m" ? chi_m(g, budget)
                                       : chi_s(g, budget);
    report["defined"] = r.defined;
    if (!r.defined) {
      out << "undefined (not nice)\n";
    } else {
      report["value"] = r.value;
      report["attempts"] = attempts_json(r.attempts);
      report["witness"] = labelling_to_json(g, *r.attempts.back().witness);
      out << r.value << "\n";
    }
    if (!o.out.empty()) write_text(o.out, report.dump(2), out);
    return 0;
  }
  if (o.param == "forest2") {
    SearchResult r = forest_two_labelling(g, budget);
    report["outcome"] = outcome_name(r.outcome);
    report["nodes"] = r.nodes;
    report["seconds"] = r.seconds;
    if (r.outcome == SearchOutcome::WITNESS) {
      report["witness"] = labelling_to_json(g, *r.witness);
      out << "witness\n";
      if (!o.out.empty()) write_text(o.out, report.dump(2), out);
      return 0;
    }
    out << "exhausted\n";
    if (!o.out.empty()) write_text(o.out, report.dump(2), out);
    err << "counterexample: no 2-labelling of this graph keeps every product "
           "class a forest\n";
    return 1;
  }
  if (o.param == "regular-obs") {
    if (!g.is_regular())
      throw precondition_error("regular-obs needs a regular graph");
    if (!is_nice(g))
      throw precondition_error("regular-obs needs a nice graph");
    RegularCheck r = verify_regular_via_multiset(g, budget);
    report["ok"] = r.ok;
    report["anomaly"] = r.anomaly;
    report["nodes"] = r.search.nodes;
    if (r.ok) {
      report["witness"] = labelling_to_json(g, r.witness);
      out << "ok\n";
      if (!o.out.empty()) write_text(o.out, report.dump(2), out);
      return 0;
    }
    out << "anomaly\n";
    if (!o.out.empty()) write_text(o.out, report.dump(2), out);
    err << "anomaly: multiset-proper witness expectations failed on a regular "
           "graph\n";
    return 3;
  }
  err << "usage: unknown --param value: " << o.param << "\n";
  return 2;
}

// ----------------------------------------------------------------- sweep ---

struct SweepCliOpts {
  std::string check;
  std::string in = "-";
  std::string out;
  std::string anomalies_dir = "sweep-anomalies";
  int max_n = -1;
  int jobs = 1;
  bool strict = false;
  long long max_nodes = -1;
  double max_seconds = -1;
};

int cmd_sweep(const SweepCliOpts& o, std::istream& in, std::ostream& out,
              std::ostream& err) {
  auto check = sweep_check_from_name(o.check);
  if (!check) {
    err << "usage: unknown --check value: " << o.check << "\n";
    return 2;
  }
  SweepOptions opt;
  opt.check = *check;
  opt.jobs = o.jobs > 0 ? o.jobs : 1;
  if (o.max_nodes > 0) opt.budget.max_nodes = o.max_nodes;
  if (o.max_seconds > 0) opt.budget.max_seconds = o.max_seconds;

  std::vector<Graph> graphs;
  long long malformed = 0;
  if (o.max_n >= 0) {
    if (o.max_n < 1 || o.max_n > 8) {
      err << "usage: the built-in enumerator supports --max-n from 1 to 8\n";
      return 2;
    }
    for (int n = 1; n <= o.max_n; ++n)
      for (Graph& g : enumerate_connected(n)) graphs.push_back(std::move(g));
  } else {
    std::string text = slurp(o.in, in);
    std::istringstream lines(text);
    std::string line;
    long long ln = 0;
    while (std::getline(lines, line)) {
      ++ln;
      line = strip_line(line);
      if (line.empty()) continue;
      try {
        graphs.push_back(parse_graph6(line));
      } catch (const parse_error& e) {
        err << "line " << ln << ": skipped: " << e.what() << "\n";
        ++malformed;
      }
    }
  }

  std::vector<SweepRow> rows = sweep_graphs(graphs, opt);

  std::ostringstream csv;
  csv << sweep_csv_header() << "\n";
  long long pass = 0, fail = 0, skipped = 0, errors = 0, anomalies = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    csv << sweep_csv_row(r) << "\n";
    if (r.verdict == "pass") ++pass;
    else if (r.verdict == "fail") ++fail;
    else if (r.verdict.rfind("skipped", 0) == 0) ++skipped;
    else ++errors;
    if (r.anomalous()) {
      ++anomalies;
      std::filesystem::create_directories(o.anomalies_dir);
      char name[32];
      std::snprintf(name, sizeof name, "%05zu.json", i);
      std::ofstream f(std::filesystem::path(o.anomalies_dir) / name);
      f << r.anomaly.dump(2) << "\n";
    }
  }
  write_text(o.out, csv.str(), out);
  err << "swept " << rows.size() << " graphs: " << pass << " pass, " << fail
      << " fail, " << skipped << " skipped, " << errors << " errors";
  if (malformed > 0) err << "; " << malformed << " malformed input lines";
  if (anomalies > 0)
    err << "; " << anomalies << " anomaly reports in " << o.anomalies_dir;
  err << "\n";
  if (anomalies > 0) return 1;
  if (o.strict && malformed > 0) return 2;
  return 0;
}

}  // namespace

// ------------------------------------------------------------- dispatch ----

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{
      "labelling toolkit: constructive edge labellings whose vertex products "
      "distinguish neighbours, exhaustive oracles, and batch sweeps"};
  app.require_subcommand(1);

  LabelOpts lo;
  CLI::App* lab = app.add_subcommand(
      "label", "construct a labelling and verify its declared shape");
  lab->add_option("--alg", lo.alg,
                  "auto|four-chromatic|generic|total|complete|bipartite|"
                  "subcubic (default auto)");
  lab->add_option("--in", lo.in, "input graph path, or - for stdin");
  lab->add_option("--format", lo.format, "g6|edges (default: by extension)");
  lab->add_option("--out", lo.out, "report path (default: stdout)");
  lab->add_option("--root", lo.root,
                  "root vertex for the bipartite labeller (default 0)");
  lab->add_option("--n", lo.n, "order for --alg complete (no input file)");

  VerifyOpts vo;
  CLI::App* ver = app.add_subcommand(
      "verify", "check a labelling against a stated requirement");
  ver->add_option("--graph", vo.graph, "graph path, or - for stdin")
      ->required();
  ver->add_option("--labelling", vo.labelling,
                  "labelling JSON path, or - for stdin")
      ->required();
  ver->add_option("--require", vo.require,
                  "p-proper|m-proper|s-proper|all-independent|s1-matching|"
                  "one-edge|one-star|all-forests (alias: forests)")
      ->required();
  ver->add_option("--format", vo.format, "g6|edges (default: by extension)");
  ver->add_option("--out", vo.out, "report path (default: stdout)");

  OracleOpts oo;
  CLI::App* ora = app.add_subcommand(
      "oracle", "exhaustive-search ground truth for small graphs");
  ora->add_option("--param", oo.param,
                  "chi-p|chi-m|chi-s|forest2|regular-obs")
      ->required();
  ora->add_option("--in", oo.in, "input graph path, or - for stdin")
      ->required();
  ora->add_option("--format", oo.format, "g6|edges (default: by extension)");
  ora->add_option("--out", oo.out, "full JSON report path");
  ora->add_option("--max-nodes", oo.max_nodes, "search node budget");
  ora->add_option("--max-seconds", oo.max_seconds, "search time budget");

  SweepCliOpts so;
  CLI::App* swp = app.add_subcommand(
      "sweep", "run one check over a stream or enumeration of graphs");
  swp->add_option("--check", so.check,
                  "p123|weak-forest|mult123-via-alg|total|regular-obs")
      ->required();
  swp->add_option("--in", so.in,
                  "graph6 stream path, or - for stdin (default -)");
  swp->add_option("--max-n", so.max_n,
                  "sweep all connected graphs up to this order (<= 8) "
                  "instead of reading a stream");
  swp->add_option("--jobs", so.jobs, "worker count (default 1)");
  swp->add_option("--out", so.out, "CSV path (default: stdout)");
  swp->add_option("--anomalies", so.anomalies_dir,
                  "directory for anomaly reports (default sweep-anomalies)");
  swp->add_flag("--strict", so.strict,
                "exit nonzero if any input line was malformed");
  swp->add_option("--max-nodes", so.max_nodes, "per-graph search node budget");
  swp->add_option("--max-seconds", so.max_seconds,
                  "per-graph search time budget");

  std::vector<std::string> full = {"p123"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (lab->parsed()) return cmd_label(lo, in, out, err);
    if (ver->parsed()) return cmd_verify(vo, in, out, err);
    if (ora->parsed()) return cmd_oracle(oo, in, out, err);
    if (swp->parsed()) return cmd_sweep(so, in, out, err);
  } catch (const parse_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    err << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  err << "usage: a subcommand is required\n";
  return 2;
}

}  // namespace p123
