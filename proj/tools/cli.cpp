#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bunkbed/errors.hpp"
#include "bunkbed/measures.hpp"
#include "bunkbed/table2.hpp"
#include "bunkbed/treealg.hpp"
#include "bunkbed/verify.hpp"

namespace bunkbed {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct GraphArgs {
  std::string graph;
  std::string graph_file;
  std::string catalog;

  void add(CLI::App* app, bool allow_catalog) {
    app->add_option("--graph", graph, "built-in graph (K4, C4, fig4-left, fig5-G-2, gadget-3, ...)");
    app->add_option("--graph-file", graph_file, "graph JSON file {n, edges, labels?, posts?}");
    if (allow_catalog) app->add_option("--catalog", catalog, "small<N>: connected graphs up to N vertices plus named ones");
  }
  // Fills the instance part of a request.
  void into(json& req) const {
    int given = !graph.empty() + !graph_file.empty() + !catalog.empty();
    if (given > 1) throw UsageError("give at most one of --graph, --graph-file, --catalog");
    if (!graph.empty()) req["graph"] = graph;
    if (!graph_file.empty()) {
      req["graph_json"] = read_json_file(graph_file);
      req["graph_name"] = graph_file;
    }
    if (!catalog.empty()) req["catalog"] = catalog;
  }
  Graph single() const {
    json req;
    into(req);
    if (req.contains("catalog") || (!req.contains("graph") && !req.contains("graph_json"))) {
      throw UsageError("this command needs --graph or --graph-file");
    }
    return resolve_instances(req).front().graph;
  }
};

struct GridArgs {
  std::string p, q, lambda;
  void add(CLI::App* app) {
    app->add_option("--p", p, "comma-separated rationals, e.g. 1/10,1/2");
    app->add_option("--q", q, "comma-separated rationals");
    app->add_option("--lambda", lambda, "comma-separated rationals");
  }
  json to_json() const {
    json j = json::object();
    auto put = [&](const char* key, const std::string& s) {
      if (s.empty()) return;
      json arr = json::array();
      for (const auto& r : parse_rational_list(s)) arr.push_back(to_string(r));
      j[key] = arr;
    };
    put("p", p);
    put("q", q);
    put("lambda", lambda);
    return j;
  }
};

int exit_code(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    if (r.failed()) return 1;
  }
  return 0;
}

void emit(const std::vector<VerificationReport>& reports, bool as_json, const std::string& out_path, std::ostream& out) {
  json doc = reports_to_json(reports);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << doc.dump(2) << "\n";
  }
  if (as_json) {
    out << doc.dump(2) << "\n";
    return;
  }
  out << summary_table(reports);
  for (const auto& r : reports) {
    if (r.witness) out << "witness for " << r.claim << ": " << r.witness->dump() << "\n";
  }
}

int recheck(const std::string& path, std::ostream& out) {
  std::vector<VerificationReport> stored = reports_from_json(read_json_file(path));
  int code = 0;
  std::vector<VerificationReport> fresh;
  for (const auto& r : stored) {
    if (r.request.empty()) throw UsageError("report '" + r.claim + "' has no request to re-run");
    VerificationReport again = run_request(r.request);
    auto diffs = diff_reports(r, again);
    out << r.claim << " [" << r.instance << "]: " << (diffs.empty() ? "reproduced" : "DIFFERS") << "\n";
    for (const auto& d : diffs) out << "  " << d << "\n";
    if (!diffs.empty()) code = 1;
    fresh.push_back(std::move(again));
  }
  return std::max(code, exit_code(fresh));
}

std::vector<int> parse_vertices(const Graph& g, const std::string& text) {
  std::vector<int> out;
  for (const auto& t : split(text, ',')) out.push_back(g.resolve_vertex(t));
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for bunkbed-type connection inequalities"};
  app.require_subcommand(0, 1);
  std::string recheck_path, guard_text;
  app.add_option("--recheck", recheck_path, "re-run every report in a saved JSON file and compare");
  app.add_option("--guards", guard_text, "size limits, e.g. subset_edges=30,bell=13 (also BUNKBED_GUARDS)");

  // table2
  auto* t2 = app.add_subcommand("table2", "negative region of the counterexample polynomial per gadget size");
  std::string t2_n = "3,4,5,6,11,21,31", t2_p = "1/100", t2_out;
  bool t2_json = false;
  t2->add_option("--n", t2_n, "comma-separated gadget sizes");
  t2->add_option("--p", t2_p, "edge parameter of the gadgets");
  t2->add_option("--out", t2_out, "write the JSON report here");
  t2->add_flag("--json", t2_json, "print JSON instead of the table");

  // verify
  auto* vf = app.add_subcommand("verify", "run an identity suite, conjecture scan or single check");
  std::string suite, measure = "random-cluster", posts, v_out, v_q = "2";
  GraphArgs vg;
  GridArgs vgrid;
  std::uint64_t seed = 1;
  int weightings = 20, bunkbed_max_n = 4;
  bool v_json = false;
  vf->add_option("--suite", suite,
                 "identity suite, conjecture name, 'identities', 'conjectures', 'bunkbed', 'threshold', "
                 "'hypergraph-factor' or 'root143'")
      ->required();
  vg.add(vf, true);
  vgrid.add(vf);
  vf->add_option("--measure", measure, "bunkbed suite: random-cluster, arboreal or percolation");
  vf->add_option("--posts", posts, "bunkbed/threshold: comma-separated post vertices, or 'graph' for the built-in posts");
  vf->add_option("--threshold-q", v_q, "threshold suite: cluster weight q");
  vf->add_option("--seed", seed, "seed for random weightings");
  vf->add_option("--weightings", weightings, "random weightings per graph");
  vf->add_option("--bunkbed-max-n", bunkbed_max_n, "largest base graph for the forest bunkbed scan");
  vf->add_option("--out", v_out, "write the JSON reports here");
  vf->add_flag("--json", v_json, "print JSON instead of the summary");

  // compute
  auto* cp = app.add_subcommand("compute", "single exact quantities");
  cp->require_subcommand(1);
  GraphArgs cg;
  std::string cu, cv, blocks, cq = "1", cpv = "1/2";
  int extra = 0;
  auto* c_res = cp->add_subcommand("resistance", "effective resistance between two vertices");
  auto* c_br = cp->add_subcommand("bracket", "forest bracket count, blocks like 'a|b,c'");
  auto* c_rc = cp->add_subcommand("rc-prob", "random-cluster connection probability");
  auto* c_pi = cp->add_subcommand("pseudoinverse", "Laplacian pseudoinverse");
  auto* c_root = cp->add_subcommand("root143", "isolate the real root of q^3 - 5q^2 + 10q - 7");
  for (auto* sub : {c_res, c_br, c_rc, c_pi}) cg.add(sub, false);
  for (auto* sub : {c_res, c_rc}) {
    sub->add_option("--u", cu)->required();
    sub->add_option("--v", cv)->required();
  }
  c_br->add_option("--blocks", blocks, "blocks separated by '|', vertices by ','; empty gives the tree count");
  c_br->add_option("--extra", extra, "extra components beyond the block count");
  c_rc->add_option("--q", cq);
  c_rc->add_option("--p", cpv, "uniform edge weight (overrides stored weights)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!guard_text.empty()) set_guards(parse_guard_overrides(guard_text, guards()));
    if (!recheck_path.empty()) return recheck(recheck_path, out);

    if (t2->parsed()) {
      std::vector<int> ns;
      for (const auto& s : split(t2_n, ',')) ns.push_back(std::stoi(s));
      VerificationReport r = table2_report(ns, parse_rational(t2_p));
      if (t2_json) {
        emit({r}, true, t2_out, out);
      } else {
        emit({r}, false, t2_out, out);
        out << table2_text(r);
      }
      return exit_code({r});
    }

    if (vf->parsed()) {
      std::vector<json> requests;
      json base;
      vg.into(base);
      json grid = vgrid.to_json();
      auto identity = [&](const std::string& name) {
        json r = base;
        r["kind"] = "identity";
        r["suite"] = name;
        if (!r.contains("graph") && !r.contains("graph_json") && !r.contains("catalog")) r["catalog"] = "small5";
        requests.push_back(r);
      };
      auto conjecture = [&](const std::string& name) {
        json r = base;
        r["kind"] = "conjecture";
        r["name"] = name;
        if (!grid.empty()) r["grid"] = grid;
        r["seed"] = seed;
        r["weightings"] = weightings;
        r["bunkbed_max_n"] = bunkbed_max_n;
        if (!r.contains("graph") && !r.contains("graph_json") && !r.contains("catalog")) r["catalog"] = "small5";
        requests.push_back(r);
      };
      auto posts_for = [&](json& r) {
        if (posts.empty()) return;
        Graph g = resolve_instances(r).front().graph;
        r["posts"] = posts == "graph" ? g.posts() : parse_vertices(g, posts);
      };
      auto names = identity_suite_names();
      auto conj = conjecture_names();
      if (suite == "identities") {
        for (const auto& s : names) identity(s);
      } else if (suite == "conjectures") {
        for (const auto& s : conj) conjecture(s);
      } else if (std::find(names.begin(), names.end(), suite) != names.end()) {
        identity(suite);
      } else if (std::find(conj.begin(), conj.end(), suite) != conj.end()) {
        conjecture(suite);
      } else if (suite == "bunkbed" || suite == "threshold") {
        json r = base;
        if (!r.contains("graph") && !r.contains("graph_json")) throw UsageError(suite + " needs --graph or --graph-file");
        r["kind"] = suite;
        posts_for(r);
        if (suite == "bunkbed") {
          r["measure"] = measure_name(parse_measure(measure));
          if (!grid.empty()) r["grid"] = grid;
        } else {
          r["q"] = to_string(parse_rational(v_q));
          if (!r.contains("posts")) r["posts"] = json::array();
        }
        requests.push_back(r);
      } else if (suite == "hypergraph-factor" || suite == "root143") {
        requests.push_back({{"kind", suite}});
      } else {
        throw UsageError("unknown suite '" + suite + "'");
      }
      std::vector<VerificationReport> reports;
      for (const auto& r : requests) reports.push_back(run_request(r));
      emit(reports, v_json, v_out, out);
      return exit_code(reports);
    }

    if (cp->parsed()) {
      if (c_root->parsed()) {
        VerificationReport r = check_root143();
        out << r.quantities.dump(2) << "\n";
        return exit_code({r});
      }
      Graph g = cg.single();
      if (c_res->parsed()) {
        out << to_string(resistance(g, g.resolve_vertex(cu), g.resolve_vertex(cv))) << "\n";
      } else if (c_br->parsed()) {
        std::vector<std::vector<int>> bl;
        for (const auto& b : split(blocks, '|')) bl.push_back(parse_vertices(g, b));
        out << to_string(forest_table(g.with_unit_weights(), [&] {
                           std::vector<int> all(g.vertex_count());
                           std::iota(all.begin(), all.end(), 0);
                           return all;
                         }())
                             .bracket_count(BracketQuery::of(bl, extra)))
            << "\n";
      } else if (c_rc->parsed()) {
        Graph w = g.with_uniform_weight(MultiPoly(parse_rational(cpv)));
        out << to_string(rc_connection_prob(w, parse_rational(cq), g.resolve_vertex(cu), g.resolve_vertex(cv))) << "\n";
      } else if (c_pi->parsed()) {
        RationalMatrix P = pseudoinverse(laplacian(g));
        for (const auto& row : P.to_strings()) {
          for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
          out << "\n";
        }
      }
      return 0;
    }

    out << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bunkbed
