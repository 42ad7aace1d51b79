// Command-line front end: difference construction, DCS solvers, exact
// oracles, graph statistics and co-occurrence ingestion.
//
// Exit codes: 0 success, 2 usage, 3 input error, 4 solver did not converge.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/dcs.hpp"
#include "dcs/json_records.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNotConverged = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dcs::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[32];
  std::snprintf(out, sizeof out, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return out;
}

struct LoadedGraph {
  dcs::WeightedGraph graph;
  std::string digest;
};

LoadedGraph load_graph(const std::string& path) {
  std::string bytes = read_file(path);
  std::istringstream in(bytes);
  return {dcs::load_edge_list(in), fnv1a_digest(bytes)};
}

void print_stats_line(std::ostream& os, const dcs::GraphStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "n=%d m+=%zu m-=%zu max_w=%.17g min_w=%.17g avg_w=%.17g",
                s.n, s.m_pos, s.m_neg, s.max_w, s.min_w, s.avg_w);
  os << buf << '\n';
}

void emit_report(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw dcs::Error("cannot write '" + out_path + "'");
    out << report.dump(2) << '\n';
  }
}

json command_echo(int argc, char** argv) {
  json cmd = json::array();
  for (int i = 1; i < argc; ++i) cmd.push_back(argv[i]);
  return cmd;
}

// Shared difference-graph options: either a pre-built G_D edge list or a
// (g1, g2) pair, plus the weight pipeline (transform, then optional flip).
struct GdOptions {
  std::string gd_path;
  std::string g1_path, g2_path;
  double alpha = 1.0;
  bool flip = false;
  std::string discretize;  // named preset
  std::string bands;       // custom "lo:val,..." spec
  double clamp_max = 0;
  bool has_clamp = false;

  void attach(CLI::App* cmd, bool positional_gd, bool allow_pair) {
    if (positional_gd) {
      auto* opt = cmd->add_option("gd", gd_path, "difference-graph edge list");
      if (!allow_pair) opt->required();  // no pair fallback for this command
    }
    if (allow_pair) {
      cmd->add_option("--g1", g1_path, "first snapshot (subtracted)");
      cmd->add_option("--g2", g2_path, "second snapshot");
      cmd->add_option("--alpha", alpha, "difference scale: D = A2 - alpha*A1")
          ->check(CLI::NonNegativeNumber);
    }
    cmd->add_flag("--flip", flip, "negate all weights (disappearing direction)");
    cmd->add_option("--discretize", discretize, "named weight banding (dblp)");
    cmd->add_option("--bands", bands, "custom bands lo:val[,lo:val...]; lowest band may use -inf");
    auto* c = cmd->add_option("--clamp-max", clamp_max, "cap weights above this value");
    c->each([this](const std::string&) { has_clamp = true; });
  }

  dcs::WeightTransform transform() const {
    int picked = (!discretize.empty()) + (!bands.empty()) + has_clamp;
    if (picked > 1) throw dcs::BadTransform("choose one of --discretize/--bands/--clamp-max");
    if (!discretize.empty()) {
      if (discretize != "dblp") throw dcs::BadTransform("unknown preset '" + discretize + "'");
      return dcs::WeightTransform::discretize_dblp();
    }
    if (!bands.empty()) {
      std::vector<std::pair<double, double>> parsed;
      std::stringstream ss(bands);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw dcs::BadTransform("band must be lo:val");
        try {
          std::string lo = item.substr(0, colon);
          double lo_v = (lo == "-inf") ? -std::numeric_limits<double>::infinity() : std::stod(lo);
          parsed.emplace_back(lo_v, std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
          throw dcs::BadTransform("bad band '" + item + "'");
        }
      }
      return dcs::WeightTransform::discretize(std::move(parsed));
    }
    if (has_clamp) return dcs::WeightTransform::clamp_max(clamp_max);
    return dcs::WeightTransform::identity();
  }

  dcs::DifferenceGraph load(json& inputs) const {
    dcs::DifferenceGraph dg;
    if (!gd_path.empty()) {
      auto loaded = load_graph(gd_path);
      inputs[gd_path] = loaded.digest;
      dg = dcs::DifferenceGraph(std::move(loaded.graph), alpha);
    } else if (!g1_path.empty() && !g2_path.empty()) {
      auto a = load_graph(g1_path);
      auto b = load_graph(g2_path);
      inputs[g1_path] = a.digest;
      inputs[g2_path] = b.digest;
      dg = dcs::build_difference(a.graph, b.graph, alpha);
    } else {
      throw dcs::Error("need either a gd file or both --g1 and --g2");
    }
    auto t = transform();
    if (t.kind != dcs::WeightTransform::Kind::Identity) dg = dcs::transform_weights(dg, t);
    if (flip) dg = dcs::flip_signs(dg);
    return dg;
  }

  json config_echo() const {
    json cfg{{"alpha", alpha}, {"flip", flip}};
    if (!discretize.empty()) cfg["discretize"] = discretize;
    if (!bands.empty()) cfg["bands"] = bands;
    if (has_clamp) cfg["clamp_max"] = clamp_max;
    return cfg;
  }
};

struct SolverOptions {
  double eps_scale = 1e-2;
  std::size_t max_inits = 0;
  bool all_inits = false;
  std::string seeds;
  std::string baseline;
  unsigned threads = 1;
  long max_shrink_iters = 100000;
  int max_sea_rounds = 500;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps", eps_scale, "gradient-gap tolerance scale (tol = eps/|S|)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-inits", max_inits, "cap on initializations (0 = no cap)");
    cmd->add_flag("--all-inits", all_inits, "seed from every vertex (no smart ordering)");
    cmd->add_option("--seeds", seeds, "comma-separated seed labels");
    cmd->add_option("--baseline", baseline, "replicator: SEA+Refine comparison baseline")
        ->check(CLI::IsMember({"replicator"}));
    cmd->add_option("--threads", threads, "parallel initializations (1 = sequential)");
    cmd->add_option("--max-shrink-iters", max_shrink_iters);
    cmd->add_option("--max-sea-rounds", max_sea_rounds);
  }

  dcs::SolverConfig config(const dcs::DifferenceGraph& dg) const {
    dcs::SolverConfig cfg;
    cfg.eps_scale = eps_scale;
    cfg.max_inits = max_inits;
    cfg.max_shrink_iters = max_shrink_iters;
    cfg.max_sea_rounds = max_sea_rounds;
    cfg.threads = threads;
    cfg.parallel_inits = threads != 1;
    if (!seeds.empty()) {
      cfg.init_policy = dcs::InitPolicy::GivenSeeds;
      std::stringstream ss(seeds);
      std::string label;
      while (std::getline(ss, label, ',')) {
        dcs::VertexId id = dg.gd().id_of(label);
        if (id < 0) throw dcs::Error("unknown seed label '" + label + "'");
        cfg.seeds.push_back(id);
      }
    } else if (all_inits) {
      cfg.init_policy = dcs::InitPolicy::AllVertices;
    }
    return cfg;
  }

  json config_echo() const {
    return json{{"eps", eps_scale},
                {"max_inits", max_inits},
                {"init_policy", !seeds.empty() ? "given-seeds" : (all_inits ? "all-vertices" : "smart-order")},
                {"baseline", baseline.empty() ? "none" : baseline},
                {"threads", threads},
                {"max_shrink_iters", max_shrink_iters},
                {"max_sea_rounds", max_sea_rounds}};
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

int run(int argc, char** argv) {
  CLI::App app{"density contrast subgraph miner"};
  app.require_subcommand(1);

  // diff -------------------------------------------------------------------
  auto* diff = app.add_subcommand("diff", "build and save a difference graph");
  std::string diff_g1, diff_g2, diff_out;
  GdOptions diff_gd;
  diff->add_option("g1", diff_g1, "first snapshot (subtracted)")->required();
  diff->add_option("g2", diff_g2, "second snapshot")->required();
  diff->add_option("-o,--output", diff_out, "output edge list (default stdout)");
  diff_gd.attach(diff, /*positional_gd=*/false, /*allow_pair=*/false);
  double diff_alpha = 1.0;
  diff->add_option("--alpha", diff_alpha, "difference scale: D = A2 - alpha*A1")
      ->check(CLI::NonNegativeNumber);

  // stats ------------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "print difference-graph statistics");
  std::string stats_path;
  stats->add_option("gd", stats_path, "difference-graph edge list")->required();

  // dcsad ------------------------------------------------------------------
  auto* dcsad = app.add_subcommand("dcsad", "greedy DCS w.r.t. average degree");
  GdOptions dcsad_gd;
  std::string dcsad_out;
  dcsad_gd.attach(dcsad, true, true);
  dcsad->add_option("-o,--output", dcsad_out, "write the run report here");

  // dcsga ------------------------------------------------------------------
  auto* dcsga = app.add_subcommand("dcsga", "DCS w.r.t. graph affinity");
  GdOptions dcsga_gd;
  SolverOptions dcsga_solver;
  std::string dcsga_out;
  dcsga_gd.attach(dcsga, true, false);
  dcsga_solver.attach(dcsga);
  dcsga->add_option("-o,--output", dcsga_out, "write the run report here");

  // oracle -----------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "exact small-instance optimum");
  GdOptions oracle_gd;
  std::string oracle_measure = "ad";
  int oracle_limit = 0;
  std::string oracle_out;
  oracle_gd.attach(oracle, true, false);
  oracle->add_option("--measure", oracle_measure, "ad | ga")
      ->check(CLI::IsMember({"ad", "ga"}));
  oracle->add_option("--limit-n", oracle_limit, "override the enumeration limit");
  oracle->add_option("-o,--output", oracle_out, "write the run report here");

  // ingest -----------------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "co-occurrence graph from documents");
  std::string ingest_docs, ingest_out, ingest_stop = "default";
  ingest->add_option("docs", ingest_docs, "one document per line")->required();
  ingest->add_option("-o,--output", ingest_out, "output edge list")->required();
  ingest->add_option("--stopwords", ingest_stop, "default | none | <file>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*diff) {
      json inputs;
      auto a = load_graph(diff_g1);
      auto b = load_graph(diff_g2);
      auto dg = dcs::build_difference(a.graph, b.graph, diff_alpha);
      auto t = diff_gd.transform();
      if (t.kind != dcs::WeightTransform::Kind::Identity) dg = dcs::transform_weights(dg, t);
      if (diff_gd.flip) dg = dcs::flip_signs(dg);
      if (diff_out.empty()) {
        dcs::save_edge_list(dg.gd(), std::cout);
        print_stats_line(std::cerr, dg.stats());
      } else {
        std::ofstream out(diff_out);
        if (!out) throw dcs::Error("cannot write '" + diff_out + "'");
        dcs::save_edge_list(dg.gd(), out);
        print_stats_line(std::cout, dg.stats());
      }
      return kExitOk;
    }

    if (*stats) {
      auto loaded = load_graph(stats_path);
      dcs::DifferenceGraph dg(std::move(loaded.graph));
      print_stats_line(std::cout, dg.stats());
      return kExitOk;
    }

    if (*dcsad) {
      Timer timer;
      json inputs;
      auto dg = dcsad_gd.load(inputs);
      auto result = dcs::dcs_greedy(dg);
      json report{{"command", command_echo(argc, argv)},
                  {"inputs", inputs},
                  {"config", dcsad_gd.config_echo()},
                  {"stats", dcs::to_json(dg.stats())},
                  {"result", dcs::subset_record(dg, result)},
                  {"wall_time_ms", timer.ms()}};
      emit_report(report, dcsad_out);
      return kExitOk;
    }

    if (*dcsga) {
      Timer timer;
      json inputs;
      auto dg = dcsga_gd.load(inputs);
      auto cfg = dcsga_solver.config(dg);
      dcs::DcsgaResult result = dcsga_solver.baseline == "replicator"
                                    ? dcs::replicator_baseline(dg, cfg)
                                    : dcs::new_sea(dg, cfg);
      if (result.guard_rejections > 0)
        std::cerr << "expansion guard rejected " << result.guard_rejections
                  << " step candidate(s)\n";
      json config = dcsga_gd.config_echo();
      config.update(dcsga_solver.config_echo());
      json report{{"command", command_echo(argc, argv)},
                  {"inputs", inputs},
                  {"config", config},
                  {"result", dcs::embedding_record(dg, result)},
                  {"wall_time_ms", timer.ms()}};
      emit_report(report, dcsga_out);
      return result.converged ? kExitOk : kExitNotConverged;
    }

    if (*oracle) {
      Timer timer;
      json inputs;
      auto dg = oracle_gd.load(inputs);
      dcs::OracleResult result;
      if (oracle_measure == "ad")
        result = oracle_limit > 0 ? dcs::oracle_dcsad(dg, oracle_limit) : dcs::oracle_dcsad(dg);
      else
        result = oracle_limit > 0 ? dcs::oracle_dcsga(dg, oracle_limit) : dcs::oracle_dcsga(dg);
      json report{{"command", command_echo(argc, argv)},
                  {"inputs", inputs},
                  {"config", json{{"measure", oracle_measure}, {"limit_n", oracle_limit}}},
                  {"result", dcs::oracle_record(dg, result, oracle_measure)},
                  {"wall_time_ms", timer.ms()}};
      emit_report(report, oracle_out);
      return kExitOk;
    }

    if (*ingest) {
      std::string bytes = read_file(ingest_docs);
      std::istringstream in(bytes);
      dcs::WeightedGraph g;
      if (ingest_stop == "default") {
        g = dcs::ingest_cooccurrence(in);
      } else if (ingest_stop == "none") {
        g = dcs::ingest_cooccurrence(in, {});
      } else {
        std::set<std::string> words;
        std::istringstream ws(read_file(ingest_stop));
        std::string w;
        while (ws >> w) words.insert(w);
        g = dcs::ingest_cooccurrence(in, words);
      }
      std::ofstream out(ingest_out);
      if (!out) throw dcs::Error("cannot write '" + ingest_out + "'");
      dcs::save_edge_list(g, out);
      std::cout << "vertices=" << g.vertex_count() << " edges=" << g.edge_count() << '\n';
      return kExitOk;
    }
  } catch (const dcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
