#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twreach/bench.hpp"
#include "twreach/errors.hpp"
#include "twreach/ktree.hpp"
#include "twreach/reach.hpp"
#include "twreach/recursive_decomposition.hpp"
#include "twreach/separator.hpp"
#include "twreach/sequences.hpp"

using namespace twreach;

namespace {

constexpr int kOk = 0;
constexpr int kUnreachable = 1;
constexpr int kInputError = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

DiGraph load_graph(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_graph(in);
}

TreeDecomp load_td(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_td(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

VertexSet parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("bad vertex '" + item + "' in list");
    }
  }
  return VertexSet(out);
}

std::vector<std::pair<Vertex, int>> parse_grid(const std::string& text) {
  std::vector<std::pair<Vertex, int>> grid;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      grid.emplace_back(std::stoi(item.substr(0, x)), std::stoi(item.substr(x + 1)));
    } catch (const std::logic_error&) {
      throw InputError("bad grid entry '" + item + "', expected <n>x<k>");
    }
  }
  if (grid.empty()) throw InputError("empty grid");
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability on graphs of bounded treewidth in small working space"};
  app.require_subcommand(1);

  std::string graph_path, td_path;
  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_path, "Directed graph file (p dgr format)")->required();
    cmd->add_option("--td", td_path, "Tree decomposition file (.td)")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check the three decomposition properties");
  add_inputs(validate);

  auto* separator = app.add_subcommand("separator", "First bag that is a balanced separator of a vertex set");
  add_inputs(separator);
  std::string set_text;
  separator->add_option("--set", set_text, "Comma-separated target vertices (default: all)");

  auto* balance = app.add_subcommand("balance", "Build the balanced binary decomposition");
  add_inputs(balance);
  std::string balance_out;
  balance->add_option("--out", balance_out, "Write the balanced .td here (default: stdout)");

  auto* reach_cmd = app.add_subcommand("reach", "Decide whether target is reachable from source");
  add_inputs(reach_cmd);
  Vertex source = 0, target = 0;
  std::string engine = "paper";
  bool meter_flag = false, early = false;
  reach_cmd->add_option("--source", source)->required();
  reach_cmd->add_option("--target", target)->required();
  reach_cmd->add_option("--engine", engine, "paper (metered marking loop), composed, or bfs")
      ->check(CLI::IsMember({"paper", "composed", "bfs"}));
  reach_cmd->add_flag("--meter", meter_flag, "Print the metering report");
  reach_cmd->add_flag("--early-exit", early, "Stop the marking loop once the target is marked");

  auto* useq = app.add_subcommand("useq", "Print the universal sequence of order s");
  int s = 0;
  useq->add_option("--s", s)->required()->check(CLI::Range(0, 30));

  auto* lseq = app.add_subcommand("lseq", "Print one element of a leaf sequence of a rooted binary .td");
  std::string lseq_td;
  std::uint64_t lseq_d = 1, lseq_r = 1;
  NodeId lseq_node = kNoNode;
  lseq->add_option("--td", lseq_td)->required();
  lseq->add_option("--d", lseq_d, "Power of two")->required();
  lseq->add_option("--r", lseq_r, "1-based index")->required();
  lseq->add_option("--node", lseq_node, "Start node (default: root)");

  auto* gen = app.add_subcommand("gen-ktree", "Generate a random oriented k-tree and its decomposition");
  KTreeSpec spec;
  std::string gen_graph_out, gen_td_out;
  gen->add_option("--n", spec.n)->required();
  gen->add_option("--k", spec.k)->required();
  gen->add_option("--seed", spec.seed)->required();
  gen->add_option("--p", spec.arc_probability, "Probability of each arc direction")->capture_default_str();
  gen->add_option("--graph-out", gen_graph_out, "Graph file (default: stdout)");
  gen->add_option("--td-out", gen_td_out, "Decomposition file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Full metered runs over an (n, k) grid, CSV output");
  BenchConfig config;
  std::string grid_text = "16x2,32x2,64x2", bench_out;
  bench->add_option("--grid", grid_text, "Comma-separated <n>x<k> entries")->capture_default_str();
  bench->add_option("--reps", config.repetitions)->capture_default_str();
  bench->add_option("--seed", config.seed)->capture_default_str();
  bench->add_option("--p", config.arc_probability)->capture_default_str();
  bench->add_option("--threads", config.threads, "Worker threads (0: all cores)")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV file, appended to (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) {
      DiGraph g = load_graph(graph_path);
      TreeDecomp t = load_td(td_path);
      ValidityReport r = validate_td(g, t);
      std::cout << "covers_vertices " << r.covers_vertices << "\ncovers_edges " << r.covers_edges
                << "\nconnected_occurrences " << r.connected_occurrences << "\n";
      if (!r.valid()) {
        std::cout << "INVALID: " << *r.witness << "\n";
        return kInputError;
      }
      std::cout << "VALID width " << width(t) << " nodes " << t.size() << "\n";
      return kOk;
    }
    if (*separator) {
      DiGraph g = load_graph(graph_path);
      TreeDecomp t = load_td(td_path);
      ValidityReport r = validate_td(g, t);
      if (!r.valid()) throw ValidationError(*r.witness);
      VertexSet u = set_text.empty() ? VertexSet::interval(1, g.vertex_count()) : parse_vertex_list(set_text);
      for (Vertex x : u) {
        if (!g.contains(x)) throw InputError("vertex " + std::to_string(x) + " is out of range");
      }
      SeparatorResult res = sep(g, t, u);
      std::cout << "bag_node " << res.bag_node << "\nseparator " << to_string(res.separator) << "\ntarget_size "
                << res.target_size << "\n";
      return kOk;
    }
    if (*balance) {
      DiGraph g = load_graph(graph_path);
      TreeDecomp t = load_td(td_path);
      BalancedTD b = build_balanced(g, t);
      std::string text = td_to_text(b.decomposition());
      std::ostream& report = balance_out.empty() ? std::cerr : std::cout;
      if (balance_out.empty()) {
        std::cout << text;
      } else {
        write_file(balance_out, text);
      }
      report << "width " << width(b.decomposition()) << "\ndepth " << b.depth() << "\nnodes " << b.size() << "\n";
      return kOk;
    }
    if (*reach_cmd) {
      DiGraph g = load_graph(graph_path);
      TreeDecomp t = load_td(td_path);
      if (!g.contains(source) || !g.contains(target)) throw InputError("source or target out of range");
      bool reachable;
      if (engine == "bfs") {
        ValidityReport r = validate_td(g, t);
        if (!r.valid()) throw ValidationError(*r.witness);
        reachable = bfs_reachable(g, source, target);
        if (meter_flag) std::cerr << "no metering for the bfs engine\n";
      } else {
        ReachOptions opts;
        opts.engine = engine == "composed" ? ReachOptions::Engine::Composed : ReachOptions::Engine::Loop;
        opts.stop_when_target_marked = early;
        ReachReport rep = reach(g, t, source, target, opts);
        reachable = rep.reachable;
        std::cout << (reachable ? "REACHABLE" : "UNREACHABLE") << "\n";
        if (meter_flag) {
          std::cout << "peak_bits " << rep.stats.peak_bits << "\niterations " << rep.stats.iterations
                    << "\nwidth_balanced " << rep.width_balanced << "\ndepth_balanced " << rep.depth_balanced
                    << "\nn " << rep.n << "\nw_input " << rep.width_input << "\n";
        }
        return reachable ? kOk : kUnreachable;
      }
      std::cout << (reachable ? "REACHABLE" : "UNREACHABLE") << "\n";
      return reachable ? kOk : kUnreachable;
    }
    if (*useq) {
      const std::uint64_t len = useq_length(s);
      for (std::uint64_t k = 1; k <= len; ++k) std::cout << useq_element(s, k) << (k == len ? '\n' : ' ');
      return kOk;
    }
    if (*lseq) {
      TreeDecomp t = load_td(lseq_td);
      if (!t.rooted()) throw InputError("the decomposition has no 'c root' line");
      BalancedTD b(std::move(t));
      std::cout << lseq_element(b, lseq_node == kNoNode ? b.root() : lseq_node, lseq_d, lseq_r) << "\n";
      return kOk;
    }
    if (*gen) {
      KTreeInstance inst = gen_ktree(spec);
      if (gen_graph_out.empty()) {
        std::cout << graph_to_text(inst.graph);
      } else {
        write_file(gen_graph_out, graph_to_text(inst.graph));
      }
      if (gen_td_out.empty()) {
        std::cout << td_to_text(inst.decomposition);
      } else {
        write_file(gen_td_out, td_to_text(inst.decomposition));
      }
      return kOk;
    }
    if (*bench) {
      config.grid = parse_grid(grid_text);
      std::vector<BenchRecord> records = run_bench(config);
      if (bench_out.empty()) {
        write_bench_csv(std::cout, config, records);
      } else {
        std::ofstream out(bench_out, std::ios::app);
        if (!out) throw InputError("cannot write '" + bench_out + "'");
        write_bench_csv(out, config, records);
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
