#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "simrank/config.hpp"
#include "simrank/dense.hpp"
#include "simrank/error.hpp"
#include "simrank/exact.hpp"
#include "simrank/factor_io.hpp"
#include "simrank/graph.hpp"
#include "simrank/lowrank.hpp"
#include "simrank/metrics.hpp"
#include "simrank/query.hpp"

namespace simrank::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  // graph input
  std::string input;
  std::string format;
  bool labels = false;
  bool one_based = false;

  SolveConfig cfg;
  std::string order = "algebraic_desc";
  bool exact_eig = false;
  std::optional<double> tol;
  std::string output;
  bool binary = false;

  // query
  std::string factor;
  std::optional<Index> vertex;
  std::optional<std::string> label;
  std::size_t top = 10;
  bool refined = false;
  std::string refine_form = "one_step";
  bool records = false;
  int digits = 6;

  // evaluate / sweep
  std::string name;
  std::optional<Index> single_rank;
  std::vector<std::string> ranks;
  std::vector<double> cs;
  std::vector<Index> oversample_list;
  bool no_baseline = false;
  bool timing = false;
};

/// Raised for flag problems found before any file is read; the caller prints
/// the subcommand usage with it.
struct FlagError : UsageError {
  using UsageError::UsageError;
};

void apply_thread_limit() {
  if (const char* env = std::getenv("SIMRANK_THREADS")) {
    char* end = nullptr;
    const long threads = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && threads > 0) omp_set_num_threads(static_cast<int>(threads));
  }
}

GraphFormat resolve_format(const Options& o) {
  if (!o.format.empty()) return parse_graph_format(o.format);
  return fs::path(o.input).extension() == ".mtx" ? GraphFormat::mtx : GraphFormat::edgelist;
}

void require_readable(const std::string& path, const char* what) {
  if (path.empty()) throw FlagError(std::string("missing ") + what);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError(std::string(what) + " not found: '" + path + "'");
}

ParsedGraph load_input(const Options& o) {
  require_readable(o.input, "input file");
  EdgeListOptions opts;
  opts.indexing = o.one_based ? Indexing::one_based : Indexing::zero_based;
  opts.labeled = o.labels;
  return load_graph(o.input, resolve_format(o), opts);
}

std::ofstream open_output(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  return out;
}

void add_graph_flags(CLI::App* sub, Options& o) {
  sub->add_option("-i,--input", o.input, "Graph file (edge list or Matrix Market)");
  sub->add_option("--format", o.format, "Input format: edgelist | mtx (default: by extension)");
  sub->add_flag("--labels", o.labels, "Edge-list vertices are string labels");
  sub->add_flag("--one-based", o.one_based, "Edge-list indices start at 1");
}

void add_solver_flags(CLI::App* sub, Options& o) {
  sub->add_option("--c", o.cfg.c, "Decay factor in (0, 1)")->capture_default_str();
  sub->add_option("--iters", o.cfg.iterations, "Iteration count")->capture_default_str();
  sub->add_option("--seed", o.cfg.seed, "Random seed")->capture_default_str();
  sub->add_option("--order", o.order, "Eigenvalue order: algebraic_desc | magnitude_desc")->capture_default_str();
  sub->add_option("--dense-limit", o.cfg.dense_limit, "Largest n allowed for dense n x n work")
      ->capture_default_str();
  sub->add_flag("--exact-eig", o.exact_eig, "Full eigendecomposition of the materialized operator");
}

// Config problems found before any I/O are reported together with the usage text.
void finish_solver_flags(Options& o, bool check_rank = true) {
  try {
    o.cfg.order = parse_eig_order(o.order);
    o.cfg.early_stop_tol = o.tol;
    SolveConfig probe = o.cfg;
    if (!check_rank) probe.rank = 1;
    probe.validate();
  } catch (const UsageError& e) {
    throw FlagError(e.what());
  }
}

SolveMode solve_mode(const Options& o) { return o.exact_eig ? SolveMode::dense_exact_eig : SolveMode::randomized; }

std::string format_seconds(double s) {
  std::ostringstream text;
  text << std::fixed << std::setprecision(3) << s;
  return text.str();
}

int cmd_compute(Options& o, std::ostream& out, std::ostream& err) {
  finish_solver_flags(o);
  if (o.output.empty()) throw FlagError("missing -o/--output");

  const ParsedGraph graph = load_input(o);
  const SparseColMatrix w = column_normalize(graph.adjacency);
  o.cfg.validate_for(w.size());

  const auto start = std::chrono::steady_clock::now();
  const LowRankFactor f = lowrank_simrank(w, o.cfg, solve_mode(o), {},
                                          [&](const std::string& msg) { err << "warning: " << msg << '\n'; });
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  save_factor(o.output, f, o.binary);
  out << "n=" << f.n << " r=" << f.rank() << " c=" << f.c << " k=" << f.iterations_done << " seed=" << f.seed
      << " secs=" << format_seconds(elapsed.count()) << '\n';
  return kOk;
}

int cmd_exact(Options& o, std::ostream& out, std::ostream&) {
  finish_solver_flags(o, false);
  if (o.output.empty()) throw FlagError("missing -o/--output");

  const ParsedGraph graph = load_input(o);
  const SparseColMatrix w = column_normalize(graph.adjacency);
  o.cfg.require_dense(w.size());

  int done = 0;
  const auto start = std::chrono::steady_clock::now();
  const DenseSymMatrix s = simrank_matrix_iter(w, o.cfg, [&](int k, const DenseSymMatrix&) { done = k; });
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  const bool binary = o.binary || fs::path(o.output).extension() == ".bin";
  std::ofstream file = open_output(o.output, binary);
  if (binary) {
    write_dense_binary(file, s);
  } else {
    write_dense_text(file, s);
  }
  if (!file.flush()) throw IoError("write failed for '" + o.output + "'");
  out << "n=" << s.size() << " c=" << o.cfg.c << " k=" << done << " secs=" << format_seconds(elapsed.count()) << '\n';
  return kOk;
}

int cmd_query(Options& o, std::ostream& out, std::ostream&) {
  if (o.vertex.has_value() == o.label.has_value()) throw FlagError("give exactly one of --vertex or --label");
  if (o.digits < 1 || o.digits > 17) throw FlagError("--digits must lie in [1, 17]");
  if (o.label && (!o.labels || o.input.empty())) throw FlagError("--label needs a labeled graph (-i <file> --labels)");
  if (o.refined && o.input.empty()) throw FlagError("--refined needs the graph (-i)");
  const RefineForm form = o.refine_form == "literal"    ? RefineForm::literal
                          : o.refine_form == "one_step" ? RefineForm::one_step
                                                        : throw FlagError("--refine-form must be one_step or literal");

  require_readable(o.factor, "factor file");
  const LowRankFactor f = load_factor(o.factor);

  std::optional<ParsedGraph> graph;
  std::optional<SparseColMatrix> w;
  if (!o.input.empty()) {
    graph = load_input(o);
    if (graph->adjacency.size() != f.n) {
      throw UsageError("factor has n = " + std::to_string(f.n) + " but the graph has " +
                       std::to_string(graph->adjacency.size()) + " vertices");
    }
    w = column_normalize(graph->adjacency);
  }

  const QueryMode mode = o.refined ? QueryMode::refined : QueryMode::factor;
  const SparseColMatrix* wp = w ? &*w : nullptr;
  QueryResult result;
  if (o.label) {
    result = top_k_by_label(f, *graph->labels, *o.label, o.top, mode, wp, form);
  } else {
    result = top_k(f, *o.vertex, o.top, mode, wp, form);
    if (graph && graph->labels) attach_labels(result, *graph->labels);
  }
  if (o.top == 0) return kOk;
  if (o.records) {
    write_query_records(out, result, o.digits);
  } else {
    write_query_table(out, result, o.digits);
  }
  return kOk;
}

int cmd_sweep(Options& o, std::ostream& out, std::ostream& err, bool single) {
  finish_solver_flags(o, false);
  if (o.ranks.empty()) {
    if (!o.single_rank) throw FlagError("give --rank or --ranks");
    o.ranks.push_back(std::to_string(*o.single_rank));
  }
  if (o.cs.empty()) o.cs.push_back(o.cfg.c);
  if (o.oversample_list.empty()) o.oversample_list.push_back(0);
  if (single && (o.ranks.size() != 1 || o.cs.size() != 1 || o.oversample_list.size() != 1)) {
    throw FlagError("evaluate runs a single point; use sweep for lists");
  }
  for (double c : o.cs) {
    if (!(c > 0.0 && c < 1.0)) throw FlagError("decay factors must lie in (0, 1)");
  }
  for (const auto& r : o.ranks) {
    if (r != "n" && (r.empty() || r.find_first_not_of("0123456789") != std::string::npos || std::stoll(r) < 1)) {
      throw FlagError("ranks must be positive integers or 'n', got '" + r + "'");
    }
  }
  for (Index p : o.oversample_list) {
    if (p < 0) throw FlagError("oversampling must be >= 0");
  }

  const ParsedGraph graph = load_input(o);
  const SparseColMatrix w = column_normalize(graph.adjacency);
  o.cfg.require_dense(w.size());

  SweepSpec spec;
  for (const auto& r : o.ranks) spec.ranks.push_back(r == "n" ? w.size() : static_cast<Index>(std::stoll(r)));
  spec.cs = o.cs;
  spec.oversampling = o.oversample_list;
  spec.mode = solve_mode(o);
  spec.baseline = !o.no_baseline;
  spec.timing = o.timing;

  const std::string name = o.name.empty() ? fs::path(o.input).stem().string() : o.name;
  const auto rows = sweep(name, graph.adjacency, w, spec, o.cfg,
                          [&](const std::string& msg) { err << "warning: " << msg << '\n'; });

  std::ofstream file;
  if (!o.output.empty()) file = open_output(o.output, false);
  std::ostream& sink = o.output.empty() ? out : file;
  write_csv_header(sink);
  for (const auto& row : rows) write_csv_row(sink, row);
  if (!sink.flush()) throw IoError("write failed for CSV output");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  apply_thread_limit();

  Options o;
  CLI::App app{"SimRank similarity scores through a low-rank factored iteration", "simrank"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 ok, 1 usage/validation, 2 I/O, 3 numeric. SIMRANK_THREADS caps threads.");

  auto* compute = app.add_subcommand("compute", "Compute a low-rank factor S ~= I + U D U^T");
  add_graph_flags(compute, o);
  add_solver_flags(compute, o);
  compute->add_option("--rank", o.cfg.rank, "Approximation rank")->required();
  compute->add_option("--oversample", o.cfg.oversampling, "Oversampling p")->capture_default_str();
  compute->add_option("-o,--output", o.output, "Factor file (.srlr = binary, otherwise text)");
  compute->add_flag("--binary", o.binary, "Write the binary factor layout");

  auto* exact = app.add_subcommand("exact", "Exact dense SimRank by the matrix iteration");
  add_graph_flags(exact, o);
  exact->add_option("--c", o.cfg.c, "Decay factor in (0, 1)")->capture_default_str();
  exact->add_option("--iters", o.cfg.iterations, "Iteration count")->capture_default_str();
  exact->add_option("--dense-limit", o.cfg.dense_limit, "Largest n allowed")->capture_default_str();
  exact->add_option("--tol", o.tol, "Stop early once the max entry change is below this");
  exact->add_option("-o,--output", o.output, "Dense matrix file (.bin = binary, otherwise text)");
  exact->add_flag("--binary", o.binary, "Write the binary dense layout");

  auto* query = app.add_subcommand("query", "Most similar vertices from a factor");
  add_graph_flags(query, o);
  query->add_option("--factor", o.factor, "Factor file written by compute");
  query->add_option("--vertex", o.vertex, "Query vertex id (0-based)");
  query->add_option("--label", o.label, "Query vertex label (needs --labels)");
  query->add_option("--top", o.top, "Number of results")->capture_default_str();
  query->add_flag("--refined", o.refined, "Score with one refinement step (needs -i)");
  query->add_option("--refine-form", o.refine_form, "one_step | literal")->capture_default_str();
  query->add_option("--digits", o.digits, "Significant digits shown")->capture_default_str();
  query->add_flag("--records", o.records, "Tab-separated rank, id, label, score lines");

  auto add_eval_flags = [&](CLI::App* sub) {
    add_graph_flags(sub, o);
    add_solver_flags(sub, o);
    sub->add_option("--rank", o.single_rank, "Approximation rank");
    sub->add_option("--ranks", o.ranks, "Ranks, comma separated; 'n' means full rank")->delimiter(',');
    sub->add_option("--cs", o.cs, "Decay factors, comma separated")->delimiter(',');
    sub->add_option("--oversample", o.oversample_list, "Oversampling values, comma separated")->delimiter(',');
    sub->add_option("--name", o.name, "Graph name for the CSV (default: input file stem)");
    sub->add_flag("--no-baseline", o.no_baseline, "Skip the best rank-r baseline");
    sub->add_flag("--timing", o.timing, "Fill the seconds column (makes output run-dependent)");
    sub->add_option("-o,--output", o.output, "CSV file (default: standard output)");
  };
  auto* evaluate = app.add_subcommand("evaluate", "Metrics of one configuration against exact SimRank (CSV)");
  add_eval_flags(evaluate);
  auto* sweep_cmd = app.add_subcommand("sweep", "Metrics over ranks x c x oversampling (CSV)");
  add_eval_flags(sweep_cmd);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == compute) return cmd_compute(o, out, err);
    if (active == exact) return cmd_exact(o, out, err);
    if (active == query) return cmd_query(o, out, err);
    return cmd_sweep(o, out, err, active == evaluate);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace simrank::cli
