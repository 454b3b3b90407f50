#pragma once

// The mwtree command-line surface. Commands write a JSON report to `out`
// and return the process exit code:
//   0 every check passed, 1 a check failed, 2 parse/flag error,
//   3 precondition failure, 4 distance matrix not invertible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "mwtree/closed_forms.hpp"
#include "mwtree/error.hpp"
#include "mwtree/graph.hpp"
#include "mwtree/instance_gen.hpp"
#include "mwtree/io.hpp"
#include "mwtree/linalg.hpp"
#include "mwtree/operators.hpp"

namespace mwtree::cli {

using json = nlohmann::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitNotInvertible = 4,
};

struct Options {
  std::string input = "-";
  std::string which;
  std::string mode = "inverted";
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  double tolerance = kDefaultRankTolerance;
  bool emit_matrices = false;
  std::string format = "json";
  // random
  Index n = 4;
  Index s = 1;
  std::string kind = "spd";
  std::size_t count = 1;
  std::string out_dir = ".";
  double condition_cap = 100.0;
  bool nontree = false;
  // deficient
  std::string edge;
};

inline std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    return "unavailable";
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

struct LoadedGraph {
  MatrixWeightedGraph graph;
  std::string digest;
};

inline LoadedGraph load_graph(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw io::ParseError("cannot open input file", path);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  return {io::parse_graph(text), "sha256:" + sha256_hex(text)};
}

inline json finite_or_null(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

inline json check_to_json(const VerificationReport& r, json details = nullptr) {
  json out = {{"name", r.name},
              {"status", std::string(to_string(r.status))},
              {"n", r.n},
              {"s", r.s}};
  if (r.status == CheckStatus::Skipped) {
    out["residual"] = nullptr;
    out["tolerance"] = nullptr;
    out["pass"] = nullptr;
    out["reason"] = r.reason;
  } else {
    out["residual"] = finite_or_null(r.residual);
    out["tolerance"] = r.tolerance;
    out["pass"] = r.passed();
  }
  if (!details.is_null()) out["details"] = std::move(details);
  return out;
}

/// Accumulates checks and results for one command invocation.
class Report {
 public:
  Report(std::string command, const Options& opts) : opts_(opts) {
    doc_ = {{"schema", std::string(io::kReportSchema)},
            {"tool", "mwtree"},
            {"version", std::string(io::kToolVersion)},
            {"command", std::move(command)},
            {"input", opts.input},
            {"checks", json::array()}};
  }

  void describe_input(const LoadedGraph& loaded) {
    doc_["input_digest"] = loaded.digest;
    doc_["n"] = loaded.graph.n;
    doc_["s"] = loaded.graph.s;
    doc_["edge_count"] = loaded.graph.edges.size();
  }

  void add(const VerificationReport& r, json details = nullptr) {
    failed_ = failed_ || r.status == CheckStatus::Fail;
    doc_["checks"].push_back(check_to_json(r, std::move(details)));
  }

  void result(const std::string& key, json value) { doc_["result"][key] = std::move(value); }

  /// Matrices always go in when `force`; otherwise only under --emit-matrices.
  void matrix(const std::string& name, const DenseMatrix& m, Index block_size,
              bool force = false) {
    if (!force && !opts_.emit_matrices) return;
    doc_["matrices"][name] = {{"rows", m.rows()},
                              {"cols", m.cols()},
                              {"block_size", block_size},
                              {"data", io::matrix_to_json(m)}};
  }

  void error(const Error& err) {
    doc_["status"] = "error";
    doc_["error"] = {{"code", std::string(to_string(err.code()))}, {"message", err.what()}};
    if (err.edge()) doc_["error"]["edge"] = *err.edge();
  }

  bool failed() const { return failed_; }

  int emit(std::ostream& out, int code) {
    if (!doc_.contains("status")) doc_["status"] = failed_ ? "fail" : "pass";
    if (opts_.format == "text") {
      render_text(out);
    } else {
      out << doc_.dump(2) << '\n';
    }
    return code;
  }

  const json& document() const { return doc_; }

 private:
  void render_text(std::ostream& out) const {
    out << "mwtree " << doc_["command"].get<std::string>() << ": "
        << doc_["status"].get<std::string>() << '\n';
    if (doc_.contains("error")) {
      out << "  error " << doc_["error"]["code"].get<std::string>() << ": "
          << doc_["error"]["message"].get<std::string>() << '\n';
    }
    for (const auto& c : doc_["checks"]) {
      out << "  " << std::left << std::setw(8) << c["status"].get<std::string>() << ' '
          << c["name"].get<std::string>();
      if (c["status"] == "SKIPPED") {
        out << "  (" << c["reason"].get<std::string>() << ")";
      } else {
        out << "  residual=" << c["residual"].dump() << " tolerance=" << c["tolerance"].dump();
      }
      out << '\n';
    }
    if (doc_.contains("result")) {
      for (const auto& item : doc_["result"].items()) {
        out << "  " << item.key() << " = " << item.value().dump() << '\n';
      }
    }
    if (doc_.contains("matrices")) {
      for (const auto& item : doc_["matrices"].items()) {
        out << "  " << item.key() << " (" << item.value()["rows"].get<Index>() << "x"
            << item.value()["cols"].get<Index>() << "):\n";
        for (const auto& row : item.value()["data"]) {
          out << "   ";
          for (const auto& x : row) out << ' ' << std::setw(12) << x.get<double>();
          out << '\n';
        }
      }
    }
  }

  const Options& opts_;
  json doc_;
  bool failed_ = false;
};

// ---------------------------------------------------------------------------
// Commands

inline int cmd_build(const Options& opts, std::istream& in, std::ostream& out) {
  Report report("build", opts);
  const auto loaded = load_graph(opts.input, in);
  report.describe_input(loaded);
  const auto& g = loaded.graph;
  try {
    if (opts.which == "D") {
      report.matrix("D", distance_matrix(g).dense(), g.s, true);
    } else if (opts.which == "L") {
      const auto mode = opts.mode == "raw" ? LaplacianMode::Raw : LaplacianMode::Inverted;
      report.matrix("L", laplacian(g, mode).dense(), g.s, true);
      report.result("laplacian_mode", opts.mode);
    } else {
      report.matrix("Q", incidence_matrix(g).dense(), g.s, true);
    }
  } catch (const Error& err) {
    report.error(err);
    return report.emit(out, kExitPrecondition);
  }
  return report.emit(out, kExitOk);
}

inline double inverse_residual(const MatrixWeightedGraph& g, const DenseMatrix& d_inv) {
  const DenseMatrix d = distance_matrix(g).dense();
  return (d * d_inv - DenseMatrix::Identity(d.rows(), d.cols())).norm();
}

inline int cmd_invert(const Options& opts, std::istream& in, std::ostream& out) {
  Report report("invert", opts);
  const auto loaded = load_graph(opts.input, in);
  report.describe_input(loaded);
  const auto& g = loaded.graph;
  try {
    const DenseMatrix d_inv = distance_inverse(g, opts.tolerance).dense();
    const double ns = static_cast<double>(g.n * g.s);
    report.add(VerificationReport::measured("inverse_residual: ||D D^-1 - I||_F",
                                            inverse_residual(g, d_inv),
                                            kIdentityToleranceFactor * ns, g.n, g.s));
    report.result("delta", delta_vector(g).entries);
    report.result("weight_sum", io::matrix_to_json(weight_sum(g)));
    report.matrix("D_inverse", d_inv, g.s);
  } catch (const Error& err) {
    report.error(err);
    return report.emit(out, err.code() == ErrorCode::NotInvertible ? kExitNotInvertible
                                                                   : kExitPrecondition);
  }
  return report.emit(out, report.failed() ? kExitCheckFailed : kExitOk);
}

/// Closed-form vs LU determinant compared as sign plus relative log-magnitude.
inline VerificationReport determinant_agreement(const MatrixWeightedGraph& g,
                                                SignedLogDet* closed_out = nullptr) {
  const auto closed = distance_log_determinant(g);
  const auto lu = log_determinant(distance_matrix(g).dense());
  if (closed_out) *closed_out = closed;
  double residual = 0.0;
  if (closed.sign != lu.sign) {
    residual = std::numeric_limits<double>::infinity();
  } else if (closed.sign != 0) {
    residual = std::abs(closed.log_abs - lu.log_abs) / std::max(1.0, std::abs(lu.log_abs));
  }
  return VerificationReport::measured("determinant_closed_form_vs_lu", residual, 1e-7, g.n,
                                      g.s);
}

inline int cmd_det(const Options& opts, std::istream& in, std::ostream& out) {
  Report report("det", opts);
  const auto loaded = load_graph(opts.input, in);
  report.describe_input(loaded);
  const auto& g = loaded.graph;
  try {
    SignedLogDet closed;
    report.add(determinant_agreement(g, &closed));
    report.result("determinant", finite_or_null(distance_determinant(g)));
    report.result("sign", closed.sign);
    report.result("log_abs_determinant", finite_or_null(closed.log_abs));
  } catch (const Error& err) {
    report.error(err);
    return report.emit(out, kExitPrecondition);
  }
  return report.emit(out, report.failed() ? kExitCheckFailed : kExitOk);
}

namespace detail {

inline bool graph_is_tree(const MatrixWeightedGraph& g) {
  return static_cast<Index>(g.edges.size()) == g.n - 1;
}

inline void suite_identities(const MatrixWeightedGraph& g, const Options& opts,
                             Report& report) {
  static const char* kNames[] = {
      "identity_i: LD = delta 1^T (x) I - 2I", "identity_ii: DL = 1 delta^T (x) I - 2I",
      "identity_iii: LDL = -2L", "identity_iv: (D^-1 - L)^-1 = D/3 + J (x) R/3",
      "identity_v: Q^T D Q = -2I"};
  std::string reason;
  if (!graph_is_tree(g)) {
    reason = "requires a tree";
  } else if (auto verdict = invertibility_check(g, opts.tolerance); !verdict.invertible) {
    reason = "distance matrix not invertible: " + verdict.reason;
  }
  if (!reason.empty()) {
    for (const char* name : kNames) report.add(VerificationReport::skipped(name, reason, g.n, g.s));
    return;
  }
  for (const auto& r : verify_identities(g, opts.tolerance)) report.add(r);
}

inline void suite_inverse(const MatrixWeightedGraph& g, const Options& opts,
                          Report& report) {
  const bool tree = graph_is_tree(g);
  if (!tree) {
    for (const char* name : {"inverse_residual: ||D D^-1 - I||_F",
                             "determinant_closed_form_vs_lu", "balaji_bapat_agreement"}) {
      report.add(VerificationReport::skipped(name, "requires a tree", g.n, g.s));
    }
    return;
  }
  report.add(determinant_agreement(g));
  const auto verdict = invertibility_check(g, opts.tolerance);
  if (!verdict.invertible) {
    const std::string reason = "distance matrix not invertible: " + verdict.reason;
    report.add(VerificationReport::skipped("inverse_residual: ||D D^-1 - I||_F", reason, g.n, g.s));
    report.add(VerificationReport::skipped("balaji_bapat_agreement", reason, g.n, g.s));
    return;
  }
  const DenseMatrix d_inv = distance_inverse(g, opts.tolerance).dense();
  const double ns = static_cast<double>(g.n * g.s);
  report.add(VerificationReport::measured("inverse_residual: ||D D^-1 - I||_F",
                                          inverse_residual(g, d_inv),
                                          kIdentityToleranceFactor * ns, g.n, g.s));
  if (all_weights_spd(g)) {
    const DenseMatrix bb = balaji_bapat_inverse(g).dense();
    report.add(VerificationReport::measured("balaji_bapat_agreement", (bb - d_inv).norm(),
                                            1e-12 * std::max(1.0, d_inv.norm()), g.n, g.s));
  } else {
    report.add(VerificationReport::skipped("balaji_bapat_agreement",
                                           "requires positive definite weights", g.n, g.s));
  }
}

inline void suite_ginverse(const MatrixWeightedGraph& g, const Options& opts, Report& report) {
  if (!all_weights_spd(g)) {
    const char* reason = "requires positive definite weights";
    report.add(VerificationReport::skipped("ginverse_invariance", reason, g.n, g.s));
    report.add(VerificationReport::skipped("ginverse_distance_recovery", reason, g.n, g.s));
    return;
  }
  report.add(ginverse_invariance_check(g, opts.seed, opts.seed + 1));
  if (graph_is_tree(g)) {
    report.add(ginverse_distance_recovery(g, opts.seed));
  } else {
    report.add(
        VerificationReport::skipped("ginverse_distance_recovery", "requires a tree", g.n, g.s));
  }
}

inline void suite_spectrum(const MatrixWeightedGraph& g, Report& report) {
  std::string reason;
  if (!graph_is_tree(g)) {
    reason = "requires a tree";
  } else if (!all_weights_spd(g)) {
    reason = "requires positive definite weights";
  }
  if (!reason.empty()) {
    report.add(VerificationReport::skipped("inertia", reason, g.n, g.s));
    report.add(VerificationReport::skipped("interlacing", reason, g.n, g.s));
    return;
  }
  const Inertia in = inertia_check(g);
  const Index expected_neg = (g.n - 1) * g.s;
  const double mismatch = static_cast<double>(std::abs(in.positive - g.s) +
                                              std::abs(in.negative - expected_neg) + in.zero);
  report.add(VerificationReport::measured("inertia", mismatch, 0.0, g.n, g.s),
             {{"positive", in.positive},
              {"negative", in.negative},
              {"zero", in.zero},
              {"expected", {g.s, expected_neg, 0}}});
  const auto lace = interlacing_check(g);
  report.add(VerificationReport::measured("interlacing", lace.max_violation, lace.slack, g.n,
                                          g.s),
             {{"mu", lace.mu.values}, {"lambda", lace.lambda.values}});
}

inline void suite_rank(const MatrixWeightedGraph& g, const Options& opts, Report& report) {
  RankProbe probe;
  try {
    probe = rank_characterization_probe(g, opts.trials, opts.seed, opts.tolerance);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::SingularWeight) throw;
    report.add(VerificationReport::skipped("rank_characterization",
                                           "requires nonsingular weights", g.n, g.s));
    return;
  }
  json details = {{"tree", probe.tree},
                  {"rank_given_weights", *probe.rank_given_weights},
                  {"full_rank", (g.n - 1) * g.s}};
  double residual = 0.0;
  if (probe.tree) {
    for (Index r : probe.trial_ranks) residual += r != probe.expected_rank ? 1.0 : 0.0;
    residual += *probe.rank_given_weights != probe.expected_rank ? 1.0 : 0.0;
    details["trials"] = probe.trial_ranks.size();
  } else {
    const auto& w = *probe.witness;
    details["witness"] = {{"edge", w.edge},
                          {"u", g.edges[w.edge].u},
                          {"v", g.edges[w.edge].v},
                          {"a", w.containing},
                          {"b", w.avoiding},
                          {"w", w.w},
                          {"scalar_rank", *probe.witness_rank}};
    residual = static_cast<double>(std::max<Index>(0, *probe.witness_rank - (g.n - 2)));
  }
  report.add(VerificationReport::measured("rank_characterization", residual, 0.0, g.n, g.s),
             std::move(details));
}

}  // namespace detail

inline int cmd_verify(const Options& opts, std::istream& in, std::ostream& out) {
  Report report("verify", opts);
  const auto loaded = load_graph(opts.input, in);
  report.describe_input(loaded);
  const auto& g = loaded.graph;
  report.result("suite", opts.suite);
  report.result("is_tree", detail::graph_is_tree(g));
  const bool all = opts.suite == "all";
  try {
    if (all || opts.suite == "identities") detail::suite_identities(g, opts, report);
    if (all) detail::suite_inverse(g, opts, report);
    if (all || opts.suite == "ginverse") detail::suite_ginverse(g, opts, report);
    if (all || opts.suite == "spectrum") detail::suite_spectrum(g, report);
    if (all || opts.suite == "rank") detail::suite_rank(g, opts, report);
  } catch (const Error& err) {
    report.error(err);
    return report.emit(out, kExitPrecondition);
  }
  return report.emit(out, report.failed() ? kExitCheckFailed : kExitOk);
}

inline WeightKind parse_kind(const std::string& kind) {
  if (kind == "spd") return WeightKind::Spd;
  if (kind == "nonsingular") return WeightKind::Nonsingular;
  if (kind == "scalar-positive") return WeightKind::ScalarPositive;
  return WeightKind::ScalarAnyNonzero;
}

inline int cmd_random(const Options& opts, std::ostream& out, std::ostream& err) {
  if (opts.n < (opts.nontree ? 3 : 2) || opts.s < 1 || opts.count < 1 ||
      !(opts.condition_cap > 1.0)) {
    err << "mwtree random: need n >= " << (opts.nontree ? 3 : 2)
        << ", s >= 1, count >= 1, cond-cap > 1\n";
    return kExitParse;
  }
  std::filesystem::create_directories(opts.out_dir);
  json files = json::array();
  for (std::size_t i = 0; i < opts.count; ++i) {
    GenConfig cfg{opts.n, opts.n, opts.s, opts.s, parse_kind(opts.kind), opts.condition_cap,
                  opts.seed + i};
    const auto g = opts.nontree ? random_connected_nontree(cfg) : random_tree(cfg);
    const std::string name = std::string(opts.nontree ? "graph" : "tree") + "_n" +
                             std::to_string(opts.n) + "_s" + std::to_string(opts.s) + "_" +
                             opts.kind + "_seed" + std::to_string(cfg.seed) + ".json";
    const auto path = std::filesystem::path(opts.out_dir) / name;
    std::ofstream file(path);
    if (!file) {
      err << "mwtree random: cannot write " << path << '\n';
      return kExitPrecondition;
    }
    file << io::graph_to_json(g).dump(2) << '\n';
    files.push_back({{"path", path.string()},
                     {"seed", cfg.seed},
                     {"n", g.n},
                     {"s", g.s},
                     {"edge_count", g.edges.size()}});
  }
  json manifest = {{"schema", std::string(io::kManifestSchema)},
                   {"tool", "mwtree"},
                   {"version", std::string(io::kToolVersion)},
                   {"kind", opts.kind},
                   {"tree", !opts.nontree},
                   {"files", std::move(files)}};
  out << manifest.dump(2) << '\n';
  return kExitOk;
}

inline int cmd_deficient(const Options& opts, std::istream& in, std::ostream& out) {
  Report report("deficient", opts);
  const auto loaded = load_graph(opts.input, in);
  report.describe_input(loaded);
  const auto& g = loaded.graph;
  try {
    std::optional<std::size_t> edge;
    if (!opts.edge.empty()) {
      Index u = 0;
      Index v = 0;
      char comma = 0;
      std::istringstream spec(opts.edge);
      if (!(spec >> u >> comma >> v) || comma != ',') {
        throw io::ParseError("expected U,V", "--edge");
      }
      for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (g.edges[k].u == std::min(u, v) && g.edges[k].v == std::max(u, v)) edge = k;
      }
      if (!edge) throw io::ParseError("no such edge", "--edge");
    }
    const auto w = rank_deficient_weighting(g, edge);
    const DenseMatrix l = scalar_laplacian(g, w.edge, w.w);
    const Index rank = numerical_rank(l, opts.tolerance);
    report.result("edge", {{"id", w.edge}, {"u", g.edges[w.edge].u}, {"v", g.edges[w.edge].v}});
    report.result("a", w.containing);
    report.result("b", w.avoiding);
    report.result("w", w.w);
    report.result("rank", rank);
    report.result("full_rank", g.n - 1);
    report.add(VerificationReport::measured(
        "scalar_rank_below_n_minus_1",
        static_cast<double>(std::max<Index>(0, rank - (g.n - 2))), 0.0, g.n, g.s));
    report.matrix("L_scalar", l, 1);
  } catch (const Error& err) {
    report.error(err);
    return report.emit(out, kExitPrecondition);
  }
  return report.emit(out, report.failed() ? kExitCheckFailed : kExitOk);
}

// ---------------------------------------------------------------------------
// Dispatch

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  Options opts;
  CLI::App app{"Distance matrices, Laplacians and closed forms for matrix-weighted trees",
               "mwtree"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(io::kToolVersion));
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tolerance", opts.tolerance,
                 "Relative singular-value cutoff for rank and invertibility decisions")
      ->check(CLI::PositiveNumber);
  app.add_flag("--emit-matrices", opts.emit_matrices, "Include computed matrices in reports");
  app.add_option("--seed", opts.seed, "Seed for g-inverse draws, reweightings and generators");
  app.add_option("--trials", opts.trials, "Random reweightings for the rank probe");

  auto* build = app.add_subcommand("build", "Emit D, L or Q for a graph file");
  build->add_option("input", opts.input, "Graph file, or - for stdin");
  build->add_option("--which", opts.which, "Matrix to build")
      ->required()
      ->check(CLI::IsMember({"D", "L", "Q"}));
  build->add_option("--mode", opts.mode, "Laplacian weights: inverted or raw")
      ->check(CLI::IsMember({"inverted", "raw"}));

  auto* invert = app.add_subcommand("invert", "Closed-form inverse of the distance matrix");
  invert->add_option("input", opts.input, "Graph file, or - for stdin");

  auto* det = app.add_subcommand("det", "Closed-form determinant of the distance matrix");
  det->add_option("input", opts.input, "Graph file, or - for stdin");

  auto* verify = app.add_subcommand("verify", "Run verification suites on a graph file");
  verify->add_option("input", opts.input, "Graph file, or - for stdin");
  verify->add_option("--suite", opts.suite, "Suite to run")
      ->check(CLI::IsMember({"all", "identities", "ginverse", "spectrum", "rank"}));

  auto* random = app.add_subcommand("random", "Write seeded random graph files");
  random->add_option("--n", opts.n, "Vertex count");
  random->add_option("--s", opts.s, "Block size");
  random->add_option("--kind", opts.kind, "Weight kind")
      ->check(CLI::IsMember({"spd", "nonsingular", "scalar-positive", "scalar-any"}));
  random->add_option("--count", opts.count, "Number of files");
  random->add_option("--out", opts.out_dir, "Output directory");
  random->add_option("--cond-cap", opts.condition_cap, "Condition number cap for weights");
  random->add_flag("--nontree", opts.nontree, "Generate connected non-trees instead of trees");

  auto* deficient =
      app.add_subcommand("deficient", "Rank-collapsing scalar weighting for a non-tree");
  deficient->add_option("input", opts.input, "Graph file, or - for stdin");
  deficient->add_option("--edge", opts.edge, "Cycle edge to reweight, as U,V");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << io::kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mwtree: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (build->parsed()) return cmd_build(opts, in, out);
    if (invert->parsed()) return cmd_invert(opts, in, out);
    if (det->parsed()) return cmd_det(opts, in, out);
    if (verify->parsed()) return cmd_verify(opts, in, out);
    if (random->parsed()) return cmd_random(opts, out, err);
    if (deficient->parsed()) return cmd_deficient(opts, in, out);
  } catch (const io::ParseError& e) {
    err << "mwtree: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "mwtree: " << e.what() << '\n';
    return e.code() == ErrorCode::NotInvertible ? kExitNotInvertible : kExitPrecondition;
  } catch (const std::exception& e) {
    err << "mwtree: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitParse;
}

inline int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), in, out, err);
}

}  // namespace mwtree::cli
