// Command-line front end: prediction, weight planning, codebook generation,
// encoding, screening, and simulation.
//
// Exit codes: 0 success, 1 statistical check failure, 2 usage error,
// 3 file-format error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sic/sic.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_f(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Probabilities that may be extremely small: fixed point unless the value
// would lose all digits.
std::string fmt_p(double v) {
  if (v != 0.0 && std::abs(v) < 1e-4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
  }
  return fmt_f(v);
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << " = " << value << "\n";
}

void print_report(const sic::DesignReport& rep) {
  print_kv("scheme", rep.scheme);
  print_kv("n", std::to_string(rep.n));
  if (rep.r) print_kv("r", std::to_string(*rep.r));
  if (rep.s) print_kv("s", std::to_string(*rep.s));
  if (rep.q) print_kv("q", fmt_f(*rep.q));
  if (rep.w) print_kv("w", std::to_string(*rep.w));
  if (rep.ln_theta) print_kv("ln_theta", fmt_f(*rep.ln_theta));
  if (rep.theta) print_kv("theta", fmt_p(*rep.theta));
  if (rep.theta)
    print_kv("theta_is_approximation",
             rep.theta_is_approximation ? "yes" : "no");
  print_kv("target_mean", fmt_f(rep.target_mean));
  print_kv("target_variance", fmt_f(rep.target_variance));
  if (rep.required_n) print_kv("required_n", std::to_string(*rep.required_n));
  if (rep.adjusted_n) print_kv("adjusted_n", std::to_string(*rep.adjusted_n));
}

void print_comparisons(const std::vector<sic::Comparison>& comparisons) {
  if (comparisons.empty()) {
    std::cout << "# no closed-form predictions for this configuration\n";
    return;
  }
  std::printf("%-22s %16s %16s %10s  %s\n", "comparison", "predicted",
              "observed", "z", "note");
  for (const auto& c : comparisons)
    std::printf("%-22s %16.8f %16.8f %10.3f  %s\n", c.name.c_str(),
                c.predicted, c.observed, c.z,
                c.approximate ? "approximate" : "exact");
}

std::vector<double> read_reals_file(const std::string& path,
                                    const std::string& what) {
  std::ifstream in(path);
  if (!in) throw sic::io::FormatError(what + ": cannot open " + path);
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(line, &used);
      if (used != line.size()) throw std::invalid_argument(line);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError(what + " line " + std::to_string(line_no) +
                       ": malformed real value");
    }
  }
  if (out.empty()) throw UsageError(what + ": no values in " + path);
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode,
                      const std::string& what) {
  std::ifstream in(path, mode);
  if (!in) throw sic::io::FormatError(what + ": cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode,
                       const std::string& what) {
  std::ofstream out(path, mode);
  if (!out) throw UsageError(what + ": cannot write " + path);
  return out;
}

// --- predict ------------------------------------------------------------------

struct PredictArgs {
  std::string scheme;
  std::uint32_t n = 0, r = 0, s = 0, w = 0;
  double q = -1;
  bool optimal_q = false;
  bool required_n_mode = false;
  std::uint32_t s_min = 0;
  double theta_max = -1;
};

int cmd_predict(const PredictArgs& a) {
  if (a.required_n_mode) {
    if (a.r == 0) throw UsageError("--required-n needs -r");
    if (a.s_min == 0) throw UsageError("--required-n needs --s-min");
    if (!(a.theta_max > 0 && a.theta_max < 1))
      throw UsageError("--required-n needs --theta-max in (0, 1)");
    print_report(sic::report_required_length(a.r, a.s_min, a.theta_max));
    return 0;
  }
  if (a.scheme.empty())
    throw UsageError("predict needs --scheme binomial|fixed (or --required-n)");
  if (a.n == 0) throw UsageError("predict needs -n");
  if (a.r == 0) throw UsageError("predict needs -r");
  if (a.scheme == "binomial") {
    if (a.w != 0) throw UsageError("-w does not apply to --scheme binomial");
    if (a.optimal_q == (a.q >= 0))
      throw UsageError(
          "--scheme binomial needs exactly one of -q or --optimal-q");
    const double q = a.optimal_q ? sic::optimal_q_binomial(a.r, a.s) : a.q;
    if (!(q > 0 && q < 1)) throw UsageError("-q must be in (0, 1)");
    print_report(sic::report_binomial(a.n, a.r, a.s, q));
    return 0;
  }
  if (a.scheme == "fixed") {
    if (a.q >= 0 || a.optimal_q)
      throw UsageError("-q/--optimal-q do not apply to --scheme fixed");
    if (a.w == 0) throw UsageError("--scheme fixed needs -w");
    print_report(sic::report_fixed_weight(a.n, a.r, a.s, a.w));
    return 0;
  }
  throw UsageError("--scheme must be binomial or fixed");
}

// --- weights ------------------------------------------------------------------

int cmd_weights(const std::string& input, std::uint32_t n,
                const std::string& output, std::uint64_t seed) {
  const auto probs = read_reals_file(input, "frequency file");
  for (std::size_t j = 0; j < probs.size(); ++j)
    if (!(probs[j] >= 0.0 && probs[j] < 1.0))
      throw UsageError("frequency file line " + std::to_string(j + 1) +
                       ": p must be in [0, 1)");
  const auto plan = sic::optimal_weights_independent(probs, n);

  print_kv("bits", std::to_string(plan.weights.size()));
  print_kv("n", std::to_string(plan.n));
  print_kv("max_p", fmt_f(plan.max_p));
  print_kv("sum_odds", fmt_f(plan.sum_odds));
  print_kv("lambda_minus_2", fmt_f(plan.lambda_diag));
  std::uint32_t wmin = plan.n, wmax = 0;
  for (auto w : plan.weights) {
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  print_kv("weight_min", std::to_string(wmin));
  print_kv("weight_max", std::to_string(wmax));
  for (const auto& warning : plan.warnings) print_kv("warning", warning);

  if (!output.empty()) {
    auto out = open_out(output, std::ios::out, "weights");
    sic::io::write_plan(out, {plan.n, seed, plan.weights});
    print_kv("output", output);
  }
  return 0;
}

// --- gencode ------------------------------------------------------------------

struct GencodeArgs {
  std::uint32_t n = 0, N = 0, w = 0;
  double q = -1;
  std::string scheme;
  std::string weights_file;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string output;
};

sic::Codebook make_codebook(const GencodeArgs& a) {
  if (!a.seed_set) throw UsageError("gencode needs an explicit --seed");
  if (!a.weights_file.empty()) {
    if (!a.scheme.empty() || a.n != 0 || a.N != 0 || a.w != 0 || a.q >= 0)
      throw UsageError(
          "--weights-file replaces --scheme/-n/-N/-w/-q (plan carries them)");
    auto in = open_in(a.weights_file, std::ios::in, "weight plan");
    const auto plan = sic::io::read_plan(in);
    std::vector<sic::CodeSpec> specs;
    specs.reserve(plan.weights.size());
    for (auto w : plan.weights)
      specs.push_back(sic::CodeSpec::fixed_weight(plan.n, w));
    return sic::build_codebook(specs, a.seed);
  }
  if (a.n == 0) throw UsageError("gencode needs -n");
  if (a.N == 0) throw UsageError("gencode needs -N");
  if (a.scheme == "fixed") {
    if (a.q >= 0) throw UsageError("-q does not apply to --scheme fixed");
    return sic::build_codebook(a.N, sic::CodeSpec::fixed_weight(a.n, a.w),
                               a.seed);
  }
  if (a.scheme == "binomial") {
    if (a.w != 0) throw UsageError("-w does not apply to --scheme binomial");
    if (!(a.q > 0 && a.q < 1))
      throw UsageError("--scheme binomial needs -q in (0, 1)");
    return sic::build_codebook(a.N, sic::CodeSpec::binomial(a.n, a.q), a.seed);
  }
  throw UsageError("gencode needs --scheme binomial|fixed or --weights-file");
}

int cmd_gencode(const GencodeArgs& a) {
  if (a.output.empty()) throw UsageError("gencode needs --output");
  const auto book = make_codebook(a);
  auto out = open_out(a.output, std::ios::binary, "gencode");
  sic::io::write_codebook(out, book);
  print_kv("n", std::to_string(book.n));
  print_kv("N", std::to_string(book.attribute_count()));
  print_kv("seed", std::to_string(book.seed));
  print_kv("output", a.output);
  return 0;
}

// --- encode -------------------------------------------------------------------

int cmd_encode(const std::string& codebook_path, const std::string& records_path,
               const std::string& output) {
  if (output.empty()) throw UsageError("encode needs --output");
  auto book_in = open_in(codebook_path, std::ios::binary, "codebook");
  const auto book = sic::io::read_codebook(book_in);
  auto rec_in = open_in(records_path, std::ios::in, "record file");
  const auto records = sic::io::read_records(rec_in);
  if (records.N != book.attribute_count())
    throw UsageError("record file N=" + std::to_string(records.N) +
                     " does not match codebook N=" +
                     std::to_string(book.attribute_count()));

  std::vector<sic::BitPattern> sigs;
  sigs.reserve(records.records.size());
  for (const auto& rec : records.records) sigs.push_back(book.encode(rec));

  auto out = open_out(output, std::ios::binary, "encode");
  sic::io::write_signatures(out, book.n, sigs);
  print_kv("records", std::to_string(sigs.size()));
  print_kv("n", std::to_string(book.n));
  print_kv("output", output);
  return 0;
}

// --- screen -------------------------------------------------------------------

sic::BitPattern parse_query_line(const std::string& line, std::uint32_t N) {
  sic::BitPattern q(N);
  std::istringstream fields(line);
  long prev = -1, pos = 0;
  while (fields >> pos) {
    if (pos < 0 || pos >= static_cast<long>(N))
      throw UsageError("query position " + std::to_string(pos) +
                       " out of range for N=" + std::to_string(N));
    if (pos <= prev)
      throw UsageError("query positions must be strictly ascending");
    q.set(static_cast<std::uint32_t>(pos));
    prev = pos;
  }
  if (!fields.eof()) throw UsageError("query: malformed position list");
  return q;
}

int cmd_screen(const std::string& signatures_path,
               const std::string& codebook_path, const std::string& query) {
  auto book_in = open_in(codebook_path, std::ios::binary, "codebook");
  const auto book = sic::io::read_codebook(book_in);
  auto sig_in = open_in(signatures_path, std::ios::binary, "signature file");
  const auto sigs = sic::io::read_signatures(sig_in);
  if (sigs.n != book.n)
    throw UsageError("signature file n=" + std::to_string(sigs.n) +
                     " does not match codebook n=" + std::to_string(book.n));

  const auto query_src = parse_query_line(query, book.attribute_count());
  const auto query_sig = book.encode(query_src);

  std::vector<std::size_t> hits;
  std::vector<double> masses(static_cast<std::size_t>(book.n) + 1, 0.0);
  for (std::size_t i = 0; i < sigs.signatures.size(); ++i) {
    masses[sigs.signatures[i].weight()] += 1.0;
    if (query_sig.covered_by(sigs.signatures[i])) hits.push_back(i);
  }
  const std::size_t count = sigs.signatures.size();
  double expected = static_cast<double>(count);
  if (count > 0) {
    for (auto& m : masses) m /= static_cast<double>(count);
    expected = sic::expected_candidates(book.n, masses, query_sig.weight(),
                                        count);
  }

  print_kv("n", std::to_string(book.n));
  print_kv("N", std::to_string(book.attribute_count()));
  print_kv("records", std::to_string(count));
  print_kv("query_source_weight", std::to_string(query_src.weight()));
  print_kv("query_signature_weight", std::to_string(query_sig.weight()));
  print_kv("candidates", std::to_string(hits.size()));
  print_kv("expected_candidates", fmt_f(expected));
  for (auto i : hits) std::cout << "match " << i << "\n";
  return 0;
}

// --- simulate -----------------------------------------------------------------

struct SimulateArgs {
  std::string experiment;
  std::uint32_t n = 0, N = 0, w = 0;
  double q = -1;
  std::string scheme;
  std::string weights_file;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t trials = 0;
  std::uint32_t source_fixed_r = 0;
  std::string source_probs_file;
  std::string source_hist_file;
  std::uint32_t query_fixed_s = 0;
  bool fixed_codebook = false;
  std::vector<std::uint32_t> masks;
  bool compare = false;
};

std::vector<sic::CodeSpec> simulate_specs(const SimulateArgs& a,
                                          std::uint32_t N) {
  if (!a.weights_file.empty()) {
    if (!a.scheme.empty() || a.n != 0 || a.w != 0 || a.q >= 0)
      throw UsageError(
          "--weights-file replaces --scheme/-n/-w/-q (plan carries them)");
    auto in = open_in(a.weights_file, std::ios::in, "weight plan");
    const auto plan = sic::io::read_plan(in);
    if (plan.weights.size() != N)
      throw UsageError("weight plan has " +
                       std::to_string(plan.weights.size()) +
                       " weights but the source model has N=" +
                       std::to_string(N));
    std::vector<sic::CodeSpec> specs;
    specs.reserve(N);
    for (auto w : plan.weights)
      specs.push_back(sic::CodeSpec::fixed_weight(plan.n, w));
    return specs;
  }
  if (a.n == 0) throw UsageError("simulate needs -n (or --weights-file)");
  if (a.scheme == "fixed")
    return std::vector<sic::CodeSpec>(N, sic::CodeSpec::fixed_weight(a.n, a.w));
  if (a.scheme == "binomial") {
    if (!(a.q > 0 && a.q < 1))
      throw UsageError("--scheme binomial needs -q in (0, 1)");
    return std::vector<sic::CodeSpec>(N, sic::CodeSpec::binomial(a.n, a.q));
  }
  throw UsageError("simulate needs --scheme binomial|fixed or --weights-file");
}

sic::SourceModel simulate_source(const SimulateArgs& a) {
  const int given = (a.source_fixed_r != 0) + !a.source_probs_file.empty() +
                    !a.source_hist_file.empty();
  if (given != 1)
    throw UsageError(
        "simulate needs exactly one of --source-fixed-r, --source-probs, "
        "--source-hist");
  if (a.source_fixed_r != 0) {
    if (a.N == 0) throw UsageError("simulate needs -N with --source-fixed-r");
    return sic::SourceModel::fixed_weight(a.N, a.source_fixed_r);
  }
  if (!a.source_probs_file.empty()) {
    const auto p = read_reals_file(a.source_probs_file, "source probabilities");
    if (a.N != 0 && a.N != p.size())
      throw UsageError("-N disagrees with --source-probs line count");
    return sic::SourceModel::independent_bits(p);
  }
  const auto h = read_reals_file(a.source_hist_file, "source histogram");
  if (a.N != 0 && a.N != h.size() - 1)
    throw UsageError("-N disagrees with --source-hist entry count minus 1");
  return sic::SourceModel::empirical(
      static_cast<std::uint32_t>(h.size() - 1), h);
}

int cmd_simulate(const SimulateArgs& a) {
  if (!a.seed_set) throw UsageError("simulate needs an explicit --seed");
  if (a.trials == 0) throw UsageError("simulate needs --trials >= 1");
  if (a.experiment != "target" && a.experiment != "falsedrop")
    throw UsageError("--experiment must be target or falsedrop");

  const auto source = simulate_source(a);
  const auto specs = simulate_specs(a, source.size());
  sic::SimConfig cfg{a.trials, a.seed, source, specs, !a.fixed_codebook,
                     a.masks};

  sic::SimResult res;
  if (a.experiment == "target") {
    if (a.query_fixed_s != 0)
      throw UsageError("--query-fixed-s applies only to falsedrop");
    res = sic::run_target_experiment(cfg);
  } else {
    if (!a.masks.empty())
      throw UsageError("--masks applies only to the target experiment");
    if (a.query_fixed_s == 0)
      throw UsageError("falsedrop needs --query-fixed-s");
    const auto query =
        sic::SourceModel::fixed_weight(source.size(), a.query_fixed_s);
    res = sic::run_false_drop_experiment(cfg, query);
  }

  print_kv("experiment", a.experiment);
  print_kv("trials", std::to_string(res.trials));
  print_kv("seed", std::to_string(a.seed));
  print_kv("codebook_mode", a.fixed_codebook ? "fixed" : "regenerate");
  print_kv("mean_weight", fmt_f(res.mean_weight));
  print_kv("variance_weight", fmt_f(res.variance_weight));
  print_kv("empirical_g1", fmt_f(res.empirical_g1));
  print_kv("se_g1", fmt_p(res.se_g1));
  if (a.experiment == "falsedrop") {
    print_kv("covers_all_pairs", std::to_string(res.covers_all));
    print_kv("theta_all_pairs", fmt_p(res.empirical_theta));
    print_kv("se_theta", fmt_p(res.se_theta));
    print_kv("source_matches", std::to_string(res.source_matches));
    print_kv("theta_nonmatching", fmt_p(res.theta_nonmatch));
    print_kv("disjoint_pairs", std::to_string(res.disjoint_pairs));
    print_kv("theta_disjoint", fmt_p(res.theta_disjoint));
    print_kv("theta_conditional", fmt_p(res.rb_theta));
    print_kv("ln_theta_conditional", fmt_f(res.rb_ln_theta));
    print_kv("se_ln_theta_conditional", fmt_p(res.rb_se_ln));
  }

  if (a.compare) {
    print_comparisons(res.comparisons);
    if (!res.passed(4.0)) {
      std::cerr << "statistical check failed: |z| > 4 on an exact prediction\n";
      return 1;
    }
    print_kv("checks", "passed");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Superimposed-coding signature toolkit: design, generate, encode, "
      "screen, simulate"};
  app.require_subcommand(1);

  // predict
  PredictArgs pa;
  auto* predict = app.add_subcommand(
      "predict", "False-drop and target statistics from closed forms");
  predict->add_option("--scheme", pa.scheme, "binomial or fixed");
  predict->add_option("-n,--length", pa.n, "signature length");
  predict->add_option("-r,--record-weight", pa.r, "record source weight");
  predict->add_option("-s,--query-weight", pa.s, "query source weight");
  predict->add_option("-q,--zero-prob", pa.q,
                      "per-bit zero probability (binomial)");
  predict->add_flag("--optimal-q", pa.optimal_q,
                    "use the minimizing q for (r, s)");
  predict->add_option("-w,--word-weight", pa.w, "code word weight (fixed)");
  predict->add_flag("--required-n", pa.required_n_mode,
                    "compute the length needed for --theta-max at --s-min");
  predict->add_option("--s-min", pa.s_min, "smallest query weight served");
  predict->add_option("--theta-max", pa.theta_max,
                      "largest acceptable false-drop proportion");

  // weights
  std::string w_input, w_output;
  std::uint32_t w_n = 0;
  std::uint64_t w_seed = 0;
  auto* weights = app.add_subcommand(
      "weights", "Per-bit optimal word weights for independent bit frequencies");
  weights->add_option("--input", w_input, "file with one p_j per line")
      ->required();
  weights->add_option("-n,--length", w_n, "signature length")->required();
  weights->add_option("--output", w_output, "weight plan file to write");
  weights->add_option("--seed", w_seed,
                      "seed recorded in the plan header (metadata)");

  // gencode
  GencodeArgs ga;
  auto* gencode =
      app.add_subcommand("gencode", "Generate a codebook file from a seed");
  gencode->add_option("-n,--length", ga.n, "signature length");
  gencode->add_option("-N,--attributes", ga.N, "number of source bits");
  gencode->add_option("--scheme", ga.scheme, "binomial or fixed");
  gencode->add_option("-w,--word-weight", ga.w, "code word weight (fixed)");
  gencode->add_option("-q,--zero-prob", ga.q,
                      "per-bit zero probability (binomial)");
  gencode->add_option("--weights-file", ga.weights_file,
                      "per-bit weight plan (from `weights`)");
  gencode->add_option("--seed", ga.seed, "codebook seed")
      ->each([&ga](const std::string&) { ga.seed_set = true; });
  gencode->add_option("--output", ga.output, "codebook file to write");

  // encode
  std::string e_codebook, e_records, e_output;
  auto* encode = app.add_subcommand(
      "encode", "Encode a record file into a signature file");
  encode->add_option("--codebook", e_codebook, "codebook file")->required();
  encode->add_option("--records", e_records, "record file")->required();
  encode->add_option("--output", e_output, "signature file to write");

  // screen
  std::string s_signatures, s_codebook, s_query;
  auto* screen = app.add_subcommand(
      "screen", "List records whose signatures cover an encoded query");
  screen->add_option("--signatures", s_signatures, "signature file")
      ->required();
  screen->add_option("--codebook", s_codebook, "codebook file")->required();
  screen->add_option("--query", s_query,
                     "query record line (ascending positions)")
      ->required();

  // simulate
  SimulateArgs sa;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo experiments with predicted-vs-observed checks");
  simulate->add_option("--experiment", sa.experiment, "target or falsedrop")
      ->required();
  simulate->add_option("-n,--length", sa.n, "signature length");
  simulate->add_option("-N,--attributes", sa.N, "number of source bits");
  simulate->add_option("--scheme", sa.scheme, "binomial or fixed");
  simulate->add_option("-w,--word-weight", sa.w, "code word weight (fixed)");
  simulate->add_option("-q,--zero-prob", sa.q,
                       "per-bit zero probability (binomial)");
  simulate->add_option("--weights-file", sa.weights_file,
                       "per-bit weight plan (from `weights`)");
  simulate->add_option("--seed", sa.seed, "experiment seed")
      ->each([&sa](const std::string&) { sa.seed_set = true; });
  simulate->add_option("--trials", sa.trials, "number of trials / pairs");
  simulate->add_option("--source-fixed-r", sa.source_fixed_r,
                       "record source: fixed weight r");
  simulate->add_option("--source-probs", sa.source_probs_file,
                       "record source: independent bit probabilities file");
  simulate->add_option("--source-hist", sa.source_hist_file,
                       "record source: weight histogram file (N+1 lines)");
  simulate->add_option("--query-fixed-s", sa.query_fixed_s,
                       "query source fixed weight (falsedrop)");
  simulate->add_flag("--fixed-codebook", sa.fixed_codebook,
                     "one codebook for all trials instead of regeneration");
  simulate->add_option("--masks", sa.masks,
                       "mask weights for P(signature <= mask) probes")
      ->delimiter(',');
  simulate->add_flag("--compare", sa.compare,
                     "print predicted/observed/z table; exit 1 on |z| > 4");

  try {
    app.parse(argc, argv);
    if (*predict) return cmd_predict(pa);
    if (*weights) return cmd_weights(w_input, w_n, w_output, w_seed);
    if (*gencode) return cmd_gencode(ga);
    if (*encode) return cmd_encode(e_codebook, e_records, e_output);
    if (*screen) return cmd_screen(s_signatures, s_codebook, s_query);
    if (*simulate) return cmd_simulate(sa);
    throw UsageError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  } catch (const sic::io::FormatError& e) {
    std::cerr << "file format error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
