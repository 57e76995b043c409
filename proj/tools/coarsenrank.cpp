#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coarsenrank/em.hpp"
#include "coarsenrank/gibbs.hpp"
#include "coarsenrank/io.hpp"
#include "coarsenrank/ranking.hpp"
#include "coarsenrank/synth.hpp"

namespace {

using namespace coarsenrank;

enum class ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kNumeric = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
  if (!out) throw std::invalid_argument("cannot write file: " + path);
}

double parse_alpha(const std::string& token) {
  if (token == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !(value > 0.0))
    throw std::invalid_argument("invalid alpha '" + token +
                                "' (expected a positive real or 'inf')");
  return value;
}

std::vector<double> parse_alpha_grid(const std::string& csv) {
  std::vector<double> grid;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = csv.find(',', start);
    const std::string token = end == std::string::npos
                                  ? csv.substr(start)
                                  : csv.substr(start, end - start);
    grid.push_back(parse_alpha(token));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return grid;
}

struct AggregateArgs {
  std::string input, alpha = "inf", calibration = "auto", out;
  int iters = 15;
};

int run_aggregate(const AggregateArgs& args) {
  const PreferenceDataset ds = parse_preferences(read_file(args.input));
  CoarsenConfig config;
  config.alpha = parse_alpha(args.alpha);
  config.iterations = args.iters;
  if (args.calibration != "auto") {
    double c = 0.0;
    auto [ptr, ec] = std::from_chars(
        args.calibration.data(), args.calibration.data() + args.calibration.size(), c);
    if (ec != std::errc() || ptr != args.calibration.data() + args.calibration.size() ||
        !(c > 0.0))
      throw std::invalid_argument("invalid calibration '" + args.calibration +
                                  "' (expected a positive real or 'auto')");
    config.calibration = c;
  }
  const FitResult result = fit(ds, config);
  write_file(args.out, write_scores(result.theta, ds));
  std::cout << "n=" << ds.num_preferences() << "\n"
            << "m=" << ds.num_items() << "\n"
            << "tau_n=" << format_double(result.tau_n) << "\n"
            << "objective=" << format_double(result.objective_trace.back()) << "\n";
  return static_cast<int>(ExitCode::kOk);
}

struct DiagnoseArgs {
  std::string input, grid, out;
  int samples = 50;
  std::uint64_t seed = 0;
};

int run_diagnose(const DiagnoseArgs& args) {
  const PreferenceDataset ds = parse_preferences(read_file(args.input));
  const std::vector<double> grid = parse_alpha_grid(args.grid);
  GibbsConfig config;
  config.samples = args.samples;
  config.seed = args.seed;
  const DiagnoseResult result = diagnose(ds, grid, GammaPrior{}, config);
  write_file(args.out, write_dic_curve(result.curve));
  std::cout << "selected_alpha=" << format_double(result.selected_alpha) << "\n";
  return static_cast<int>(ExitCode::kOk);
}

struct EvaluateArgs {
  std::string scores, truth;
};

int run_evaluate(const EvaluateArgs& args) {
  const ParsedScores scores = parse_scores(read_file(args.scores));
  const Ranking truth = parse_truth(read_file(args.truth), scores.ids);
  std::vector<int> by_rank(scores.ids.size());
  for (std::size_t r = 0; r < by_rank.size(); ++r) by_rank[r] = static_cast<int>(r);
  const double tau = kendall_tau(Ranking(std::move(by_rank)), truth);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", tau);
  std::cout << "tau=" << buf << "\n";
  return static_cast<int>(ExitCode::kOk);
}

struct GenerateArgs {
  int items = 0, prefs = 0, len = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

int run_generate(const GenerateArgs& args) {
  SynthSpec spec;
  spec.num_items = args.items;
  spec.num_preferences = args.prefs;
  spec.min_length = args.len;
  spec.max_length = args.len;
  spec.noise_fraction = args.noise;
  spec.seed = args.seed;
  const SynthResult result = generate(spec);

  std::string prefs_text;
  for (const Preference& p : result.dataset.preferences()) {
    for (int i = 0; i < p.length(); ++i) {
      if (i) prefs_text += '>';
      prefs_text += result.dataset.item_id(p.item(i));
    }
    prefs_text += '\n';
  }
  std::string truth_text;
  for (int r = 0; r < result.ground_truth.size(); ++r) {
    truth_text += result.dataset.item_id(result.ground_truth.at(r));
    truth_text += '\n';
  }
  write_file(args.out_prefix + ".prefs", prefs_text);
  write_file(args.out_prefix + ".truth", truth_text);
  write_file(args.out_prefix + ".theta",
             write_scores(result.theta_truth, result.dataset));
  std::cout << "items=" << args.items << "\n"
            << "prefs=" << args.prefs << "\n"
            << "out_prefix=" << args.out_prefix << "\n";
  return static_cast<int>(ExitCode::kOk);
}

struct BenchArgs {
  std::string input;
  int iters = 15, repeats = 50;
};

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / xs.size();
}

double population_std(const std::vector<double>& xs, double mean) {
  double total = 0.0;
  for (double x : xs) total += (x - mean) * (x - mean);
  return std::sqrt(total / xs.size());
}

int run_bench(const BenchArgs& args) {
  if (args.repeats < 1) throw std::invalid_argument("bench: repeats must be >= 1");
  const PreferenceDataset ds = parse_preferences(read_file(args.input));

  CoarsenConfig coarsen;
  coarsen.alpha = static_cast<double>(ds.num_preferences());  // tau = 0.5
  coarsen.iterations = args.iters;
  CoarsenConfig plem;
  plem.alpha = std::numeric_limits<double>::infinity();
  plem.iterations = args.iters;

  fit(ds, coarsen);  // warm-up
  fit(ds, plem);

  std::vector<double> coarsen_times, plem_times;
  coarsen_times.reserve(args.repeats);
  plem_times.reserve(args.repeats);
  using clock = std::chrono::steady_clock;
  for (int r = 0; r < args.repeats; ++r) {
    auto t0 = clock::now();
    fit(ds, coarsen);
    auto t1 = clock::now();
    fit(ds, plem);
    auto t2 = clock::now();
    coarsen_times.push_back(std::chrono::duration<double>(t1 - t0).count());
    plem_times.push_back(std::chrono::duration<double>(t2 - t1).count());
  }
  const double cm = mean_of(coarsen_times);
  const double pm = mean_of(plem_times);
  std::cout << "n=" << ds.num_preferences() << "\n"
            << "m=" << ds.num_items() << "\n"
            << "iters=" << args.iters << "\n"
            << "repeats=" << args.repeats << "\n"
            << "coarsen_alpha=" << format_double(coarsen.alpha) << "\n"
            << "coarsen_mean_s=" << format_double(cm) << "\n"
            << "coarsen_std_s=" << format_double(population_std(coarsen_times, cm))
            << "\n"
            << "plem_mean_s=" << format_double(pm) << "\n"
            << "plem_std_s=" << format_double(population_std(plem_times, pm)) << "\n";
  return static_cast<int>(ExitCode::kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust rank aggregation under the Plackett-Luce model"};
  app.require_subcommand(1);

  AggregateArgs agg;
  CLI::App* agg_cmd = app.add_subcommand(
      "aggregate", "Fit item scores from a preference file");
  agg_cmd->add_option("--input", agg.input, "preference file")->required();
  agg_cmd->add_option("--alpha", agg.alpha, "robustness parameter (real or 'inf')")
      ->required();
  agg_cmd->add_option("--iters", agg.iters, "EM iterations");
  agg_cmd->add_option("--c", agg.calibration, "score sum target (real or 'auto')");
  agg_cmd->add_option("--out", agg.out, "output scores CSV")->required();

  DiagnoseArgs diag;
  CLI::App* diag_cmd = app.add_subcommand(
      "diagnose", "Select the robustness parameter by DIC over a grid");
  diag_cmd->add_option("--input", diag.input, "preference file")->required();
  diag_cmd->add_option("--alpha-grid", diag.grid, "comma-separated ascending alphas")
      ->required();
  diag_cmd->add_option("--samples", diag.samples, "posterior samples per alpha");
  diag_cmd->add_option("--seed", diag.seed, "base RNG seed");
  diag_cmd->add_option("--out", diag.out, "output DIC curve CSV")->required();

  EvaluateArgs eval;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Kendall agreement between a scores file and a truth file");
  eval_cmd->add_option("--scores", eval.scores, "scores CSV")->required();
  eval_cmd->add_option("--truth", eval.truth, "truth ranking file")->required();

  GenerateArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "generate", "Generate synthetic preference data");
  gen_cmd->add_option("--items", gen.items, "number of items")->required();
  gen_cmd->add_option("--prefs", gen.prefs, "number of preferences")->required();
  gen_cmd->add_option("--len", gen.len, "items per preference")->required();
  gen_cmd->add_option("--noise", gen.noise, "fraction of preferences to randomize");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--out-prefix", gen.out_prefix, "output path prefix")
      ->required();

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Time tempered and untempered fits on a preference file");
  bench_cmd->add_option("--input", bench.input, "preference file")->required();
  bench_cmd->add_option("--iters", bench.iters, "EM iterations");
  bench_cmd->add_option("--repeats", bench.repeats, "timing repetitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? static_cast<int>(ExitCode::kOk)
                   : static_cast<int>(ExitCode::kUsage);
  }

  try {
    if (agg_cmd->parsed()) return run_aggregate(agg);
    if (diag_cmd->parsed()) return run_diagnose(diag);
    if (eval_cmd->parsed()) return run_evaluate(eval);
    if (gen_cmd->parsed()) return run_generate(gen);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kParse);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kNumeric);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kNumeric);
  }
  return static_cast<int>(ExitCode::kUsage);
}
