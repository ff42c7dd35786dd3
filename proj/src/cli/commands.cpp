#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "eigenpro/cli.hpp"
#include "eigenpro/config.hpp"
#include "eigenpro/csv.hpp"
#include "eigenpro/data.hpp"
#include "eigenpro/error.hpp"
#include "eigenpro/features.hpp"
#include "eigenpro/log.hpp"
#include "eigenpro/model_io.hpp"
#include "eigenpro/parallel.hpp"
#include "eigenpro/random.hpp"
#include "eigenpro/reach.hpp"
#include "eigenpro/report.hpp"
#include "eigenpro/train.hpp"

namespace eigenpro::cli {
namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- options

struct ConfigKey {
  const char* key;
  const char* flags;
  const char* help;
};

constexpr ConfigKey kConfigKeys[] = {
    {"mode", "--mode", "primal_kernel | rff | rbf | linear"},
    {"kernel", "--kernel", "gaussian | laplace | cauchy"},
    {"bandwidth", "--bandwidth", "kernel bandwidth (sigma^2 for gaussian and cauchy, sigma for laplace)"},
    {"k", "-k,--k", "number of eigen-directions (0 = plain SGD)"},
    {"M", "-M,--M", "eigensolver subsample size"},
    {"m", "-m,--m", "mini-batch size"},
    {"tau", "--tau", "damping factor in (0, 1]"},
    {"eta", "--eta", "auto_bound | auto_heuristic | <positive number>"},
    {"epochs", "--epochs", "epoch budget"},
    {"d", "-d,--d", "feature count for rff / rbf"},
    {"seed", "--seed", "top-level random seed"},
    {"delta", "--delta", "failure probability of the step-size bound"},
    {"eigensolver", "--eigensolver", "rsvd | nsvd"},
    {"heuristic-c", "--heuristic-c", "constant of the heuristic step size"},
    {"intrinsic-dim", "--intrinsic-dim", "dimension term of the bound (<= 0: estimate)"},
    {"target-loss", "--target-loss", "stop once the training loss reaches this value"},
};

class ConfigFlags {
 public:
  void add_to(CLI::App& app, bool with_file = true) {
    for (const auto& k : kConfigKeys) {
      auto& slot = values_[k.key];
      slot.option = app.add_option(k.flags, slot.value, k.help)->group("Training configuration");
    }
    if (with_file)
      file_option_ = app.add_option("--config", file_, "key = value file; flags win on conflict")
                         ->group("Training configuration");
  }

  TrainConfig build() const {
    TrainConfig c;
    if (file_option_ && file_option_->count() > 0) c = load_config_file(file_, c);
    for (const auto& [key, slot] : values_)
      if (slot.option->count() > 0) apply_setting(c, key, slot.value);
    return c;
  }

 private:
  struct Slot {
    std::string value;
    CLI::Option* option = nullptr;
  };
  std::map<std::string, Slot> values_;
  std::string file_;
  CLI::Option* file_option_ = nullptr;
};

struct DataFlags {
  std::string format = "auto";
  std::string task = "regression";
  std::vector<long long> targets{-1};
  bool header = false;
  std::string delimiter = ",";

  void add_to(CLI::App& app) {
    app.add_option("--format", format, "csv | libsvm | auto (by extension)")->group("Data");
    app.add_option("--task", task, "regression | classification")->group("Data");
    app.add_option("--target", targets, "target column indices for CSV (negative counts from the end)")
        ->delimiter(',')
        ->group("Data");
    app.add_flag("--header", header, "CSV files start with a header row")->group("Data");
    app.add_option("--delimiter", delimiter, "CSV field delimiter")->group("Data");
  }

  // Loads with raw label columns; classification is applied by the caller so
  // that train and eval share one class list.
  Dataset load_raw(const fs::path& path) const {
    require(delimiter.size() == 1, "delimiter must be a single character");
    std::string fmt = format;
    if (fmt == "auto") {
      const auto ext = path.extension().string();
      fmt = (ext == ".svm" || ext == ".libsvm" || ext == ".txt") ? "libsvm" : "csv";
    }
    if (fmt == "libsvm") return load_libsvm(path);
    require(fmt == "csv", "unknown data format '" + format + "'");
    CsvLoadOptions opt;
    opt.target_columns.assign(targets.begin(), targets.end());
    opt.has_header = header;
    opt.delimiter = delimiter[0];
    return load_csv(path, opt);
  }

  Task parsed_task() const { return parse_task(task); }
};

Dataset as_task(const Dataset& raw, Task task) {
  return task == Task::classification_onehot ? to_classification(raw) : raw;
}

Dataset as_task(const Dataset& raw, Task task, const std::vector<double>& classes) {
  return task == Task::classification_onehot ? to_classification(raw, classes) : raw;
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(csv::parse_double(item, 0));
    } catch (const DataError&) {
      throw InvalidArgument(std::string("cannot parse '") + item + "' in " + what);
    }
  }
  require(!out.empty(), std::string(what) + " is empty");
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text(path, text);
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

// ---------------------------------------------------------------- commands

struct TrainArgs {
  ConfigFlags config;
  DataFlags data;
  std::string train_path, eval_path, model_path, report_path;
  std::string preprocess = "none";
  bool timing = false;
  bool quiet = false;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const TrainConfig config = a.config.build();
  const Task task = a.data.parsed_task();
  const Dataset train_set = as_task(a.data.load_raw(a.train_path), task);
  std::optional<Dataset> eval_set;
  if (!a.eval_path.empty())
    eval_set = as_task(a.data.load_raw(a.eval_path), task, train_set.classes);

  TrainOptions options;
  options.preprocess = parse_preprocess(a.preprocess);
  if (!a.quiet)
    options.observer = [&err](const EpochRecord& r) {
      err << "epoch " << r.epoch << "  train_loss " << fmt(r.train_loss);
      if (r.eval_loss) err << "  eval_loss " << fmt(*r.eval_loss);
      err << "  metric " << fmt(r.metric) << "  |alpha| " << fmt(r.alpha_norm) << '\n';
    };
  const TrainResult result = train(config, train_set, eval_set ? &*eval_set : nullptr, options);
  for (const auto& note : result.report.notes) warn(note);

  if (!a.model_path.empty()) save_model(result.model, fs::path(a.model_path));
  if (!a.report_path.empty())
    write_text(a.report_path, format_train_report(result.report, {a.timing}));

  out << "mode " << to_string(result.model.config.mode) << ", n=" << train_set.rows()
      << ", k=" << result.model.config.k << ", eta=" << fmt(result.report.step_size)
      << ", epochs=" << result.report.records.size() << '\n';
  if (!result.report.records.empty()) {
    const auto& last = result.report.records.back();
    out << "final train_loss " << fmt(last.train_loss);
    if (last.eval_loss) out << ", eval_loss " << fmt(*last.eval_loss);
    out << ", metric " << fmt(last.metric) << '\n';
  }
  return ok;
}

struct EvalArgs {
  DataFlags data;
  std::string model_path, data_path, predictions_path;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  const Model model = load_model(fs::path(a.model_path));
  const Dataset ds = as_task(a.data.load_raw(a.data_path), model.task, model.classes);
  require(ds.features() == model.input_dim(), "data has " + std::to_string(ds.features()) +
                                                  " features, model expects " +
                                                  std::to_string(model.input_dim()));
  require(ds.outputs() == model.outputs(), "data targets do not match the model outputs");
  const Matrix pred = model.predict(ds.X);
  out << "rows,loss,metric\n"
      << ds.rows() << ',' << csv::format_double(squared_loss(pred, ds.Y)) << ','
      << csv::format_double(task_metric(model.task, pred, ds.Y)) << '\n';
  if (!a.predictions_path.empty()) {
    std::string text;
    for (Index j = 0; j < pred.cols(); ++j) text += (j ? ",p" : "p") + std::to_string(j + 1);
    text += '\n';
    for (Index i = 0; i < pred.rows(); ++i) {
      for (Index j = 0; j < pred.cols(); ++j)
        text += (j ? "," : "") + csv::format_double(pred(i, j));
      text += '\n';
    }
    write_text(a.predictions_path, text);
  }
  return ok;
}

struct BenchArgs {
  ConfigFlags config;
  DataFlags data;
  std::string train_path, a_overrides, b_overrides, out_path;
  std::string preprocess = "none";
  bool timing = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream&) {
  const TrainConfig base = a.config.build();
  require(base.target_loss.has_value(), "bench needs --target-loss");
  const Dataset train_set = as_task(a.data.load_raw(a.train_path), a.data.parsed_task());

  std::vector<BenchRow> rows;
  for (const auto& [label, overrides] :
       {std::pair{std::string("A"), a.a_overrides}, std::pair{std::string("B"), a.b_overrides}}) {
    TrainConfig c = base;
    apply_overrides(c, overrides);
    TrainOptions options;
    options.preprocess = parse_preprocess(a.preprocess);
    const TrainResult result = train(c, train_set, nullptr, options);
    for (const auto& note : result.report.notes) warn(label + ": " + note);
    BenchRow row;
    row.label = label;
    row.overrides = overrides;
    row.epochs_to_target = result.report.epochs_to_target;
    row.epochs_run = static_cast<Index>(result.report.records.size());
    if (row.epochs_to_target)
      row.seconds_to_target = result.report.records[static_cast<std::size_t>(*row.epochs_to_target - 1)].seconds;
    row.final_train_loss =
        result.report.records.empty() ? result.report.initial_train_loss
                                      : result.report.records.back().train_loss;
    row.step_size = result.report.step_size;
    rows.push_back(row);
  }

  if (!a.out_path.empty()) write_text(a.out_path, format_bench(rows, {a.timing}));

  out << std::left << std::setw(6) << "label" << std::setw(24) << "config" << std::setw(14)
      << "epochs" << std::setw(12) << "seconds" << "final_loss\n";
  for (const auto& r : rows) {
    out << std::setw(6) << r.label << std::setw(24) << (r.overrides.empty() ? "(base)" : r.overrides)
        << std::setw(14)
        << (r.epochs_to_target ? std::to_string(*r.epochs_to_target) : "not reached")
        << std::setw(12) << (r.seconds_to_target ? fmt(*r.seconds_to_target, 4) : "-")
        << fmt(r.final_train_loss) << '\n';
  }
  if (rows[0].epochs_to_target && rows[1].epochs_to_target)
    out << "ratio A/B " << fmt(static_cast<double>(*rows[0].epochs_to_target) /
                               static_cast<double>(*rows[1].epochs_to_target))
        << '\n';
  else
    out << "ratio A/B not available (target not reached)\n";
  return ok;
}

struct AnalyzeArgs {
  ConfigFlags config;
  DataFlags data;
  std::string data_path, k_list = "8,40,160", out_path;
  std::string preprocess = "none";
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream&) {
  TrainConfig c = a.config.build();
  const Dataset raw = a.data.load_raw(a.data_path);
  const Matrix X = Preprocessor::fit(raw.X, parse_preprocess(a.preprocess)).apply(raw.X);
  std::vector<Index> ks;
  for (double v : parse_number_list(a.k_list, "--k-list")) {
    require(v >= 0 && v == std::floor(v), "--k-list entries must be non-negative integers");
    ks.push_back(static_cast<Index>(v));
  }
  const Index k_max = *std::max_element(ks.begin(), ks.end());
  const Index n = X.rows();
  c.M = std::min(c.M, n);

  EigenSystem es;
  if (c.mode == TrainMode::primal_kernel) {
    require(k_max + 1 <= c.M, "largest k needs k+1 <= M");
    es = kernel_eigensystem(c.kernel, X, k_max, c.M, c.seed, c.eigensolver);
  } else {
    Matrix F = X;
    if (c.mode == TrainMode::rff)
      F = FeatureMap(RffMap::generate(X.cols(), c.d, c.kernel.bandwidth, derive_seed(c.seed, "rff")))
              .transform(X);
    else if (c.mode == TrainMode::rbf)
      F = FeatureMap(RbfMap::sample_centers(X, std::min(c.d, n), c.kernel, derive_seed(c.seed, "rbf")))
              .transform(X);
    require(k_max + 1 <= std::min(c.M, F.cols()), "largest k needs k+1 <= min(M, feature dimension)");
    es = c.eigensolver == EigenMethod::rsvd ? rsvd(F, k_max, c.M, c.seed)
                                            : nsvd(F, k_max, c.M, c.seed);
  }
  emit(format_spectrum_report(spectrum_report(es, ks)), a.out_path, out);
  return ok;
}

struct ReachArgs {
  std::string s = "0.5", t = "100,1e6", out_path;
  long long J = 200;
};

int cmd_reach_demo(const ReachArgs& a, std::ostream& out, std::ostream&) {
  require(a.J >= 1, "--J must be at least 1");
  const auto t_list = parse_number_list(a.t, "--t");
  std::vector<ReachDemoRow> rows;
  for (double s : parse_number_list(a.s, "--s"))
    rows.push_back({s, static_cast<Index>(a.J), t_list, heaviside_demo(s, t_list, a.J)});
  emit(format_reach_demo(rows), a.out_path, out);
  return ok;
}

struct SynthArgs {
  long long n = 2000, d = 100;
  std::string spectrum = "inverse-square";
  double noise = 0.0;
  unsigned long long seed = 0;
  std::string out_path;
};

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream&) {
  require(a.d >= 1 && a.n >= a.d, "synth needs n >= d >= 1");
  Vector lambda(a.d);
  for (Index i = 0; i < a.d; ++i) {
    const double idx = static_cast<double>(i + 1);
    if (a.spectrum == "inverse-square") lambda[i] = 1.0 / (idx * idx);
    else if (a.spectrum == "geometric") lambda[i] = std::pow(2.0, -idx);
    else if (a.spectrum == "flat") lambda[i] = 1.0;
    else throw InvalidArgument("unknown spectrum '" + a.spectrum +
                               "' (expected inverse-square, geometric or flat)");
  }
  const auto problem = synth_spectrum(a.n, a.d, lambda, a.noise, a.seed);
  emit(format_csv(problem.data), a.out_path, out);
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"EigenPro: preconditioned SGD for kernel and linear least squares", "eigenpro"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  bool quiet = false;
  app.add_option("--threads", threads, "OpenMP threads (default: all cores)");
  app.add_flag("--quiet", quiet, "suppress warnings and progress output");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train a model and write its per-epoch report");
  train_args.config.add_to(*train_cmd);
  train_args.data.add_to(*train_cmd);
  train_cmd->add_option("--train", train_args.train_path, "training data")->required();
  train_cmd->add_option("--eval", train_args.eval_path, "evaluation data");
  train_cmd->add_option("--model", train_args.model_path, "output model file");
  train_cmd->add_option("--report", train_args.report_path, "output per-epoch CSV");
  train_cmd->add_option("--preprocess", train_args.preprocess, "none | zscore | unit");
  train_cmd->add_flag("--timing", train_args.timing, "fill the seconds column");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a saved model on a dataset");
  eval_args.data.add_to(*eval_cmd);
  eval_cmd->add_option("--model", eval_args.model_path, "model file")->required();
  eval_cmd->add_option("--data", eval_args.data_path, "dataset")->required();
  eval_cmd->add_option("--predictions", eval_args.predictions_path, "write predictions CSV");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "epochs to a target loss for two configurations");
  bench_args.config.add_to(*bench_cmd);
  bench_args.data.add_to(*bench_cmd);
  bench_cmd->add_option("--train", bench_args.train_path, "training data")->required();
  bench_cmd->add_option("--a", bench_args.a_overrides, "overrides for configuration A, e.g. k=0");
  bench_cmd->add_option("--b", bench_args.b_overrides, "overrides for configuration B, e.g. k=20");
  bench_cmd->add_option("--out", bench_args.out_path, "output CSV");
  bench_cmd->add_option("--preprocess", bench_args.preprocess, "none | zscore | unit");
  bench_cmd->add_flag("--timing", bench_args.timing, "fill the seconds column of the CSV");

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "eigenvalue ratios lambda_1 / lambda_{k+1}");
  analyze_args.config.add_to(*analyze_cmd);
  analyze_args.data.add_to(*analyze_cmd);
  analyze_cmd->add_option("--data", analyze_args.data_path, "dataset")->required();
  analyze_cmd->add_option("--k-list", analyze_args.k_list, "comma-separated k values");
  analyze_cmd->add_option("--out", analyze_args.out_path, "output CSV (default stdout)");
  analyze_cmd->add_option("--preprocess", analyze_args.preprocess, "none | zscore | unit");

  ReachArgs reach_args;
  auto* reach_cmd = app.add_subcommand("reach-demo", "square-wave recovery under heat-kernel GD");
  reach_cmd->add_option("--s", reach_args.s, "comma-separated bandwidths");
  reach_cmd->add_option("--t", reach_args.t, "comma-separated iteration counts");
  reach_cmd->add_option("--J", reach_args.J, "highest harmonic simulated");
  reach_cmd->add_option("--out", reach_args.out_path, "output CSV (default stdout)");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "write a least-squares problem with a set spectrum");
  synth_cmd->add_option("--n", synth_args.n, "rows");
  synth_cmd->add_option("--d", synth_args.d, "features");
  synth_cmd->add_option("--spectrum", synth_args.spectrum, "inverse-square | geometric | flat");
  synth_cmd->add_option("--noise", synth_args.noise, "noise standard deviation");
  synth_cmd->add_option("--seed", synth_args.seed, "random seed");
  synth_cmd->add_option("--out", synth_args.out_path, "output CSV (default stdout)");

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  set_warnings_enabled(!quiet);
  set_thread_count(threads);
  train_args.quiet = quiet;
  try {
    if (*train_cmd) return cmd_train(train_args, out, err);
    if (*eval_cmd) return cmd_eval(eval_args, out, err);
    if (*bench_cmd) return cmd_bench(bench_args, out, err);
    if (*analyze_cmd) return cmd_analyze(analyze_args, out, err);
    if (*reach_cmd) return cmd_reach_demo(reach_args, out, err);
    if (*synth_cmd) return cmd_synth(synth_args, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return data_error;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return numeric_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace eigenpro::cli
