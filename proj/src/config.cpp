#include "eigenpro/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "eigenpro/error.hpp"

namespace eigenpro {
namespace {

std::string normalize_key(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw InvalidArgument("setting '" + std::string(key) + "': expected a number, got '" +
                          std::string(text) + "'");
  return value;
}

Index parse_count(std::string_view key, std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
    throw InvalidArgument("setting '" + std::string(key) +
                          "': expected a non-negative integer, got '" + std::string(text) + "'");
  return static_cast<Index>(value);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string to_string(TrainMode mode) {
  switch (mode) {
    case TrainMode::primal_kernel: return "primal_kernel";
    case TrainMode::rff: return "rff";
    case TrainMode::rbf: return "rbf";
    case TrainMode::linear: return "linear";
  }
  return "unknown";
}

TrainMode parse_train_mode(std::string_view name) {
  if (name == "primal_kernel" || name == "primal-kernel" || name == "kernel")
    return TrainMode::primal_kernel;
  if (name == "rff") return TrainMode::rff;
  if (name == "rbf") return TrainMode::rbf;
  if (name == "linear") return TrainMode::linear;
  throw InvalidArgument("unknown mode '" + std::string(name) +
                        "' (expected primal_kernel, rff, rbf or linear)");
}

StepRule StepRule::parse(std::string_view text) {
  if (text == "auto_bound" || text == "auto-bound" || text == "bound") return {};
  if (text == "auto_heuristic" || text == "auto-heuristic" || text == "heuristic")
    return {Kind::auto_heuristic, 0.0};
  const double value = parse_double("eta", text);
  require(value > 0.0, "fixed step size eta must be positive");
  return fixed(value);
}

std::string StepRule::str() const {
  switch (kind) {
    case Kind::auto_bound: return "auto_bound";
    case Kind::auto_heuristic: return "auto_heuristic";
    case Kind::fixed: return format_double(value);
  }
  return "";
}

double TrainConfig::tau_value() const {
  if (tau) return *tau;
  return mode == TrainMode::primal_kernel ? 1.0 : 0.25;
}

void TrainConfig::validate() const {
  kernel.validate();
  require(m >= 1, "mini-batch size m must be positive");
  require(M >= 1, "subsample size M must be positive");
  require(k + 1 <= M, "need k+1 <= M (k=" + std::to_string(k) + ", M=" + std::to_string(M) + ")");
  require(d >= 1, "feature count d must be positive");
  const double t = tau_value();
  require(t > 0.0 && t <= 1.0, "damping factor tau must be in (0, 1]");
  require(delta > 0.0 && delta < 1.0, "delta must be in (0, 1)");
  require(heuristic_constant > 0.0, "heuristic constant must be positive");
  if (eta.kind == StepRule::Kind::fixed) require(eta.value > 0.0, "eta must be positive");
  if (mode == TrainMode::rff)
    require(kernel.family == KernelFamily::gaussian, "rff mode approximates the gaussian kernel only");
  if (target_loss) require(*target_loss >= 0.0, "target loss must be non-negative");
}

TrainConfig TrainConfig::resolved(Index n, Index feature_dim, std::vector<std::string>* notes) const {
  TrainConfig out = *this;
  auto note = [&](const std::string& text) {
    if (notes) notes->push_back(text);
  };
  if (out.M > n) {
    note("subsample size M=" + std::to_string(out.M) + " reduced to n=" + std::to_string(n));
    out.M = n;
  }
  if (out.m > n) {
    note("mini-batch size m=" + std::to_string(out.m) + " reduced to n=" + std::to_string(n));
    out.m = n;
  }
  const Index k_max = std::min(out.M, feature_dim) - 1;
  if (out.k > k_max) {
    note("eigen-directions k=" + std::to_string(out.k) + " reduced to " + std::to_string(k_max));
    out.k = k_max;
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> TrainConfig::describe() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"mode", to_string(mode)},
      {"kernel", to_string(kernel.family)},
      {"bandwidth", format_double(kernel.bandwidth)},
      {"k", std::to_string(k)},
      {"M", std::to_string(M)},
      {"m", std::to_string(m)},
      {"tau", format_double(tau_value())},
      {"eta", eta.str()},
      {"epochs", std::to_string(epochs)},
      {"d", std::to_string(d)},
      {"seed", std::to_string(seed)},
      {"delta", format_double(delta)},
      {"eigensolver", to_string(eigensolver)},
  };
  if (eta.kind == StepRule::Kind::auto_heuristic)
    out.emplace_back("heuristic-c", format_double(heuristic_constant));
  if (intrinsic_dim > 0.0) out.emplace_back("intrinsic-dim", format_double(intrinsic_dim));
  if (target_loss) out.emplace_back("target-loss", format_double(*target_loss));
  return out;
}

void apply_setting(TrainConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(trim(raw_key));
  const std::string_view value = trim(raw_value);
  if (key == "mode") c.mode = parse_train_mode(value);
  else if (key == "kernel") c.kernel.family = parse_kernel_family(value);
  else if (key == "bandwidth") c.kernel.bandwidth = parse_double(key, value);
  else if (key == "k") c.k = parse_count(key, value);
  else if (key == "M") c.M = parse_count(key, value);
  else if (key == "m") c.m = parse_count(key, value);
  else if (key == "tau") c.tau = parse_double(key, value);
  else if (key == "eta") c.eta = StepRule::parse(value);
  else if (key == "epochs") c.epochs = parse_count(key, value);
  else if (key == "d") c.d = parse_count(key, value);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_count(key, value));
  else if (key == "delta") c.delta = parse_double(key, value);
  else if (key == "eigensolver") c.eigensolver = parse_eigen_method(std::string(value));
  else if (key == "heuristic-c") c.heuristic_constant = parse_double(key, value);
  else if (key == "intrinsic-dim") c.intrinsic_dim = parse_double(key, value);
  else if (key == "target-loss") c.target_loss = parse_double(key, value);
  else throw InvalidArgument("unknown setting '" + std::string(raw_key) + "'");
}

TrainConfig load_config_file(const std::filesystem::path& path, TrainConfig base) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty() || view.front() == '[') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw InvalidArgument(path.string() + ":" + std::to_string(line_no) +
                            ": expected 'key = value'");
    apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
  }
  return base;
}

void apply_overrides(TrainConfig& config, std::string_view overrides) {
  while (!overrides.empty()) {
    const auto comma = overrides.find(',');
    const std::string_view item = trim(overrides.substr(0, comma));
    overrides = comma == std::string_view::npos ? std::string_view{} : overrides.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    require(eq != std::string_view::npos, "override '" + std::string(item) + "' is not key=value");
    apply_setting(config, item.substr(0, eq), item.substr(eq + 1));
  }
}

}  // namespace eigenpro
