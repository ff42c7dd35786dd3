#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "eigenpro/config.hpp"
#include "eigenpro/error.hpp"

using namespace eigenpro;

TEST_CASE("defaults follow the reference setting") {
  TrainConfig c;
  CHECK(c.m == 256);
  CHECK(c.k == 160);
  CHECK(c.M == 4800);
  CHECK(c.tau_value() == 0.25);
  c.mode = TrainMode::primal_kernel;
  CHECK(c.tau_value() == 1.0);
  c.tau = 0.5;
  CHECK(c.tau_value() == 0.5);
  CHECK(c.eta.kind == StepRule::Kind::auto_bound);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("mode and step rule parsing") {
  CHECK(parse_train_mode("primal_kernel") == TrainMode::primal_kernel);
  CHECK(parse_train_mode("primal-kernel") == TrainMode::primal_kernel);
  CHECK(parse_train_mode("rff") == TrainMode::rff);
  CHECK_THROWS_AS(parse_train_mode("svm"), InvalidArgument);
  for (auto m : {TrainMode::primal_kernel, TrainMode::rff, TrainMode::rbf, TrainMode::linear})
    CHECK(parse_train_mode(to_string(m)) == m);

  CHECK(StepRule::parse("auto_bound").kind == StepRule::Kind::auto_bound);
  CHECK(StepRule::parse("heuristic").kind == StepRule::Kind::auto_heuristic);
  const auto fixed = StepRule::parse("0.5");
  CHECK(fixed.kind == StepRule::Kind::fixed);
  CHECK(fixed.value == 0.5);
  CHECK(StepRule::parse(fixed.str()).value == 0.5);
  CHECK_THROWS_AS(StepRule::parse("-1"), InvalidArgument);
  CHECK_THROWS_AS(StepRule::parse("fast"), InvalidArgument);
}

TEST_CASE("validation rejects inconsistent settings") {
  TrainConfig c;
  c.k = 4800;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.tau = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.m = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = {};
  c.mode = TrainMode::rff;
  c.kernel.family = KernelFamily::laplace;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("resolution clamps sizes to the data and records notes") {
  TrainConfig c;
  std::vector<std::string> notes;
  const TrainConfig r = c.resolved(300, 50, &notes);
  CHECK(r.M == 300);
  CHECK(r.m == 256);
  CHECK(r.k == 49);
  CHECK(notes.size() >= 2);
  const TrainConfig tiny = c.resolved(100, 1000, nullptr);
  CHECK(tiny.m == 100);
  CHECK(tiny.k + 1 <= tiny.M);
}

TEST_CASE("settings, overrides and config files") {
  TrainConfig c;
  apply_setting(c, "mode", "primal_kernel");
  apply_setting(c, "kernel", "laplace");
  apply_setting(c, "bandwidth", "3");
  apply_setting(c, "heuristic_c", "2");
  apply_setting(c, "target-loss", "0.01");
  CHECK(c.mode == TrainMode::primal_kernel);
  CHECK(c.kernel.family == KernelFamily::laplace);
  CHECK(c.kernel.bandwidth == 3.0);
  CHECK(c.heuristic_constant == 2.0);
  CHECK(*c.target_loss == 0.01);
  CHECK_THROWS_AS(apply_setting(c, "k", "many"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "k", "-3"), InvalidArgument);
  CHECK_THROWS_AS(apply_setting(c, "colour", "blue"), InvalidArgument);

  apply_overrides(c, "k=0, tau=0.5,eta=2");
  CHECK(c.k == 0);
  CHECK(*c.tau == 0.5);
  CHECK(c.eta.kind == StepRule::Kind::fixed);
  CHECK_THROWS_AS(apply_overrides(c, "k"), InvalidArgument);

  const auto path = std::filesystem::temp_directory_path() / "eigenpro_test.conf";
  {
    std::ofstream out(path);
    out << "# comment\n[train]\nmode = rff\nd = 512   # features\n\nseed=9\n";
  }
  const TrainConfig f = load_config_file(path);
  CHECK(f.mode == TrainMode::rff);
  CHECK(f.d == 512);
  CHECK(f.seed == 9u);
  {
    std::ofstream out(path);
    out << "mode rff\n";
  }
  CHECK_THROWS_WITH_AS(load_config_file(path), doctest::Contains(":1"), InvalidArgument);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config_file(path), DataError);
}

TEST_CASE("describe lists every core field") {
  TrainConfig c;
  const auto d = c.describe();
  auto has = [&](const std::string& key) {
    for (const auto& kv : d)
      if (kv.first == key) return true;
    return false;
  };
  for (const char* key : {"mode", "kernel", "bandwidth", "k", "M", "m", "tau", "eta", "epochs", "seed"})
    CHECK(has(key));
}
