#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "eigenpro/cli.hpp"
#include "eigenpro/data.hpp"
#include "eigenpro/model_io.hpp"
#include "helpers.hpp"

using namespace eigenpro;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "eigenpro");
  args.push_back("--quiet");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "eigenpro_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == cli::usage);
  CHECK(run({"fly"}).code == cli::usage);
  CHECK(run({"train"}).code == cli::usage);
  CHECK(run({"reach-demo", "--J", "0"}).code == cli::usage);
  CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("missing or malformed data exits with 2") {
  TempDir dir;
  CHECK(run({"train", "--train", dir / "absent.csv"}).code == cli::data_error);
  {
    std::ofstream(dir / "bad.csv") << "1,2\n3,oops\n";
  }
  const auto r = run({"train", "--train", dir / "bad.csv"});
  CHECK(r.code == cli::data_error);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("divergence exits with 3") {
  TempDir dir;
  run({"synth", "--n", "100", "--d", "5", "--out", dir / "d.csv"});
  const auto r = run({"train", "--train", dir / "d.csv", "--header", "-k", "0", "--eta", "1000",
                      "-m", "10", "--epochs", "5"});
  CHECK(r.code == cli::numeric_error);
  CHECK(r.err.find("eta=1000") != std::string::npos);
}

TEST_CASE("zero epochs give a zero model and an empty report") {
  TempDir dir;
  run({"synth", "--n", "100", "--d", "5", "--out", dir / "d.csv"});
  const auto r = run({"train", "--train", dir / "d.csv", "--header", "-k", "2", "--epochs", "0",
                      "--model", dir / "m.txt", "--report", dir / "r.csv"});
  REQUIRE(r.code == cli::ok);
  CHECK(slurp(dir / "r.csv") == "epoch,train_loss,eval_loss,metric,alpha_norm,seconds\n");
  CHECK(load_model(fs::path(dir / "m.txt")).alpha().isZero());
}

TEST_CASE("saved models predict bit-identically after loading") {
  TempDir dir;
  run({"synth", "--n", "300", "--d", "8", "--noise", "0.1", "--out", dir / "d.csv"});
  for (const char* mode : {"linear", "rff", "rbf", "primal_kernel"}) {
    CAPTURE(mode);
    const auto r = run({"train", "--train", dir / "d.csv", "--header", "--mode", mode, "-k", "5",
                        "-d", "64", "--bandwidth", "4", "--epochs", "2", "--preprocess", "zscore",
                        "--model", dir / "m.txt"});
    REQUIRE(r.code == cli::ok);
    const Model a = load_model(fs::path(dir / "m.txt"));
    std::ostringstream saved;
    save_model(a, saved);
    std::istringstream in(saved.str());
    const Model b = load_model(in);
    CsvLoadOptions opt;
    opt.has_header = true;
    const Dataset ds = load_csv(dir / "d.csv", opt);
    CHECK(testing::bit_equal(a.predict(ds.X), b.predict(ds.X)));
    std::ostringstream again;
    save_model(b, again);
    CHECK(again.str() == saved.str());
  }
}

TEST_CASE("eval reports the loss of the saved model") {
  TempDir dir;
  run({"synth", "--n", "200", "--d", "6", "--seed", "1", "--out", dir / "d.csv"});
  run({"train", "--train", dir / "d.csv", "--header", "-k", "3", "--epochs", "20", "--model",
       dir / "m.txt"});
  const auto r = run({"eval", "--model", dir / "m.txt", "--data", dir / "d.csv", "--header",
                      "--predictions", dir / "p.csv"});
  REQUIRE(r.code == cli::ok);
  CHECK(r.out.rfind("rows,loss,metric\n200,", 0) == 0);
  const auto rows = read_rows(dir / "p.csv");
  CHECK(rows.size() == 201);
  CHECK(rows[0][0] == "p1");
}

TEST_CASE("primal kernel training reaches the direct-solve loss") {
  TempDir dir;
  run({"synth", "--n", "300", "--d", "5", "--noise", "0.2", "--seed", "2", "--out",
       dir / "train.csv"});
  run({"synth", "--n", "100", "--d", "5", "--noise", "0.2", "--seed", "3", "--out",
       dir / "eval.csv"});
  CsvLoadOptions opt;
  opt.has_header = true;
  const Dataset tr = load_csv(dir / "train.csv", opt);
  const Dataset ev = load_csv(dir / "eval.csv", opt);
  const KernelSpec spec{KernelFamily::laplace, 5.0};
  const Eigen::MatrixXd K = testing::dense_kernel(spec, tr.X);
  const Eigen::MatrixXd alpha = K.ldlt().solve(Eigen::MatrixXd(tr.Y));
  const Eigen::MatrixXd Kev = kernel_matrix(spec, ev.X, tr.X);
  const double direct = (Kev * alpha - Eigen::MatrixXd(ev.Y)).squaredNorm() / 100.0;

  const auto r = run({"train", "--train", dir / "train.csv", "--eval", dir / "eval.csv",
                      "--header", "--mode", "primal_kernel", "--kernel", "laplace", "--bandwidth",
                      "5", "-k", "40", "-m", "300", "--eta", "auto_bound", "--epochs", "300",
                      "--report", dir / "r.csv"});
  REQUIRE(r.code == cli::ok);
  const auto rows = read_rows(dir / "r.csv");
  const double eval_loss = std::stod(rows.back()[2]);
  MESSAGE("eval loss ", eval_loss, " direct ", direct);
  CHECK(std::abs(eval_loss - direct) < 1e-3);
}

TEST_CASE("bench with identical configurations reports ratio 1") {
  TempDir dir;
  run({"synth", "--n", "200", "--d", "10", "--out", dir / "d.csv"});
  const auto r = run({"bench", "--train", dir / "d.csv", "--header", "--a", "k=3", "--b", "k=3",
                      "--target-loss", "0.05", "--epochs", "200", "--out", dir / "b.csv"});
  REQUIRE(r.code == cli::ok);
  CHECK(r.out.find("ratio A/B 1\n") != std::string::npos);
  const auto rows = read_rows(dir / "b.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "label");
  CHECK(rows[1][2] == "yes");
  CHECK(rows[1][3] == rows[2][3]);
}

TEST_CASE("bench reports an unreachable target without failing") {
  TempDir dir;
  run({"synth", "--n", "200", "--d", "10", "--noise", "1", "--out", dir / "d.csv"});
  const auto r = run({"bench", "--train", dir / "d.csv", "--header", "--a", "k=0", "--b", "k=3",
                      "--target-loss", "1e-9", "--epochs", "3"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.find("not reached") != std::string::npos);
  CHECK(run({"bench", "--train", dir / "d.csv", "--header"}).code == cli::usage);
}

TEST_CASE("analyze on flat and geometric spectra") {
  TempDir dir;
  run({"synth", "--n", "200", "--d", "12", "--spectrum", "flat", "--out", dir / "flat.csv"});
  run({"synth", "--n", "200", "--d", "12", "--spectrum", "geometric", "--out", dir / "geo.csv"});
  auto r = run({"analyze", "--data", dir / "flat.csv", "--header", "--k-list", "1,4,8"});
  REQUIRE(r.code == cli::ok);
  std::istringstream flat(r.out);
  std::string line;
  std::getline(flat, line);
  CHECK(line == "index,eigenvalue,ratio");
  while (std::getline(flat, line))
    CHECK(std::abs(std::stod(line.substr(line.rfind(',') + 1)) - 1.0) < 1e-10);

  r = run({"analyze", "--data", dir / "geo.csv", "--header", "--k-list", "8"});
  REQUIRE(r.code == cli::ok);
  const auto pos = r.out.rfind(',');
  CHECK(std::stod(r.out.substr(pos + 1)) == doctest::Approx(256.0).epsilon(1e-8));
}

TEST_CASE("reach demo columns follow the expected ordering") {
  const auto r = run({"reach-demo", "--s", "0.5", "--t", "100,1e6", "--J", "200"});
  REQUIRE(r.code == cli::ok);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "s,harmonics,t1,t2,gd_t1,gd_t2,truncation");
  std::vector<double> v;
  std::istringstream ls(row);
  std::string f;
  while (std::getline(ls, f, ',')) v.push_back(std::stod(f));
  REQUIRE(v.size() == 7);
  CHECK(v[4] > v[5]);
  CHECK(v[5] > v[6]);
  CHECK(v[4] - v[5] < v[4] - v[6]);
}

TEST_CASE("flags may follow the subcommand and config files are honoured") {
  TempDir dir;
  run({"synth", "--n", "100", "--d", "5", "--out", dir / "d.csv"});
  {
    std::ofstream(dir / "c.conf") << "k = 2\nepochs = 3\n";
  }
  const auto r = run({"train", "--train", dir / "d.csv", "--header", "--config", dir / "c.conf",
                      "--epochs", "4", "--threads", "2"});
  REQUIRE(r.code == cli::ok);
  CHECK(r.out.find("k=2") != std::string::npos);
  CHECK(r.out.find("epochs=4") != std::string::npos);
}
