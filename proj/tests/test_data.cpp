#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "eigenpro/csv.hpp"
#include "eigenpro/data.hpp"
#include "eigenpro/error.hpp"
#include "eigenpro/log.hpp"
#include "eigenpro/random.hpp"
#include "helpers.hpp"

using namespace eigenpro;

TEST_CASE("small CSV with a label column") {
  CsvLoadOptions opt;
  opt.task = Task::classification_onehot;
  const Dataset ds = parse_csv_dataset("1,2,0\n3,4,1\n5,6,0\n", opt);
  CHECK(ds.rows() == 3);
  CHECK(ds.features() == 2);
  CHECK(ds.classes == std::vector<double>{0.0, 1.0});
  CHECK(ds.Y(1, 1) == 1.0);
  CHECK(ds.Y(2, 0) == 1.0);
  CHECK(ds.X(2, 1) == 6.0);
}

TEST_CASE("headers, quoting, delimiters and target selection") {
  CsvLoadOptions opt;
  opt.has_header = true;
  opt.delimiter = ';';
  opt.target_columns = {0, 2};
  const Dataset ds = parse_csv_dataset("\"a;b\";c;d\n1;2;3\n\n4;5;6\n", opt);
  CHECK(ds.rows() == 2);
  CHECK(ds.target_names == std::vector<std::string>{"a;b", "d"});
  CHECK(ds.feature_names == std::vector<std::string>{"c"});
  CHECK(ds.Y(1, 1) == 6.0);
  CHECK(ds.X(1, 0) == 5.0);
}

TEST_CASE("malformed CSV input names the line") {
  CHECK_THROWS_AS(parse_csv_dataset(""), DataError);
  CHECK_THROWS_WITH_AS(parse_csv_dataset("1,2\n3\n"), doctest::Contains("line 2"), DataError);
  CHECK_THROWS_WITH_AS(parse_csv_dataset("1,2\n3,x\n"), doctest::Contains("line 2"), DataError);
  CHECK_THROWS_AS(parse_csv_dataset("1,nan\n"), DataError);
  CHECK_THROWS_AS(parse_csv_dataset("1,inf\n"), DataError);
  CHECK_THROWS_AS(parse_csv_dataset("1,\"2\n"), DataError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), DataError);
}

TEST_CASE("csv escaping and number formatting") {
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::parse_double(csv::format_double(M_PI), 1) == M_PI);
  const auto rows = csv::parse("\"x\ny\",2\n3,4");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].fields[0] == "x\ny");
  CHECK(rows[1].line == 3);
}

TEST_CASE("write then load is bit-identical") {
  Rng r(1);
  Dataset ds;
  ds.X = r.gaussian_matrix(25, 4) * 1e3;
  ds.Y = r.gaussian_matrix(25, 2);
  ds.X(0, 0) = 1e-300;
  const auto path = std::filesystem::temp_directory_path() / "eigenpro_roundtrip.csv";
  write_csv(ds, path);
  CsvLoadOptions opt;
  opt.has_header = true;
  opt.target_columns = {-2, -1};
  const Dataset back = load_csv(path, opt);
  std::filesystem::remove(path);
  CHECK(testing::bit_equal(back.X, ds.X));
  CHECK(testing::bit_equal(back.Y, ds.Y));

  CsvLoadOptions cls;
  cls.task = Task::classification_onehot;
  const Dataset labelled = parse_csv_dataset("1,7\n2,3\n3,7\n", cls);
  CHECK(format_csv(labelled) == "x1,y1\n1,7\n2,3\n3,7\n");
}

TEST_CASE("libsvm input") {
  const Dataset ds = parse_libsvm_dataset("1 1:0.5 3:2\n-1 2:1 # comment\n\n", Task::regression, 4);
  CHECK(ds.rows() == 2);
  CHECK(ds.features() == 4);
  CHECK(ds.X(0, 2) == 2.0);
  CHECK(ds.X(1, 0) == 0.0);
  CHECK(ds.Y(1, 0) == -1.0);
  CHECK_THROWS_AS(parse_libsvm_dataset("1 0:2\n"), DataError);
  CHECK_THROWS_AS(parse_libsvm_dataset("1 a\n"), DataError);
  CHECK_THROWS_AS(parse_libsvm_dataset(""), DataError);
}

TEST_CASE("z-score uses the population deviation") {
  Dataset ds;
  ds.X = Matrix(3, 1);
  ds.X << 1, 2, 3;
  ds.Y = Matrix::Zero(3, 1);
  const Dataset z = zscore(ds);
  CHECK(z.X(0, 0) == doctest::Approx(-1.224744871391589).epsilon(1e-15));
  CHECK(z.X(1, 0) == 0.0);
  CHECK(z.X(2, 0) == doctest::Approx(1.224744871391589).epsilon(1e-15));
}

TEST_CASE("z-score is idempotent and drops constant features") {
  set_warnings_enabled(false);
  Rng r(2);
  Dataset ds;
  ds.X = r.gaussian_matrix(50, 5) * 3.0;
  ds.X.col(2).setConstant(4.0);
  ds.Y = Matrix::Zero(50, 1);
  ds.feature_names = {"a", "b", "c", "d", "e"};
  const Dataset once = zscore(ds);
  const Dataset twice = zscore(once);
  set_warnings_enabled(true);
  CHECK(once.features() == 4);
  CHECK(once.feature_names == std::vector<std::string>{"a", "b", "d", "e"});
  CHECK((once.X - twice.X).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(once.X.colwise().mean().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("unit rescaling") {
  Dataset ds;
  ds.X = Matrix(3, 2);
  ds.X << 1, 5, 3, 5, 2, 5;
  ds.Y = Matrix::Zero(3, 1);
  const Dataset u = rescale_unit(ds);
  CHECK(u.X(0, 0) == 0.0);
  CHECK(u.X(1, 0) == 1.0);
  CHECK(u.X(2, 0) == 0.5);
  CHECK(u.X.col(1).isZero());
}

TEST_CASE("preprocessor fitted on one set applies to another") {
  Matrix train(2, 2), test(1, 2);
  train << 0, 10, 2, 20;
  test << 1, 30;
  const auto p = Preprocessor::fit(train, Preprocessor::Kind::unit);
  const Matrix out = p.apply(test);
  CHECK(out(0, 0) == 0.5);
  CHECK(out(0, 1) == 2.0);
  CHECK_THROWS_AS(p.apply(Matrix(1, 3)), InvalidArgument);
  CHECK(parse_preprocess(to_string(Preprocessor::Kind::zscore)) == Preprocessor::Kind::zscore);
}

TEST_CASE("one-hot encoding") {
  const RowVector v = one_hot(2, 4);
  CHECK(v == (RowVector(4) << 0, 0, 1, 0).finished());
  const Matrix m = one_hot(std::vector<Index>{0, 3, 1}, 4);
  CHECK(m.rowwise().sum().isOnes());
  CHECK_THROWS_AS(one_hot(4, 4), InvalidArgument);

  Dataset ds;
  ds.X = Matrix::Zero(3, 1);
  ds.Y = Matrix(3, 1);
  ds.Y << 5, -1, 5;
  const Dataset c = to_classification(ds);
  CHECK(c.classes == std::vector<double>{-1.0, 5.0});
  CHECK(c.Y(0, 1) == 1.0);
  ds.Y(1, 0) = 2.0;
  CHECK_THROWS_AS(to_classification(ds, c.classes), DataError);
}

TEST_CASE("subsample is deterministic and without repeats") {
  Dataset ds;
  ds.X = Matrix(100, 1);
  for (Index i = 0; i < 100; ++i) ds.X(i, 0) = static_cast<double>(i);
  ds.Y = ds.X;
  const Dataset a = subsample(ds, 40, 3), b = subsample(ds, 40, 3);
  CHECK(testing::bit_equal(a.X, b.X));
  std::vector<double> v(a.X.data(), a.X.data() + 40);
  std::sort(v.begin(), v.end());
  CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
  CHECK_THROWS_AS(subsample(ds, 101, 1), InvalidArgument);
}

TEST_CASE("synthetic problems have the prescribed spectrum") {
  Vector lam(2);
  lam << 1.0, 0.01;
  const auto prob = synth_spectrum(5000, 2, lam, 0.0, 1);
  const Vector ev = testing::descending_eigenvalues(testing::covariance(prob.data.X));
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(0.05));
  CHECK(ev[1] == doctest::Approx(0.01).epsilon(0.05));

  Vector lam5(5);
  lam5 << 3, 2, 1, 0.5, 0.1;
  const auto p5 = synth_spectrum(40, 5, lam5, 0.0, 2);
  const Eigen::MatrixXd X = p5.data.X;
  const Eigen::VectorXd sol = X.colPivHouseholderQr().solve(Eigen::VectorXd(p5.data.Y.col(0)));
  CHECK((sol - p5.alpha_star).cwiseAbs().maxCoeff() < 1e-8);

  const auto again = synth_spectrum(40, 5, lam5, 0.0, 2);
  CHECK(testing::bit_equal(again.data.X, p5.data.X));
  CHECK_THROWS_AS(synth_spectrum(3, 5, lam5, 0.0, 1), InvalidArgument);
  lam5[4] = -1;
  CHECK_THROWS_AS(synth_spectrum(40, 5, lam5, 0.0, 1), InvalidArgument);
}
