#include "eigenpro/model_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "eigenpro/csv.hpp"
#include "eigenpro/error.hpp"

namespace eigenpro {
namespace {

constexpr int kVersion = 1;

void write_values(std::ostream& out, const double* data, Index count) {
  for (Index i = 0; i < count; ++i) {
    if (i) out << ' ';
    out << csv::format_double(data[i]);
  }
  out << '\n';
}

void write_vector(std::ostream& out, const char* name, const Vector& v) {
  out << "vector " << name << ' ' << v.size() << '\n';
  write_values(out, v.data(), v.size());
}

void write_matrix(std::ostream& out, const char* name, const Matrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) write_values(out, m.data() + i * m.cols(), m.cols());
}

void write_scalar(std::ostream& out, const char* name, double v) {
  out << "scalar " << name << ' ' << csv::format_double(v) << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) fail("unexpected end of file");
    return w;
  }

  double number() {
    const std::string w = word();
    try {
      return csv::parse_double(w, 0);
    } catch (const DataError&) {
      fail("cannot parse '" + w + "' as a number");
    }
  }

  std::uint64_t unsigned_integer() {
    const std::string w = word();
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) fail("expected an integer, got '" + w + "'");
    return v;
  }

  Index count() {
    return static_cast<Index>(unsigned_integer());
  }

  std::string rest_of_line() {
    std::string s;
    std::getline(in_, s);
    const auto first = s.find_first_not_of(' ');
    return first == std::string::npos ? std::string() : s.substr(first);
  }

  [[noreturn]] void fail(const std::string& what) {
    throw DataError("model file: " + what);
  }

 private:
  std::istream& in_;
};

}  // namespace

void save_model(const Model& model, std::ostream& out) {
  out << "eigenpro-model " << kVersion << '\n';
  for (const auto& [key, value] : model.config.describe()) out << "config " << key << ' ' << value << '\n';
  out << "task " << to_string(model.task) << '\n';
  out << "classes " << model.classes.size();
  for (double c : model.classes) out << ' ' << csv::format_double(c);
  out << '\n';
  const Preprocessor& p = model.preprocess;
  out << "preprocess " << to_string(p.kind) << ' ' << p.input_dim << '\n';
  out << "kept " << p.kept.size();
  for (Index j : p.kept) out << ' ' << j;
  out << '\n';
  write_vector(out, "shift", p.shift);
  write_vector(out, "scale", p.scale);

  if (const auto* lm = std::get_if<LinearModel>(&model.predictor)) {
    if (const RffMap* rff = lm->feature_map.rff()) {
      write_matrix(out, "omega", rff->omega);
      write_vector(out, "phase", rff->phase);
      write_scalar(out, "rff_bandwidth", rff->source_bandwidth);
      out << "integer rff_seed " << rff->seed << '\n';
    } else if (const RbfMap* rbf = lm->feature_map.rbf()) {
      write_matrix(out, "centers", rbf->centers);
    }
    write_matrix(out, "alpha", lm->alpha);
  } else {
    const auto& km = std::get<KernelModel>(model.predictor);
    write_matrix(out, "training_points", km.training_points);
    write_matrix(out, "alpha", km.alpha);
  }
  const EigenSystem& es = model.eigensystem;
  write_vector(out, "eigenvalues", es.values);
  write_scalar(out, "tail", es.tail);
  out << "integer subsample_size " << es.subsample_size << '\n';
  write_matrix(out, "eigenvectors", es.vectors);
  out << "end\n";
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  save_model(model, out);
  if (!out) throw DataError("error writing " + path.string());
}

Model load_model(std::istream& in) {
  Reader r(in);
  if (r.word() != "eigenpro-model") r.fail("missing 'eigenpro-model' header");
  const Index version = r.count();
  if (version != kVersion) r.fail("unsupported version " + std::to_string(version));

  Model model;
  std::string task = "regression";
  std::map<std::string, Vector> vectors;
  std::map<std::string, Matrix> matrices;
  std::map<std::string, double> scalars;
  std::map<std::string, std::uint64_t> integers;
  for (;;) {
    const std::string tag = r.word();
    if (tag == "end") break;
    if (tag == "config") {
      const std::string key = r.word();
      apply_setting(model.config, key, r.rest_of_line());
    } else if (tag == "task") {
      task = r.word();
    } else if (tag == "classes") {
      const Index c = r.count();
      for (Index i = 0; i < c; ++i) model.classes.push_back(r.number());
    } else if (tag == "preprocess") {
      model.preprocess.kind = parse_preprocess(r.word());
      model.preprocess.input_dim = r.count();
    } else if (tag == "kept") {
      const Index c = r.count();
      for (Index i = 0; i < c; ++i) model.preprocess.kept.push_back(r.count());
    } else if (tag == "vector") {
      const std::string name = r.word();
      Vector v(r.count());
      for (Index i = 0; i < v.size(); ++i) v[i] = r.number();
      vectors[name] = std::move(v);
    } else if (tag == "matrix") {
      const std::string name = r.word();
      const Index rows = r.count();
      const Index cols = r.count();
      Matrix m(rows, cols);
      for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = r.number();
      matrices[name] = std::move(m);
    } else if (tag == "integer") {
      const std::string name = r.word();
      integers[name] = r.unsigned_integer();
    } else if (tag == "scalar") {
      const std::string name = r.word();
      scalars[name] = r.number();
    } else {
      r.fail("unknown section '" + tag + "'");
    }
  }

  auto vec = [&](const char* name) -> Vector& {
    auto it = vectors.find(name);
    if (it == vectors.end()) r.fail(std::string("missing vector '") + name + "'");
    return it->second;
  };
  auto mat = [&](const char* name) -> Matrix& {
    auto it = matrices.find(name);
    if (it == matrices.end()) r.fail(std::string("missing matrix '") + name + "'");
    return it->second;
  };
  auto scalar = [&](const char* name) {
    auto it = scalars.find(name);
    if (it == scalars.end()) r.fail(std::string("missing scalar '") + name + "'");
    return it->second;
  };
  auto integer = [&](const char* name) {
    auto it = integers.find(name);
    if (it == integers.end()) r.fail(std::string("missing integer '") + name + "'");
    return it->second;
  };

  model.task = parse_task(task);
  model.preprocess.shift = vec("shift");
  model.preprocess.scale = vec("scale");
  const Index kept = static_cast<Index>(model.preprocess.kept.size());
  if (model.preprocess.shift.size() != kept || model.preprocess.scale.size() != kept)
    r.fail("preprocessing blocks have inconsistent sizes");

  const TrainConfig& c = model.config;
  if (c.mode == TrainMode::primal_kernel) {
    KernelModel km;
    km.spec = c.kernel;
    km.training_points = std::move(mat("training_points"));
    km.alpha = std::move(mat("alpha"));
    if (km.alpha.rows() != km.training_points.rows() || km.training_points.cols() != kept)
      r.fail("kernel model blocks have inconsistent sizes");
    model.predictor = std::move(km);
  } else {
    LinearModel lm;
    Index feature_dim = kept;
    if (c.mode == TrainMode::rff) {
      RffMap map;
      map.omega = std::move(mat("omega"));
      map.phase = std::move(vec("phase"));
      map.source_bandwidth = scalar("rff_bandwidth");
      map.seed = integer("rff_seed");
      if (map.omega.cols() != kept || map.phase.size() != map.omega.rows())
        r.fail("rff blocks have inconsistent sizes");
      feature_dim = map.omega.rows();
      lm.feature_map = FeatureMap(std::move(map));
    } else if (c.mode == TrainMode::rbf) {
      RbfMap map;
      map.centers = std::move(mat("centers"));
      map.spec = c.kernel;
      if (map.centers.cols() != kept) r.fail("rbf centers have the wrong dimension");
      feature_dim = map.centers.rows();
      lm.feature_map = FeatureMap(std::move(map));
    }
    lm.alpha = std::move(mat("alpha"));
    if (lm.alpha.rows() != feature_dim) r.fail("alpha does not match the feature dimension");
    model.predictor = std::move(lm);
  }
  EigenSystem& es = model.eigensystem;
  es.values = vec("eigenvalues");
  es.vectors = mat("eigenvectors");
  es.tail = scalar("tail");
  es.subsample_size = static_cast<Index>(integer("subsample_size"));
  if (es.vectors.cols() != es.values.size()) r.fail("eigensystem blocks have inconsistent sizes");
  return model;
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + path.string());
  try {
    return load_model(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace eigenpro
