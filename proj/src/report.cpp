#include "eigenpro/report.hpp"

#include <fstream>

#include "eigenpro/csv.hpp"
#include "eigenpro/error.hpp"

namespace eigenpro {

using csv::format_double;

std::string format_train_report(const TrainReport& report, const ReportOptions& options) {
  std::string out = "epoch,train_loss,eval_loss,metric,alpha_norm,seconds\n";
  for (const auto& r : report.records) {
    out += std::to_string(r.epoch) + ',' + format_double(r.train_loss) + ',';
    if (r.eval_loss) out += format_double(*r.eval_loss);
    out += ',' + format_double(r.metric) + ',' + format_double(r.alpha_norm) + ',';
    if (options.with_timing) out += format_double(r.seconds);
    out += '\n';
  }
  return out;
}

std::string format_spectrum_report(const std::vector<SpectrumRow>& rows) {
  std::string out = "index,eigenvalue,ratio\n";
  for (const auto& r : rows)
    out += std::to_string(r.index) + ',' + format_double(r.eigenvalue) + ',' +
           format_double(r.ratio) + '\n';
  return out;
}

std::string format_reach_demo(const std::vector<ReachDemoRow>& rows) {
  std::size_t columns = 0;
  for (const auto& r : rows) columns = std::max(columns, r.t.size());
  std::string out = "s,harmonics";
  for (std::size_t i = 1; i <= columns; ++i) out += ",t" + std::to_string(i);
  for (std::size_t i = 1; i <= columns; ++i) out += ",gd_t" + std::to_string(i);
  out += ",truncation\n";
  for (const auto& r : rows) {
    out += format_double(r.s) + ',' + std::to_string(r.harmonics);
    for (std::size_t i = 0; i < columns; ++i)
      out += ',' + (i < r.t.size() ? format_double(r.t[i]) : std::string());
    for (std::size_t i = 0; i < columns; ++i)
      out += ',' + (i < r.demo.gd_error.size() ? format_double(r.demo.gd_error[i]) : std::string());
    out += ',' + format_double(r.demo.truncation_error) + '\n';
  }
  return out;
}

std::string format_bench(const std::vector<BenchRow>& rows, const ReportOptions& options) {
  std::string out = "label,config,reached,epochs,seconds,final_train_loss,step_size\n";
  for (const auto& r : rows) {
    out += csv::escape(r.label) + ',' + csv::escape(r.overrides) + ',' +
           (r.epochs_to_target ? "yes" : "no") + ',';
    out += std::to_string(r.epochs_to_target.value_or(r.epochs_run)) + ',';
    if (options.with_timing && r.seconds_to_target) out += format_double(*r.seconds_to_target);
    out += ',' + format_double(r.final_train_loss) + ',' + format_double(r.step_size) + '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("error writing " + path.string());
}

}  // namespace eigenpro
