#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eigenpro/optimizer.hpp"
#include "eigenpro/reach.hpp"

namespace eigenpro {

/// Wall-clock columns are filled only when `with_timing` is set; otherwise
/// they stay empty so that repeated runs give byte-identical files.
struct ReportOptions {
  bool with_timing = false;
};

/// epoch,train_loss,eval_loss,metric,alpha_norm,seconds
std::string format_train_report(const TrainReport& report, const ReportOptions& options = {});

/// index,eigenvalue,ratio
std::string format_spectrum_report(const std::vector<SpectrumRow>& rows);

struct ReachDemoRow {
  double s = 0.0;
  Index harmonics = 0;
  std::vector<double> t;
  HeavisideDemo demo;
};

/// s,harmonics,t1..tL,gd_t1..gd_tL,truncation
std::string format_reach_demo(const std::vector<ReachDemoRow>& rows);

struct BenchRow {
  std::string label;
  std::string overrides;
  std::optional<Index> epochs_to_target;
  std::optional<double> seconds_to_target;
  Index epochs_run = 0;
  double final_train_loss = 0.0;
  double step_size = 0.0;
};

/// label,config,reached,epochs,seconds,final_train_loss,step_size
std::string format_bench(const std::vector<BenchRow>& rows, const ReportOptions& options = {});

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace eigenpro
