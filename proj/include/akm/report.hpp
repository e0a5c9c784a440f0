#pragma once

#include "akm/data.hpp"
#include "akm/eval.hpp"
#include "akm/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace akm {

enum class Algorithm { Active, RandomRival, Full };

const char* to_string(Algorithm algo);
Algorithm algorithm_from_string(const std::string& name);

struct RunConfig {
  std::string data_path;
  std::optional<int> label_column;
  std::string dataset_name;  // defaults to the CSV stem
  Algorithm algo = Algorithm::Active;
  int k = 2;
  int b = 2;
  int s = 1;
  Index leaf_threshold = 0;   // 0 resolves to k(s+1)
  int max_iterations = 100;   // p
  std::uint64_t seed = 42;
  double budget_ratio = -1.0;  // random-rival only, fraction of C(n,2)
  bool shuffle_order = false;  // active only; see ActiveParams
  NmiVariant nmi_variant = NmiVariant::Sqrt;
  bool require_nmi = false;  // error out when ground truth is missing
};

/// Everything needed to reproduce and tabulate one run.
struct RunReport {
  std::string dataset;
  std::string algorithm;
  std::string data_path;
  std::optional<int> label_column;
  Index n = 0;
  Index d = 0;
  int k = 0;
  int b = 0;
  int s = 0;
  Index leaf_threshold = 0;
  int max_iterations = 0;
  std::uint64_t seed = 0;
  double budget_ratio = -1.0;
  bool shuffle_order = false;
  std::string nmi_variant;
  std::optional<double> nmi;
  std::uint64_t asked_pairs = 0;
  double asked_ratio = 0.0;
  double objective = 0.0;
  double wall_time_sec = 0.0;

  bool operator==(const RunReport& other) const;
};

void to_json(nlohmann::json& j, const RunReport& report);
void from_json(const nlohmann::json& j, RunReport& report);

/// Runs one algorithm on a pre-loaded dataset.
RunReport run_once(const RunConfig& config, const Dataset& dataset);

/// Loads the dataset named by the config, then runs.
RunReport run_once(const RunConfig& config);

/// Random-rival reports at budgets 1/steps .. steps/steps, one shared seeded
/// pair order so the query sets are nested across steps.
std::vector<RunReport> sweep_budget(const RunConfig& config, const Dataset& dataset,
                                    int steps = 20);
std::vector<RunReport> sweep_budget(const RunConfig& config, int steps = 20);

void write_report_json(const RunReport& report, const std::filesystem::path& path);
void write_reports_json(const std::vector<RunReport>& reports, const std::filesystem::path& path);
RunReport read_report_json(const std::filesystem::path& path);

/// Appends one flat CSV row (creating the file with a header when needed).
void append_report_csv(const RunReport& report, const std::filesystem::path& path);

/// "budget_ratio,nmi" curve for plotting a sweep.
void write_curve_csv(const std::vector<RunReport>& reports, const std::filesystem::path& path);

}  // namespace akm
