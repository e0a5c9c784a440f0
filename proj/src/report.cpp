#include "akm/report.hpp"

#include "akm/active.hpp"
#include "akm/baseline.hpp"
#include "akm/oracle.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace akm {

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Active:
      return "active";
    case Algorithm::RandomRival:
      return "rr";
    case Algorithm::Full:
      return "full";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "active") return Algorithm::Active;
  if (name == "rr" || name == "random-rival") return Algorithm::RandomRival;
  if (name == "full") return Algorithm::Full;
  throw std::invalid_argument("unknown algorithm: " + name);
}

bool RunReport::operator==(const RunReport& other) const {
  return dataset == other.dataset && algorithm == other.algorithm &&
         data_path == other.data_path && label_column == other.label_column && n == other.n &&
         d == other.d && k == other.k && b == other.b && s == other.s &&
         leaf_threshold == other.leaf_threshold && max_iterations == other.max_iterations &&
         seed == other.seed && budget_ratio == other.budget_ratio &&
         shuffle_order == other.shuffle_order &&
         nmi_variant == other.nmi_variant && nmi == other.nmi &&
         asked_pairs == other.asked_pairs && asked_ratio == other.asked_ratio &&
         objective == other.objective && wall_time_sec == other.wall_time_sec;
}

void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{{"dataset", r.dataset},
                     {"algorithm", r.algorithm},
                     {"data_path", r.data_path},
                     {"label_col", r.label_column ? nlohmann::json(*r.label_column) : nlohmann::json()},
                     {"n", r.n},
                     {"d", r.d},
                     {"k", r.k},
                     {"b", r.b},
                     {"s", r.s},
                     {"th", r.leaf_threshold},
                     {"p", r.max_iterations},
                     {"seed", r.seed},
                     {"budget_ratio", r.budget_ratio},
                     {"shuffle", r.shuffle_order},
                     {"nmi_variant", r.nmi_variant},
                     {"nmi", r.nmi ? nlohmann::json(*r.nmi) : nlohmann::json()},
                     {"asked_pairs", r.asked_pairs},
                     {"asked_ratio", r.asked_ratio},
                     {"objective", r.objective},
                     {"wall_time_sec", r.wall_time_sec}};
}

void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("dataset").get_to(r.dataset);
  j.at("algorithm").get_to(r.algorithm);
  j.at("data_path").get_to(r.data_path);
  if (j.contains("label_col") && !j.at("label_col").is_null())
    r.label_column = j.at("label_col").get<int>();
  else
    r.label_column.reset();
  j.at("n").get_to(r.n);
  j.at("d").get_to(r.d);
  j.at("k").get_to(r.k);
  j.at("b").get_to(r.b);
  j.at("s").get_to(r.s);
  j.at("th").get_to(r.leaf_threshold);
  j.at("p").get_to(r.max_iterations);
  j.at("seed").get_to(r.seed);
  j.at("budget_ratio").get_to(r.budget_ratio);
  j.at("shuffle").get_to(r.shuffle_order);
  j.at("nmi_variant").get_to(r.nmi_variant);
  if (j.contains("nmi") && !j.at("nmi").is_null())
    r.nmi = j.at("nmi").get<double>();
  else
    r.nmi.reset();
  j.at("asked_pairs").get_to(r.asked_pairs);
  j.at("asked_ratio").get_to(r.asked_ratio);
  j.at("objective").get_to(r.objective);
  j.at("wall_time_sec").get_to(r.wall_time_sec);
}

namespace {

RunReport base_report(const RunConfig& config, const Dataset& dataset) {
  RunReport r;
  r.dataset = !config.dataset_name.empty() ? config.dataset_name : dataset.name;
  r.algorithm = to_string(config.algo);
  r.data_path = config.data_path;
  r.label_column = config.label_column;
  r.n = dataset.size();
  r.d = dataset.dim();
  r.k = config.k;
  r.b = config.b;
  r.s = config.s;
  r.leaf_threshold = config.leaf_threshold > 0
                         ? config.leaf_threshold
                         : static_cast<Index>(config.k) * static_cast<Index>(config.s + 1);
  r.max_iterations = config.max_iterations;
  r.seed = config.seed;
  r.budget_ratio = config.algo == Algorithm::RandomRival ? config.budget_ratio : -1.0;
  r.shuffle_order = config.algo == Algorithm::Active && config.shuffle_order;
  r.nmi_variant = to_string(config.nmi_variant);
  return r;
}

void attach_nmi(RunReport& report, const RunConfig& config, const Dataset& dataset,
                const std::vector<int>& assignment) {
  if (!dataset.labels) {
    if (config.require_nmi)
      throw std::runtime_error("run_once: NMI requested but dataset has no ground-truth labels");
    return;
  }
  report.nmi = nmi(assignment, *dataset.labels, config.nmi_variant);
}

std::uint64_t budget_from_ratio(double ratio, Index n) {
  if (!(ratio >= 0.0) || ratio > 1.0)
    throw std::invalid_argument("budget ratio must lie in [0, 1]");
  return static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(pair_count(n))));
}

}  // namespace

RunReport run_once(const RunConfig& config, const Dataset& dataset) {
  RunReport report = base_report(config, dataset);
  const auto start = std::chrono::steady_clock::now();

  std::vector<int> assignment;
  DistanceOracle oracle(dataset.points);
  switch (config.algo) {
    case Algorithm::Active: {
      ActiveParams params;
      params.k = config.k;
      params.b = config.b;
      params.s = config.s;
      params.leaf_threshold = config.leaf_threshold;
      params.max_iterations = config.max_iterations;
      params.seed = config.seed;
      params.shuffle_order = config.shuffle_order;
      const ActiveResult result = active_kmedoids(oracle, params);
      assignment = result.clustering.assignment;
      report.objective = result.clustering.objective;
      break;
    }
    case Algorithm::RandomRival: {
      if (config.budget_ratio < 0.0)
        throw std::invalid_argument("random-rival requires a budget ratio");
      const std::uint64_t budget = budget_from_ratio(config.budget_ratio, dataset.size());
      const RandomRivalResult result =
          random_rival(oracle, config.k, budget, config.max_iterations, config.seed);
      assignment = result.clustering.assignment;
      report.objective = result.clustering.objective;
      break;
    }
    case Algorithm::Full: {
      for (Index i = 0; i < dataset.size(); ++i)
        for (Index j = i + 1; j < dataset.size(); ++j) oracle.query(i, j);
      KmedoidsParams params;
      params.k = config.k;
      params.max_iterations = config.max_iterations;
      params.seed = config.seed;
      const ClusteringResult result = kmedoids_run(pairwise_distances(dataset.points), params);
      assignment = result.assignment;
      report.objective = result.objective;
      break;
    }
  }

  report.asked_pairs = oracle.ledger().asked_count();
  report.asked_ratio = dataset.size() >= 2 ? oracle.asked_ratio() : 1.0;
  report.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  attach_nmi(report, config, dataset, assignment);
  return report;
}

RunReport run_once(const RunConfig& config) {
  const Dataset dataset = load_csv(config.data_path, config.label_column);
  return run_once(config, dataset);
}

std::vector<RunReport> sweep_budget(const RunConfig& config, const Dataset& dataset, int steps) {
  if (config.algo != Algorithm::RandomRival)
    throw std::invalid_argument("sweep_budget: only the random-rival algorithm sweeps budgets");
  if (steps < 1) throw std::invalid_argument("sweep_budget: steps must be >= 1");

  const Index n = dataset.size();
  const auto all_pairs = sample_pairs(n, pair_count(n), config.seed);

  std::vector<RunReport> reports;
  reports.reserve(static_cast<std::size_t>(steps));
  for (int step = 1; step <= steps; ++step) {
    const double ratio = static_cast<double>(step) / static_cast<double>(steps);
    RunConfig step_config = config;
    step_config.budget_ratio = ratio;
    RunReport report = base_report(step_config, dataset);

    const auto start = std::chrono::steady_clock::now();
    DistanceOracle oracle(dataset.points);
    const std::uint64_t budget = budget_from_ratio(ratio, n);
    const std::vector<std::pair<Index, Index>> prefix(all_pairs.begin(),
                                                      all_pairs.begin() + static_cast<std::ptrdiff_t>(budget));
    const RandomRivalResult result =
        random_rival_with_pairs(oracle, config.k, prefix, config.max_iterations, config.seed);
    report.objective = result.clustering.objective;
    report.asked_pairs = oracle.ledger().asked_count();
    report.asked_ratio = n >= 2 ? oracle.asked_ratio() : 1.0;
    report.wall_time_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    attach_nmi(report, config, dataset, result.clustering.assignment);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<RunReport> sweep_budget(const RunConfig& config, int steps) {
  const Dataset dataset = load_csv(config.data_path, config.label_column);
  return sweep_budget(config, dataset, steps);
}

void write_report_json(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_report_json: cannot open " + path.string());
  out << nlohmann::json(report).dump(2) << '\n';
}

void write_reports_json(const std::vector<RunReport>& reports, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_reports_json: cannot open " + path.string());
  out << nlohmann::json(reports).dump(2) << '\n';
}

RunReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_report_json: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j.get<RunReport>();
}

void append_report_csv(const RunReport& r, const std::filesystem::path& path) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("append_report_csv: cannot open " + path.string());
  out.precision(17);
  if (fresh)
    out << "dataset,algorithm,n,d,k,b,s,th,p,seed,budget_ratio,shuffle,nmi_variant,nmi,"
           "asked_pairs,asked_ratio,objective,wall_time_sec\n";
  out << r.dataset << ',' << r.algorithm << ',' << r.n << ',' << r.d << ',' << r.k << ',' << r.b
      << ',' << r.s << ',' << r.leaf_threshold << ',' << r.max_iterations << ',' << r.seed << ','
      << r.budget_ratio << ',' << (r.shuffle_order ? 1 : 0) << ',' << r.nmi_variant << ',';
  if (r.nmi) out << *r.nmi;
  out << ',' << r.asked_pairs << ',' << r.asked_ratio << ',' << r.objective << ','
      << r.wall_time_sec << '\n';
}

void write_curve_csv(const std::vector<RunReport>& reports, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path.string());
  out.precision(12);
  out << "budget_ratio,nmi\n";
  for (const RunReport& r : reports) {
    out << r.budget_ratio << ',';
    if (r.nmi) out << *r.nmi;
    out << '\n';
  }
}

}  // namespace akm
