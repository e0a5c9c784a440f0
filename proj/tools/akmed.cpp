// Command-line harness: run one clustering algorithm on a CSV dataset, or
// sweep random-rival budgets, and emit JSON/CSV reports.

#include "akm/report.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"akmed: query-budgeted k-medoids clustering harness"};

  std::string data_path;
  std::string manifest_path;
  int label_col_flag = std::numeric_limits<int>::min();
  std::string algo = "active";
  int k = 2;
  int b = 2;
  int s = 1;
  long long th = 0;
  int p = 100;
  std::uint64_t seed = 42;
  double budget = -1.0;
  bool shuffle = false;
  bool sweep = false;
  int sweep_steps = 20;
  std::string out_path;
  std::string curve_path;
  std::string ledger_path;
  std::string nmi_variant = "sqrt";

  app.add_option("--data", data_path, "dataset CSV path");
  app.add_option("--manifest", manifest_path,
                 "JSON manifest naming path, label_col and k (overridden by explicit flags)");
  app.add_option("--label-col", label_col_flag, "0-based label column; -1 for the last column");
  app.add_option("--algo", algo, "algorithm: active | rr | full")->default_val("active");
  app.add_option("--k", k, "number of clusters");
  app.add_option("--b", b, "branching factor (active)")->default_val(2);
  app.add_option("--s", s, "random picks per cluster (active)")->default_val(1);
  app.add_option("--th", th, "leaf threshold t_h; defaults to k*(s+1)");
  app.add_option("--p", p, "max k-medoids iterations")->default_val(100);
  app.add_option("--seed", seed, "RNG seed")->default_val(42);
  app.add_option("--budget", budget, "random-rival budget as a fraction of all pairs");
  app.add_flag("--shuffle", shuffle, "shuffle the input order before partitioning (active)");
  app.add_flag("--sweep", sweep, "sweep random-rival budgets 1/steps .. 1");
  app.add_option("--sweep-steps", sweep_steps, "number of sweep steps")->default_val(20);
  app.add_option("--out", out_path, "JSON report output path");
  app.add_option("--curve", curve_path, "budget_ratio,nmi CSV output path (sweep)");
  app.add_option("--ledger", ledger_path, "flat results CSV to append to");
  const auto* nmi_opt =
      app.add_option("--nmi-variant", nmi_variant, "sqrt | max | arithmetic")->default_val("sqrt");

  CLI11_PARSE(app, argc, argv);

  try {
    akm::RunConfig config;
    if (!manifest_path.empty()) {
      const akm::DatasetManifest manifest = akm::load_manifest(manifest_path);
      config.data_path = manifest.path;
      config.label_column = manifest.label_column;
      config.dataset_name = manifest.name;
      if (manifest.k > 0) config.k = manifest.k;
    }
    if (!data_path.empty()) config.data_path = data_path;
    if (label_col_flag != std::numeric_limits<int>::min()) config.label_column = label_col_flag;
    if (config.data_path.empty())
      throw std::invalid_argument("no dataset given; pass --data or --manifest");
    if (app.count("--k") > 0 || manifest_path.empty()) config.k = k;

    config.algo = akm::algorithm_from_string(algo);
    config.b = b;
    config.s = s;
    config.leaf_threshold = static_cast<akm::Index>(th);
    config.max_iterations = p;
    config.seed = seed;
    config.budget_ratio = budget;
    config.shuffle_order = shuffle;
    config.nmi_variant = akm::nmi_variant_from_string(nmi_variant);
    config.require_nmi = nmi_opt->count() > 0;

    const akm::Dataset dataset = akm::load_csv(config.data_path, config.label_column);

    if (dataset.labels) {
      int classes = 0;
      for (int label : *dataset.labels) classes = std::max(classes, label + 1);
      std::vector<bool> seen(static_cast<std::size_t>(classes), false);
      int distinct = 0;
      for (int label : *dataset.labels)
        if (label >= 0 && !seen[static_cast<std::size_t>(label)]) {
          seen[static_cast<std::size_t>(label)] = true;
          ++distinct;
        }
      if (distinct != config.k)
        std::cerr << "warning: k=" << config.k << " but ground truth has " << distinct
                  << " classes\n";
    }

    if (sweep) {
      if (config.algo != akm::Algorithm::RandomRival)
        throw std::invalid_argument("--sweep requires --algo rr");
      if (out_path.empty() && curve_path.empty())
        throw std::invalid_argument("--sweep needs --out and/or --curve");
      const std::vector<akm::RunReport> reports =
          akm::sweep_budget(config, dataset, sweep_steps);
      if (!out_path.empty()) akm::write_reports_json(reports, out_path);
      if (!curve_path.empty()) akm::write_curve_csv(reports, curve_path);
      if (!ledger_path.empty())
        for (const akm::RunReport& r : reports) akm::append_report_csv(r, ledger_path);
      for (const akm::RunReport& r : reports)
        std::cout << r.dataset << " rr budget=" << r.budget_ratio
                  << " nmi=" << (r.nmi ? std::to_string(*r.nmi) : "n/a") << '\n';
    } else {
      const akm::RunReport report = akm::run_once(config, dataset);
      if (!out_path.empty()) akm::write_report_json(report, out_path);
      if (!ledger_path.empty()) akm::append_report_csv(report, ledger_path);
      std::cout << report.dataset << ' ' << report.algorithm << " n=" << report.n
                << " k=" << report.k << " nmi=" << (report.nmi ? std::to_string(*report.nmi) : "n/a")
                << " asked_pairs=" << report.asked_pairs << " asked_ratio=" << report.asked_ratio
                << " objective=" << report.objective << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
