#include "varpol/execute.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "varpol/backtest.hpp"
#include "varpol/csv_io.hpp"
#include "varpol/errors.hpp"
#include "varpol/fit.hpp"
#include "varpol/gof.hpp"
#include "varpol/json_io.hpp"
#include "varpol/marketdata.hpp"
#include "varpol/policy.hpp"

namespace varpol::cli {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kAllFamilies{"pareto", "weibull", "invgauss",
                                            "mixnormal", "vargamma", "kde"};
// The policy recursion is solved for the families the backward solver is
// built around; the comparison subcommand covers the five parametric ones.
const std::vector<std::string> kPolicyFamilies{"pareto", "weibull", "invgauss", "kde"};
const std::vector<std::string> kCompareFamilies{"pareto", "weibull", "invgauss", "mixnormal",
                                                "vargamma"};

struct Fitted {
  std::string family;
  DistModel model;
  bool has_report = false;
  FitReport report;
};

SampleTransform transform_of(const RunConfig& cfg) {
  if (cfg.transform == "absolute") return SampleTransform::absolute_value;
  if (cfg.transform == "shifted") return SampleTransform::shifted;
  return SampleTransform::positive_only;
}

bool positive_support(const std::string& family) {
  return family == "pareto" || family == "weibull" || family == "invgauss";
}

struct Pipeline {
  RunConfig cfg;
  Windows windows;

  const std::vector<double>& fit_sample(const std::string& family) {
    if (positive_support(family)) {
      if (transformed_fit.empty())
        transformed_fit = transform_sample(windows.fit.values, transform_of(cfg));
      return transformed_fit;
    }
    return windows.fit.values;
  }

  const std::vector<double>& holdout_sample(const std::string& family) {
    if (positive_support(family)) {
      if (transformed_holdout.empty())
        transformed_holdout = transform_sample(windows.holdout.values, transform_of(cfg));
      return transformed_holdout;
    }
    return windows.holdout.values;
  }

 private:
  std::vector<double> transformed_fit;
  std::vector<double> transformed_holdout;
};

Pipeline load_pipeline(const RunConfig& cfg) {
  if (cfg.input.empty()) raise(Errc::invalid_value, "--input is required");
  Pipeline p;
  p.cfg = cfg;
  const PriceSeries prices = load_prices(cfg.input);
  ReturnSeries returns = compute_returns(prices);
  if (cfg.offset > 0) {
    if (cfg.offset >= returns.size())
      raise(Errc::insufficient_data, "offset consumes the whole return series");
    returns.dates.erase(returns.dates.begin(), returns.dates.begin() + cfg.offset);
    returns.values.erase(returns.values.begin(), returns.values.begin() + cfg.offset);
  }
  p.windows = split_windows(returns, cfg.windows);
  return p;
}

Fitted fit_family(Pipeline& p, const std::string& family) {
  Fitted f;
  f.family = family;
  const std::vector<double>& sample = p.fit_sample(family);
  if (family == "kde") {
    f.model = fit_kde(sample, p.cfg.bandwidth);
    return f;
  }
  f.has_report = true;
  if (family == "pareto") f.report = fit_pareto(sample);
  else if (family == "weibull") f.report = fit_weibull(sample);
  else if (family == "invgauss") f.report = fit_invgauss(sample);
  else if (family == "mixnormal") f.report = fit_mixture_normal(sample);
  else if (family == "vargamma") f.report = fit_variance_gamma(sample);
  else raise(Errc::invalid_value, "unknown family '" + family + "'");
  f.model = f.report.model;
  return f;
}

std::vector<Fitted> build_models(Pipeline& p, const std::vector<std::string>& default_families) {
  std::vector<Fitted> out;
  if (!p.cfg.model_files.empty()) {
    for (const std::string& path : p.cfg.model_files) {
      std::ifstream in(path);
      if (!in) raise(Errc::missing_file, "cannot open model file " + path);
      nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded()) raise(Errc::invalid_value, path + " is not valid JSON");
      Fitted f;
      f.model = model_from_json(j);
      f.family = family_name(f.model);
      out.push_back(std::move(f));
    }
    return out;
  }
  const auto& families = p.cfg.families.empty() ? default_families : p.cfg.families;
  out.reserve(families.size());
  for (const std::string& family : families) out.push_back(fit_family(p, family));
  return out;
}

double default_terminal_pi(const std::string& family) {
  if (family == "weibull") return 1e-5;
  if (family == "kde") return 0.001;
  return 0.1;
}

double default_wealth_scale(const std::string& family) { return family == "kde" ? 1000.0 : 1.0; }

PolicyConfig policy_config(const RunConfig& cfg, const std::string& family, double rate) {
  PolicyConfig pc;
  pc.rate = rate;
  pc.quantile_level = cfg.quantile_level;
  pc.confidence = cfg.confidence;
  pc.wealth_scale = cfg.wealth_scale.value_or(default_wealth_scale(family));
  pc.txn_rate = cfg.txn_rate;
  pc.terminal_pi = cfg.terminal_pi.value_or(default_terminal_pi(family));
  if (pc.terminal_pi > pc.wealth_scale) pc.terminal_pi = pc.wealth_scale;
  pc.horizon = cfg.horizon;
  if (cfg.denominator_convention == "survival_cur")
    pc.denominator_convention = DenomConvention::survival_cur;
  else if (cfg.denominator_convention == "survival_prev")
    pc.denominator_convention = DenomConvention::survival_prev;
  return pc;
}

/// Pareto policies integrate the Lomax form of the fitted (scale, shape).
DistModel policy_model(const Fitted& f) {
  if (const auto* p = std::get_if<ParetoParams>(&f.model))
    return ParetoParams{p->scale, p->shape, ParetoForm::lomax};
  return f.model;
}

std::string rate_tag(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rate);
  return buf;
}

std::string join(const fs::path& dir, const std::string& name) { return (dir / name).string(); }

}  // namespace

std::vector<std::string> execute(const RunConfig& config, const std::string& subcommand) {
  validate_config(config);
  const fs::path out_dir(config.out_dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& path, const std::string& content) {
    atomic_write_file(path, content);
    written.push_back(path);
  };

  Pipeline p = load_pipeline(config);

  if (subcommand == "fit") {
    const auto& families = config.families.empty() ? kAllFamilies : config.families;
    for (const std::string& family : families) {
      Fitted f = fit_family(p, family);
      emit(join(out_dir, "model_" + family + ".json"), model_to_json(f.model).dump(2) + "\n");
      if (f.has_report)
        emit(join(out_dir, "fit_" + family + ".json"), fit_report_to_json(f.report).dump(2) + "\n");
      else {
        // KDE: report the bandwidth in the same tabular shape
        nlohmann::json j;
        j["family"] = family;
        const auto& k = std::get<KdeModel>(f.model);
        j["n"] = k.samples.size();
        j["parameters"] = nlohmann::json::array(
            {{{"parameter", "bandwidth"}, {"estimate", k.bandwidth}, {"std_error", nullptr}}});
        emit(join(out_dir, "fit_" + family + ".json"), j.dump(2) + "\n");
      }
    }
    return written;
  }

  if (subcommand == "gof" || subcommand == "compare") {
    const auto defaults = subcommand == "compare" ? kCompareFamilies : kAllFamilies;
    std::vector<Fitted> fitted = build_models(p, defaults);
    std::vector<ComparisonRow> rows;
    for (const Fitted& f : fitted) {
      const auto& holdout = p.holdout_sample(f.family);
      const KsResult ks = ks_statistic(holdout, f.model, 0.05);
      if (subcommand == "gof")
        emit(join(out_dir, "ks_" + f.family + ".json"),
             ks_result_to_json(f.family, ks).dump(2) + "\n");
      ComparisonRow row;
      row.family = f.family;
      row.n_params = parameter_count(f.model);
      row.ks = ks;
      rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
      return a.ks.d_stat < b.ks.d_stat;
    });
    emit(join(out_dir, "comparison.csv"), comparison_csv(rows));
    return written;
  }

  if (subcommand == "policy" || subcommand == "backtest") {
    std::vector<Fitted> fitted = build_models(p, kPolicyFamilies);
    for (const Fitted& f : fitted) {
      const DistModel model = policy_model(f);
      for (double rate : config.rates) {
        const PolicyConfig pc = policy_config(config, f.family, rate);
        for (CostMode mode : {CostMode::no_cost, CostMode::with_cost}) {
          const PolicyPath path = backward_path(model, pc, mode);
          const std::string tag =
              f.family + "_r" + rate_tag(rate) + (mode == CostMode::no_cost ? "_nocost" : "_cost");
          if (subcommand == "policy") {
            emit(join(out_dir, "policy_" + tag + ".csv"), policy_csv(path));
          } else {
            BacktestResult res;
            res.pis = path.pis;
            res.wealth = wealth_path(path, p.windows.terminal.values, pc);
            res.reward = res.wealth.size() >= 2 ? reward_path(res.wealth) : std::vector<double>{};
            res.value = value_path(res.wealth);
            res.config = pc;
            res.cost_mode = mode;
            res.label = tag;
            emit(join(out_dir, "backtest_" + tag + ".csv"), backtest_csv(res));
          }
        }
      }
    }
    return written;
  }

  raise(Errc::invalid_value, "unknown subcommand '" + subcommand + "'");
}

}  // namespace varpol::cli
