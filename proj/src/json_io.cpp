#include "varpol/json_io.hpp"

#include <utility>
#include <vector>

#include "varpol/errors.hpp"

namespace varpol {

using nlohmann::json;

namespace {

double get_positive(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    raise(Errc::invalid_value, std::string("model json: missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::vector<std::pair<std::string, double>> named_parameters(const DistModel& model) {
  return std::visit(
      [](const auto& m) -> std::vector<std::pair<std::string, double>> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ParetoParams>)
          return {{"scale", m.scale}, {"shape", m.shape}};
        else if constexpr (std::is_same_v<T, WeibullParams>)
          return {{"scale", m.scale}, {"shape", m.shape}};
        else if constexpr (std::is_same_v<T, InverseGaussianParams>)
          return {{"mean", m.mean}, {"shape", m.shape}};
        else if constexpr (std::is_same_v<T, MixtureNormalParams>)
          return {{"mu1", m.mu1}, {"mu2", m.mu2}, {"sigma", m.sigma}, {"mix", m.mix}};
        else if constexpr (std::is_same_v<T, VarianceGammaParams>)
          return {{"location", m.location},
                  {"spread", m.spread},
                  {"asymmetry", m.asymmetry},
                  {"shape", m.shape}};
        else
          return {{"bandwidth", m.bandwidth}};
      },
      model);
}

}  // namespace

json model_to_json(const DistModel& model) {
  json j;
  j["family"] = family_name(model);
  if (const auto* p = std::get_if<ParetoParams>(&model))
    j["form"] = p->form == ParetoForm::type1 ? "type1" : "lomax";
  for (const auto& [name, value] : named_parameters(model)) j[name] = value;
  if (const auto* k = std::get_if<KdeModel>(&model)) {
    j["kernel"] = "gaussian";
    j["samples"] = k->samples;
  }
  return j;
}

DistModel model_from_json(const json& j) {
  if (!j.contains("family")) raise(Errc::invalid_value, "model json: missing 'family'");
  const std::string family = j["family"].get<std::string>();
  DistModel model;
  if (family == "pareto") {
    ParetoParams p{get_positive(j, "scale"), get_positive(j, "shape"), ParetoForm::type1};
    if (j.value("form", "type1") == std::string("lomax")) p.form = ParetoForm::lomax;
    model = p;
  } else if (family == "weibull") {
    model = WeibullParams{get_positive(j, "scale"), get_positive(j, "shape")};
  } else if (family == "invgauss") {
    model = InverseGaussianParams{get_positive(j, "mean"), get_positive(j, "shape")};
  } else if (family == "mixnormal") {
    model = MixtureNormalParams{get_positive(j, "mu1"), get_positive(j, "mu2"),
                                get_positive(j, "sigma"), get_positive(j, "mix")};
  } else if (family == "vargamma") {
    model = VarianceGammaParams{get_positive(j, "location"), get_positive(j, "spread"),
                                get_positive(j, "asymmetry"), get_positive(j, "shape")};
  } else if (family == "kde") {
    KdeModel k;
    k.bandwidth = get_positive(j, "bandwidth");
    if (!j.contains("samples") || !j["samples"].is_array())
      raise(Errc::invalid_value, "model json: kde needs a 'samples' array");
    k.samples = j["samples"].get<std::vector<double>>();
    model = k;
  } else {
    raise(Errc::invalid_value, "model json: unknown family '" + family + "'");
  }
  validate(model);
  return model;
}

json fit_report_to_json(const FitReport& report) {
  json rows = json::array();
  for (const auto& [name, value] : named_parameters(report.model)) {
    json row;
    row["parameter"] = name;
    row["estimate"] = value;
    const auto it = report.std_errors.find(name);
    row["std_error"] = it == report.std_errors.end() ? json(nullptr) : json(it->second);
    rows.push_back(std::move(row));
  }
  json j;
  j["family"] = family_name(report.model);
  j["n"] = report.n;
  j["log_likelihood"] = report.log_likelihood;
  j["parameters"] = std::move(rows);
  j["model"] = model_to_json(report.model);
  return j;
}

json ks_result_to_json(const std::string& family, const KsResult& result) {
  json j;
  j["family"] = family;
  j["n"] = result.n;
  j["level"] = result.level;
  j["d_stat"] = result.d_stat;
  j["critical"] = result.critical;
  j["reject"] = result.reject;
  return j;
}

}  // namespace varpol
