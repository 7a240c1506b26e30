#include "varpol/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "varpol/errors.hpp"

namespace varpol::cli {

namespace {

const std::set<std::string> kFamilies{"pareto", "weibull", "invgauss", "mixnormal", "vargamma", "kde"};

std::string trim(std::string s) {
  auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

// Minimal flat TOML: `key = value` lines, '#' comments, strings, numbers,
// booleans and one-level arrays. Enough for the run-config schema.
nlohmann::json parse_flat_toml(const std::string& text) {
  nlohmann::json out = nlohmann::json::object();
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto parse_scalar = [&](std::string v) -> nlohmann::json {
    v = trim(v);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    if (v == "true") return true;
    if (v == "false") return false;
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used == v.size()) return d;
    } catch (...) {
    }
    raise(Errc::invalid_value, "toml line " + std::to_string(lineno) + ": bad value '" + v + "'");
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      // keep '#' inside quoted strings
      const auto quote_open = line.find('"');
      if (quote_open == std::string::npos || hash < quote_open) line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(Errc::invalid_value, "toml line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']')
        raise(Errc::invalid_value, "toml line " + std::to_string(lineno) + ": unterminated array");
      nlohmann::json arr = nlohmann::json::array();
      std::string body = value.substr(1, value.size() - 2);
      std::istringstream items(body);
      std::string item;
      while (std::getline(items, item, ','))
        if (!trim(item).empty()) arr.push_back(parse_scalar(item));
      out[key] = std::move(arr);
    } else {
      out[key] = parse_scalar(value);
    }
  }
  return out;
}

void apply_json(const nlohmann::json& j, RunConfig& cfg) {
  auto want = [&](const char* key) { return j.contains(key) && !j[key].is_null(); };
  if (want("input")) cfg.input = j["input"].get<std::string>();
  if (want("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (want("families")) cfg.families = j["families"].get<std::vector<std::string>>();
  if (want("models")) cfg.model_files = j["models"].get<std::vector<std::string>>();
  if (want("rates")) cfg.rates = j["rates"].get<std::vector<double>>();
  if (want("quantile")) cfg.quantile_level = j["quantile"].get<double>();
  if (want("confidence")) cfg.confidence = j["confidence"].get<double>();
  if (want("txn_rate")) cfg.txn_rate = j["txn_rate"].get<double>();
  if (want("terminal_pi")) cfg.terminal_pi = j["terminal_pi"].get<double>();
  if (want("horizon")) cfg.horizon = j["horizon"].get<std::size_t>();
  if (want("wealth_scale")) cfg.wealth_scale = j["wealth_scale"].get<double>();
  if (want("bandwidth")) cfg.bandwidth = j["bandwidth"].get<double>();
  if (want("denominator_convention"))
    cfg.denominator_convention = j["denominator_convention"].get<std::string>();
  if (want("fit_len")) cfg.windows.fit_len = j["fit_len"].get<std::size_t>();
  if (want("holdout_len")) cfg.windows.holdout_len = j["holdout_len"].get<std::size_t>();
  if (want("terminal_len")) cfg.windows.terminal_len = j["terminal_len"].get<std::size_t>();
  if (want("offset")) cfg.offset = j["offset"].get<std::size_t>();
  if (want("transform")) cfg.transform = j["transform"].get<std::string>();
}

}  // namespace

RunConfig config_from_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) raise(Errc::missing_file, "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) raise(Errc::invalid_value, "config file " + path + " is not valid JSON");
  } else {
    j = parse_flat_toml(buf.str());
  }
  try {
    apply_json(j, base);
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::invalid_value, "config file " + path + ": " + e.what());
  }
  return base;
}

void validate_config(const RunConfig& config) {
  if (!(config.quantile_level > 0 && config.quantile_level < 1))
    raise(Errc::invalid_value, "quantile must lie in (0,1)");
  if (!(config.confidence > 0 && config.confidence < 1))
    raise(Errc::invalid_value, "confidence must lie in (0,1)");
  if (!(config.txn_rate >= 0 && config.txn_rate < 1))
    raise(Errc::invalid_value, "txn-rate must lie in [0,1)");
  if (config.horizon < 1) raise(Errc::invalid_value, "horizon must be >= 1");
  if (config.rates.empty()) raise(Errc::invalid_value, "at least one rate is required");
  for (double r : config.rates)
    if (!(r >= 0)) raise(Errc::invalid_value, "rates must be >= 0");
  if (config.terminal_pi && !(*config.terminal_pi > 0))
    raise(Errc::invalid_value, "terminal-pi must be > 0");
  if (config.wealth_scale && !(*config.wealth_scale > 0))
    raise(Errc::invalid_value, "wealth-scale must be > 0");
  if (config.bandwidth && !(*config.bandwidth > 0))
    raise(Errc::invalid_value, "bandwidth must be > 0");
  if (config.windows.fit_len == 0 || config.windows.holdout_len == 0 ||
      config.windows.terminal_len == 0)
    raise(Errc::invalid_value, "window lengths must be positive");
  for (const std::string& f : config.families)
    if (!kFamilies.count(f)) raise(Errc::invalid_value, "unknown family '" + f + "'");
  if (config.denominator_convention != "auto" &&
      config.denominator_convention != "survival_cur" &&
      config.denominator_convention != "survival_prev")
    raise(Errc::invalid_value, "denominator-convention must be auto, survival_cur or survival_prev");
  if (config.transform != "positive" && config.transform != "absolute" &&
      config.transform != "shifted")
    raise(Errc::invalid_value, "transform must be positive, absolute or shifted");
}

RunConfig parse_config(const std::vector<std::string>& args, std::string* subcommand_out) {
  CLI::App app{"varpol"};
  app.require_subcommand(0, 1);

  std::string config_file;
  RunConfig flags;  // flag values land here; presence checked via counts
  app.add_option("--config", config_file, "JSON or flat TOML config file");

  std::vector<CLI::App*> subs;
  for (const char* name : {"fit", "gof", "policy", "backtest", "compare"})
    subs.push_back(app.add_subcommand(name));

  // identical option set on every subcommand
  for (CLI::App* sub : subs) {
    sub->add_option("--input", flags.input);
    sub->add_option("--out-dir", flags.out_dir);
    sub->add_option("--family", flags.families)->take_all();
    sub->add_option("--model", flags.model_files)->take_all();
    sub->add_option("--rate", flags.rates)->take_all();
    sub->add_option("--quantile", flags.quantile_level);
    sub->add_option("--confidence", flags.confidence);
    sub->add_option("--txn-rate", flags.txn_rate);
    auto optional_double = [](std::optional<double>& slot) {
      return [&slot](const std::vector<std::string>& v) {
        try {
          std::size_t used = 0;
          slot = std::stod(v.at(0), &used);
          return used == v.at(0).size();
        } catch (...) {
          return false;
        }
      };
    };
    sub->add_option("--terminal-pi", optional_double(flags.terminal_pi));
    sub->add_option("--horizon", flags.horizon);
    sub->add_option("--wealth-scale", optional_double(flags.wealth_scale));
    sub->add_option("--bandwidth", optional_double(flags.bandwidth));
    sub->add_option("--denominator-convention", flags.denominator_convention);
    sub->add_option("--fit-len", flags.windows.fit_len);
    sub->add_option("--holdout-len", flags.windows.holdout_len);
    sub->add_option("--terminal-len", flags.windows.terminal_len);
    sub->add_option("--offset", flags.offset);
    sub->add_option("--transform", flags.transform);
    sub->add_option("--config", config_file);
  }

  std::vector<const char*> argv;
  argv.push_back("varpol");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ConversionError& e) {
    raise(Errc::invalid_value, e.what());
  } catch (const CLI::ValidationError& e) {
    raise(Errc::invalid_value, e.what());
  } catch (const CLI::ParseError& e) {
    raise(Errc::unknown_flag, e.what());
  }

  CLI::App* chosen = nullptr;
  for (CLI::App* sub : subs)
    if (sub->parsed()) chosen = sub;
  if (!chosen) raise(Errc::invalid_value, "expected a subcommand: fit|gof|policy|backtest|compare");
  *subcommand_out = chosen->get_name();

  RunConfig cfg;  // defaults
  if (const char* env = std::getenv("VARPOL_OUT_DIR"); env && *env) cfg.out_dir = env;
  if (!config_file.empty()) cfg = config_from_file(config_file, std::move(cfg));

  auto passed = [&](const std::string& name) { return chosen->count(name) > 0; };
  if (passed("--input")) cfg.input = flags.input;
  if (passed("--out-dir")) cfg.out_dir = flags.out_dir;
  if (passed("--family")) cfg.families = flags.families;
  if (passed("--model")) cfg.model_files = flags.model_files;
  if (passed("--rate")) cfg.rates = flags.rates;
  if (passed("--quantile")) cfg.quantile_level = flags.quantile_level;
  if (passed("--confidence")) cfg.confidence = flags.confidence;
  if (passed("--txn-rate")) cfg.txn_rate = flags.txn_rate;
  if (passed("--terminal-pi")) cfg.terminal_pi = flags.terminal_pi;
  if (passed("--horizon")) cfg.horizon = flags.horizon;
  if (passed("--wealth-scale")) cfg.wealth_scale = flags.wealth_scale;
  if (passed("--bandwidth")) cfg.bandwidth = flags.bandwidth;
  if (passed("--denominator-convention"))
    cfg.denominator_convention = flags.denominator_convention;
  if (passed("--fit-len")) cfg.windows.fit_len = flags.windows.fit_len;
  if (passed("--holdout-len")) cfg.windows.holdout_len = flags.windows.holdout_len;
  if (passed("--terminal-len")) cfg.windows.terminal_len = flags.windows.terminal_len;
  if (passed("--offset")) cfg.offset = flags.offset;
  if (passed("--transform")) cfg.transform = flags.transform;
  if (cfg.out_dir.empty()) cfg.out_dir = "varpol_out";

  validate_config(cfg);
  return cfg;
}

}  // namespace varpol::cli
