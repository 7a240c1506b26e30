#include "varpol/csv_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "varpol/errors.hpp"

namespace varpol {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string policy_csv(const PolicyPath& path) {
  std::ostringstream out;
  out << "t,pi,feasible\n";
  for (std::size_t t = 0; t < path.pis.size(); ++t)
    out << t << ',' << format_double(path.pis[t]) << ',' << (path.steps[t].feasible ? 1 : 0)
        << '\n';
  return out.str();
}

std::string backtest_csv(const BacktestResult& result) {
  std::ostringstream out;
  out << "t,pi,wealth,reward,value,scenario\n";
  for (std::size_t t = 0; t < result.wealth.size(); ++t) {
    out << t << ',' << format_double(result.pis[t]) << ',' << format_double(result.wealth[t])
        << ',';
    if (t < result.reward.size()) out << format_double(result.reward[t]);
    out << ',' << format_double(result.value[t]) << ',' << result.label << '\n';
  }
  return out.str();
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "family,n_params,d_stat,critical,reject\n";
  for (const auto& row : rows)
    out << row.family << ',' << row.n_params << ',' << format_double(row.ks.d_stat) << ','
        << format_double(row.ks.critical) << ',' << (row.ks.reject ? "true" : "false") << '\n';
  return out.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) raise(Errc::io_error, "cannot create directory " + target.parent_path().string());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io_error, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) raise(Errc::io_error, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    raise(Errc::io_error, "cannot rename " + tmp.string() + " to " + target.string());
  }
}

}  // namespace varpol
