#pragma once

#include <string>
#include <vector>

#include "varpol/backtest.hpp"
#include "varpol/gof.hpp"
#include "varpol/policy.hpp"

namespace varpol {

/// Round-trip decimal formatting ("%.17g"), locale-independent.
std::string format_double(double v);

/// Columns t,pi,feasible; LF line endings.
std::string policy_csv(const PolicyPath& path);

/// Columns t,pi,wealth,reward,value,scenario; the last row has no reward.
std::string backtest_csv(const BacktestResult& result);

/// Columns family,n_params,d_stat,critical,reject.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

/// Write-then-rename so outputs appear atomically or not at all.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace varpol
