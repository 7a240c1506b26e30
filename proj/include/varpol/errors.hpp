#pragma once

#include <stdexcept>
#include <string>

namespace varpol {

enum class Errc {
  missing_file,
  malformed_row,
  non_positive_price,
  duplicate_date,
  too_short,
  insufficient_data,
  degenerate_sample,
  non_positive_sample,
  root_not_bracketed,
  em_not_converged,
  too_few_samples,
  optimizer_stalled,
  quadrature_failure,
  out_of_range,
  unsupported_level,
  empty_sample,
  zero_allocation,
  no_root,
  non_monotone,
  length_mismatch,
  unknown_flag,
  invalid_value,
  io_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::missing_file: return "missing_file";
    case Errc::malformed_row: return "malformed_row";
    case Errc::non_positive_price: return "non_positive_price";
    case Errc::duplicate_date: return "duplicate_date";
    case Errc::too_short: return "too_short";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::degenerate_sample: return "degenerate_sample";
    case Errc::non_positive_sample: return "non_positive_sample";
    case Errc::root_not_bracketed: return "root_not_bracketed";
    case Errc::em_not_converged: return "em_not_converged";
    case Errc::too_few_samples: return "too_few_samples";
    case Errc::optimizer_stalled: return "optimizer_stalled";
    case Errc::quadrature_failure: return "quadrature_failure";
    case Errc::out_of_range: return "out_of_range";
    case Errc::unsupported_level: return "unsupported_level";
    case Errc::empty_sample: return "empty_sample";
    case Errc::zero_allocation: return "zero_allocation";
    case Errc::no_root: return "no_root";
    case Errc::non_monotone: return "non_monotone";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::unknown_flag: return "unknown_flag";
    case Errc::invalid_value: return "invalid_value";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

/// Stable process exit code for each error kind, used by the CLI.
inline int errc_exit_code(Errc c) { return 10 + static_cast<int>(c); }

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message) : std::runtime_error(std::move(message)), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace varpol
