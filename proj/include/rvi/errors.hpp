#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rvi {

// Bad command-line input or flag combinations. CLI exit code 2.
class usage_error : public std::runtime_error {
 public:
  explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unusable input data: CSV parse failures, unknown columns, degenerate
// designs, too few rows. CLI exit code 3.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Rank-deficient design matrix; carries the names of the collinear columns.
class singular_design_error : public data_error {
 public:
  explicit singular_design_error(std::vector<std::string> columns)
      : data_error(make_message(columns)), columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }

 private:
  static std::string make_message(const std::vector<std::string>& columns) {
    std::string msg = "singular design matrix; collinear column(s):";
    for (const auto& c : columns) msg += " " + c;
    return msg;
  }

  std::vector<std::string> columns_;
};

// Internal numerical failure (non-convergence, consistency-check violation).
// Signals a bug or a hopeless conditioning problem, not a user error.
// CLI exit code 4.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rvi
