#pragma once

#include <string>
#include <vector>

namespace commring::cli {

/// One measured quantity compared against a named tolerance.
struct Check {
  std::string name;
  std::string tolerance_name;
  double measured = 0.0;
  double tolerance = 0.0;
  /// "<", "<=" or "==".
  std::string relation = "<";
  bool pass = false;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}
  void less(const std::string& name, const std::string& tol_name, double measured, double tol);
  void equal(const std::string& name, double measured, double expected);
  void within(const std::string& name, const std::string& tol_name, double measured, double lo, double hi);
  void note(const std::string& key, const std::string& value);
  void set_error(const std::string& error) { error_ = error; }
  bool has_error() const { return !error_.empty(); }
  bool pass() const;
  const std::vector<Check>& checks() const { return checks_; }
  /// Structured summary with one entry per check.
  std::string summary() const;
  /// One line per check naming the tolerance and the measured value.
  std::string text() const;

 private:
  std::string command_;
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::string error_;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Rows of formatted cells written in one go.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  /// ConfigInvalid when the file cannot be written.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace commring::cli
