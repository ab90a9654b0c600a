#include "commring_cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "commring/error.hpp"

namespace commring::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void Report::less(const std::string& name, const std::string& tol_name, double measured, double tol) {
  checks_.push_back({name, tol_name, measured, tol, "<", measured < tol});
}

void Report::equal(const std::string& name, double measured, double expected) {
  checks_.push_back({name, "exact", measured, expected, "==", measured == expected});
}

void Report::within(const std::string& name, const std::string& tol_name, double measured, double lo, double hi) {
  checks_.push_back({name + " lower", tol_name + "_low", measured, lo, ">", measured > lo});
  checks_.push_back({name + " upper", tol_name + "_high", measured, hi, "<", measured < hi});
}

void Report::note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }

bool Report::pass() const {
  if (!error_.empty()) return false;
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

std::string Report::summary() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["pass"] = pass();
  if (!error_.empty()) j["error"] = error_;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"tolerance_name", c.tolerance_name},
                      {"relation", c.relation},
                      {"measured", format_double(c.measured)},
                      {"tolerance", format_double(c.tolerance)},
                      {"pass", c.pass}});
  }
  j["checks"] = checks;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes_) notes[k] = v;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

std::string Report::text() const {
  std::string out;
  for (const auto& c : checks_) {
    out += std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": measured " + format_double(c.measured) + " " +
           c.relation + " " + c.tolerance_name + " " + format_double(c.tolerance) + "\n";
  }
  for (const auto& [k, v] : notes_) out += "     " + k + ": " + v + "\n";
  if (!error_.empty()) out += "ERROR " + error_ + "\n";
  return out;
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) fail(ErrorCode::ShapeMismatch, "CSV row width differs from the header");
  rows_.push_back(std::move(row));
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << cells[i];
    f << "\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

}  // namespace commring::cli
