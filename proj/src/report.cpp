#include "qdl/report.hpp"

#include <cmath>

namespace qdl {

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

CheckResult& Report::add(const std::string& name, double deviation, double tol, std::size_t support,
                         const std::string& note) {
  const auto now = std::chrono::steady_clock::now();
  CheckResult c;
  c.name = name;
  c.max_deviation = deviation;
  c.passed = std::isfinite(deviation) && deviation < tol;
  c.support_used = support;
  c.wall_time = std::chrono::duration<double>(now - last_).count();
  c.note = note;
  c.tolerance = tol;
  last_ = now;
  checks.push_back(c);
  return checks.back();
}

CheckResult& Report::add_bool(const std::string& name, bool ok, const std::string& note) {
  CheckResult& c = add(name, ok ? 0.0 : 1.0, 0.5, 0, note);
  c.boolean = true;
  return c;
}

void Report::set_tolerance(double tol) {
  for (auto& c : checks)
    if (!c.boolean) {
      c.tolerance = tol;
      c.passed = std::isfinite(c.max_deviation) && c.max_deviation < tol;
    }
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  for (auto it = other.data.begin(); it != other.data.end(); ++it) data[it.key()] = it.value();
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["passed"] = passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json x;
    x["name"] = c.name;
    x["passed"] = c.passed;
    x["max_deviation"] = c.max_deviation;
    if (!c.boolean) x["tolerance"] = c.tolerance;
    x["support_used"] = c.support_used;
    x["wall_time"] = c.wall_time;
    if (!c.note.empty()) x["note"] = c.note;
    arr.push_back(x);
  }
  j["checks"] = arr;
  j["data"] = data;
  return j;
}

}  // namespace qdl
