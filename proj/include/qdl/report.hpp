#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace qdl {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0;
  std::size_t support_used = 0;
  double wall_time = 0;
  std::string note;
  double tolerance = 0;
  bool boolean = false;
};

struct Report {
  std::string command;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  bool passed() const;
  // Records a check; passes iff deviation < tol.
  CheckResult& add(const std::string& name, double deviation, double tol, std::size_t support = 0,
                   const std::string& note = "");
  CheckResult& add_bool(const std::string& name, bool ok, const std::string& note = "");
  void merge(const Report& other);
  // Re-judges every numeric check against tol; boolean checks are left alone.
  void set_tolerance(double tol);
  nlohmann::ordered_json to_json() const;

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace qdl
