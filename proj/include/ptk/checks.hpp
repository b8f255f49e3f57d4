#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ptk/scalar.hpp"

namespace ptk {

// One entry of the verification catalog.
struct CheckInfo {
  std::string id;
  std::string module;
  std::string anchor;
  int criterion = 0;  // acceptance criterion number
  std::string summary;
};
const std::vector<CheckInfo>& check_catalog();
const CheckInfo& check_info(const std::string& id);  // throws std::invalid_argument

struct CheckOptions {
  std::uint64_t seed = 7;
  int trials = 0;  // 0 selects the per-check default
  int k_max = 5;
  int refine = 2;
};

// Outcome of one check: ordered key-value fields plus the failed assertions.
struct CheckResult {
  CheckInfo info;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> failures;
  long assertions = 0;

  bool passed() const { return failures.empty(); }
  void expect(bool ok, const std::string& what);
  void set(const std::string& key, const std::string& value);
};

// Fixed-format renderings so reports are byte-identical across runs.
std::string fmt_real(double x);
std::string fmt_int(long x);
std::string fmt_bool(bool b);
std::string fmt_complex(cd z);

CheckResult run_check(const std::string& id, const CheckOptions& opts);

}  // namespace ptk
