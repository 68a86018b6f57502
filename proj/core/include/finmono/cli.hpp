// Copyright 2026 The finmono Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end: criterion checks, the (p, D) search, trace tables,
// proof verification, and the Mellin oracle, with newline-delimited JSON or
// CSV reports.
//
// Exit codes are contractual:
//   0  pass / run complete
//   1  criterion failure (witnesses emitted)
//   2  usage or validation error
//   3  iteration budget refusal (rerun with --force to override)
//
// Reports open with a meta record echoing the configuration (parallelism
// degree excluded: reports are byte-identical across --jobs values) and the
// library version.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "finmono/criteria.hpp"

namespace finmono {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCriterionFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  enum class Command { Check, Search, Traces, Prove, Mellin };
  enum class Format { Json, Csv };

  Command command = Command::Check;

  // System parameters.
  int p = 3;
  long long D = 0;
  std::vector<long long> d = {1};
  Twist twist = Twist::Quadratic;

  // Search range.
  long long D_min = 2;
  long long D_max = 0;

  int f_max = 5;
  int field_f = 0;  // traces/mellin: K = F_{p^field_f}

  std::string criterion = "digit";  // digit | digit-abs | v | gauss | all
  Rational A = Rational(0);         // slack for digit-abs

  std::filesystem::path cache_dir;  // resolved against FINMONO_FIELD_CACHE / ./.field-cache
  int jobs = 1;
  Format format = Format::Json;
  bool format_explicit = false;  // traces defaults to CSV unless overridden
  std::size_t witness_cap = 100;
  unsigned long long iteration_budget = 43046721ULL;  // 3^16
  bool force = false;

  // Traces variants.
  std::vector<std::pair<int, long long>> freeze;  // 1-based d index -> element code
  bool vary_leading = false;

  // Proof verification.
  int base_f_max = 4;
  std::vector<int> induction_f = {5, 6};
  unsigned long long sample_budget = 10'000'000ULL;
  unsigned long long seed = 0x5eedc0de12345678ULL;
};

// Executes a validated configuration, writing the report to `out`.
int run(const RunConfig& config, std::ostream& out);

// Parses argv into a RunConfig. On parse failure (or --help) writes to `err`
// and returns an exit code instead of running.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* version_string();

}  // namespace finmono
