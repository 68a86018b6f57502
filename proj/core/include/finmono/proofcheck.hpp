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

// Mechanical verification of the base-3 digit inequality
//
//   [23x + 5y + (3^f - 1)/2]_3 <= [x]_3 + [y]_3 + f + 2
//
// for 0 <= x, y < 3^f: exhaustive base cases, the four finite case lemmas the
// induction leans on, and a structural replay of the induction step itself.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace finmono {

struct CaseLemma {
  int id = 0;            // 1..4
  long long modulus = 0; // 3, 9, 27, 81
  std::vector<long long> b_set;
  long long d_bound = 0; // d ranges over [0, d_bound)
  long long offset = 0;  // (modulus - 1)/2
  int slack = 0;         // log_3(modulus)
};

// The four canonical instances keyed by the residue of x: x = 0 mod 3,
// x = 1 mod 3, x = 2 mod 3 with x mod 27 outside {8,17,20}, and
// x mod 27 in {8,17,20}.
const std::array<CaseLemma, 4>& canonical_case_lemmas();

// Index (1..4) of the case lemma governing x.
int case_lemma_index_for(long long x);

struct ProofFailure {
  long long x = 0, y = 0;  // the offending pair ((b,d) for case lemmas)
  long long lhs = 0, rhs = 0;
  std::string reason;
};

struct ProofVerdict {
  std::string kind;  // "case_lemma", "base_cases", "induction"
  int id = 0;        // lemma id or f
  std::string range;
  unsigned long long pairs_checked = 0;
  bool pass = true;
  bool sampled = false;
  unsigned long long seed = 0;
  std::vector<ProofFailure> failures;  // capped at 100
};

// Checks [23b + 5d + offset]_3 <= [b]_3 + [d]_3 + slack over b in b_set,
// 0 <= d < d_bound.
ProofVerdict verify_case_lemma(const CaseLemma& lemma);

// The inequality itself for every f <= f_max and all 0 <= x, y < 3^f.
ProofVerdict verify_base_cases(int f_max = 4);

struct InductionOptions {
  unsigned long long sample_budget = 10'000'000;  // exhaustive when 9^f fits
  unsigned long long seed = 0x5eedc0de12345678ULL;
  int jobs = 1;
};

// Direct verification at one f > 4 plus a replay of the induction step: each
// pair is split by its governing case lemma, the split identity and digit
// concatenation are checked exactly, and the chained bound is confirmed to
// dominate the direct left-hand side.
ProofVerdict verify_induction_assembly(int f, const InductionOptions& opt = {});

}  // namespace finmono
