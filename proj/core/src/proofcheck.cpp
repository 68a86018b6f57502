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

#include "finmono/proofcheck.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "finmono/digits.hpp"
#include "finmono/parallel.hpp"

namespace finmono {

namespace {

constexpr std::size_t kFailureCap = 100;

long long half_pow3_minus_one(int f) { return (pow_checked(3, f) - 1) / 2; }

int ds3(long long x) { return digit_sum_abs(x, 3); }

// lhs/rhs of the main inequality at (x, y, f).
std::pair<long long, long long> main_sides(long long x, long long y, int f) {
  const long long lhs = ds3(23 * x + 5 * y + half_pow3_minus_one(f));
  const long long rhs = ds3(x) + ds3(y) + f + 2;
  return {lhs, rhs};
}

void record_failure(ProofVerdict& v, ProofFailure fail) {
  v.pass = false;
  if (v.failures.size() < kFailureCap) v.failures.push_back(std::move(fail));
}

// The induction-step replay for one pair; returns through `verdict`.
void replay_pair(long long x, long long y, int f, ProofVerdict& verdict) {
  const auto [lhs, rhs] = main_sides(x, y, f);
  if (lhs > rhs) {
    record_failure(verdict, {x, y, lhs, rhs, "direct inequality fails"});
    return;
  }

  const CaseLemma& lemma = canonical_case_lemmas()[case_lemma_index_for(x) - 1];
  const long long M = lemma.modulus;
  const int k = lemma.slack;
  const long long b = x % M, d = y % M;
  const long long a = x / M, c = y / M;

  if (std::find(lemma.b_set.begin(), lemma.b_set.end(), b) == lemma.b_set.end()) {
    record_failure(verdict, {x, y, b, 0, "residue not covered by its case lemma"});
    return;
  }

  // Exact split: 23x + 5y + (3^f-1)/2 = M*(23a + 5c + (3^{f-k}-1)/2) + (23b + 5d + offset).
  const long long inner = 23 * a + 5 * c + half_pow3_minus_one(f - k);
  const long long outer = 23 * b + 5 * d + lemma.offset;
  if (M * inner + outer != 23 * x + 5 * y + half_pow3_minus_one(f)) {
    record_failure(verdict, {x, y, M * inner + outer, 23 * x + 5 * y + half_pow3_minus_one(f),
                             "split identity fails"});
    return;
  }

  // Digit concatenation below the split point.
  if (ds3(x) != ds3(a) + ds3(b) || ds3(y) != ds3(c) + ds3(d)) {
    record_failure(verdict, {x, y, 0, 0, "digit concatenation fails"});
    return;
  }

  // The case lemma instance.
  if (ds3(outer) > ds3(b) + ds3(d) + k) {
    record_failure(verdict,
                   {b, d, ds3(outer), ds3(b) + ds3(d) + k, "case lemma inequality fails"});
    return;
  }

  // The inductive bound at the reduced pair (a, c) with exponent f - k.
  const auto [inner_lhs, inner_rhs] = main_sides(a, c, f - k);
  if (inner_lhs > inner_rhs) {
    record_failure(verdict, {a, c, inner_lhs, inner_rhs, "inductive bound fails"});
    return;
  }

  // Subadditive chain: [M*inner + outer]_3 <= [inner]_3 + [outer]_3, and the
  // chained bound reproduces [x]_3 + [y]_3 + f + 2 exactly.
  if (lhs > ds3(inner) + ds3(outer)) {
    record_failure(verdict, {x, y, lhs, ds3(inner) + ds3(outer), "subadditive chain fails"});
    return;
  }
  const long long chained = inner_rhs + (ds3(b) + ds3(d) + k);
  if (chained != rhs) {
    record_failure(verdict, {x, y, chained, rhs, "chained bound does not match"});
    return;
  }
}

}  // namespace

const std::array<CaseLemma, 4>& canonical_case_lemmas() {
  static const std::array<CaseLemma, 4> lemmas = {{
      {1, 3, {0}, 3, 1, 1},
      {2, 9, {1, 4, 7}, 9, 4, 2},
      {3, 27, {2, 5, 11, 14, 23, 26}, 27, 13, 3},
      {4, 81, {8, 17, 20, 35, 44, 47, 62, 71, 74}, 81, 40, 4},
  }};
  return lemmas;
}

int case_lemma_index_for(long long x) {
  const long long r3 = x % 3;
  if (r3 == 0) return 1;
  if (r3 == 1) return 2;
  const long long r27 = x % 27;
  if (r27 == 8 || r27 == 17 || r27 == 20) return 4;
  return 3;
}

ProofVerdict verify_case_lemma(const CaseLemma& lemma) {
  ProofVerdict v;
  v.kind = "case_lemma";
  v.id = lemma.id;
  std::ostringstream os;
  os << "b in {";
  for (size_t i = 0; i < lemma.b_set.size(); ++i) os << (i ? "," : "") << lemma.b_set[i];
  os << "}, 0 <= d < " << lemma.d_bound;
  v.range = os.str();

  for (long long b : lemma.b_set) {
    for (long long d = 0; d < lemma.d_bound; ++d) {
      ++v.pairs_checked;
      const long long lhs = ds3(23 * b + 5 * d + lemma.offset);
      const long long rhs = ds3(b) + ds3(d) + lemma.slack;
      if (lhs > rhs) record_failure(v, {b, d, lhs, rhs, "case lemma inequality fails"});
    }
  }
  return v;
}

ProofVerdict verify_base_cases(int f_max) {
  if (f_max < 1) throw std::invalid_argument("verify_base_cases: f_max must be >= 1");
  ProofVerdict v;
  v.kind = "base_cases";
  v.id = f_max;
  v.range = "f <= " + std::to_string(f_max) + ", 0 <= x,y < 3^f";

  for (int f = 1; f <= f_max; ++f) {
    const long long bound = pow_checked(3, f);
    for (long long x = 0; x < bound; ++x) {
      for (long long y = 0; y < bound; ++y) {
        ++v.pairs_checked;
        const auto [lhs, rhs] = main_sides(x, y, f);
        if (lhs > rhs) record_failure(v, {x, y, lhs, rhs, "base case fails"});
      }
    }
  }
  return v;
}

ProofVerdict verify_induction_assembly(int f, const InductionOptions& opt) {
  if (f <= 4) throw std::invalid_argument("verify_induction_assembly: f must exceed 4");
  if (f > 36) throw std::invalid_argument("verify_induction_assembly: f too large for 64-bit sums");

  ProofVerdict v;
  v.kind = "induction";
  v.id = f;

  const long long bound = pow_checked(3, f);
  const bool exhaustive =
      static_cast<unsigned __int128>(bound) * bound <= opt.sample_budget;

  std::vector<ProofVerdict> partial(
      static_cast<size_t>(std::max(1, opt.jobs)), ProofVerdict{});

  if (exhaustive) {
    v.range = "0 <= x,y < 3^" + std::to_string(f) + " (exhaustive)";
    parallel_chunks(bound, opt.jobs, [&](int chunk, long long begin, long long end) {
      ProofVerdict& part = partial[static_cast<size_t>(chunk)];
      for (long long x = begin; x < end; ++x)
        for (long long y = 0; y < bound; ++y) {
          ++part.pairs_checked;
          replay_pair(x, y, f, part);
        }
    });
  } else {
    v.sampled = true;
    v.seed = opt.seed;
    v.range = "0 <= x,y < 3^" + std::to_string(f) + " (" +
              std::to_string(opt.sample_budget) + " sampled pairs)";
    parallel_chunks(static_cast<long long>(opt.sample_budget), opt.jobs,
                    [&](int chunk, long long begin, long long end) {
                      ProofVerdict& part = partial[static_cast<size_t>(chunk)];
                      // Deterministic regardless of chunking: one generator per index.
                      for (long long i = begin; i < end; ++i) {
                        std::mt19937_64 rng(opt.seed + static_cast<unsigned long long>(i));
                        std::uniform_int_distribution<long long> dist(0, bound - 1);
                        const long long x = dist(rng), y = dist(rng);
                        ++part.pairs_checked;
                        replay_pair(x, y, f, part);
                      }
                    });
  }

  v.pass = true;
  for (auto& part : partial) {
    v.pairs_checked += part.pairs_checked;
    if (!part.pass) v.pass = false;
    for (auto& fail : part.failures)
      if (v.failures.size() < kFailureCap) v.failures.push_back(std::move(fail));
  }
  return v;
}

}  // namespace finmono
