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

// Explicit model of F_{p^f}: discrete-log tables over a deterministic
// modulus and generator, an absolute-trace table, and a binary disk cache.
//
// Elements are identified two ways:
//   code  in [0, q): the base-p encoding sum c_i p^i of the residue
//         polynomial sum c_i x^i modulo the field modulus;
//   log   the discrete logarithm with respect to the fixed generator, with a
//         sentinel for zero.
// Multiplication works on logs, addition on codes; both are table lookups
// plus O(f) digit work. Tables are immutable after construction and safe for
// concurrent reads.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace finmono {

struct FieldElement {
  static constexpr long long kZeroLog = -1;
  long long log = kZeroLog;

  bool is_zero() const { return log == kZeroLog; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class FieldTable {
 public:
  static constexpr long long kDefaultQBound = 531441;  // 3^12

  // Deterministic construction: the modulus is the first monic irreducible of
  // degree f over F_p when the non-leading coefficient vector is read as a
  // base-p integer scanned upward, and the generator is the element with the
  // smallest code whose multiplicative order is q-1.
  static FieldTable build(int p, int f, long long q_bound = kDefaultQBound);

  // Uses the (rank+1)-th smallest generator instead of the smallest; criterion
  // verdicts must not depend on this choice.
  static FieldTable build_with_generator_rank(int p, int f, int generator_rank,
                                              long long q_bound = kDefaultQBound);

  static FieldTable load_or_build(int p, int f, const std::filesystem::path& cache_dir,
                                  long long q_bound = kDefaultQBound);

  int p() const { return p_; }
  int f() const { return f_; }
  long long q() const { return q_; }
  // f+1 coefficients, modulus()[i] multiplying x^i, monic.
  const std::vector<uint8_t>& modulus() const { return modulus_; }
  long long generator_code() const { return exp_[1 % (q_ - 1)]; }

  FieldElement zero() const { return {}; }
  FieldElement one() const { return {0}; }
  FieldElement generator() const { return {q_ > 2 ? 1 : 0}; }

  FieldElement from_log(long long k) const;
  FieldElement from_code(long long code) const;
  long long code(FieldElement x) const { return x.is_zero() ? 0 : exp_[x.log]; }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, long long e) const;

  int absolute_trace(FieldElement x) const { return trace_[code(x)]; }

  void save(const std::filesystem::path& file) const;
  // Returns nullopt on missing file, bad magic/parameters, or CRC mismatch.
  static std::optional<FieldTable> load(const std::filesystem::path& file, int p, int f);

 private:
  FieldTable() = default;

  int p_ = 0;
  int f_ = 0;
  long long q_ = 0;
  std::vector<uint8_t> modulus_;
  std::vector<uint32_t> exp_;   // log -> code, size q-1
  std::vector<uint32_t> log_;   // code -> log, code > 0
  std::vector<uint8_t> trace_;  // code -> absolute trace, size q
};

// Spec-facing conveniences.
FieldTable build_field(int p, int f);
int absolute_trace(const FieldTable& K, FieldElement x);

// Least e >= 1 with p^e = 1 mod m; requires m >= 2 and gcd(p, m) = 1.
long long mult_order(long long p, long long m);

bool is_prime(long long n);

}  // namespace finmono
