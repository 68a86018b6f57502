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

// Exact trace functions of the local systems: the negated character sum
//   raw_trace(t) = -sum_x psi_K(c x^D + sum_i t_i x^{d_i}) chi_K(x)
// (x over K for the trivial twist, over K^x for the quadratic twist, leading
// coefficient c = 1 unless varied), and its weight-zero normalization
// raw_trace / alpha^{deg(K/F_p)} via exact division in Z[zeta_p].
//
// The quadratic-twist normalization is pinned down end to end: for the
// (p, D) = (3, 23) system the value sets over F_81 and F_243 are matched
// exactly by tests, which fixes every sign convention. Trivial-twist tables
// are emitted raw and never alpha-divided; their integrality is a criterion
// verdict, not an exact division.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "finmono/criteria.hpp"
#include "finmono/cyclotomic.hpp"
#include "finmono/field.hpp"
#include "finmono/parallel.hpp"

namespace finmono {

CycInt raw_trace(const SystemSpec& spec, const FieldTable& K,
                 std::span<const FieldElement> t);
// Same with an explicit leading coefficient on x^D (must be nonzero).
CycInt raw_trace_leading(const SystemSpec& spec, const FieldTable& K, FieldElement leading,
                         std::span<const FieldElement> t);

struct TwistedTrace {
  enum class Status { Integer, NotRational, NotDivisible };
  Status status = Status::Integer;
  mpz_class value;  // set when Integer
  CycInt residue;   // the alpha-divided value (NotRational) or the raw sum (NotDivisible)
};

// Quadratic twist only; divides by alpha^{f} with f = deg(K/F_p).
TwistedTrace twisted_trace(const SystemSpec& spec, const FieldTable& K,
                           std::span<const FieldElement> t);

struct CoordSpec {
  enum class Kind { Full, NonZero, Frozen };
  Kind kind = Kind::Full;
  long long frozen_code = 0;
};

struct TraceTableRequest {
  // When set, the leading coefficient of x^D ranges over K^x and each entry
  // carries a chi2(leading) prefactor (quadratic twist only).
  bool vary_leading = false;
  std::vector<CoordSpec> coords;  // one per d_i; missing entries default Full
  unsigned long long budget = 43046721;  // 3^16 tuples
  int jobs = 1;
};

struct TraceRow {
  std::vector<long long> params;  // leading code first when varied, then coordinate codes
  CycInt raw;
  std::optional<TwistedTrace> twisted;  // quadratic twist only
};

struct TraceTable {
  SystemSpec spec;
  const FieldTable* field = nullptr;
  TraceTableRequest request;
  std::vector<TraceRow> rows;
};

TraceTable trace_table(const SystemSpec& spec, const FieldTable& K,
                       const TraceTableRequest& request = {});

// One row per parameter tuple, tuple coordinates then the value; leading
// comment lines carry the system and field metadata.
void write_trace_csv(std::ostream& out, const TraceTable& table);

// p^f with f the multiplicative order of p mod D-1; requires D >= 3 with both
// D and D-1 prime to p.
long long wild_inertia_image_order(long long p, long long D);

}  // namespace finmono
