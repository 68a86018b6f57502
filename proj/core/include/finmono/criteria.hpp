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

// Finite-monodromy criteria for the local systems named by a SystemSpec
// (p, D, d_1 < ... < d_r, twist), with d_{r+1} := D. Three equivalent
// formulations are implemented independently and cross-checked:
//
//   check_digit_criterion    per-f digit-sum inequality with the f-block
//                            digit sums [.]_{p,f} / [.]_{p,f,-};
//   check_digit_criterion_A  the absolute-digit-sum variant with slack A;
//   check_V_criterion        the Kubert V / V_RL formulation over fractions
//                            with denominator dividing p^f - 1;
//   gauss_criterion          quantifies over character tuples of K^x with
//                            prescribed product and sums Gauss-sum
//                            valuations.
//
// The quadratic twist quantifies over all tuples (including all-zero); the
// trivial twist excludes the all-zero tuple. mellin_oracle computes the
// multiplicative-character Mellin transform of the trace function both
// directly and in Gauss-sum closed form, as an exact consistency oracle.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "finmono/characters.hpp"
#include "finmono/cyclotomic.hpp"
#include "finmono/digits.hpp"
#include "finmono/field.hpp"

namespace finmono {

enum class Twist { Trivial, Quadratic };

std::string to_string(Twist t);

struct SystemSpec {
  int p = 3;
  long long D = 0;
  std::vector<long long> d;  // 1 = d[0] < d[1] < ... < d[r-1] < D
  Twist twist = Twist::Trivial;

  // Validates and normalizes. D = 2 is admitted (the smallest known-case
  // value) but reported as outside the D >= 3 hypotheses.
  static SystemSpec make(int p, long long D, std::vector<long long> d, Twist twist);

  int r() const { return static_cast<int>(d.size()); }
  bool within_hypotheses() const { return D >= 3; }
  // Multipliers of the free variables x_2 .. x_{r+1}: (d_2, ..., d_r, D).
  std::vector<long long> multipliers() const;
  std::string to_string() const;
};

enum class CriterionId { Digit, DigitAbs, KubertV, GaussSum };

std::string to_string(CriterionId id);

struct Witness {
  int f = 0;
  std::vector<long long> x;  // values of x_2 .. x_{r+1}
  Rational lhs, rhs;         // the two sides of the violated inequality
};

struct CriterionReport {
  SystemSpec spec;
  CriterionId criterion = CriterionId::Digit;
  std::vector<int> f_checked;
  bool pass = true;
  std::vector<Witness> witnesses;            // capped; empty iff pass
  unsigned long long violations_total = 0;   // uncapped count
  std::size_t witness_cap = 0;
};

struct CheckOptions {
  std::size_t witness_cap = 100;
  int jobs = 1;
};

// Number of tuples a per-f criterion sweep enumerates: (p^f - 1)^r, saturated.
unsigned long long criterion_iteration_count(const SystemSpec& spec, int f);

CriterionReport check_digit_criterion(const SystemSpec& spec, int f,
                                      const CheckOptions& opt = {});
CriterionReport check_digit_criterion_A(const SystemSpec& spec, int f, const Rational& A,
                                        const CheckOptions& opt = {});
CriterionReport check_V_criterion(const SystemSpec& spec, int f, const CheckOptions& opt = {});
CriterionReport gauss_criterion(const SystemSpec& spec, const FieldTable& K,
                                const CheckOptions& opt = {});

// Exact Mellin-transform oracle over K, q <= 81. evaluate() returns the
// direct double sum and the Gauss-sum closed form; the two must agree.
class MellinOracle {
 public:
  MellinOracle(const SystemSpec& spec, const FieldTable& K);

  // rho = (rho_1, ..., rho_{r+1}).
  std::pair<CycInt, CycInt> evaluate(const std::vector<MultChar>& rho) const;

  // All tuples satisfying the character equation prod rho_i^{d_i} = target
  // (rho_1 solved from the rest since d_1 = 1), excluding the all-trivial
  // tuple for the trivial twist.
  std::vector<std::vector<MultChar>> admissible_tuples() const;

  const FieldTable& field() const { return *K_; }
  const SystemSpec& spec() const { return spec_; }

 private:
  SystemSpec spec_;
  const FieldTable* K_;
  std::vector<long long> powers_;       // d_1, ..., d_r, D
  std::vector<CycInt> trace_fn_;        // F(t) indexed by the t-tuple odometer
};

std::pair<CycInt, CycInt> mellin_oracle(const SystemSpec& spec, const FieldTable& K,
                                        const std::vector<MultChar>& rho);

struct KnownCase {
  enum class Family { None, HalfQPlusOne, QnPlusOneOverQPlusOne, TwoQMinusOne };
  Family family = Family::None;
  long long q = 0;
  int n = 0;

  bool is_known() const { return family != Family::None; }
  std::string to_string() const;
};

KnownCase is_known_case(long long p, long long D);

struct Survivor {
  long long D = 0;
  KnownCase known;
  bool within_hypotheses = true;
  int f_max = 0;

  // Survivors are candidates only: passing every f up to a finite bound is a
  // necessary condition, never a finite-monodromy claim.
  std::string status() const { return "candidate (all f <= " + std::to_string(f_max) + ")"; }
};

struct SearchOptions {
  int jobs = 1;
};

// All D in [D_min, D_max] prime to p whose r = 1 system passes the digit
// criterion for every f <= f_max, in increasing order. Passing every f up to
// a bound is necessary for finite monodromy, never sufficient.
std::vector<Survivor> search(int p, long long D_min, long long D_max, Twist twist, int f_max,
                             const SearchOptions& opt = {});

}  // namespace finmono
