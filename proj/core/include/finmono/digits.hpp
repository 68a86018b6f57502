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

// Base-p digit sums and the Kubert V function, all in exact arithmetic.
//
// Conventions, for a prime p and q = p^f:
//   digit_sum_lower(y,p,f)   digit sum of the representative of y mod q-1
//                            taken in [0, q-2]
//   digit_sum_upper(y,p,f)   same with the representative taken in [1, q-1];
//                            differs from the lower sum only at y = 0 mod q-1,
//                            where it equals f(p-1)
//   digit_sum_abs(x,p)       plain digit sum of x >= 0
//
// V is defined on fractions x in Q/Z with denominator prime to p; with f the
// least integer such that (p^f - 1) x is integral,
//   V(y/(p^f-1)) = digit_sum_lower(y,p,f) / (f(p-1)),
// which also equals the average of the fractional parts <p^i x> over i mod f.
// V_RL agrees with V away from 0 and takes the value 1 at 0, so that
// V(x) + V_RL(-x) = 1 holds for every x.

#include <gmpxx.h>

namespace finmono {

// Exact rational; always kept canonical.
using Rational = mpq_class;

// mpq_class(n, d) does not canonicalize on its own; route constructions
// through this helper.
Rational make_rational(long long num, long long den);

// p^f as a signed 64-bit value; throws std::overflow_error if it does not fit.
long long pow_checked(long long p, int f);

int digit_sum_abs(long long x, int p);
int digit_sum_lower(long long y, int p, int f);
int digit_sum_upper(long long y, int p, int f);

// An element of Q/Z, stored reduced with 0 <= num < den and gcd(num,den) = 1
// (num = 0 forces den = 1). Whether den is prime to p is a property of the
// pair (x, p) and is checked where V is evaluated.
class FractionModZ {
 public:
  FractionModZ() = default;
  FractionModZ(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  FractionModZ operator-() const;
  FractionModZ operator+(const FractionModZ& o) const;
  friend bool operator==(const FractionModZ&, const FractionModZ&) = default;

 private:
  long long num_ = 0;
  long long den_ = 1;
};

// k * x reduced mod 1.
FractionModZ scaled(const FractionModZ& x, long long k);

// Least e >= 1 with p^e = 1 mod m (m >= 1). Throws std::invalid_argument when
// gcd(p, m) != 1 and std::overflow_error when the order exceeds `cap`.
int order_of_p_mod(long long p, long long m, int cap);

// The denominator cap below guards runaway inputs; every evaluation in this
// project has order well under it.
inline constexpr int kKubertOrderCap = 256;

Rational kubert_V(const FractionModZ& x, int p, int order_cap = kKubertOrderCap);
Rational kubert_V_RL(const FractionModZ& x, int p, int order_cap = kKubertOrderCap);

}  // namespace finmono
