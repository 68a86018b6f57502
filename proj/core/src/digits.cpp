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

#include "finmono/digits.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace finmono {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Rational make_rational(long long num, long long den) {
  require(den != 0, "make_rational: zero denominator");
  // gmpxx has no long long constructors; long is 64-bit on every supported
  // platform here.
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

long long pow_checked(long long p, int f) {
  require(p >= 2, "pow_checked: base must be >= 2");
  require(f >= 0, "pow_checked: exponent must be >= 0");
  long long r = 1;
  for (int i = 0; i < f; ++i) {
    if (r > std::numeric_limits<long long>::max() / p)
      throw std::overflow_error("pow_checked: p^f exceeds 64-bit range");
    r *= p;
  }
  return r;
}

int digit_sum_abs(long long x, int p) {
  require(x >= 0, "digit_sum_abs: x must be nonnegative");
  require(p >= 2, "digit_sum_abs: p must be >= 2");
  int s = 0;
  while (x > 0) {
    s += static_cast<int>(x % p);
    x /= p;
  }
  return s;
}

int digit_sum_lower(long long y, int p, int f) {
  require(f >= 1, "digit_sum_lower: f must be >= 1");
  const long long m = pow_checked(p, f) - 1;
  long long r = y % m;
  if (r < 0) r += m;
  return digit_sum_abs(r, p);
}

int digit_sum_upper(long long y, int p, int f) {
  require(f >= 1, "digit_sum_upper: f must be >= 1");
  const long long m = pow_checked(p, f) - 1;
  long long r = y % m;
  if (r < 0) r += m;
  // Representative in [1, p^f - 1]: the zero class maps to m itself, whose
  // expansion is f digits equal to p-1.
  if (r == 0) return f * (p - 1);
  return digit_sum_abs(r, p);
}

FractionModZ::FractionModZ(long long num, long long den) {
  require(den > 0, "FractionModZ: denominator must be positive");
  long long n = num % den;
  if (n < 0) n += den;
  const long long g = std::gcd(n, den);
  num_ = n / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

FractionModZ FractionModZ::operator-() const {
  if (num_ == 0) return {};
  return {den_ - num_, den_};
}

FractionModZ FractionModZ::operator+(const FractionModZ& o) const {
  const long long g = std::gcd(den_, o.den_);
  const long long scale = o.den_ / g;
  if (den_ > std::numeric_limits<long long>::max() / scale)
    throw std::overflow_error("FractionModZ::operator+: denominator overflow");
  const long long den = den_ * scale;
  const __int128 num =
      static_cast<__int128>(num_) * (den / den_) + static_cast<__int128>(o.num_) * (den / o.den_);
  return {static_cast<long long>(num % den), den};
}

FractionModZ scaled(const FractionModZ& x, long long k) {
  if (x.is_zero()) return {};
  __int128 n = static_cast<__int128>(k % x.den()) * x.num();
  long long r = static_cast<long long>(n % x.den());
  return {r, x.den()};
}

int order_of_p_mod(long long p, long long m, int cap) {
  require(m >= 1, "order_of_p_mod: modulus must be >= 1");
  if (m == 1) return 1;
  const long long base = ((p % m) + m) % m;
  require(std::gcd(base, m) == 1, "order_of_p_mod: p and modulus must be coprime");
  long long acc = base;
  for (int e = 1; e <= cap; ++e) {
    if (acc == 1) return e;
    acc = static_cast<long long>((static_cast<__int128>(acc) * base) % m);
  }
  throw std::overflow_error("order_of_p_mod: multiplicative order exceeds cap");
}

Rational kubert_V(const FractionModZ& x, int p, int order_cap) {
  require(p >= 2, "kubert_V: p must be >= 2");
  if (x.is_zero()) return Rational(0);
  const long long den = x.den();
  require(den % p != 0, "kubert_V: denominator must be prime to p");
  require(den <= std::numeric_limits<long long>::max() / p,
          "kubert_V: denominator too large");
  const int f = order_of_p_mod(p, den, order_cap);
  // Digits of the length-f period of the base-p expansion of num/den; their
  // sum is digit_sum_lower(num * (p^f - 1)/den, p, f) without materializing
  // p^f - 1.
  long long r = x.num();
  long long digit_total = 0;
  for (int i = 0; i < f; ++i) {
    const long long t = r * p;
    digit_total += t / den;
    r = t % den;
  }
  return make_rational(digit_total, static_cast<long long>(f) * (p - 1));
}

Rational kubert_V_RL(const FractionModZ& x, int p, int order_cap) {
  if (x.is_zero()) return Rational(1);
  return kubert_V(x, p, order_cap);
}

}  // namespace finmono
