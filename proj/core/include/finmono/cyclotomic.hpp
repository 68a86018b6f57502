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

// Exact cyclotomic integers. Values live in Z[x]/(x^m - 1), so multiplication
// is cyclic convolution; canonicalization modulo the m-th cyclotomic
// polynomial happens lazily, at equality tests and extraction points.
// Coefficients are arbitrary precision.

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace finmono {

class CycInt {
 public:
  // Zero in Z[zeta_m]; default order 1 models a plain integer.
  CycInt() : CycInt(1) {}
  explicit CycInt(long long m);

  static CycInt zeta(long long m, long long k);
  static CycInt constant(long long m, const mpz_class& n);

  long long order() const { return m_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  // += c * zeta_m^k, any integer k.
  void add_term(long long k, const mpz_class& coeff);

  CycInt operator-() const;
  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator*(const CycInt& o) const;
  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);

  // Canonical representative of degree < phi(m).
  CycInt reduced() const;
  // zeta -> zeta^{-1}.
  CycInt conjugated() const;
  // Image under zeta -> zeta^t, gcd(t, m) = 1.
  CycInt galois(long long t) const;

  bool is_zero() const;
  friend bool operator==(const CycInt& a, const CycInt& b) { return (a - b).is_zero(); }

  // The integer n when the value reduces to a constant, nullopt otherwise.
  std::optional<mpz_class> as_rational_integer() const;

 private:
  long long m_;
  std::vector<mpz_class> c_;
};

// Phi_m, ascending coefficients, computed from x^m - 1 = prod_{d|m} Phi_d.
const std::vector<mpz_class>& cyclotomic_polynomial(long long m);

inline CycInt cyc_reduce(const CycInt& a) { return a.reduced(); }
inline CycInt conjugate(const CycInt& a) { return a.conjugated(); }
inline std::optional<mpz_class> as_rational_integer(const CycInt& a) {
  return a.as_rational_integer();
}

// Legendre symbol of a mod an odd prime p, in {-1, 0, +1}.
int legendre_symbol(long long a, long long p);

// The quadratic Gauss sum over F_p, sum_t chi2(t) zeta_p^t, in Z[zeta_p].
CycInt quadratic_gauss_sum_fp(int p);

// Designates the half-Tate-twist scalar alpha = -chi2((-1)^delta D) g(psi,chi2)
// for odd p and odd D = 2 delta + 1; alpha^2 = chi2(-1) p.
struct AlphaSpec {
  int p = 3;
  long long D = 3;

  static AlphaSpec make(int p, long long D);

  int unit_sign() const;    // -chi2((-1)^delta D)
  int chi2_minus_one() const;
  CycInt alpha() const;     // in Z[zeta_p]
};

// a / alpha^k when the quotient lies in Z[zeta_p]; nullopt when some basis
// coordinate fails the exact division. Odd k is handled by one extra
// multiplication by alpha so all arithmetic stays in Z[zeta_p].
std::optional<CycInt> divide_by_alpha_power(const CycInt& a, const AlphaSpec& alpha, long long k);

}  // namespace finmono
