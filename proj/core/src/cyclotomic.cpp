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

#include "finmono/cyclotomic.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace finmono {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Exact division of integer polynomials, divisor monic.
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
  if (num.size() < den.size()) return {};
  std::vector<mpz_class> quot(num.size() - den.size() + 1, 0);
  for (size_t qi = quot.size(); qi-- > 0;) {
    const mpz_class c = num[qi + den.size() - 1];
    if (c == 0) continue;
    quot[qi] = c;
    for (size_t j = 0; j < den.size(); ++j) num[qi + j] -= c * den[j];
  }
  return quot;
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(long long m) {
  static std::map<long long, std::vector<mpz_class>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);

  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  require(m >= 1, "cyclotomic_polynomial: m must be >= 1");

  std::function<const std::vector<mpz_class>&(long long)> compute =
      [&](long long n) -> const std::vector<mpz_class>& {
    auto found = cache.find(n);
    if (found != cache.end()) return found->second;
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    std::vector<mpz_class> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (long long d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      num = poly_div_exact(std::move(num), compute(d));
    }
    return cache.emplace(n, std::move(num)).first->second;
  };
  return compute(m);
}

CycInt::CycInt(long long m) : m_(m), c_(static_cast<size_t>(m), 0) {
  require(m >= 1, "CycInt: order must be >= 1");
}

CycInt CycInt::zeta(long long m, long long k) {
  CycInt r(m);
  r.add_term(k, 1);
  return r;
}

CycInt CycInt::constant(long long m, const mpz_class& n) {
  CycInt r(m);
  r.c_[0] = n;
  return r;
}

void CycInt::add_term(long long k, const mpz_class& coeff) {
  long long i = k % m_;
  if (i < 0) i += m_;
  c_[static_cast<size_t>(i)] += coeff;
}

CycInt CycInt::operator-() const {
  CycInt r(m_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  return r;
}

CycInt CycInt::operator+(const CycInt& o) const {
  CycInt r = *this;
  r += o;
  return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
  CycInt r = *this;
  r -= o;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
  require(m_ == o.m_, "CycInt: mixed root-of-unity orders");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
  require(m_ == o.m_, "CycInt: mixed root-of-unity orders");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycInt CycInt::operator*(const CycInt& o) const {
  require(m_ == o.m_, "CycInt: mixed root-of-unity orders");
  CycInt r(m_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      size_t k = i + j;
      if (k >= static_cast<size_t>(m_)) k -= static_cast<size_t>(m_);
      r.c_[k] += c_[i] * o.c_[j];
    }
  }
  return r;
}

CycInt CycInt::reduced() const {
  const auto& phi = cyclotomic_polynomial(m_);
  const size_t deg = phi.size() - 1;
  std::vector<mpz_class> rem = c_;
  for (size_t i = rem.size(); i-- > deg;) {
    const mpz_class c = rem[i];
    if (c == 0) continue;
    rem[i] = 0;
    for (size_t j = 0; j < deg; ++j) rem[i - deg + j] -= c * phi[j];
  }
  CycInt r(m_);
  for (size_t i = 0; i < deg && i < rem.size(); ++i) r.c_[i] = rem[i];
  return r;
}

CycInt CycInt::conjugated() const { return galois(m_ - 1); }

CycInt CycInt::galois(long long t) const {
  long long tt = t % m_;
  if (tt < 0) tt += m_;
  require(std::gcd(tt, m_) == 1, "CycInt::galois: exponent not coprime to order");
  CycInt r(m_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    r.c_[static_cast<size_t>((static_cast<long long>(i) * tt) % m_)] += c_[i];
  }
  return r;
}

bool CycInt::is_zero() const {
  const CycInt r = reduced();
  for (const auto& c : r.c_)
    if (c != 0) return false;
  return true;
}

std::optional<mpz_class> CycInt::as_rational_integer() const {
  const CycInt r = reduced();
  for (size_t i = 1; i < r.c_.size(); ++i)
    if (r.c_[i] != 0) return std::nullopt;
  return r.c_[0];
}

int legendre_symbol(long long a, long long p) {
  require(p >= 3 && p % 2 == 1, "legendre_symbol: p must be an odd prime");
  long long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  long long acc = 1, base = r, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

CycInt quadratic_gauss_sum_fp(int p) {
  CycInt g(p);
  for (long long t = 1; t < p; ++t) g.add_term(t, legendre_symbol(t, p));
  return g;
}

AlphaSpec AlphaSpec::make(int p, long long D) {
  require(p >= 3 && p % 2 == 1 && prime_ll(p), "AlphaSpec: p must be an odd prime");
  require(D % 2 == 1 && D >= 1, "AlphaSpec: D must be odd");
  require(D % p != 0, "AlphaSpec: D must be prime to p");
  return {p, D};
}

int AlphaSpec::unit_sign() const {
  const long long delta = (D - 1) / 2;
  long long arg = (delta % 2 == 0) ? D : -D;
  return -legendre_symbol(arg, p);
}

int AlphaSpec::chi2_minus_one() const { return legendre_symbol(p - 1, p); }

CycInt AlphaSpec::alpha() const {
  CycInt g = quadratic_gauss_sum_fp(p);
  return unit_sign() == 1 ? g : -g;
}

std::optional<CycInt> divide_by_alpha_power(const CycInt& a, const AlphaSpec& alpha,
                                            long long k) {
  require(a.order() == alpha.p, "divide_by_alpha_power: value not in Z[zeta_p]");
  require(k >= 0, "divide_by_alpha_power: power must be nonnegative");
  if (k == 0) return a.reduced();

  // alpha^2 = chi2(-1) p, so odd k costs one extra multiplication by alpha.
  CycInt num = (k % 2 == 1) ? (a * alpha.alpha()).reduced() : a.reduced();
  const long long half = (k + 1) / 2;

  mpz_class div = 1;
  for (long long i = 0; i < half; ++i) div *= alpha.p;
  if (alpha.chi2_minus_one() == -1 && half % 2 == 1) div = -div;

  // On the reduced representative the coordinates in the power basis of
  // Z[zeta_p] are exactly the coefficients, so divisibility is coefficientwise.
  CycInt out(alpha.p);
  for (long long i = 0; i < alpha.p; ++i) {
    const mpz_class& c = num.coeffs()[static_cast<size_t>(i)];
    if (c % div != 0) return std::nullopt;
    out.add_term(i, mpz_class(c / div));
  }
  return out;
}

}  // namespace finmono
