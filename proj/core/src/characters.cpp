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

#include "finmono/characters.hpp"

#include <stdexcept>

namespace finmono {

namespace {

long long mod_qm1(const FieldTable& K, long long v) {
  const long long m = K.q() - 1;
  long long r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

MultChar trivial_char(const FieldTable& K) { return {&K, 0}; }

MultChar quadratic_char(const FieldTable& K) {
  if (K.q() % 2 == 0) throw std::invalid_argument("quadratic_char: field must have odd order");
  return {&K, (K.q() - 1) / 2};
}

MultChar char_from_index(const FieldTable& K, long long j) { return {&K, mod_qm1(K, j)}; }

MultChar product(const MultChar& a, const MultChar& b) {
  if (a.field != b.field) throw std::invalid_argument("product: characters of different fields");
  return {a.field, mod_qm1(*a.field, a.j + b.j)};
}

MultChar char_power(const MultChar& a, long long e) {
  const long long m = a.field->q() - 1;
  long long j = static_cast<long long>((static_cast<__int128>(a.j) * (e % m)) % m);
  if (j < 0) j += m;
  return {a.field, j};
}

MultChar char_inverse(const MultChar& a) { return {a.field, mod_qm1(*a.field, -a.j)}; }

long long eval_log(const MultChar& rho, FieldElement x) {
  if (x.is_zero()) throw std::invalid_argument("eval_log: zero argument");
  const long long m = rho.field->q() - 1;
  return static_cast<long long>((static_cast<__int128>(rho.j) * x.log) % m);
}

CycInt eval(const MultChar& rho, FieldElement x) {
  const long long m = rho.field->q() - 1;
  if (x.is_zero()) return CycInt(m);
  return CycInt::zeta(m, eval_log(rho, x));
}

int eval_sign(const MultChar& rho, FieldElement x) {
  const long long m = rho.field->q() - 1;
  if (mod_qm1(*rho.field, 2 * rho.j) != 0)
    throw std::invalid_argument("eval_sign: character order exceeds 2");
  if (x.is_zero()) throw std::invalid_argument("eval_sign: zero argument");
  return eval_log(rho, x) == 0 ? 1 : -1;
}

CycInt additive_char(const FieldTable& K, FieldElement x) {
  return CycInt::zeta(K.p(), K.absolute_trace(x));
}

CycInt gauss_sum(const FieldTable& K, const MultChar& rho) {
  if (rho.field != &K) throw std::invalid_argument("gauss_sum: character of a different field");
  const long long qm1 = K.q() - 1;
  const long long m = static_cast<long long>(K.p()) * qm1;
  // zeta_p = zeta_m^{q-1}, zeta_{q-1} = zeta_m^p.
  CycInt g(m);
  for (long long k = 0; k < qm1; ++k) {
    const FieldElement t = K.from_log(k);
    const long long e = qm1 * K.absolute_trace(t) + K.p() * ((rho.j * k) % qm1);
    g.add_term(e, 1);
  }
  return g;
}

Rational gauss_valuation(const FieldTable& K, const MultChar& rho) {
  if (rho.is_trivial()) return Rational(0);  // g = -1, a unit
  return kubert_V(FractionModZ(-rho.j, K.q() - 1), K.p());
}

}  // namespace finmono
