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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "finmono/characters.hpp"

using namespace finmono;

TEST_CASE("additive character basics") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    const FieldTable K = FieldTable::build(p, f);
    CHECK(additive_char(K, K.zero()) == CycInt::constant(p, 1));
    // Sum over the whole field vanishes.
    CycInt total(p);
    for (long long c = 0; c < K.q(); ++c) total += additive_char(K, K.from_code(c));
    CHECK(total.is_zero());
    // psi(x + y) = psi(x) psi(y).
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long long> dist(0, K.q() - 1);
    for (int i = 0; i < 100; ++i) {
      const FieldElement x = K.from_code(dist(rng)), y = K.from_code(dist(rng));
      CHECK(additive_char(K, K.add(x, y)) == additive_char(K, x) * additive_char(K, y));
    }
  }
  // Over F_3: psi(1) + psi(2) = -1.
  const FieldTable F3 = FieldTable::build(3, 1);
  CHECK(additive_char(F3, F3.from_code(1)) + additive_char(F3, F3.from_code(2)) ==
        CycInt::constant(3, -1));
}

TEST_CASE("multiplicative characters are homomorphisms") {
  for (int f : {2, 3, 4}) {
    const FieldTable K = FieldTable::build(3, f);
    std::mt19937_64 rng(32 + f);
    std::uniform_int_distribution<long long> lg(0, K.q() - 2), idx(0, K.q() - 2);
    for (int i = 0; i < 1000; ++i) {
      const MultChar rho = char_from_index(K, idx(rng));
      const FieldElement x = K.from_log(lg(rng)), y = K.from_log(lg(rng));
      CHECK(eval(rho, K.mul(x, y)) == eval(rho, x) * eval(rho, y));
    }
  }
  // chi2 takes values +-1 and is the unique index (q-1)/2 character.
  const FieldTable K = FieldTable::build(3, 3);
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long long> lg(0, K.q() - 2);
  const MultChar chi2 = quadratic_char(K);
  CHECK(chi2.j == (K.q() - 1) / 2);
  for (int i = 0; i < 50; ++i) {
    const FieldElement x = K.from_log(lg(rng));
    const int s = eval_sign(chi2, x);
    CHECK((s == 1 || s == -1));
    CHECK(s == (x.log % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("gauss sum frozen values") {
  const FieldTable F3 = FieldTable::build(3, 1);
  // Trivial character: g = -1.
  CHECK(gauss_sum(F3, trivial_char(F3)) == CycInt::constant(6, -1));
  // chi2 over F_3: z3 - z3^2 embedded in Z[zeta_6] via zeta_6^2 = zeta_3.
  const CycInt g = gauss_sum(F3, quadratic_char(F3));
  CHECK(g == CycInt::zeta(6, 2) - CycInt::zeta(6, 4));
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {5, 1}}) {
    const FieldTable K = FieldTable::build(p, f);
    CHECK(gauss_sum(K, trivial_char(K)) ==
          CycInt::constant(p * (K.q() - 1), -1));
  }
}

TEST_CASE("g(rho) g(conj rho) = rho(-1) q for nontrivial rho") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {3, 4},
                                                      {5, 1}, {5, 2}, {7, 1}, {7, 2},
                                                      {11, 1}}) {
    const FieldTable K = FieldTable::build(p, f);
    const long long m = p * (K.q() - 1);
    for (long long j = 1; j < K.q() - 1; ++j) {
      const MultChar rho = char_from_index(K, j);
      const CycInt lhs = gauss_sum(K, rho) * gauss_sum(K, char_inverse(rho));
      // rho(-1) = (-1)^j since -1 = g^{(q-1)/2} and q is odd, and rho(-1)=1
      // in characteristic 2.
      const long long sign = (p == 2 || j % 2 == 0) ? 1 : -1;
      CHECK(lhs == CycInt::constant(m, static_cast<long>(sign * K.q())));
    }
  }
}

TEST_CASE("gauss valuation via the V function") {
  const FieldTable K = FieldTable::build(3, 4);
  CHECK(gauss_valuation(K, trivial_char(K)) == Rational(0));
  CHECK(gauss_valuation(K, quadratic_char(K)) == make_rational(1, 2));
  // Complementary pairs sum to 1.
  for (auto f : {2, 3, 4}) {
    const FieldTable L = FieldTable::build(3, f);
    for (long long j = 1; j < L.q() - 1; ++j)
      CHECK(gauss_valuation(L, char_from_index(L, j)) +
                gauss_valuation(L, char_inverse(char_from_index(L, j))) ==
            Rational(1));
  }
}

TEST_CASE("valuation is norm-compatible (Hasse-Davenport lift)") {
  for (auto [p, f, k] : std::vector<std::array<int, 3>>{{3, 1, 2}, {3, 1, 3}, {3, 2, 2},
                                                        {5, 1, 2}}) {
    const FieldTable K = FieldTable::build(p, f);
    const FieldTable L = FieldTable::build(p, f * k);
    const long long ratio = (L.q() - 1) / (K.q() - 1);
    for (long long j = 0; j < K.q() - 1; ++j) {
      const MultChar rho = char_from_index(K, j);
      const MultChar lifted = char_from_index(L, j * ratio);
      CHECK(gauss_valuation(K, rho) == gauss_valuation(L, lifted));
    }
  }
}

TEST_CASE("character algebra") {
  const FieldTable K = FieldTable::build(3, 2);
  const MultChar a = char_from_index(K, 3), b = char_from_index(K, 6);
  CHECK(product(a, b).j == 1);  // 9 mod 8
  CHECK(char_power(a, 3).j == 1);
  CHECK(char_inverse(a).j == 5);
  CHECK(product(a, char_inverse(a)).is_trivial());
  CHECK_THROWS_AS(eval_sign(a, K.one()), std::invalid_argument);
}
