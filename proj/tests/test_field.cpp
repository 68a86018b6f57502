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

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "finmono/field.hpp"

using namespace finmono;

namespace {

FieldElement random_element(const FieldTable& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> dist(0, K.q() - 1);
  return K.from_code(dist(rng));
}

// Trace by the definition, sum of the f Frobenius powers, using only mul.
int definitional_trace(const FieldTable& K, FieldElement x) {
  FieldElement acc = x;
  FieldElement power = x;
  for (int i = 1; i < K.f(); ++i) {
    FieldElement next = power;
    for (int j = 1; j < K.p(); ++j) next = K.mul(next, power);
    power = next;  // power^p
    acc = K.add(acc, power);
  }
  const long long code = K.code(acc);
  REQUIRE(code < K.p());  // must land in the prime field
  return static_cast<int>(code);
}

}  // namespace

TEST_CASE("prime field is the identity model") {
  const FieldTable K = FieldTable::build(3, 1);
  CHECK(K.q() == 3);
  for (long long c = 0; c < 3; ++c) CHECK(K.absolute_trace(K.from_code(c)) == c);
  CHECK(K.code(K.add(K.from_code(2), K.from_code(2))) == 1);
}

TEST_CASE("deterministic modulus and generator for F_9") {
  const FieldTable K = FieldTable::build(3, 2);
  // First monic irreducible when coefficients are scanned as ascending
  // base-3 integers: x^2 + 1.
  CHECK(K.modulus() == std::vector<uint8_t>{1, 0, 1});
  // Smallest code of multiplicative order 8 is 1 + x (code 4).
  CHECK(K.generator_code() == 4);
}

TEST_CASE("multiplicative group structure") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 2}, {3, 4}, {3, 5}, {5, 2}, {2, 3}}) {
    const FieldTable K = FieldTable::build(p, f);
    const long long q = K.q();
    std::set<long long> codes;
    for (long long i = 0; i < q - 1; ++i) codes.insert(K.code(K.from_log(i)));
    CHECK(codes.size() == static_cast<size_t>(q - 1));  // generator generates
    CHECK(K.code(K.one()) == 1);
    // x^q = x for every element (Frobenius fixed-point check for F_243).
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
      const FieldElement x = random_element(K, rng);
      CHECK(K.pow(x, q) == x);
    }
  }
}

TEST_CASE("exp table is a homomorphism") {
  const FieldTable K = FieldTable::build(3, 4);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long long> dist(0, K.q() - 2);
  for (int i = 0; i < 500; ++i) {
    const long long a = dist(rng), b = dist(rng);
    CHECK(K.mul(K.from_log(a), K.from_log(b)) == K.from_log(a + b));
  }
}

TEST_CASE("Frobenius additivity on random pairs") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {3, 4}}) {
    const FieldTable K = FieldTable::build(p, f);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
      const FieldElement x = random_element(K, rng), y = random_element(K, rng);
      CHECK(K.pow(K.add(x, y), p) == K.add(K.pow(x, p), K.pow(y, p)));
    }
  }
}

TEST_CASE("trace agrees with the definition and equidistributes") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {5, 2}}) {
    const FieldTable K = FieldTable::build(p, f);
    std::map<int, long long> fiber;
    for (long long c = 0; c < K.q(); ++c) {
      const FieldElement x = K.from_code(c);
      const int tr = K.absolute_trace(x);
      CHECK(tr == definitional_trace(K, x));
      ++fiber[tr];
    }
    CHECK(fiber.size() == static_cast<size_t>(p));
    for (auto [value, count] : fiber) CHECK(count == K.q() / p);
  }
  // Tr(1) over F_9 is 2.
  CHECK(FieldTable::build(3, 2).absolute_trace(FieldTable::build(3, 2).one()) == 2);
}

TEST_CASE("trace is F_p-linear") {
  const FieldTable K = FieldTable::build(3, 4);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    const FieldElement x = random_element(K, rng), y = random_element(K, rng);
    CHECK(K.absolute_trace(K.add(x, y)) ==
          (K.absolute_trace(x) + K.absolute_trace(y)) % K.p());
  }
}

TEST_CASE("elements of order dividing p^f - 1 form a subfield") {
  const FieldTable K = FieldTable::build(3, 4);  // F_81 contains F_9
  std::vector<FieldElement> sub;
  for (long long c = 0; c < K.q(); ++c) {
    const FieldElement x = K.from_code(c);
    if (x.is_zero() || K.pow(x, 9) == x) sub.push_back(x);
  }
  CHECK(sub.size() == 9);
  for (const FieldElement& a : sub)
    for (const FieldElement& b : sub) {
      const FieldElement s = K.add(a, b);
      CHECK((s.is_zero() || K.pow(s, 9) == s));
    }
}

TEST_CASE("mult_order") {
  CHECK(mult_order(3, 22) == 5);
  CHECK(mult_order(3, 8) == 2);
  CHECK(mult_order(5, 2) == 1);
  CHECK(mult_order(7, 2) == 1);
  CHECK(mult_order(5, 6) == 2);
  CHECK_THROWS_AS(mult_order(3, 9), std::invalid_argument);
  CHECK_THROWS_AS(mult_order(3, 1), std::invalid_argument);
}

TEST_CASE("q bound is enforced") {
  CHECK_THROWS_AS(FieldTable::build(3, 13), std::invalid_argument);
  CHECK_THROWS_AS(FieldTable::build(3, 2, /*q_bound=*/8), std::invalid_argument);
  CHECK_NOTHROW(FieldTable::build(3, 2, /*q_bound=*/9));
}

TEST_CASE("alternate generators give isomorphic arithmetic") {
  const FieldTable K0 = FieldTable::build(3, 3);
  const FieldTable K1 = FieldTable::build_with_generator_rank(3, 3, 1);
  CHECK(K0.generator_code() != K1.generator_code());
  // Same additive structure: traces agree per code.
  for (long long c = 0; c < K0.q(); ++c)
    CHECK(K0.absolute_trace(K0.from_code(c)) == K1.absolute_trace(K1.from_code(c)));
}

TEST_CASE("disk cache round-trips and rejects corruption") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "finmono-field-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path file = dir / "msft_3_3.tbl";

  const FieldTable K = FieldTable::build(3, 3);
  K.save(file);
  auto loaded = FieldTable::load(file, 3, 3);
  REQUIRE(loaded.has_value());
  CHECK(loaded->modulus() == K.modulus());
  for (long long c = 0; c < K.q(); ++c)
    CHECK(loaded->absolute_trace(loaded->from_code(c)) == K.absolute_trace(K.from_code(c)));

  // Header starts with the magic and the parameters.
  std::ifstream in(file, std::ios::binary);
  char magic[5];
  in.read(magic, 5);
  CHECK(std::string(magic, 5) == "MSFT1");
  in.close();

  // Parameter mismatch is refused.
  CHECK(!FieldTable::load(file, 3, 2).has_value());

  // A flipped byte breaks the CRC.
  std::fstream f(file, std::ios::binary | std::ios::in | std::ios::out);
  f.seekp(20);
  char b;
  f.seekg(20);
  f.read(&b, 1);
  b = static_cast<char>(b ^ 0x5A);
  f.seekp(20);
  f.write(&b, 1);
  f.close();
  CHECK(!FieldTable::load(file, 3, 3).has_value());

  // load_or_build falls back to a rebuild on a corrupt cache.
  const FieldTable rebuilt = FieldTable::load_or_build(3, 3, dir);
  CHECK(rebuilt.modulus() == K.modulus());
  fs::remove_all(dir);
}
