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

// End-to-end acceptance runs. Each numbered criterion prints one PASS/FAIL
// line; the binary exits nonzero if any fail. Expected values are exact; the
// stated wall-clock limits are enforced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "finmono/criteria.hpp"
#include "finmono/digits.hpp"
#include "finmono/proofcheck.hpp"
#include "finmono/traces.hpp"

using namespace finmono;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string what, double limit_seconds)
      : id_(id), what_(std::move(what)), limit_(limit_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void note(const std::string& line) { notes_.push_back(line); }

  void finish(bool pass) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const bool in_time = secs <= limit_;
    const bool ok = pass && in_time;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id_ << ": " << what_ << "  ("
              << secs << " s, limit " << limit_ << " s";
    if (!in_time) std::cout << ", TIME LIMIT EXCEEDED";
    std::cout << ")\n";
    for (const std::string& line : notes_) std::cout << "       " << line << "\n";
    if (!ok) ++g_failures;
  }

 private:
  int id_;
  std::string what_;
  double limit_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> notes_;
};

std::multiset<long long> trace_value_multiset(const SystemSpec& spec, const FieldTable& K,
                                              bool& all_integral) {
  TraceTableRequest req;
  req.jobs = 2;
  const TraceTable table = trace_table(spec, K, req);
  std::multiset<long long> values;
  all_integral = true;
  for (const TraceRow& row : table.rows) {
    if (!row.twisted || row.twisted->status != TwistedTrace::Status::Integer) {
      all_integral = false;
      continue;
    }
    values.insert(row.twisted->value.get_si());
  }
  return values;
}

void criterion_1_2_trace_sets() {
  const SystemSpec spec = SystemSpec::make(3, 23, {1}, Twist::Quadratic);
  {
    Criterion c(1, "trace value support over F_81 is {-2,-1,0,1,2,3}", 1.0);
    bool integral = false;
    const auto values = trace_value_multiset(spec, FieldTable::build(3, 4), integral);
    const std::set<long long> support(values.begin(), values.end());
    c.finish(integral && values.size() == 81 &&
             support == std::set<long long>{-2, -1, 0, 1, 2, 3});
  }
  {
    Criterion c(2, "trace value support over F_243 is {-5,-2,-1,0,1,2}", 5.0);
    bool integral = false;
    const auto values = trace_value_multiset(spec, FieldTable::build(3, 5), integral);
    const std::set<long long> support(values.begin(), values.end());
    c.finish(integral && values.size() == 243 &&
             support == std::set<long long>{-5, -2, -1, 0, 1, 2});
  }
}

void criterion_3_integrality() {
  Criterion c(3, "every twisted trace of (3,23,(1,5),chi2) over F_q, q in {3,9,27,81}, is a"
                 " rational integer",
              120.0);
  const SystemSpec spec = SystemSpec::make(3, 23, {1, 5}, Twist::Quadratic);
  bool ok = true;
  for (int f = 1; f <= 4; ++f) {
    bool integral = false;
    const auto values = trace_value_multiset(spec, FieldTable::build(3, f), integral);
    const size_t q = static_cast<size_t>(pow_checked(3, f));
    ok = ok && integral && values.size() == q * q;
  }
  c.finish(ok);
}

void criterion_4_proof() {
  Criterion c(4, "proof verification: base cases f<=4, four case lemmas, induction f=5,6",
              60.0);
  bool ok = verify_base_cases(4).pass;
  for (const CaseLemma& lemma : canonical_case_lemmas()) ok = ok && verify_case_lemma(lemma).pass;
  for (int f : {5, 6}) {
    const ProofVerdict v = verify_induction_assembly(f, {.jobs = 2});
    ok = ok && v.pass && !v.sampled;
  }
  c.finish(ok);
}

void criterion_5_co3_criteria() {
  Criterion c(5, "(3,23,(1,5),chi2): digit criterion f<=6 and A=2 absolute criterion f<=7",
              600.0);
  const SystemSpec spec = SystemSpec::make(3, 23, {1, 5}, Twist::Quadratic);
  bool ok = true;
  for (int f = 1; f <= 6; ++f)
    ok = ok && check_digit_criterion(spec, f, {.witness_cap = 5, .jobs = 2}).pass;
  for (int f = 1; f <= 7; ++f)
    ok = ok && check_digit_criterion_A(spec, f, Rational(2), {.witness_cap = 5, .jobs = 2}).pass;
  c.finish(ok);
}

void criterion_6_known_cases() {
  Criterion c(6, "known cases pass the quadratic digit criterion for all f <= 5", 60.0);
  bool ok = true;
  for (long long D : {2LL, 5LL, 7LL, 17LL, 61LL}) {
    const SystemSpec spec = SystemSpec::make(3, D, {1}, Twist::Quadratic);
    for (int f = 1; f <= 5; ++f) ok = ok && check_digit_criterion(spec, f).pass;
  }
  for (long long D : {3LL, 13LL, 9LL}) {
    const SystemSpec spec = SystemSpec::make(5, D, {1}, Twist::Quadratic);
    for (int f = 1; f <= 5; ++f) ok = ok && check_digit_criterion(spec, f).pass;
  }
  c.finish(ok);
}

void criterion_7_search() {
  Criterion c(7, "search p=3, D in [2,500], chi2, f_max=5 contains known cases and 23;"
                 " extras eliminated at f_max=8",
              1800.0);
  const auto survivors5 = search(3, 2, 500, Twist::Quadratic, 5, {.jobs = 2});

  std::set<long long> got5;
  for (const Survivor& s : survivors5) got5.insert(s.D);

  // Known-case values in range, derived from the classifier itself plus the
  // sporadic 23.
  std::set<long long> required{23};
  for (long long D = 2; D <= 500; ++D)
    if (D % 3 != 0 && is_known_case(3, D).is_known()) required.insert(D);

  bool contains_required = std::includes(got5.begin(), got5.end(), required.begin(),
                                         required.end());

  std::set<long long> extras;
  for (long long D : got5)
    if (!required.count(D)) extras.insert(D);

  const auto survivors8 = search(3, 2, 500, Twist::Quadratic, 8, {.jobs = 2});
  std::set<long long> got8;
  for (const Survivor& s : survivors8) got8.insert(s.D);

  std::set<long long> extras_left8;
  for (long long D : extras)
    if (got8.count(D)) extras_left8.insert(D);

  {
    std::ostringstream os;
    os << "f_max=5 survivors: " << got5.size() << " (required " << required.size()
       << " all present: " << (contains_required ? "yes" : "no") << "), extras: "
       << extras.size();
    c.note(os.str());
  }
  if (!extras_left8.empty()) {
    std::ostringstream os;
    os << "extras still surviving at f_max=8:";
    for (long long D : extras_left8) os << " " << D;
    c.note(os.str());
    // Deeper runs settle the range; the stated bound of 8 is one f short.
    const auto survivors11 = search(3, 2, 500, Twist::Quadratic, 11, {.jobs = 2});
    std::set<long long> got11;
    for (const Survivor& s : survivors11) got11.insert(s.D);
    std::ostringstream os2;
    os2 << "at f_max=11 the survivor set is exactly the required set: "
        << (got11 == required ? "yes" : "no");
    c.note(os2.str());
  }

  c.finish(contains_required && extras_left8.empty());
}

void criterion_8_oracle_triangle() {
  Criterion c(8, "criterion triangle on 50 random specs (f<=3) and the Mellin oracle", 300.0);
  std::mt19937_64 rng(0x0acce55ULL);
  std::uniform_int_distribution<int> pick_p(0, 1), pick_r(1, 2), pick_twist(0, 1);
  std::uniform_int_distribution<long long> pick_D(3, 30);

  std::map<std::pair<int, int>, FieldTable> fields;
  for (int p : {3, 5})
    for (int f = 1; f <= 3; ++f) fields.emplace(std::make_pair(p, f), FieldTable::build(p, f));
  const std::map<int, FieldTable> mellin_fields = [] {
    std::map<int, FieldTable> m;
    m.emplace(3, FieldTable::build(3, 2));  // F_9
    m.emplace(5, FieldTable::build(5, 2));  // F_25
    return m;
  }();

  bool ok = true;
  int done = 0;
  while (done < 50) {
    const int p = pick_p(rng) == 0 ? 3 : 5;
    const long long D = pick_D(rng);
    if (D % p == 0) continue;
    std::vector<long long> d{1};
    if (pick_r(rng) == 2) {
      std::uniform_int_distribution<long long> pick_d2(2, D - 1);
      const long long d2 = pick_d2(rng);
      if (d2 <= 1 || d2 % p == 0) continue;
      d.push_back(d2);
    }
    const Twist twist = pick_twist(rng) == 0 ? Twist::Trivial : Twist::Quadratic;
    const SystemSpec spec = SystemSpec::make(p, D, d, twist);

    for (int f = 1; f <= 3; ++f) {
      const bool a = check_digit_criterion(spec, f, {.witness_cap = 0}).pass;
      const bool b = check_V_criterion(spec, f, {.witness_cap = 0}).pass;
      const bool g = gauss_criterion(spec, fields.at({p, f}), {.witness_cap = 0}).pass;
      ok = ok && a == b && b == g;
    }

    // Exact Mellin consistency on every admissible tuple.
    const MellinOracle oracle(spec, mellin_fields.at(p));
    for (const auto& rho : oracle.admissible_tuples()) {
      const auto [direct, closed] = oracle.evaluate(rho);
      ok = ok && direct == closed;
    }
    ++done;
  }
  c.finish(ok);
}

void criterion_9_digit_identities() {
  Criterion c(9, "Hasse-Davenport, subadditivity, and V + V_RL(-x) = 1 identities", 60.0);
  bool ok = true;

  for (int p : {3, 5})
    for (int f = 1; f <= 3; ++f)
      for (int k = 1; k <= 3; ++k) {
        const long long mf = pow_checked(p, f) - 1;
        const long long ratio = (pow_checked(p, f * k) - 1) / mf;
        for (long long x = 0; x < mf; ++x) {
          ok = ok && digit_sum_upper(ratio * x, p, f * k) == k * digit_sum_upper(x, p, f);
          ok = ok && digit_sum_lower(ratio * x, p, f * k) == k * digit_sum_lower(x, p, f);
        }
      }

  std::mt19937_64 rng(0xd16175ULL);
  std::uniform_int_distribution<long long> dist(1, 1'000'000'000);
  for (int i = 0; i < 10'000; ++i) {
    const long long x = dist(rng), y = dist(rng);
    for (int p : {3, 5, 7, 11}) {
      ok = ok && digit_sum_abs(x + y, p) <= digit_sum_abs(x, p) + digit_sum_abs(y, p);
      ok = ok && digit_sum_abs(p * x, p) == digit_sum_abs(x, p);
    }
  }

  for (int p : {3, 5, 7, 11})
    for (long long den = 1; den <= 200; ++den) {
      if (den % p == 0) continue;
      for (long long num = 0; num < den; ++num) {
        const FractionModZ x(num, den);
        ok = ok && kubert_V(x, p) + kubert_V_RL(-x, p) == Rational(1);
      }
    }

  c.finish(ok);
}

void criterion_10_wild_inertia() {
  Criterion c(10, "wild inertia image order for (3,23) is 3^5 = 243", 1.0);
  c.finish(wild_inertia_image_order(3, 23) == 243);
}

}  // namespace

int main() {
  std::cout << "finmono acceptance suite\n";
  criterion_1_2_trace_sets();
  criterion_3_integrality();
  criterion_4_proof();
  criterion_5_co3_criteria();
  criterion_6_known_cases();
  criterion_7_search();
  criterion_8_oracle_triangle();
  criterion_9_digit_identities();
  criterion_10_wild_inertia();
  if (g_failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criterion(s) failed\n";
  return 1;
}
