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

#include "finmono/criteria.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "finmono/parallel.hpp"

namespace finmono {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Digit sums of every residue in [0, p^f - 1); entry a is both [a]_p and
// [a]_{p,f,-} on that range.
std::vector<uint8_t> digit_sum_table(int p, int f, long long m) {
  if (static_cast<long long>(f) * (p - 1) > 255)
    throw std::invalid_argument("digit_sum_table: f(p-1) out of range");
  std::vector<uint8_t> t(static_cast<size_t>(m), 0);
  for (long long a = 1; a < m; ++a)
    t[static_cast<size_t>(a)] = static_cast<uint8_t>(t[static_cast<size_t>(a / p)] + a % p);
  return t;
}

struct ChunkResult {
  std::vector<Witness> witnesses;
  unsigned long long violations = 0;
};

// Shared enumeration: visits every r-tuple (x_2, ..., x_{r+1}) with entries
// in [0, m), lexicographically, parallel over the first coordinate.
// visit(xs) returns true when the tuple violates the criterion; lhs/rhs for
// the witness are produced by the caller-supplied `describe`.
template <class Violates, class Describe>
CriterionReport run_tuple_criterion(const SystemSpec& spec, int f, CriterionId id, long long m,
                                    bool skip_all_zero, const CheckOptions& opt,
                                    Violates&& violates, Describe&& describe,
                                    bool stop_on_first = false) {
  const int r = spec.r();
  const int jobs = std::max(1, opt.jobs);
  std::vector<ChunkResult> results(static_cast<size_t>(std::max<long long>(
      1, std::min<long long>(jobs, m))));
  std::atomic<bool> found{false};

  parallel_chunks(m, jobs, [&](int chunk, long long begin, long long end) {
    ChunkResult& out = results[static_cast<size_t>(chunk)];
    std::vector<long long> xs(static_cast<size_t>(r), 0);
    for (xs[0] = begin; xs[0] < end; ++xs[0]) {
      if (stop_on_first && found.load(std::memory_order_relaxed)) return;
      std::fill(xs.begin() + 1, xs.end(), 0);
      while (true) {
        const bool all_zero = std::all_of(xs.begin(), xs.end(), [](long long v) { return v == 0; });
        if (!(skip_all_zero && all_zero) && violates(xs)) {
          ++out.violations;
          if (out.witnesses.size() < opt.witness_cap) {
            Witness w;
            w.f = f;
            w.x = xs;
            describe(xs, w.lhs, w.rhs);
            out.witnesses.push_back(std::move(w));
          }
          if (stop_on_first) {
            found.store(true, std::memory_order_relaxed);
            return;
          }
        }
        int pos = r - 1;
        while (pos >= 1) {
          if (++xs[static_cast<size_t>(pos)] < m) break;
          xs[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
  });

  CriterionReport report;
  report.spec = spec;
  report.criterion = id;
  report.f_checked = {f};
  report.witness_cap = opt.witness_cap;
  for (auto& cr : results) {
    report.violations_total += cr.violations;
    for (auto& w : cr.witnesses)
      if (report.witnesses.size() < opt.witness_cap) report.witnesses.push_back(std::move(w));
  }
  // Early-stopped sweeps cannot count; normalize so the report does not
  // depend on chunking.
  if (stop_on_first && report.violations_total > 0) report.violations_total = 1;
  report.pass = report.violations_total == 0;
  return report;
}

}  // namespace

std::string to_string(Twist t) { return t == Twist::Trivial ? "trivial" : "quadratic"; }

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::Digit:
      return "digit";
    case CriterionId::DigitAbs:
      return "digit-abs";
    case CriterionId::KubertV:
      return "v";
    case CriterionId::GaussSum:
      return "gauss";
  }
  return "?";
}

SystemSpec SystemSpec::make(int p, long long D, std::vector<long long> d, Twist twist) {
  require(is_prime(p), "SystemSpec: p must be prime");
  require(D >= 2, "SystemSpec: D must be >= 2");
  require(D % p != 0, "SystemSpec: D must be prime to p");
  require(!d.empty() && d.front() == 1, "SystemSpec: d must start with d_1 = 1");
  require(d.size() <= 4, "SystemSpec: at most r = 4 exponents are supported");
  for (size_t i = 0; i < d.size(); ++i) {
    require(d[i] >= 1 && d[i] < D, "SystemSpec: exponents must satisfy d_i < D");
    require(d[i] % p != 0, "SystemSpec: exponents must be prime to p");
    if (i > 0) require(d[i] > d[i - 1], "SystemSpec: exponents must be strictly increasing");
  }
  if (twist == Twist::Quadratic) require(p % 2 == 1, "SystemSpec: quadratic twist needs odd p");
  SystemSpec s;
  s.p = p;
  s.D = D;
  s.d = std::move(d);
  s.twist = twist;
  return s;
}

std::vector<long long> SystemSpec::multipliers() const {
  std::vector<long long> m(d.begin() + 1, d.end());
  m.push_back(D);
  return m;
}

std::string SystemSpec::to_string() const {
  std::ostringstream os;
  os << "p=" << p << " D=" << D << " d=";
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << " twist=" << finmono::to_string(twist);
  return os.str();
}

unsigned long long criterion_iteration_count(const SystemSpec& spec, int f) {
  const long long m = pow_checked(spec.p, f) - 1;
  unsigned __int128 n = 1;
  for (int i = 0; i < spec.r(); ++i) {
    n *= static_cast<unsigned long long>(m);
    if (n > std::numeric_limits<unsigned long long>::max())
      return std::numeric_limits<unsigned long long>::max();
  }
  return static_cast<unsigned long long>(n);
}

CriterionReport check_digit_criterion(const SystemSpec& spec, int f, const CheckOptions& opt) {
  require(f >= 1, "check_digit_criterion: f must be >= 1");
  const int p = spec.p;
  const long long m = pow_checked(p, f) - 1;
  const auto mult = spec.multipliers();
  const auto ds = digit_sum_table(p, f, m);
  const bool quadratic = spec.twist == Twist::Quadratic;
  const long long shift = quadratic ? m / 2 : 0;
  const int fp1 = f * (p - 1);

  auto lhs_of = [&](const std::vector<long long>& xs) -> int {
    long long s = shift;
    for (size_t i = 0; i < xs.size(); ++i) s += mult[i] * xs[i];
    const long long rep = s % m;
    return rep == 0 ? fp1 : ds[static_cast<size_t>(rep)];
  };
  auto rhs2_of = [&](const std::vector<long long>& xs) -> long long {
    long long t = fp1;  // doubled right-hand side: 2 sum [x_i] + f(p-1)
    for (long long x : xs) t += 2 * ds[static_cast<size_t>(x)];
    return t;
  };

  return run_tuple_criterion(
      spec, f, CriterionId::Digit, m, /*skip_all_zero=*/!quadratic, opt,
      [&](const std::vector<long long>& xs) { return 2 * lhs_of(xs) > rhs2_of(xs); },
      [&](const std::vector<long long>& xs, Rational& lhs, Rational& rhs) {
        lhs = make_rational(lhs_of(xs), 1);
        rhs = make_rational(rhs2_of(xs), 2);
      },
      opt.witness_cap == 0);
}

CriterionReport check_digit_criterion_A(const SystemSpec& spec, int f, const Rational& A,
                                        const CheckOptions& opt) {
  require(f >= 1, "check_digit_criterion_A: f must be >= 1");
  require(sgn(A) >= 0, "check_digit_criterion_A: A must be nonnegative");
  const int p = spec.p;
  const long long m = pow_checked(p, f) - 1;
  const auto mult = spec.multipliers();
  const auto ds = digit_sum_table(p, f, m);
  const bool quadratic = spec.twist == Twist::Quadratic;
  const long long shift = quadratic ? m / 2 : 0;
  const int fp1 = f * (p - 1);
  require(A.get_num().fits_slong_p() && A.get_den().fits_slong_p(),
          "check_digit_criterion_A: slack out of range");
  const long long a_num = A.get_num().get_si(), a_den = A.get_den().get_si();
  require(a_num <= 1'000'000'000'000LL && a_den <= 1'000'000,
          "check_digit_criterion_A: slack out of range");

  auto lhs_of = [&](const std::vector<long long>& xs) -> int {
    long long s = shift;
    for (size_t i = 0; i < xs.size(); ++i) s += mult[i] * xs[i];
    return digit_sum_abs(s, p);
  };
  auto rhs2_of = [&](const std::vector<long long>& xs) -> long long {
    long long t = fp1;  // doubled, before slack
    for (long long x : xs) t += 2 * ds[static_cast<size_t>(x)];
    return t;
  };

  return run_tuple_criterion(
      spec, f, CriterionId::DigitAbs, m, /*skip_all_zero=*/!quadratic, opt,
      [&](const std::vector<long long>& xs) {
        // 2 lhs > 2 rhs + 2A, scaled by den(A) to stay integral.
        return 2 * a_den * lhs_of(xs) > a_den * rhs2_of(xs) + 2 * a_num;
      },
      [&](const std::vector<long long>& xs, Rational& lhs, Rational& rhs) {
        lhs = make_rational(lhs_of(xs), 1);
        rhs = make_rational(rhs2_of(xs), 2) + A;
      },
      opt.witness_cap == 0);
}

CriterionReport check_V_criterion(const SystemSpec& spec, int f, const CheckOptions& opt) {
  require(f >= 1, "check_V_criterion: f must be >= 1");
  const int p = spec.p;
  const long long m = pow_checked(p, f) - 1;
  const auto mult = spec.multipliers();
  const bool quadratic = spec.twist == Twist::Quadratic;
  const long long shift = quadratic ? m / 2 : 0;

  // V at every fraction a/(p^f-1); kubert_V reduces each fraction and uses
  // its own minimal order, so this is an independent route to the digit sums.
  std::vector<Rational> vt(static_cast<size_t>(m));
  for (long long a = 0; a < m; ++a) vt[static_cast<size_t>(a)] = kubert_V(FractionModZ(a, m), p);
  const Rational half = make_rational(1, 2);
  const Rational one = make_rational(1, 1);

  auto sides = [&](const std::vector<long long>& xs) {
    Rational lhs = half;
    long long s = shift;
    for (size_t i = 0; i < xs.size(); ++i) {
      lhs += vt[static_cast<size_t>(xs[i])];
      s += mult[i] * xs[i];
    }
    const long long t = s % m;
    const Rational rhs = (t == 0) ? one : vt[static_cast<size_t>(t)];
    return std::make_pair(lhs, rhs);
  };

  return run_tuple_criterion(
      spec, f, CriterionId::KubertV, m, /*skip_all_zero=*/!quadratic, opt,
      [&](const std::vector<long long>& xs) {
        const auto [lhs, rhs] = sides(xs);
        return lhs < rhs;
      },
      [&](const std::vector<long long>& xs, Rational& lhs, Rational& rhs) {
        std::tie(lhs, rhs) = sides(xs);
      },
      opt.witness_cap == 0);
}

CriterionReport gauss_criterion(const SystemSpec& spec, const FieldTable& K,
                                const CheckOptions& opt) {
  require(K.p() == spec.p, "gauss_criterion: field characteristic mismatch");
  const int p = spec.p;
  const long long m = K.q() - 1;
  const auto mult = spec.multipliers();
  const bool quadratic = spec.twist == Twist::Quadratic;
  const long long target = quadratic ? m / 2 : 0;

  // val[j] = ord_q g(psi, omega^j) = V(-j/(q-1)).
  std::vector<Rational> val(static_cast<size_t>(m));
  for (long long j = 1; j < m; ++j)
    val[static_cast<size_t>(j)] = kubert_V(FractionModZ(m - j, m), p);
  const Rational half = make_rational(1, 2);

  // Enumerate by the x-variables (x_i = -j_i mod q-1) so witnesses align
  // with the digit criterion; rho_1 is solved from the character equation.
  auto total = [&](const std::vector<long long>& xs) {
    Rational lhs(0);
    long long sum_dj = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const long long ji = (m - xs[i]) % m;
      lhs += val[static_cast<size_t>(ji)];  // V(x_i / (q-1))
      sum_dj += mult[i] * ji;
    }
    const long long j1 = ((target - sum_dj) % m + m) % m;
    lhs += val[static_cast<size_t>(j1)];
    return lhs;
  };

  const int f = K.f();
  return run_tuple_criterion(
      spec, f, CriterionId::GaussSum, m, /*skip_all_zero=*/!quadratic, opt,
      [&](const std::vector<long long>& xs) { return total(xs) < half; },
      [&](const std::vector<long long>& xs, Rational& lhs, Rational& rhs) {
        lhs = total(xs);
        rhs = half;
      },
      opt.witness_cap == 0);
}

MellinOracle::MellinOracle(const SystemSpec& spec, const FieldTable& K) : spec_(spec), K_(&K) {
  require(K.p() == spec.p, "MellinOracle: field characteristic mismatch");
  require(K.q() <= 81, "MellinOracle: field too large (q <= 81 required)");
  powers_ = spec.d;
  powers_.push_back(spec.D);

  const long long qm1 = K.q() - 1;
  const int n = static_cast<int>(powers_.size());  // r + 1 varying coefficients
  unsigned long long count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<unsigned long long>(qm1);
  if (count > (1ULL << 22))
    throw BudgetExceeded("MellinOracle: (q-1)^{r+1} coefficient tuples exceed the table budget");

  // Logs of x^{power} for every nonzero x.
  std::vector<std::vector<long long>> xpow(static_cast<size_t>(qm1),
                                           std::vector<long long>(static_cast<size_t>(n)));
  for (long long kx = 0; kx < qm1; ++kx)
    for (int i = 0; i < n; ++i)
      xpow[static_cast<size_t>(kx)][static_cast<size_t>(i)] =
          static_cast<long long>((static_cast<__int128>(kx) * powers_[static_cast<size_t>(i)]) %
                                 qm1);

  const bool quadratic = spec.twist == Twist::Quadratic;
  trace_fn_.reserve(count);
  std::vector<long long> ks(static_cast<size_t>(n), 0);
  for (unsigned long long idx = 0; idx < count; ++idx) {
    CycInt fval(K.p());
    if (!quadratic) fval.add_term(0, 1);  // x = 0 contributes psi(0) = 1
    for (long long kx = 0; kx < qm1; ++kx) {
      FieldElement arg;  // zero
      for (int i = 0; i < n; ++i) {
        const long long lg = ks[static_cast<size_t>(i)] + xpow[static_cast<size_t>(kx)][static_cast<size_t>(i)];
        arg = K.add(arg, K.from_log(lg));
      }
      const int sign = quadratic ? (kx % 2 == 0 ? 1 : -1) : 1;
      fval.add_term(K.absolute_trace(arg), sign);
    }
    trace_fn_.push_back(std::move(fval));
    for (int i = 0; i < n; ++i) {
      if (++ks[static_cast<size_t>(i)] < qm1) break;
      ks[static_cast<size_t>(i)] = 0;
    }
  }
}

std::pair<CycInt, CycInt> MellinOracle::evaluate(const std::vector<MultChar>& rho) const {
  const long long qm1 = K_->q() - 1;
  const int n = static_cast<int>(powers_.size());
  require(static_cast<int>(rho.size()) == n, "MellinOracle: tuple must have r+1 characters");
  for (const auto& ch : rho)
    require(ch.field == K_, "MellinOracle: character of a different field");

  const long long big_m = static_cast<long long>(K_->p()) * qm1;

  // Direct double sum: sum_t F(t) prod_i rho_i(t_i).
  CycInt direct(big_m);
  std::vector<long long> ks(static_cast<size_t>(n), 0);
  for (const CycInt& fval : trace_fn_) {
    long long w = 0;
    for (int i = 0; i < n; ++i)
      w = (w + rho[static_cast<size_t>(i)].j * ks[static_cast<size_t>(i)]) % qm1;
    for (int u = 0; u < K_->p(); ++u) {
      const mpz_class& c = fval.coeffs()[static_cast<size_t>(u)];
      if (c != 0) direct.add_term(qm1 * u + K_->p() * w, c);
    }
    for (int i = 0; i < n; ++i) {
      if (++ks[static_cast<size_t>(i)] < qm1) break;
      ks[static_cast<size_t>(i)] = 0;
    }
  }

  // Closed form.
  const bool quadratic = spec_.twist == Twist::Quadratic;
  const long long target = quadratic ? qm1 / 2 : 0;
  long long prod_index = 0;
  bool all_trivial = true;
  for (int i = 0; i < n; ++i) {
    prod_index = (prod_index + powers_[static_cast<size_t>(i)] * rho[static_cast<size_t>(i)].j) % qm1;
    all_trivial = all_trivial && rho[static_cast<size_t>(i)].is_trivial();
  }

  CycInt closed(big_m);
  if (!quadratic && all_trivial) {
    // (q-1)^{r+1} + (q-1)(-1)^{r+1}
    mpz_class v = 1;
    for (int i = 0; i < n; ++i) v *= static_cast<long>(qm1);
    v += mpz_class(static_cast<long>(qm1)) * (n % 2 == 0 ? 1 : -1);
    closed = CycInt::constant(big_m, v);
  } else if (prod_index == target) {
    CycInt prod = CycInt::constant(big_m, mpz_class(static_cast<long>(qm1)));
    for (int i = 0; i < n; ++i) prod = prod * gauss_sum(*K_, rho[static_cast<size_t>(i)]);
    closed = prod;
  }
  return {std::move(direct), std::move(closed)};
}

std::vector<std::vector<MultChar>> MellinOracle::admissible_tuples() const {
  const long long qm1 = K_->q() - 1;
  const int n = static_cast<int>(powers_.size());
  const bool quadratic = spec_.twist == Twist::Quadratic;
  const long long target = quadratic ? qm1 / 2 : 0;

  unsigned long long count = 1;
  for (int i = 1; i < n; ++i) count *= static_cast<unsigned long long>(qm1);

  std::vector<std::vector<MultChar>> tuples;
  std::vector<long long> js(static_cast<size_t>(n), 0);  // js[1..] free, js[0] solved
  for (unsigned long long idx = 0; idx < count; ++idx) {
    long long rest = 0;
    for (int i = 1; i < n; ++i)
      rest = (rest + powers_[static_cast<size_t>(i)] * js[static_cast<size_t>(i)]) % qm1;
    js[0] = ((target - rest) % qm1 + qm1) % qm1;
    const bool all_trivial =
        std::all_of(js.begin(), js.end(), [](long long j) { return j == 0; });
    if (!(!quadratic && all_trivial)) {
      std::vector<MultChar> tuple;
      tuple.reserve(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) tuple.push_back({K_, js[static_cast<size_t>(i)]});
      tuples.push_back(std::move(tuple));
    }
    for (int i = 1; i < n; ++i) {
      if (++js[static_cast<size_t>(i)] < qm1) break;
      js[static_cast<size_t>(i)] = 0;
    }
  }
  return tuples;
}

std::pair<CycInt, CycInt> mellin_oracle(const SystemSpec& spec, const FieldTable& K,
                                        const std::vector<MultChar>& rho) {
  return MellinOracle(spec, K).evaluate(rho);
}

std::string KnownCase::to_string() const {
  std::ostringstream os;
  switch (family) {
    case Family::None:
      return "none";
    case Family::HalfQPlusOne:
      os << "(q+1)/2 with q=" << q;
      break;
    case Family::QnPlusOneOverQPlusOne:
      os << "(q^n+1)/(q+1) with q=" << q << " n=" << n;
      break;
    case Family::TwoQMinusOne:
      os << "2q-1 with q=" << q;
      break;
  }
  return os.str();
}

KnownCase is_known_case(long long p, long long D) {
  require(D >= 2, "is_known_case: D must be >= 2");
  auto is_power_of_p = [&](long long v) {
    if (v < p) return false;
    while (v % p == 0) v /= p;
    return v == 1;
  };

  // D = (q+1)/2
  if (is_power_of_p(2 * D - 1)) return {KnownCase::Family::HalfQPlusOne, 2 * D - 1, 0};

  // D = (q^n+1)/(q+1), odd n >= 3; the n = 3 value q^2-q+1 is the smallest
  // for a given q, which bounds the q loop.
  for (long long q = p; q * q - q + 1 <= D; q *= p) {
    unsigned __int128 qn = static_cast<unsigned __int128>(q) * q * q;
    for (int n = 3;; n += 2) {
      const unsigned __int128 value = (qn + 1) / (q + 1);
      if (value > static_cast<unsigned __int128>(D)) break;
      if (value == static_cast<unsigned __int128>(D))
        return {KnownCase::Family::QnPlusOneOverQPlusOne, q, n};
      if (qn > (static_cast<unsigned __int128>(1) << 100)) break;
      qn *= static_cast<unsigned __int128>(q) * q;
    }
  }

  // D = 2q-1
  if (D % 2 == 1 && is_power_of_p((D + 1) / 2))
    return {KnownCase::Family::TwoQMinusOne, (D + 1) / 2, 0};

  return {};
}

std::vector<Survivor> search(int p, long long D_min, long long D_max, Twist twist, int f_max,
                             const SearchOptions& opt) {
  require(D_min >= 2, "search: D range must start at 2 or above");
  require(D_max >= D_min, "search: empty D range");
  require(f_max >= 1, "search: f_max must be >= 1");

  const long long n = D_max - D_min + 1;
  std::vector<std::vector<Survivor>> per_chunk(
      static_cast<size_t>(std::max<long long>(1, std::min<long long>(std::max(1, opt.jobs), n))));

  parallel_chunks(n, opt.jobs, [&](int chunk, long long begin, long long end) {
    auto& out = per_chunk[static_cast<size_t>(chunk)];
    for (long long i = begin; i < end; ++i) {
      const long long D = D_min + i;
      if (D % p == 0) continue;  // outside the family: D must be prime to p
      const SystemSpec spec = SystemSpec::make(p, D, {1}, twist);
      bool pass = true;
      for (int f = 1; f <= f_max && pass; ++f)
        pass = check_digit_criterion(spec, f, {.witness_cap = 0, .jobs = 1}).pass;
      if (pass) out.push_back({D, is_known_case(p, D), spec.within_hypotheses(), f_max});
    }
  });

  std::vector<Survivor> survivors;
  for (auto& chunk : per_chunk)
    survivors.insert(survivors.end(), chunk.begin(), chunk.end());
  return survivors;
}

}  // namespace finmono
