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

#include "finmono/traces.hpp"

#include <ostream>
#include <stdexcept>

#include "finmono/digits.hpp"
#include "finmono/parallel.hpp"

namespace finmono {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

CycInt raw_trace_impl(const SystemSpec& spec, const FieldTable& K,
                      std::optional<FieldElement> leading, std::span<const FieldElement> t) {
  require(static_cast<int>(t.size()) == spec.r(), "raw_trace: wrong parameter arity");
  require(K.p() == spec.p, "raw_trace: field characteristic mismatch");
  const long long qm1 = K.q() - 1;
  const bool quadratic = spec.twist == Twist::Quadratic;

  const FieldElement lead = leading.value_or(K.one());
  require(!lead.is_zero(), "raw_trace: leading coefficient must be nonzero");

  std::vector<long long> counts(static_cast<size_t>(K.p()), 0);
  for (long long kx = 0; kx < qm1; ++kx) {
    FieldElement arg = K.from_log(lead.log + static_cast<long long>(
                                                 (static_cast<__int128>(kx) * (spec.D % qm1)) % qm1));
    for (int i = 0; i < spec.r(); ++i) {
      if (t[static_cast<size_t>(i)].is_zero()) continue;
      const long long lg =
          t[static_cast<size_t>(i)].log +
          static_cast<long long>((static_cast<__int128>(kx) * (spec.d[static_cast<size_t>(i)] % qm1)) % qm1);
      arg = K.add(arg, K.from_log(lg));
    }
    const int sign = quadratic ? (kx % 2 == 0 ? 1 : -1) : 1;
    counts[static_cast<size_t>(K.absolute_trace(arg))] += sign;
  }
  if (!quadratic) ++counts[0];  // x = 0 term

  CycInt sum(K.p());
  for (int u = 0; u < K.p(); ++u)
    sum.add_term(u, mpz_class(static_cast<long>(-counts[static_cast<size_t>(u)])));
  return sum;
}

}  // namespace

CycInt raw_trace(const SystemSpec& spec, const FieldTable& K, std::span<const FieldElement> t) {
  return raw_trace_impl(spec, K, std::nullopt, t);
}

CycInt raw_trace_leading(const SystemSpec& spec, const FieldTable& K, FieldElement leading,
                         std::span<const FieldElement> t) {
  return raw_trace_impl(spec, K, leading, t);
}

TwistedTrace twisted_trace(const SystemSpec& spec, const FieldTable& K,
                           std::span<const FieldElement> t) {
  require(spec.twist == Twist::Quadratic,
          "twisted_trace: exact alpha division applies to the quadratic twist only");
  const CycInt raw = raw_trace(spec, K, t);
  const AlphaSpec alpha = AlphaSpec::make(spec.p, spec.D);

  TwistedTrace out{TwistedTrace::Status::Integer, 0, CycInt(spec.p)};
  auto divided = divide_by_alpha_power(raw, alpha, K.f());
  if (!divided) {
    out.status = TwistedTrace::Status::NotDivisible;
    out.residue = raw;
    return out;
  }
  if (auto n = divided->as_rational_integer()) {
    out.value = *n;
    return out;
  }
  out.status = TwistedTrace::Status::NotRational;
  out.residue = *divided;
  return out;
}

TraceTable trace_table(const SystemSpec& spec, const FieldTable& K,
                       const TraceTableRequest& request) {
  require(K.p() == spec.p, "trace_table: field characteristic mismatch");
  const bool quadratic = spec.twist == Twist::Quadratic;
  require(!request.vary_leading || quadratic,
          "trace_table: the chi2-prefactor variant needs the quadratic twist");

  std::vector<CoordSpec> coords = request.coords;
  coords.resize(static_cast<size_t>(spec.r()));

  // Concrete code lists per varying slot: leading first when present.
  std::vector<std::vector<long long>> domains;
  if (request.vary_leading) {
    std::vector<long long> dom;
    for (long long k = 0; k < K.q() - 1; ++k) dom.push_back(K.code(K.from_log(k)));
    std::sort(dom.begin(), dom.end());
    domains.push_back(std::move(dom));
  }
  for (const CoordSpec& c : coords) {
    std::vector<long long> dom;
    switch (c.kind) {
      case CoordSpec::Kind::Full:
        for (long long code = 0; code < K.q(); ++code) dom.push_back(code);
        break;
      case CoordSpec::Kind::NonZero:
        for (long long code = 1; code < K.q(); ++code) dom.push_back(code);
        break;
      case CoordSpec::Kind::Frozen:
        require(c.frozen_code >= 0 && c.frozen_code < K.q(), "trace_table: frozen code range");
        dom.push_back(c.frozen_code);
        break;
    }
    domains.push_back(std::move(dom));
  }

  unsigned long long total = 1;
  for (const auto& dom : domains) {
    total *= dom.size();
    if (total > request.budget)
      throw BudgetExceeded("trace_table: parameter grid exceeds the iteration budget");
  }

  TraceTable table{spec, &K, request, {}};
  table.rows.resize(total);

  parallel_chunks(static_cast<long long>(total), request.jobs,
                  [&](int, long long begin, long long end) {
    std::vector<size_t> idx(domains.size(), 0);
    // Mixed-radix decomposition of `begin`, last slot fastest.
    unsigned long long rem = static_cast<unsigned long long>(begin);
    for (size_t i = domains.size(); i-- > 0;) {
      idx[i] = static_cast<size_t>(rem % domains[i].size());
      rem /= domains[i].size();
    }
    std::vector<FieldElement> t(static_cast<size_t>(spec.r()));
    for (long long row = begin; row < end; ++row) {
      TraceRow& out = table.rows[static_cast<size_t>(row)];
      out.raw = CycInt(spec.p);
      out.params.clear();
      const size_t coord0 = request.vary_leading ? 1 : 0;
      for (size_t i = 0; i < domains.size(); ++i) out.params.push_back(domains[i][idx[i]]);
      for (size_t i = 0; i < static_cast<size_t>(spec.r()); ++i)
        t[i] = K.from_code(out.params[coord0 + i]);

      int prefactor = 1;
      CycInt raw(spec.p);
      if (request.vary_leading) {
        const FieldElement lead = K.from_code(out.params[0]);
        prefactor = (lead.log % 2 == 0) ? 1 : -1;  // chi2(lead)
        raw = raw_trace_leading(spec, K, lead, t);
      } else {
        raw = raw_trace(spec, K, t);
      }
      out.raw = prefactor == 1 ? raw : -raw;

      if (quadratic) {
        const AlphaSpec alpha = AlphaSpec::make(spec.p, spec.D);
        TwistedTrace tw{TwistedTrace::Status::Integer, 0, CycInt(spec.p)};
        auto divided = divide_by_alpha_power(out.raw, alpha, K.f());
        if (!divided) {
          tw.status = TwistedTrace::Status::NotDivisible;
          tw.residue = out.raw;
        } else if (auto n = divided->as_rational_integer()) {
          tw.value = *n;
        } else {
          tw.status = TwistedTrace::Status::NotRational;
          tw.residue = *divided;
        }
        out.twisted = std::move(tw);
      }

      // Advance the odometer.
      for (size_t i = domains.size(); i-- > 0;) {
        if (++idx[i] < domains[i].size()) break;
        idx[i] = 0;
      }
    }
  });
  return table;
}

namespace {

std::string cyc_to_string(const CycInt& a) {
  const CycInt r = a.reduced();
  std::string s;
  bool first = true;
  for (size_t i = 0; i < r.coeffs().size(); ++i) {
    const mpz_class& c = r.coeffs()[i];
    if (c == 0) continue;
    if (!first) s += c > 0 ? "+" : "";
    s += c.get_str();
    if (i > 0) s += "*z^" + std::to_string(i);
    first = false;
  }
  return first ? "0" : s;
}

}  // namespace

void write_trace_csv(std::ostream& out, const TraceTable& table) {
  const FieldTable& K = *table.field;
  out << "# finmono trace table\n";
  out << "# system: " << table.spec.to_string() << "\n";
  out << "# field: p=" << K.p() << " f=" << K.f() << " q=" << K.q() << " modulus=";
  for (size_t i = 0; i < K.modulus().size(); ++i)
    out << (i ? "," : "") << static_cast<int>(K.modulus()[i]);
  out << "\n";
  out << "# parameter columns hold element codes (base-p polynomial encoding)\n";

  if (table.request.vary_leading) out << "r,";
  for (int i = 0; i < table.spec.r(); ++i) out << "t" << (i + 1) << ",";
  out << "value\n";

  for (const TraceRow& row : table.rows) {
    for (long long pcode : row.params) out << pcode << ",";
    if (row.twisted) {
      switch (row.twisted->status) {
        case TwistedTrace::Status::Integer:
          out << row.twisted->value.get_str();
          break;
        case TwistedTrace::Status::NotRational:
          out << "NOT_RATIONAL(" << cyc_to_string(row.twisted->residue) << ")";
          break;
        case TwistedTrace::Status::NotDivisible:
          out << "NOT_DIVISIBLE(" << cyc_to_string(row.twisted->residue) << ")";
          break;
      }
    } else {
      out << cyc_to_string(row.raw);
    }
    out << "\n";
  }
}

long long wild_inertia_image_order(long long p, long long D) {
  require(D >= 3, "wild_inertia_image_order: D must be >= 3");
  require(D % p != 0, "wild_inertia_image_order: D must be prime to p");
  require((D - 1) % p != 0, "wild_inertia_image_order: D-1 must be prime to p");
  const long long f = mult_order(p, D - 1);
  return pow_checked(p, static_cast<int>(f));
}

}  // namespace finmono
