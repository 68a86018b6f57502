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

#include "finmono/field.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

#include "finmono/digits.hpp"

namespace finmono {

namespace {

// Dense polynomials over F_p, coefficients ascending, no trailing zeros.
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b, int p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b, int p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % p + p) % p;
  trim(r);
  return r;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  // Reduce by the monic modulus.
  const size_t deg = mod.size() - 1;
  for (size_t i = r.size(); i-- > deg;) {
    const int c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (size_t j = 0; j < deg; ++j) r[i - deg + j] = ((r[i - deg + j] - c * mod[j]) % p + p) % p;
  }
  r.resize(deg);
  trim(r);
  return r;
}

Poly poly_pow_mod(Poly base, unsigned long long e, const Poly& mod, int p) {
  Poly r = {1};
  while (e > 0) {
    if (e & 1) r = poly_mul_mod(r, base, mod, p);
    base = poly_mul_mod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  // Inverses mod p by Fermat.
  auto inv = [&](int x) {
    int r = 1, e = p - 2, base = x;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  while (!b.empty()) {
    // a mod b
    Poly rem = a;
    const int lead_inv = inv(b.back());
    while (rem.size() >= b.size()) {
      const int c = rem.back() * lead_inv % p;
      const size_t shift = rem.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j)
        rem[shift + j] = ((rem[shift + j] - c * b[j]) % p + p) % p;
      trim(rem);
    }
    a = b;
    b = rem;
  }
  return a;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> fs;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

// Irreducibility over F_p by the Frobenius criterion: x^{p^f} = x mod m and
// gcd(x^{p^{f/l}} - x, m) = 1 for every prime l dividing f.
bool is_irreducible(const Poly& mod, int p, int f) {
  const Poly x = poly_mul_mod({0, 1}, {1}, mod, p);  // x reduced mod m
  std::vector<Poly> frob(f + 1);  // frob[d] = x^{p^d} mod m
  frob[0] = x;
  for (int d = 1; d <= f; ++d)
    frob[d] = poly_pow_mod(frob[d - 1], static_cast<unsigned long long>(p), mod, p);
  if (frob[f] != x) return false;
  for (long long l : prime_factors(f)) {
    Poly diff = poly_sub(frob[f / l], x, p);
    if (diff.empty()) return false;
    Poly g = poly_gcd(mod, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly code_to_poly(long long code, int p) {
  Poly r;
  while (code > 0) {
    r.push_back(static_cast<int>(code % p));
    code /= p;
  }
  return r;
}

long long poly_to_code(const Poly& a, int p) {
  long long code = 0;
  for (size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

constexpr char kMagic[5] = {'M', 'S', 'F', 'T', '1'};

uint32_t crc32_bytes(const uint8_t* data, size_t n) {
  static const auto table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  uint32_t c = 0xFFFFFFFFu;
  for (size_t i = 0; i < n; ++i) c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

uint32_t get_u32(const uint8_t* b) {
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long long mult_order(long long p, long long m) {
  if (m < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
  const long long base = ((p % m) + m) % m;
  if (std::gcd(base, m) != 1)
    throw std::invalid_argument("mult_order: p and modulus must be coprime");
  long long acc = base % m;
  for (long long e = 1; e <= m; ++e) {
    if (acc == 1) return e;
    acc = static_cast<long long>((static_cast<__int128>(acc) * base) % m);
  }
  throw std::logic_error("mult_order: no order found");  // unreachable
}

FieldTable FieldTable::build(int p, int f, long long q_bound) {
  return build_with_generator_rank(p, f, 0, q_bound);
}

FieldTable FieldTable::build_with_generator_rank(int p, int f, int generator_rank,
                                                 long long q_bound) {
  if (!is_prime(p)) throw std::invalid_argument("FieldTable: p must be prime");
  if (f < 1) throw std::invalid_argument("FieldTable: f must be >= 1");
  const long long q = pow_checked(p, f);
  if (q > q_bound) throw std::invalid_argument("FieldTable: q exceeds the configured bound");

  FieldTable t;
  t.p_ = p;
  t.f_ = f;
  t.q_ = q;

  // First monic irreducible of degree f, non-leading coefficients scanned as
  // ascending base-p integers.
  Poly mod;
  for (long long n = 0; n < q; ++n) {
    Poly cand = code_to_poly(n, p);
    cand.resize(f + 1, 0);
    cand[f] = 1;
    if (is_irreducible(cand, p, f)) {
      mod = cand;
      break;
    }
  }
  if (mod.empty()) throw std::logic_error("FieldTable: no irreducible polynomial found");
  t.modulus_.assign(mod.begin(), mod.end());

  // Generator: smallest code of order q-1, or the rank-th smallest.
  const auto factors = prime_factors(q - 1);
  Poly gen;
  int seen = 0;
  for (long long code = 1; code < q; ++code) {
    Poly cand = code_to_poly(code, p);
    bool ok = true;
    for (long long l : factors) {
      Poly pw = poly_pow_mod(cand, static_cast<unsigned long long>((q - 1) / l), mod, p);
      if (pw == Poly{1}) {
        ok = false;
        break;
      }
    }
    if (ok && q > 2) {
      Poly full = poly_pow_mod(cand, static_cast<unsigned long long>(q - 1), mod, p);
      if (full != Poly{1}) ok = false;
    }
    if (ok) {
      if (seen == generator_rank) {
        gen = cand;
        break;
      }
      ++seen;
    }
  }
  if (gen.empty() && q == 2) gen = {1};
  if (gen.empty()) throw std::invalid_argument("FieldTable: generator rank out of range");

  t.exp_.assign(q - 1, 0);
  t.log_.assign(q, 0);
  Poly cur = {1};
  for (long long i = 0; i < q - 1; ++i) {
    const long long code = poly_to_code(cur, p);
    t.exp_[i] = static_cast<uint32_t>(code);
    t.log_[code] = static_cast<uint32_t>(i);
    cur = poly_mul_mod(cur, gen, mod, p);
  }
  if (cur != Poly{1}) throw std::logic_error("FieldTable: generator order check failed");

  // Trace of the power basis, then extend F_p-linearly over codes.
  std::vector<int> basis_trace(f, 0);
  for (int j = 0; j < f; ++j) {
    Poly xj(j + 1, 0);
    xj[j] = 1;
    trim(xj);
    Poly acc = xj;
    Poly pw = xj;
    for (int i = 1; i < f; ++i) {
      pw = poly_pow_mod(pw, static_cast<unsigned long long>(p), mod, p);
      acc = poly_add(acc, pw, p);
    }
    if (acc.size() > 1) throw std::logic_error("FieldTable: basis trace not in F_p");
    basis_trace[j] = acc.empty() ? 0 : acc[0];
  }
  t.trace_.assign(q, 0);
  for (long long code = 0; code < q; ++code) {
    long long c = code;
    int tr = 0;
    for (int j = 0; j < f && c > 0; ++j) {
      tr = (tr + static_cast<int>(c % p) * basis_trace[j]) % p;
      c /= p;
    }
    t.trace_[code] = static_cast<uint8_t>(tr);
  }
  return t;
}

FieldElement FieldTable::from_log(long long k) const {
  long long m = k % (q_ - 1);
  if (m < 0) m += q_ - 1;
  return {m};
}

FieldElement FieldTable::from_code(long long code) const {
  if (code < 0 || code >= q_) throw std::invalid_argument("FieldTable::from_code: out of range");
  if (code == 0) return {};
  return {log_[code]};
}

FieldElement FieldTable::add(FieldElement a, FieldElement b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long long ca = exp_[a.log], cb = exp_[b.log];
  long long out = 0, mul = 1;
  for (int i = 0; i < f_; ++i) {
    const int s = static_cast<int>(ca % p_ + cb % p_) % p_;
    out += mul * s;
    mul *= p_;
    ca /= p_;
    cb /= p_;
  }
  return from_code(out);
}

FieldElement FieldTable::neg(FieldElement a) const {
  if (a.is_zero()) return a;
  if (p_ == 2) return a;
  // -1 = g^{(q-1)/2}
  return {(a.log + (q_ - 1) / 2) % (q_ - 1)};
}

FieldElement FieldTable::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return {};
  return {(a.log + b.log) % (q_ - 1)};
}

FieldElement FieldTable::pow(FieldElement a, long long e) const {
  if (a.is_zero()) {
    if (e == 0) return one();
    if (e < 0) throw std::invalid_argument("FieldTable::pow: negative power of zero");
    return {};
  }
  const long long m = q_ - 1;
  long long le = static_cast<long long>((static_cast<__int128>(a.log) * (e % m)) % m);
  if (le < 0) le += m;
  return {le};
}

void FieldTable::save(const std::filesystem::path& file) const {
  std::vector<uint8_t> buf;
  buf.insert(buf.end(), kMagic, kMagic + 5);
  put_u32(buf, static_cast<uint32_t>(p_));
  put_u32(buf, static_cast<uint32_t>(f_));
  buf.insert(buf.end(), modulus_.begin(), modulus_.end());
  for (uint32_t v : exp_) put_u32(buf, v);
  buf.insert(buf.end(), trace_.begin(), trace_.end());
  put_u32(buf, crc32_bytes(buf.data(), buf.size()));

  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("FieldTable::save: cannot open " + file.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("FieldTable::save: write failed for " + file.string());
}

std::optional<FieldTable> FieldTable::load(const std::filesystem::path& file, int p, int f) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const long long q = pow_checked(p, f);
  const size_t expected = 5 + 4 + 4 + static_cast<size_t>(f + 1) +
                          4 * static_cast<size_t>(q - 1) + static_cast<size_t>(q) + 4;
  if (buf.size() != expected) return std::nullopt;
  if (std::memcmp(buf.data(), kMagic, 5) != 0) return std::nullopt;
  const uint32_t stored_crc = get_u32(buf.data() + buf.size() - 4);
  if (crc32_bytes(buf.data(), buf.size() - 4) != stored_crc) return std::nullopt;

  size_t off = 5;
  if (get_u32(buf.data() + off) != static_cast<uint32_t>(p)) return std::nullopt;
  off += 4;
  if (get_u32(buf.data() + off) != static_cast<uint32_t>(f)) return std::nullopt;
  off += 4;

  FieldTable t;
  t.p_ = p;
  t.f_ = f;
  t.q_ = q;
  t.modulus_.assign(buf.begin() + off, buf.begin() + off + f + 1);
  off += static_cast<size_t>(f + 1);
  t.exp_.resize(q - 1);
  for (long long i = 0; i < q - 1; ++i, off += 4) t.exp_[i] = get_u32(buf.data() + off);
  t.trace_.assign(buf.begin() + off, buf.begin() + off + q);

  t.log_.assign(q, 0);
  for (long long i = 0; i < q - 1; ++i) {
    if (t.exp_[i] == 0 || t.exp_[i] >= q) return std::nullopt;
    t.log_[t.exp_[i]] = static_cast<uint32_t>(i);
  }
  return t;
}

FieldTable FieldTable::load_or_build(int p, int f, const std::filesystem::path& cache_dir,
                                     long long q_bound) {
  const auto file = cache_dir / ("msft_" + std::to_string(p) + "_" + std::to_string(f) + ".tbl");
  if (auto t = load(file, p, f)) return std::move(*t);
  FieldTable t = build(p, f, q_bound);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  if (!ec) {
    try {
      t.save(file);
    } catch (const std::runtime_error&) {
      // Cache writes are best effort; the in-memory table is still valid.
    }
  }
  return t;
}

FieldTable build_field(int p, int f) { return FieldTable::build(p, f); }

int absolute_trace(const FieldTable& K, FieldElement x) { return K.absolute_trace(x); }

}  // namespace finmono
