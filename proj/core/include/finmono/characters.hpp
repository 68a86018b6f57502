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

// Characters of finite fields and their exact Gauss sums.
//
// A multiplicative character is indexed by j mod q-1: rho = omega^j, where
// omega sends the field's fixed generator g to zeta_{q-1}. The additive
// character is psi(x) = zeta_p^{Tr(x)}. Gauss sums are computed by the
// definitional O(q) sum, exactly, in Z[zeta_{p(q-1)}].
//
// The p-adic valuation of g(psi, rho), normalized so that ord(q) = 1, is the
// Kubert V value at -j/(q-1); it never requires p-adic arithmetic. The
// identification of omega with the Teichmueller character depends on the
// generator, but every criterion quantifies over all characters at once, so
// verdicts do not.

#include "finmono/cyclotomic.hpp"
#include "finmono/digits.hpp"
#include "finmono/field.hpp"

namespace finmono {

struct MultChar {
  const FieldTable* field = nullptr;
  long long j = 0;  // rho(g) = zeta_{q-1}^j, 0 <= j < q-1

  bool is_trivial() const { return j == 0; }
};

MultChar trivial_char(const FieldTable& K);
MultChar quadratic_char(const FieldTable& K);  // q odd
MultChar char_from_index(const FieldTable& K, long long j);

MultChar product(const MultChar& a, const MultChar& b);
MultChar char_power(const MultChar& a, long long e);
MultChar char_inverse(const MultChar& a);

// Exponent e with rho(x) = zeta_{q-1}^e, for nonzero x.
long long eval_log(const MultChar& rho, FieldElement x);
// rho(x) as an exact cyclotomic integer of order q-1 (zero argument gives 0).
CycInt eval(const MultChar& rho, FieldElement x);
// For characters with rho^2 trivial: rho(x) in {-1, +1}.
int eval_sign(const MultChar& rho, FieldElement x);

// psi_K(x) = zeta_p^{Tr(x)}, of order p.
CycInt additive_char(const FieldTable& K, FieldElement x);

// g(psi_K, rho) = sum over t in K^x of psi_K(t) rho(t), in Z[zeta_{p(q-1)}].
CycInt gauss_sum(const FieldTable& K, const MultChar& rho);

// ord_q g(psi_K, rho) in [0, 1]; 0 for the trivial character.
Rational gauss_valuation(const FieldTable& K, const MultChar& rho);

}  // namespace finmono
