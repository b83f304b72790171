/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sqh/gf.hpp"

namespace sqh {

/// A tau-linearized polynomial B(x) = sum b_i x^(tau^i) over F_q, where
/// tau = p^d and d | m. Composition makes these a skew (Ore) ring; exponents
/// reduce mod x^(tau^(m/d)) - x, so the reduced tau-degree is < m/d.
struct LinearizedPoly {
  const FieldCtx* ctx = nullptr;
  std::uint32_t d = 1;
  std::vector<Fe> coeffs;  // index i holds the coefficient of x^(tau^i)

  std::uint32_t slots() const { return ctx->m() / d; }
  bool is_zero() const;
  std::uint32_t degree() const;  // tau-degree of the reduced form; 0 for zero
};

LinearizedPoly lp_make(const FieldCtx& ctx, std::uint32_t d,
                       std::vector<Fe> coeffs);
LinearizedPoly lp_zero(const FieldCtx& ctx, std::uint32_t d);
LinearizedPoly lp_identity(const FieldCtx& ctx, std::uint32_t d);

Fe lp_eval(const LinearizedPoly& b, Fe x);
LinearizedPoly lp_add(const LinearizedPoly& b, const LinearizedPoly& c);
LinearizedPoly lp_compose(const LinearizedPoly& b, const LinearizedPoly& c);

// Adjoint with respect to the trace form: Tr(B(x) y) = Tr(x B*(y)).
// An exact involution: adjoint(adjoint(B)) == B.
LinearizedPoly lp_adjoint(const LinearizedPoly& b);

// Reversed-Frobenius mate: bar(B)_i = b_(n-i)^(tau^i) for n = degree(B).
// Equals x^(tau^n) composed with the adjoint, and shares kernel dimension
// and root counts with B.
LinearizedPoly lp_bar(const LinearizedPoly& b);

// F_tau-dimension of the kernel, by exhaustive evaluation; also verifies
// the root set is an F_tau-subspace.
std::uint32_t lp_kernel_dim(const LinearizedPoly& b);

// Right division: B = Q o (x^tau - alpha x) + r with r of tau-degree 0.
std::pair<LinearizedPoly, LinearizedPoly> skew_divide_right(
    const LinearizedPoly& b, Fe alpha);
// Left division: B = (x^tau - alpha x) o Q + r.
std::pair<LinearizedPoly, LinearizedPoly> skew_divide_left(
    const LinearizedPoly& b, Fe alpha);

// (x^tau - alpha x) divides B as a right / left composition factor.
bool ore_right_test(const LinearizedPoly& b, Fe alpha);
bool ore_left_test(const LinearizedPoly& b, Fe alpha);

/// A projective polynomial P(x) = sum a_i x^((sigma^i - 1)/(sigma - 1))
/// with sigma = p^k. Its F_q-root count gates the map family built in the
/// psqh module.
struct ProjectivePoly {
  const FieldCtx* ctx = nullptr;
  std::uint32_t k = 0;
  std::vector<Fe> coeffs;  // a_0 .. a_n
};

Fe pp_eval(const ProjectivePoly& pp, Fe x);
std::uint64_t pp_root_count(const ProjectivePoly& pp);
ProjectivePoly pp_tilde(const ProjectivePoly& pp);

// Companion form of P through Q_tau: the linearized polynomial with the
// same coefficient list, B(x) = x Q(x^(tau-1)).
LinearizedPoly pp_companion(const ProjectivePoly& pp, std::uint32_t d);

// Splits the root count of P across the multiplicative cosets named by the
// representative set Xi (size tau-1, pairwise distinct cosets of the
// (tau-1)-st powers): A_j(x) = x P(xi_j x^(sigma-1)).
std::vector<LinearizedPoly> pp_decompose(const ProjectivePoly& pp,
                                         std::uint32_t d,
                                         const std::vector<Fe>& xi);

// Default representatives: powers g^0..g^(tau-2) of the least generator.
std::vector<Fe> default_coset_reps(const FieldCtx& ctx, std::uint32_t d);

// Root test for x^(sigma^2+sigma+1) + c x^(sigma^2+sigma) + b x^(sigma^2) + a
// over F_q (sigma = p^k), and for the companion form
// x^(sigma^2+sigma+1) + c^(sigma^2) x^(sigma+1) + b^sigma x + a from the
// same family. The two forms always agree in root existence and count;
// this is asserted internally.
bool condition_has_root(const FieldCtx& ctx, Fe a, Fe b, Fe c,
                        std::uint32_t k);
bool condition_has_root_alt(const FieldCtx& ctx, Fe a, Fe b, Fe c,
                            std::uint32_t k);
std::uint64_t condition_root_count(const FieldCtx& ctx, Fe a, Fe b, Fe c,
                                   std::uint32_t k);
std::uint64_t condition_root_count_alt(const FieldCtx& ctx, Fe a, Fe b, Fe c,
                                       std::uint32_t k);

// Root counts of the companion pair
//   Pi_1 = x^(s2+s+1) - b x^(s2+s) + a c^sigma x^(s2) - a^(sigma+1)
//   Pi_2 = x^(s2+s+1) + c x^(s2+s) + b x^(s2) + a
// which must be equal; requires a != 0.
std::pair<std::uint64_t, std::uint64_t> pi_pair_root_counts(
    const FieldCtx& ctx, Fe a, Fe b, Fe c, std::uint32_t k);

}  // namespace sqh
