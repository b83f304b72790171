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

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "sqh/error.hpp"

namespace sqh {

/// A field element of F_{p^m}, encoded as an integer in [0, p^m) whose
/// base-p digits are the polynomial-basis coefficients (constant term first).
using Fe = std::uint64_t;

/// Exact arithmetic context for F_{p^m} with a fixed monic irreducible
/// modulus. Immutable after construction; all operations are pure and the
/// object is safe to share across threads.
///
/// For small fields the context carries full addition and log/antilog
/// multiplication tables; larger fields fall back to digit-vector and
/// polynomial arithmetic. The contract is value-identical either way.
class FieldCtx {
 public:
  // modulus: ascending coefficients including the leading 1, size m+1.
  // When omitted, the lexicographically least monic irreducible of degree m
  // is selected (constant term compared first).
  FieldCtx(std::uint64_t p, std::uint32_t m,
           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint64_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool same_field(const FieldCtx& other) const {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

  Fe add(Fe a, Fe b) const {
    if (!add_tab_.empty()) return add_tab_[a * q_ + b];
    return add_digits(a, b);
  }

  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

  Fe neg(Fe a) const {
    if (!neg_tab_.empty()) return neg_tab_[a];
    return neg_digits(a);
  }

  Fe mul(Fe a, Fe b) const {
    if (!log_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return mul_generic(a, b);
  }

  Fe inv(Fe a) const;
  // Exponent reduced mod q-1 for nonzero bases; pow(0,0) = 1, pow(0,e) = 0.
  Fe pow(Fe a, std::uint64_t e) const;

  // a^(p^k); k is reduced mod m, so frobenius(a, m) is the identity.
  Fe frobenius(Fe a, std::uint32_t k) const;

  // Relative trace / norm from F_{p^m} onto F_{p^d}; requires d | m.
  Fe rel_trace(Fe a, std::uint32_t d) const;
  Fe rel_norm(Fe a, std::uint32_t d) const;

  // True iff a is a square in F_q^x; requires q odd and a != 0.
  bool is_square(Fe a) const;

  // Least multiplicative generator of F_q^x (by integer code). Lazy.
  Fe generator() const;
  std::uint64_t element_order(Fe a) const;

  // Constant embedding of an integer (reduced mod p) as a field element.
  Fe from_int(std::uint64_t v) const { return v % p_; }

  // Direct read-only view of the k-th Frobenius permutation table, or
  // nullptr when the field is too large to carry one.
  const Fe* frob_table(std::uint32_t k) const {
    if (frob_tab_.empty()) return nullptr;
    return frob_tab_[k % m_].data();
  }

  bool has_tables() const { return !log_.empty(); }

 private:
  Fe add_digits(Fe a, Fe b) const;
  Fe neg_digits(Fe a) const;
  Fe mul_generic(Fe a, Fe b) const;
  Fe frobenius_matrix(Fe a, std::uint32_t k) const;
  void build_tables();
  void ensure_factors() const;

  std::uint64_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;

  // Reduction rows: digits of x^(m+i) mod modulus, i in [0, m-1).
  std::vector<std::vector<std::uint32_t>> red_rows_;
  // Frobenius matrices: frob_mat_[k][i] = digits of (x^i)^(p^k) mod modulus.
  std::vector<std::vector<std::vector<std::uint32_t>>> frob_mat_;

  std::vector<std::uint16_t> add_tab_;  // q*q entries when q small
  std::vector<Fe> neg_tab_;
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
  std::vector<Fe> exp_;             // exp_[i], i in [0, 2(q-1))
  std::vector<std::vector<Fe>> frob_tab_;

  mutable std::once_flag gen_once_;
  mutable std::once_flag factors_once_;
  mutable Fe generator_ = 0;
  mutable std::vector<std::uint64_t> qm1_prime_factors_;
};

/// Constructs F_{p^m} with the given or default modulus.
FieldCtx ctx_new(std::uint64_t p, std::uint32_t m,
                 std::optional<std::vector<std::uint32_t>> modulus =
                     std::nullopt);

// Lemma on gcds of p-power±1 integers:
//   gcd_minus = gcd(p^k-1, p^m-1) = p^gcd(k,m) - 1
//   gcd_plus  = gcd(p^k+1, p^m-1) = 1, 2, or p^gcd(k,m)+1 per the parity of
//   m/gcd(k,m) and p.
std::uint64_t gcd_minus(std::uint64_t p, std::uint32_t k, std::uint32_t m);
std::uint64_t gcd_plus(std::uint64_t p, std::uint32_t k, std::uint32_t m);

/// F_{p^m} embedded in F_{p^{3m}} together with an F_q-basis (1, u, u^2)
/// of the big field, u the class of x in the big field's polynomial basis.
/// The embedding sends the small generator-root to a root of the small
/// modulus inside the big field; it is a verified field homomorphism.
class Embedding {
 public:
  explicit Embedding(const FieldCtx& small);

  const FieldCtx& small() const { return *small_; }
  const FieldCtx& big() const { return *big_; }

  Fe lift(Fe a) const;
  // Inverse of lift for elements of the embedded subfield.
  std::optional<Fe> drop(Fe x) const;

  const std::array<Fe, 3>& basis() const { return basis_; }
  // theta: image of the small field's polynomial-basis root.
  Fe theta() const { return theta_; }

 private:
  const FieldCtx* small_;
  std::shared_ptr<const FieldCtx> big_;
  Fe theta_ = 0;
  std::array<Fe, 3> basis_{};
  std::vector<Fe> lift_tab_;           // full table when q is small
  std::vector<Fe> theta_pows_;         // theta^i, i < m
  std::vector<std::int64_t> drop_map_;  // big code -> small code or -1
};

Embedding embed_cubic(const FieldCtx& ctx_small);

/// Coordinates of big-field elements in a caller-chosen F_q-basis of
/// F_{q^3}. Construction fails (rank < 3) unless the triple is a basis;
/// use is_fq_basis for a non-throwing test.
class CubicFrame {
 public:
  CubicFrame(const Embedding& emb, const std::array<Fe, 3>& basis);

  const std::array<Fe, 3>& basis() const { return basis_; }
  std::array<Fe, 3> coords(Fe x) const;
  Fe combine(const std::array<Fe, 3>& c) const;

 private:
  const Embedding* emb_;
  std::array<Fe, 3> basis_;
  std::vector<std::uint32_t> inv_;  // (3m)x(3m) inverse over F_p, row-major
};

bool is_fq_basis(const Embedding& emb, const std::array<Fe, 3>& triple);

namespace detail {
// Dense polynomial helpers over F_p, ascending coefficients. Used by the
// context constructor and test oracles; exact and table-free.
using Poly = std::vector<std::uint32_t>;
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p);
Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& f,
                 std::uint64_t p);
bool poly_is_irreducible(const Poly& f, std::uint64_t p);
bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
}  // namespace detail

}  // namespace sqh
