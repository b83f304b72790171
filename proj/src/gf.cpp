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

#include "sqh/gf.hpp"

#include <algorithm>
#include <numeric>

#include "sqh/linalg.hpp"

namespace sqh {

namespace detail {

namespace {

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t mod_inv_prime(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(
                   (static_cast<unsigned __int128>(r) * base) % p);
    base = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(base) * base) % p);
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  poly_trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::size_t da = a.size() - 1;
    std::uint64_t lead = a.back() % p;
    if (lead) {
      std::uint64_t scale =
          static_cast<std::uint64_t>((static_cast<unsigned __int128>(lead) *
                                      mod_inv_prime(f.back(), p)) %
                                     p);
      for (std::size_t i = 0; i <= df; ++i) {
        std::uint64_t t = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(scale) * f[i]) % p);
        std::uint64_t cur = a[da - df + i];
        a[da - df + i] = static_cast<std::uint32_t>((cur + p - t) % p);
      }
    }
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

}  // namespace

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f,
                 std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> conv(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b[j]) continue;
      conv[i + j] =
          (conv[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
    }
  }
  Poly c(conv.begin(), conv.end());
  return poly_mod(std::move(c), f, p);
}

Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& f,
                 std::uint64_t p) {
  Poly result{1};
  Poly base = poly_mod(a, f, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

namespace {

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    std::uint64_t s = mod_inv_prime(a.back(), p);
    for (auto& c : a)
      c = static_cast<std::uint32_t>(
          (static_cast<unsigned __int128>(c) * s) % p);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] = static_cast<std::uint32_t>((a[i] + p - b[i]) % p);
  poly_trim(a);
  return a;
}

}  // namespace

bool poly_is_irreducible(const Poly& f, std::uint64_t p) {
  // Frobenius criterion: x^(p^m) == x mod f, and for every prime l | m,
  // gcd(x^(p^(m/l)) - x, f) = 1.
  const std::uint32_t m = static_cast<std::uint32_t>(f.size() - 1);
  if (m == 0) return false;
  const Poly x{0, 1};
  // x^(p^j) computed by iterating the p-th power map.
  auto frob_iterate = [&](std::uint32_t j) {
    Poly t = x;
    for (std::uint32_t i = 0; i < j; ++i) t = poly_powmod(t, p, f, p);
    return t;
  };
  Poly xm = frob_iterate(m);
  if (poly_sub(xm, x, p) != Poly{}) return false;
  std::uint32_t rest = m;
  for (std::uint64_t l = 2; l * l <= rest; ++l) {
    if (rest % l) continue;
    while (rest % l == 0) rest /= static_cast<std::uint32_t>(l);
    Poly g = poly_gcd(poly_sub(frob_iterate(m / static_cast<std::uint32_t>(l)),
                               x, p),
                      f, p);
    if (g.size() != 1) return false;
  }
  if (rest > 1) {
    Poly g = poly_gcd(poly_sub(frob_iterate(m / rest), x, p), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t s : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n == s) return true;
    if (n % s == 0) return false;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [&](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t res = 1;
    a %= n;
    while (e) {
      if (e & 1) res = mulmod(res, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return res;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace detail

namespace {

constexpr std::uint64_t kAddTableLimit = 1024;      // q*q uint16 table
constexpr std::uint64_t kLogTableLimit = 1 << 20;   // log/antilog tables
constexpr std::uint64_t kFrobTableLimit = 1 << 16;  // per-k permutation

std::uint64_t checked_pow(std::uint64_t p, std::uint32_t m) {
  unsigned __int128 q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    require(q <= (static_cast<unsigned __int128>(1) << 63), Errc::SizeOverflow,
            "p^m exceeds the supported size ceiling");
  }
  return static_cast<std::uint64_t>(q);
}

}  // namespace

FieldCtx::FieldCtx(std::uint64_t p, std::uint32_t m,
                   std::optional<std::vector<std::uint32_t>> modulus) {
  require(detail::is_prime_u64(p), Errc::NonPrime, "p must be prime");
  require(m >= 1, Errc::SizeOverflow, "m must be at least 1");
  p_ = p;
  m_ = m;
  q_ = checked_pow(p, m);

  if (modulus) {
    modulus_ = *modulus;
    require(modulus_.size() == m_ + 1, Errc::ReducibleModulus,
            "modulus must have degree exactly m");
    for (auto& c : modulus_)
      require(c < p_, Errc::BadEncoding, "modulus coefficients must be < p");
    require(modulus_.back() == 1, Errc::ReducibleModulus,
            "modulus must be monic");
    if (m_ == 1)
      require(modulus_[0] == 0, Errc::BadEncoding,
              "degree-1 modulus must be x (elements are residues mod p)");
    require(detail::poly_is_irreducible(modulus_, p_), Errc::ReducibleModulus,
            "modulus is reducible over F_p");
  } else if (m_ == 1) {
    modulus_ = {0, 1};  // x; arithmetic is plain mod p
  } else {
    // Lexicographically least monic irreducible, constant term compared
    // first: candidate n carries c_0 in its most significant base-p digit.
    // The constant term sits in the most significant base-p digit of the
    // counter, so it varies slowest and is compared first. Candidates with
    // constant term 0 are divisible by x; start past that whole block.
    std::vector<std::uint32_t> f(m_ + 1, 0);
    f[m_] = 1;
    bool found = false;
    std::uint64_t start = 1;
    for (std::uint32_t i = 1; i < m_; ++i) start *= p_;
    for (std::uint64_t n = start; n < q_; ++n) {
      std::uint64_t t = n;
      for (std::uint32_t i = 0; i < m_; ++i) {
        f[m_ - 1 - i] = static_cast<std::uint32_t>(t % p_);
        t /= p_;
      }
      // Cheap linear-root prescreen before the full Frobenius test.
      bool has_root = false;
      for (std::uint64_t c = 0; c < std::min<std::uint64_t>(p_, 64) && !has_root;
           ++c) {
        std::uint64_t val = 0;
        for (std::size_t i = f.size(); i-- > 0;) val = (val * c + f[i]) % p_;
        has_root = (val == 0);
      }
      if (has_root) continue;
      if (detail::poly_is_irreducible(f, p_)) {
        found = true;
        break;
      }
    }
    require(found, Errc::Internal, "no irreducible polynomial found");
    modulus_ = f;
  }

  // Reduction rows and Frobenius matrices (skipped for m == 1).
  if (m_ > 1) {
    red_rows_.resize(m_ - 1);
    // x^m = -(f_0 + f_1 x + ... + f_{m-1} x^{m-1})
    std::vector<std::uint32_t> xm(m_);
    for (std::uint32_t i = 0; i < m_; ++i)
      xm[i] = static_cast<std::uint32_t>((p_ - modulus_[i]) % p_);
    red_rows_[0] = xm;
    for (std::uint32_t e = 1; e + 1 < m_; ++e) {
      // x^(m+e) = x * x^(m+e-1) reduced
      const auto& prev = red_rows_[e - 1];
      std::vector<std::uint32_t> cur(m_, 0);
      std::uint32_t carry = prev[m_ - 1];
      for (std::uint32_t i = m_ - 1; i > 0; --i) cur[i] = prev[i - 1];
      cur[0] = 0;
      if (carry)
        for (std::uint32_t i = 0; i < m_; ++i)
          cur[i] = static_cast<std::uint32_t>(
              (cur[i] + static_cast<std::uint64_t>(carry) * xm[i]) % p_);
      red_rows_[e] = cur;
    }

    frob_mat_.resize(m_);
    for (std::uint32_t k = 0; k < m_; ++k) {
      frob_mat_[k].assign(m_, std::vector<std::uint32_t>(m_, 0));
      for (std::uint32_t i = 0; i < m_; ++i) {
        detail::Poly xi(i + 1, 0);
        xi[i] = 1;
        detail::Poly img = xi;
        for (std::uint32_t j = 0; j < k; ++j)
          img = detail::poly_powmod(img, p_, modulus_, p_);
        img.resize(m_, 0);
        frob_mat_[k][i].assign(img.begin(), img.end());
      }
    }
  }

  build_tables();
}

void FieldCtx::build_tables() {
  if (q_ <= kAddTableLimit) {
    add_tab_.resize(q_ * q_);
    neg_tab_.resize(q_);
    for (Fe a = 0; a < q_; ++a) neg_tab_[a] = neg_digits(a);
    for (Fe a = 0; a < q_; ++a)
      for (Fe b = 0; b < q_; ++b)
        add_tab_[a * q_ + b] = static_cast<std::uint16_t>(add_digits(a, b));
  } else {
    neg_tab_.clear();
  }

  if (q_ <= kLogTableLimit) {
    // Antilog walk over powers of the least generator.
    ensure_factors();
    Fe g = 0;
    for (Fe cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (auto l : qm1_prime_factors_) {
        // pow without tables during construction
        Fe r = 1, base = cand;
        std::uint64_t e = (q_ - 1) / l;
        while (e) {
          if (e & 1) r = mul_generic(r, base);
          base = mul_generic(base, base);
          e >>= 1;
        }
        if (r == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = cand;
        break;
      }
    }
    require(g != 0 || q_ == 2, Errc::Internal, "generator search failed");
    if (q_ == 2) g = 1;
    generator_ = g;
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    Fe cur = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      exp_[i + (q_ - 1)] = cur;
      log_[cur] = static_cast<std::uint32_t>(i);
      cur = mul_generic(cur, g);
    }
    require(cur == 1, Errc::Internal, "generator order mismatch");
  }

  if (q_ <= kFrobTableLimit && m_ > 1) {
    frob_tab_.assign(m_, std::vector<Fe>(q_, 0));
    for (std::uint32_t k = 0; k < m_; ++k)
      for (Fe a = 0; a < q_; ++a) frob_tab_[k][a] = frobenius_matrix(a, k);
  }
}

Fe FieldCtx::add_digits(Fe a, Fe b) const {
  if (m_ == 1) {
    Fe s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fe r = 0, mult = 1;
  while (a || b) {
    Fe da = a % p_, db = b % p_;
    Fe ds = da + db;
    if (ds >= p_) ds -= p_;
    r += ds * mult;
    mult *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Fe FieldCtx::neg_digits(Fe a) const {
  if (m_ == 1) return a ? p_ - a : 0;
  Fe r = 0, mult = 1;
  while (a) {
    Fe da = a % p_;
    r += (da ? p_ - da : 0) * mult;
    mult *= p_;
    a /= p_;
  }
  return r;
}

Fe FieldCtx::mul_generic(Fe a, Fe b) const {
  if (a == 0 || b == 0) return 0;
  if (m_ == 1)
    return static_cast<Fe>((static_cast<unsigned __int128>(a) * b) % p_);
  std::uint32_t da[64], db[64];
  std::uint64_t conv[127] = {0};
  std::uint32_t na = 0, nb = 0;
  for (Fe t = a; t; t /= p_) da[na++] = static_cast<std::uint32_t>(t % p_);
  for (Fe t = b; t; t /= p_) db[nb++] = static_cast<std::uint32_t>(t % p_);
  for (std::uint32_t i = 0; i < na; ++i) {
    if (!da[i]) continue;
    for (std::uint32_t j = 0; j < nb; ++j) {
      if (!db[j]) continue;
      conv[i + j] =
          (conv[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_;
    }
  }
  for (std::uint32_t e = na + nb - 2; e >= m_; --e) {
    std::uint64_t c = conv[e];
    if (c) {
      conv[e] = 0;
      const auto& row = red_rows_[e - m_];
      for (std::uint32_t i = 0; i < m_; ++i)
        conv[i] = (conv[i] + c * row[i]) % p_;
    }
    if (e == m_) break;
  }
  Fe r = 0;
  for (std::uint32_t i = m_; i-- > 0;) r = r * p_ + conv[i];
  return r;
}

Fe FieldCtx::pow(Fe a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  e %= (q_ - 1);
  if (!log_.empty()) {
    std::uint64_t la = log_[a];
    return exp_[static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(la) * e) % (q_ - 1))];
  }
  Fe r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Fe FieldCtx::inv(Fe a) const {
  require(a != 0, Errc::DivisionByZero, "inverse of zero");
  return pow(a, q_ - 2);
}

Fe FieldCtx::frobenius_matrix(Fe a, std::uint32_t k) const {
  if (m_ == 1 || k == 0) return a;
  const auto& mat = frob_mat_[k];
  std::uint64_t acc[64] = {0};
  std::uint32_t idx = 0;
  for (Fe t = a; t; t /= p_, ++idx) {
    std::uint64_t d = t % p_;
    if (!d) continue;
    const auto& row = mat[idx];
    for (std::uint32_t i = 0; i < m_; ++i) acc[i] += d * row[i];
  }
  Fe r = 0;
  for (std::uint32_t i = m_; i-- > 0;) r = r * p_ + (acc[i] % p_);
  return r;
}

Fe FieldCtx::frobenius(Fe a, std::uint32_t k) const {
  k %= m_;
  if (k == 0) return a;
  if (!frob_tab_.empty()) return frob_tab_[k][a];
  return frobenius_matrix(a, k);
}

Fe FieldCtx::rel_trace(Fe a, std::uint32_t d) const {
  require(d >= 1 && m_ % d == 0, Errc::NonDivisor, "d must divide m");
  Fe acc = 0, cur = a;
  for (std::uint32_t i = 0; i < m_ / d; ++i) {
    acc = add(acc, cur);
    cur = frobenius(cur, d);
  }
  return acc;
}

Fe FieldCtx::rel_norm(Fe a, std::uint32_t d) const {
  require(d >= 1 && m_ % d == 0, Errc::NonDivisor, "d must divide m");
  Fe acc = 1, cur = a;
  for (std::uint32_t i = 0; i < m_ / d; ++i) {
    acc = mul(acc, cur);
    cur = frobenius(cur, d);
  }
  return acc;
}

bool FieldCtx::is_square(Fe a) const {
  require(p_ != 2, Errc::EvenCharacteristic, "is_square requires odd q");
  require(a != 0, Errc::ZeroInput, "is_square requires a nonzero input");
  return pow(a, (q_ - 1) / 2) == 1;
}

void FieldCtx::ensure_factors() const {
  std::call_once(factors_once_, [this] {
    if (q_ > 2) qm1_prime_factors_ = detail::prime_factors(q_ - 1);
  });
}

Fe FieldCtx::generator() const {
  std::call_once(gen_once_, [this] {
    if (generator_ != 0) return;  // found during table construction
    if (q_ == 2) {
      generator_ = 1;
      return;
    }
    ensure_factors();
    for (Fe cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (auto l : qm1_prime_factors_)
        if (pow(cand, (q_ - 1) / l) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        generator_ = cand;
        return;
      }
    }
    fail(Errc::Internal, "no multiplicative generator found");
  });
  return generator_;
}

std::uint64_t FieldCtx::element_order(Fe a) const {
  require(a != 0, Errc::ZeroInput, "order of zero undefined");
  ensure_factors();
  std::uint64_t ord = q_ - 1;
  for (auto l : qm1_prime_factors_)
    while (ord % l == 0 && pow(a, ord / l) == 1) ord /= l;
  return ord;
}

FieldCtx ctx_new(std::uint64_t p, std::uint32_t m,
                 std::optional<std::vector<std::uint32_t>> modulus) {
  return FieldCtx(p, m, std::move(modulus));
}

namespace {

std::uint64_t ipow_checked(std::uint64_t p, std::uint32_t e) {
  unsigned __int128 r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    r *= p;
    require(r < (static_cast<unsigned __int128>(1) << 64), Errc::SizeOverflow,
            "integer power overflow");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t gcd_minus(std::uint64_t p, std::uint32_t k, std::uint32_t m) {
  std::uint32_t g = std::gcd(k, m);
  return ipow_checked(p, g) - 1;
}

std::uint64_t gcd_plus(std::uint64_t p, std::uint32_t k, std::uint32_t m) {
  std::uint32_t g = std::gcd(k, m);
  if ((m / g) % 2 == 0) return ipow_checked(p, g) + 1;
  return p == 2 ? 1 : 2;
}

Embedding::Embedding(const FieldCtx& small) : small_(&small) {
  const std::uint64_t p = small.p();
  const std::uint32_t m = small.m();
  big_ = std::make_shared<const FieldCtx>(p, 3 * m);
  const FieldCtx& B = *big_;
  const std::uint32_t M = 3 * m;

  if (m == 1) {
    theta_ = 1;  // prime subfield embeds as constants
  } else {
    // Subfield F_{p^m} of B: kernel of v -> v^(p^m) - v, then the least
    // root of the small modulus inside it.
    FpOps fp{p};
    MatFp mat(fp, M, M);
    for (std::uint32_t j = 0; j < M; ++j) {
      Fe basis_vec = 1;
      for (std::uint32_t i = 0; i < j; ++i) basis_vec *= p;
      Fe img = B.sub(B.frobenius(basis_vec, m % M), basis_vec);
      for (std::uint32_t i = 0; i < M; ++i) {
        mat.at(i, j) = img % p;
        img /= p;
      }
    }
    auto kernel = mat.nullspace();
    require(kernel.size() == m, Errc::Internal,
            "embedded subfield has wrong dimension");
    const auto& f = small.modulus();
    Fe best = 0;
    bool found = false;
    std::vector<std::uint64_t> coef(m, 0);
    // Enumerate the p^m subfield elements.
    for (std::uint64_t n = 1; n < small.q(); ++n) {
      std::uint64_t t = n;
      Fe cand = 0;
      for (std::uint32_t j = 0; j < m; ++j) {
        std::uint64_t cj = t % p;
        t /= p;
        if (!cj) continue;
        Fe term = 0;
        for (std::uint32_t i = 0; i < M; ++i) {
          // kernel vectors are digit vectors over F_p
          std::uint64_t digit = (kernel[j][i] * cj) % p;
          Fe unit = digit;
          for (std::uint32_t s = 0; s < i; ++s) unit *= p;
          term = B.add(term, unit);
        }
        cand = B.add(cand, term);
      }
      // Evaluate the small modulus at cand via Horner.
      Fe val = f[m];
      for (std::uint32_t i = m; i-- > 0;)
        val = B.add(B.mul(val, cand), f[i]);
      if (val == 0 && (!found || cand < best)) {
        best = cand;
        found = true;
      }
    }
    require(found, Errc::Internal, "small modulus has no root in big field");
    theta_ = best;
  }

  theta_pows_.resize(m);
  theta_pows_[0] = 1;
  for (std::uint32_t i = 1; i < m; ++i)
    theta_pows_[i] = B.mul(theta_pows_[i - 1], theta_);

  // u = class of x in the big field, code p. (1, u, u^2) is always an
  // F_q-basis of F_{q^3}: u generates the whole extension over F_p, so its
  // degree over F_q is exactly 3.
  const Fe u = static_cast<Fe>(p);
  basis_ = {1, u, B.mul(u, u)};

  if (small.q() <= (1u << 16)) {
    lift_tab_.resize(small.q());
    for (Fe a = 0; a < small.q(); ++a) {
      Fe acc = 0, t = a;
      for (std::uint32_t i = 0; i < m && t; ++i, t /= p) {
        std::uint64_t d = t % p;
        if (d) acc = B.add(acc, B.mul(d, theta_pows_[i]));
      }
      lift_tab_[a] = acc;
    }
    if (B.q() <= (1ull << 24)) {
      drop_map_.assign(B.q(), -1);
      for (Fe a = 0; a < small.q(); ++a)
        drop_map_[lift_tab_[a]] = static_cast<std::int64_t>(a);
    }
  }
}

Fe Embedding::lift(Fe a) const {
  if (!lift_tab_.empty()) return lift_tab_[a];
  const FieldCtx& B = *big_;
  Fe acc = 0;
  std::uint32_t i = 0;
  for (Fe t = a; t; t /= small_->p(), ++i) {
    std::uint64_t d = t % small_->p();
    if (d) acc = B.add(acc, B.mul(d, theta_pows_[i]));
  }
  return acc;
}

std::optional<Fe> Embedding::drop(Fe x) const {
  if (!drop_map_.empty()) {
    std::int64_t v = drop_map_[x];
    if (v < 0) return std::nullopt;
    return static_cast<Fe>(v);
  }
  for (Fe a = 0; a < small_->q(); ++a)
    if (lift(a) == x) return a;
  return std::nullopt;
}

Embedding embed_cubic(const FieldCtx& ctx_small) { return Embedding(ctx_small); }

namespace {

// (3m)x(3m) matrix over F_p whose column (3i + j block layout) holds the
// digits of lift(e_j) * basis_i, e_j the j-th F_p-basis vector of F_q.
MatFp frame_matrix(const Embedding& emb, const std::array<Fe, 3>& basis) {
  const FieldCtx& B = emb.big();
  const std::uint32_t m = emb.small().m();
  const std::uint32_t M = 3 * m;
  FpOps fp{B.p()};
  MatFp mat(fp, M, M);
  for (std::uint32_t bi = 0; bi < 3; ++bi) {
    for (std::uint32_t j = 0; j < m; ++j) {
      Fe small_unit = 1;
      for (std::uint32_t s = 0; s < j; ++s) small_unit *= emb.small().p();
      Fe col = B.mul(emb.lift(small_unit), basis[bi]);
      std::uint32_t c = bi * m + j;
      for (std::uint32_t i = 0; i < M; ++i) {
        mat.at(i, c) = col % B.p();
        col /= B.p();
      }
    }
  }
  return mat;
}

}  // namespace

bool is_fq_basis(const Embedding& emb, const std::array<Fe, 3>& triple) {
  MatFp mat = frame_matrix(emb, triple);
  return mat.rank() == mat.rows;
}

CubicFrame::CubicFrame(const Embedding& emb, const std::array<Fe, 3>& basis)
    : emb_(&emb), basis_(basis) {
  MatFp mat = frame_matrix(emb, basis);
  auto inv = mat.inverse();
  require(inv.has_value(), Errc::Internal,
          "triple is not an F_q-basis of the cubic extension");
  inv_.resize(mat.rows * mat.cols);
  for (std::size_t r = 0; r < mat.rows; ++r)
    for (std::size_t c = 0; c < mat.cols; ++c)
      inv_[r * mat.cols + c] = static_cast<std::uint32_t>(inv->at(r, c));
}

std::array<Fe, 3> CubicFrame::coords(Fe x) const {
  const FieldCtx& B = emb_->big();
  const std::uint32_t m = emb_->small().m();
  const std::uint32_t M = 3 * m;
  const std::uint64_t p = B.p();
  std::uint64_t digits[192] = {0};
  for (std::uint32_t i = 0; i < M && x; ++i) {
    digits[i] = x % p;
    x /= p;
  }
  std::array<Fe, 3> out{0, 0, 0};
  for (std::uint32_t bi = 0; bi < 3; ++bi) {
    Fe code = 0;
    for (std::uint32_t j = m; j-- > 0;) {
      std::uint64_t acc = 0;
      const std::uint32_t r = bi * m + j;
      for (std::uint32_t ccol = 0; ccol < M; ++ccol)
        if (digits[ccol]) acc += inv_[r * M + ccol] * digits[ccol];
      code = code * p + (acc % p);
    }
    out[bi] = code;
  }
  return out;
}

Fe CubicFrame::combine(const std::array<Fe, 3>& c) const {
  const FieldCtx& B = emb_->big();
  Fe acc = 0;
  for (int i = 0; i < 3; ++i)
    acc = B.add(acc, B.mul(emb_->lift(c[i]), basis_[i]));
  return acc;
}

}  // namespace sqh
