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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqh/gf.hpp"

namespace sqh {

// Element operations for the prime field F_p, entries stored as uint64
// residues in [0, p).
struct FpOps {
  std::uint64_t p;
  using T = std::uint64_t;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const {
    T s = a + b;
    return s >= p ? s - p : s;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
  T neg(T a) const { return a ? p - a : 0; }
  T mul(T a, T b) const {
    return static_cast<T>((static_cast<unsigned __int128>(a) * b) % p);
  }
  T inv(T a) const {
    // Fermat; p is prime.
    T r = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
};

// Element operations for F_q through a FieldCtx.
struct FqOps {
  const FieldCtx* ctx;
  using T = Fe;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const { return ctx->add(a, b); }
  T sub(T a, T b) const { return ctx->sub(a, b); }
  T neg(T a) const { return ctx->neg(a); }
  T mul(T a, T b) const { return ctx->mul(a, b); }
  T inv(T a) const { return ctx->inv(a); }
};

// Dense row-major matrix over a small exact field. Sized for the desk-scale
// systems in this project (up to a few hundred rows/columns).
template <class Ops>
struct Mat {
  using T = typename Ops::T;
  Ops ops;
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat(Ops o, std::size_t r, std::size_t c)
      : ops(o), rows(r), cols(c), a(r * c, o.zero()) {}

  T& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  // In-place reduced row echelon form; returns pivot column per pivot row.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
      std::size_t sel = rank;
      while (sel < rows && at(sel, col) == ops.zero()) ++sel;
      if (sel == rows) continue;
      if (sel != rank)
        for (std::size_t j = 0; j < cols; ++j)
          std::swap(at(sel, j), at(rank, j));
      T piv_inv = ops.inv(at(rank, col));
      for (std::size_t j = col; j < cols; ++j)
        at(rank, j) = ops.mul(at(rank, j), piv_inv);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank) continue;
        T f = at(r, col);
        if (f == ops.zero()) continue;
        for (std::size_t j = col; j < cols; ++j)
          at(r, j) = ops.sub(at(r, j), ops.mul(f, at(rank, j)));
      }
      pivots.push_back(col);
      ++rank;
    }
    return pivots;
  }

  std::size_t rank() const {
    Mat tmp = *this;
    return tmp.rref().size();
  }

  // Basis of the right nullspace (each vector sized cols).
  std::vector<std::vector<T>> nullspace() const {
    Mat tmp = *this;
    auto pivots = tmp.rref();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t freec = 0; freec < cols; ++freec) {
      if (is_pivot[freec]) continue;
      std::vector<T> v(cols, ops.zero());
      v[freec] = ops.one();
      for (std::size_t r = 0; r < pivots.size(); ++r)
        v[pivots[r]] = ops.neg(tmp.at(r, freec));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Solves A x = b; returns one solution or nullopt when inconsistent.
  std::optional<std::vector<T>> solve(const std::vector<T>& b) const {
    Mat aug(ops, rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) aug.at(r, c) = at(r, c);
      aug.at(r, cols) = b[r];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    std::vector<T> x(cols, ops.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = aug.at(r, cols);
    return x;
  }

  // Inverse of a square matrix, or nullopt when singular.
  std::optional<Mat> inverse() const {
    Mat aug(ops, rows, 2 * cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) aug.at(r, c) = at(r, c);
      aug.at(r, cols + r) = ops.one();
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows) return std::nullopt;
    for (std::size_t r = 0; r < rows; ++r)
      if (pivots[r] != r) return std::nullopt;
    Mat out(ops, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        out.at(r, c) = aug.at(r, cols + c);
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(rows, ops.zero());
    for (std::size_t r = 0; r < rows; ++r) {
      T acc = ops.zero();
      for (std::size_t c = 0; c < cols; ++c)
        if (at(r, c) != ops.zero())
          acc = ops.add(acc, ops.mul(at(r, c), v[c]));
      out[r] = acc;
    }
    return out;
  }

  static Mat product(const Mat& x, const Mat& y) {
    Mat out(x.ops, x.rows, y.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
      for (std::size_t k = 0; k < x.cols; ++k) {
        T f = x.at(r, k);
        if (f == x.ops.zero()) continue;
        for (std::size_t c = 0; c < y.cols; ++c)
          out.at(r, c) = x.ops.add(out.at(r, c), x.ops.mul(f, y.at(k, c)));
      }
    return out;
  }
};

using MatFp = Mat<FpOps>;
using MatFq = Mat<FqOps>;

}  // namespace sqh
