#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "sqh/gf.hpp"
#include "sqh/linalg.hpp"

using namespace sqh;

TEST_CASE("prime field F_3 uses modulus x") {
  FieldCtx ctx = ctx_new(3, 1);
  CHECK(ctx.q() == 3);
  CHECK(ctx.modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(ctx.add(2, 2) == 1);
  CHECK(ctx.mul(2, 2) == 1);
}

TEST_CASE("default modulus is the lexicographically least irreducible") {
  FieldCtx ctx = ctx_new(3, 3);
  // Enumerate monic cubics over F_3 with the constant term compared first;
  // for cubics, irreducible == no root in F_3.
  std::vector<std::uint32_t> expected;
  for (std::uint32_t c0 = 0; c0 < 3 && expected.empty(); ++c0)
    for (std::uint32_t c1 = 0; c1 < 3 && expected.empty(); ++c1)
      for (std::uint32_t c2 = 0; c2 < 3 && expected.empty(); ++c2) {
        std::vector<std::uint32_t> f{c0, c1, c2, 1};
        if (!oracle::has_fp_root(f, 3)) expected = f;
      }
  CHECK(ctx.modulus() == expected);
  CHECK(expected == std::vector<std::uint32_t>{1, 0, 2, 1});  // x^3+2x^2+1
}

TEST_CASE("constructor rejects bad parameters") {
  CHECK_THROWS_AS(ctx_new(4, 2), Error);
  CHECK_THROWS_AS(ctx_new(1, 2), Error);
  // x^2 + 2x + 1 = (x+1)^2 is reducible over F_3
  CHECK_THROWS_AS(ctx_new(3, 2, std::vector<std::uint32_t>{1, 2, 1}), Error);
  // non-monic
  CHECK_THROWS_AS(ctx_new(3, 2, std::vector<std::uint32_t>{1, 0, 2}), Error);
  // overflow: needs p^m > 2^63
  CHECK_THROWS_AS(ctx_new(3, 41), Error);
}

TEST_CASE("multiplication matches the schoolbook oracle exhaustively (F_27)") {
  FieldCtx ctx = ctx_new(3, 3);
  auto nf = oracle::naive_of(ctx);
  for (Fe a = 0; a < 27; ++a)
    for (Fe b = 0; b < 27; ++b) {
      CHECK(ctx.mul(a, b) == nf.mul(a, b));
      CHECK(ctx.add(a, b) == nf.add(a, b));
    }
}

TEST_CASE("field axioms hold (F_27 exhaustive pairs, sampled triples)") {
  FieldCtx ctx = ctx_new(3, 3);
  const Fe q = ctx.q();
  for (Fe a = 0; a < q; ++a) {
    CHECK(ctx.mul(a, 1) == a);
    CHECK(ctx.add(a, 0) == a);
    CHECK(ctx.add(a, ctx.neg(a)) == 0);
    if (a != 0) CHECK(ctx.mul(a, ctx.inv(a)) == 1);
    for (Fe b = 0; b < q; ++b) {
      CHECK(ctx.mul(a, b) == ctx.mul(b, a));
      CHECK(ctx.add(a, b) == ctx.add(b, a));
    }
  }
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 2000; ++t) {
    Fe a = rng() % q, b = rng() % q, c = rng() % q;
    CHECK(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
    CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
  }
}

TEST_CASE("large-field arithmetic without tables stays consistent") {
  // F_3^15 exceeds every table limit; spot-check against the oracle.
  FieldCtx ctx = ctx_new(3, 15);
  CHECK_FALSE(ctx.has_tables());
  auto nf = oracle::naive_of(ctx);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    Fe a = rng() % ctx.q(), b = rng() % ctx.q();
    CHECK(ctx.mul(a, b) == nf.mul(a, b));
    CHECK(ctx.add(a, b) == nf.add(a, b));
  }
  for (int t = 0; t < 20; ++t) {
    Fe a = 1 + rng() % (ctx.q() - 1);
    CHECK(ctx.mul(a, ctx.inv(a)) == 1);
  }
}

TEST_CASE("frobenius is the p^k power map and an automorphism") {
  FieldCtx ctx = ctx_new(3, 3);
  auto nf = oracle::naive_of(ctx);
  for (Fe a = 0; a < 27; ++a) {
    CHECK(ctx.frobenius(a, 0) == a);
    CHECK(ctx.frobenius(a, 1) == nf.pow(a, 3));  // cube
    CHECK(ctx.frobenius(a, 2) == nf.pow(a, 9));
    for (std::uint32_t k = 0; k < 3; ++k)
      CHECK(ctx.frobenius(ctx.frobenius(a, k), 3 - k) == a);
  }
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    Fe a = rng() % 27, b = rng() % 27;
    for (std::uint32_t k = 1; k < 3; ++k) {
      CHECK(ctx.frobenius(ctx.add(a, b), k) ==
            ctx.add(ctx.frobenius(a, k), ctx.frobenius(b, k)));
      CHECK(ctx.frobenius(ctx.mul(a, b), k) ==
            ctx.mul(ctx.frobenius(a, k), ctx.frobenius(b, k)));
    }
  }
}

TEST_CASE("relative trace and norm") {
  FieldCtx ctx = ctx_new(3, 3);
  auto nf = oracle::naive_of(ctx);
  CHECK(ctx.rel_trace(0, 1) == 0);
  std::set<Fe> image;
  for (Fe a = 0; a < 27; ++a) {
    Fe tr = ctx.rel_trace(a, 1);
    CHECK(tr == nf.add(nf.add(a, nf.pow(a, 3)), nf.pow(a, 9)));
    CHECK(tr < 3);  // lands in F_3
    image.insert(tr);
  }
  CHECK(image.size() == 3);  // surjective onto F_3

  Fe g = ctx.generator();
  Fe n = ctx.rel_norm(g, 1);
  CHECK(n < 3);
  CHECK((3 - 1) % ctx.element_order(n) == 0);
  // norm is multiplicative
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    Fe a = rng() % 27, b = rng() % 27;
    CHECK(ctx.rel_norm(ctx.mul(a, b), 1) ==
          ctx.mul(ctx.rel_norm(a, 1), ctx.rel_norm(b, 1)));
  }
  CHECK_THROWS_AS(ctx.rel_trace(1, 2), Error);  // 2 does not divide 3
}

TEST_CASE("squares in F_27") {
  FieldCtx ctx = ctx_new(3, 3);
  Fe g = ctx.generator();
  CHECK_FALSE(ctx.is_square(g));
  int squares = 0;
  for (Fe a = 1; a < 27; ++a) {
    Fe sq = ctx.mul(a, a);
    CHECK(ctx.is_square(sq));
    if (ctx.is_square(a)) ++squares;
  }
  CHECK(squares == 13);
  CHECK_THROWS_AS(ctx.is_square(0), Error);
  FieldCtx even = ctx_new(2, 4);
  CHECK_THROWS_AS(even.is_square(1), Error);
}

TEST_CASE("pow edge cases and element orders") {
  FieldCtx ctx = ctx_new(3, 3);
  CHECK(ctx.pow(0, 0) == 1);
  CHECK(ctx.pow(0, 5) == 0);
  for (Fe a = 1; a < 27; ++a) {
    CHECK(ctx.pow(a, 26) == 1);
    CHECK(ctx.pow(a, 27) == ctx.pow(a, 1));  // exponent reduction mod q-1
  }
  CHECK(ctx.element_order(ctx.generator()) == 26);
  CHECK_THROWS_AS(ctx.inv(0), Error);
}

TEST_CASE("gcd lemma helpers") {
  // Frozen cases from the three branches of the lemma.
  CHECK(gcd_plus(3, 1, 3) == 2);
  CHECK(gcd_plus(2, 2, 4) == 5);
  CHECK(gcd_minus(3, 2, 4) == 8);
  // Exhaustive cross-check against direct integer gcds.
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    for (std::uint32_t k = 1; k <= 12; ++k)
      for (std::uint32_t m = 1; m <= 12; ++m) {
        auto ip = [&](std::uint32_t e) {
          std::uint64_t r = 1;
          for (std::uint32_t i = 0; i < e; ++i) r *= p;
          return r;
        };
        CHECK(gcd_minus(p, k, m) == std::gcd(ip(k) - 1, ip(m) - 1));
        CHECK(gcd_plus(p, k, m) == std::gcd(ip(k) + 1, ip(m) - 1));
      }
  }
}

TEST_CASE("cubic embedding F_3 -> F_27") {
  FieldCtx small = ctx_new(3, 1);
  Embedding emb = embed_cubic(small);
  CHECK(emb.big().q() == 27);
  CHECK(emb.lift(1) == 1);
  CHECK(emb.lift(0) == 0);
  CHECK(is_fq_basis(emb, emb.basis()));
}

TEST_CASE("cubic embedding F_9 -> F_729 is a verified homomorphism") {
  FieldCtx small = ctx_new(3, 2);
  Embedding emb = embed_cubic(small);
  const FieldCtx& B = emb.big();
  CHECK(B.q() == 729);
  CHECK(emb.lift(1) == 1);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    Fe a = rng() % 9, b = rng() % 9;
    CHECK(emb.lift(small.mul(a, b)) == B.mul(emb.lift(a), emb.lift(b)));
    CHECK(emb.lift(small.add(a, b)) == B.add(emb.lift(a), emb.lift(b)));
  }
  // generator maps to an element of matching order
  Fe g = small.generator();
  CHECK(B.element_order(emb.lift(g)) == small.q() - 1);
  for (Fe a = 0; a < 9; ++a) CHECK(emb.drop(emb.lift(a)) == a);

  // independence of (1, u, u^2) by brute force over all F_q combinations
  const auto& basis = emb.basis();
  int nontrivial_zero = 0;
  for (Fe c0 = 0; c0 < 9; ++c0)
    for (Fe c1 = 0; c1 < 9; ++c1)
      for (Fe c2 = 0; c2 < 9; ++c2) {
        Fe acc = B.add(B.add(B.mul(emb.lift(c0), basis[0]),
                             B.mul(emb.lift(c1), basis[1])),
                       B.mul(emb.lift(c2), basis[2]));
        if (acc == 0 && (c0 || c1 || c2)) ++nontrivial_zero;
      }
  CHECK(nontrivial_zero == 0);
  CHECK(is_fq_basis(emb, basis));
}

TEST_CASE("cubic frame coordinates round-trip") {
  FieldCtx small = ctx_new(3, 2);
  Embedding emb = embed_cubic(small);
  CubicFrame frame(emb, emb.basis());
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    Fe x = rng() % emb.big().q();
    auto c = frame.coords(x);
    CHECK(frame.combine(c) == x);
  }
  // a dependent triple is rejected
  CHECK_FALSE(is_fq_basis(emb, {1, 2, emb.basis()[1]}));
}

TEST_CASE("linear algebra over F_p basics") {
  FpOps fp{3};
  MatFp mat(fp, 3, 3);
  // singular matrix: rows 0 and 2 proportional
  std::uint64_t vals[3][3] = {{1, 2, 0}, {0, 1, 1}, {2, 1, 0}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) mat.at(r, c) = vals[r][c];
  CHECK(mat.rank() == 2);
  auto ns = mat.nullspace();
  REQUIRE(ns.size() == 1);
  // verify A v = 0
  auto v = ns[0];
  for (int r = 0; r < 3; ++r) {
    std::uint64_t acc = 0;
    for (int c = 0; c < 3; ++c) acc += vals[r][c] * v[c];
    CHECK(acc % 3 == 0);
  }
  MatFp id(fp, 2, 2);
  id.at(0, 0) = 2;
  id.at(0, 1) = 1;
  id.at(1, 0) = 1;
  id.at(1, 1) = 1;
  auto inv = id.inverse();
  REQUIRE(inv.has_value());
  auto prod = MatFp::product(id, *inv);
  CHECK(prod.at(0, 0) == 1);
  CHECK(prod.at(0, 1) == 0);
  CHECK(prod.at(1, 0) == 0);
  CHECK(prod.at(1, 1) == 1);
}
