#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"

#include "affsp/chain_complex.hpp"
#include "affsp/errors.hpp"
#include "affsp/invariants.hpp"
#include "affsp/linalg.hpp"

using namespace affsp;

namespace {

SparseMatrix random_sparse(std::mt19937& rng, Index rows, Index cols, double density) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-3, 3);
  TripletBuilder tb(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      if (u(rng) < density) tb.add(r, c, Rational(v(rng), 1 + (r + c) % 3));
  return tb.build();
}

struct CapGuard {
  std::size_t saved = nnz_cap();
  ~CapGuard() { set_nnz_cap(saved); }
};

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rational arithmetic is exact and canonical") {
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK(a.denominator() == "2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    // (a/b + c/d) recomputed as (ad + bc)/bd agrees
    Rational x(7, 12), y(-5, 18);
    CHECK(x + y == Rational(7 * 18 + -5 * 12, 12 * 18));
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), FormatError);
    CHECK_THROWS_AS(Rational::parse("abc"), FormatError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
  }

  TEST_CASE("vector construction sums duplicates and drops zeros") {
    QVector v = QVector::from_entries(5, {{3, Rational(1)}, {1, Rational(2)}, {3, Rational(-1)}});
    CHECK(v.nnz() == 1);
    CHECK(v.at(1) == Rational(2));
    CHECK_THROWS_AS(QVector::from_entries(2, {{2, Rational(1)}}), ShapeError);
  }

  TEST_CASE("rank of trivial matrices") {
    CHECK(rank(SparseMatrix::identity(3)) == 3);
    CHECK(rank(SparseMatrix(4, 7)) == 0);
  }

  TEST_CASE("rank of d2 on the Lie complex of sp1 is 3") {
    CHECK(rank(ce_differential(*build_sp(1), 2)) == 3);
  }

  TEST_CASE("kernel examples") {
    auto zero = kernel_basis(SparseMatrix(1, 2));
    REQUIRE(zero.size() == 2);
    CHECK(zero[0] == QVector::unit(2, 0));
    CHECK(zero[1] == QVector::unit(2, 1));

    auto k = kernel_basis(SparseMatrix::from_dense({{Rational(1), Rational(1)}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == QVector::from_dense(std::vector<Rational>{Rational(1), Rational(-1)}));
  }

  TEST_CASE("stacked sp1 actions on wedge^2 I1 have a one-dimensional kernel") {
    auto mods = symplectic_modules(1);
    LieModule w2 = exterior_power_module(mods.ideal, 2);
    auto k = kernel_basis(stack_rows(w2.actions()));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == QVector::unit(1, 0));
    // and on I1 itself the 6x2 stack has rank 2
    SparseMatrix s = stack_rows(mods.ideal.actions());
    CHECK(s.rows() == 6);
    CHECK(s.cols() == 2);
    CHECK(rank(s) == 2);
  }

  TEST_CASE("multiply and stacking") {
    auto m = SparseMatrix::from_dense({{Rational(1), Rational(2)}, {Rational(0), Rational(1)}});
    CHECK(multiply(SparseMatrix::identity(2), m) == m);
    CHECK(multiply(m, SparseMatrix::identity(2)) == m);
    CHECK_THROWS_AS(multiply(m, SparseMatrix(3, 3)), ShapeError);
    const SparseMatrix one[] = {m};
    CHECK(stack_rows(one) == m);
    const SparseMatrix rows[] = {SparseMatrix::from_dense({{Rational(1), Rational(0)}}),
                                 SparseMatrix::from_dense({{Rational(0), Rational(1)}})};
    CHECK(stack_rows(rows) == SparseMatrix::identity(2));
    const SparseMatrix bad[] = {m, SparseMatrix(1, 3)};
    CHECK_THROWS_AS(stack_rows(bad), ShapeError);
  }

  TEST_CASE("d_k d_{k+1} vanishes on the Lie complex of g1") {
    auto g = build_g(1).algebra;
    for (unsigned k = 1; k <= 5; ++k) CHECK(multiply(ce_differential(*g, k), ce_differential(*g, k + 1)).is_zero());
  }

  TEST_CASE("rank and kernel agree with the dense oracle on random matrices") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
      Index rows = 1 + rng() % 14, cols = 1 + rng() % 14;
      SparseMatrix m = random_sparse(rng, rows, cols, 0.1 + 0.05 * (trial % 8));
      std::size_t r = rank(m);
      CHECK(r == oracle::rank(m));
      auto k = kernel_basis(m);
      CHECK(r + k.size() == cols);  // rank-nullity
      for (const auto& v : k) CHECK(m.apply(v).is_zero());
      // same subspace, same reduced echelon normalization
      auto ok = oracle::kernel(m);
      oracle::rref(ok);
      REQUIRE(ok.size() == k.size());
      for (std::size_t i = 0; i < k.size(); ++i)
        for (Index c = 0; c < cols; ++c) CHECK(oracle::to_q(k[i].at(c)) == ok[i][c]);
    }
  }

  TEST_CASE("rank is invariant under row permutation and row scaling") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      SparseMatrix m = random_sparse(rng, 10, 12, 0.25);
      std::vector<QVector> rows;
      for (Index r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
      std::shuffle(rows.begin(), rows.end(), rng);
      rows[0].scale(Rational(-7, 3));
      CHECK(rank(SparseMatrix::from_rows(m.cols(), rows)) == rank(m));
    }
  }

  TEST_CASE("results do not depend on the thread count") {
    std::mt19937 rng(99);
    SparseMatrix m = random_sparse(rng, 40, 60, 0.04);
    unsigned saved = linalg_threads();
    set_linalg_threads(1);
    auto k1 = kernel_basis(m);
    auto r1 = rank(m);
    set_linalg_threads(4);
    auto k4 = kernel_basis(m);
    auto r4 = rank(m);
    set_linalg_threads(saved);
    CHECK(r1 == r4);
    CHECK(k1 == k4);
  }

  TEST_CASE("entry insertion order does not matter") {
    TripletBuilder a(3, 3), b(3, 3);
    a.add(0, 0, Rational(1));
    a.add(2, 1, Rational(5));
    a.add(1, 2, Rational(-2));
    b.add(1, 2, Rational(-2));
    b.add(2, 1, Rational(5));
    b.add(0, 0, Rational(1));
    CHECK(a.build() == b.build());
  }

  TEST_CASE("echelon span and solve") {
    EchelonSpan span(3, true);
    CHECK(span.insert(QVector::from_dense(std::vector<Rational>{Rational(1), Rational(1), Rational(0)})));
    CHECK(span.insert(QVector::from_dense(std::vector<Rational>{Rational(0), Rational(1), Rational(1)})));
    CHECK_FALSE(span.insert(QVector::from_dense(std::vector<Rational>{Rational(1), Rational(2), Rational(1)})));
    CHECK(span.dim() == 2);
    auto c = span.coordinates(QVector::from_dense(std::vector<Rational>{Rational(2), Rational(3), Rational(1)}));
    REQUIRE(c);
    CHECK(c->at(0) == Rational(2));
    CHECK(c->at(1) == Rational(1));
    CHECK_FALSE(span.coordinates(QVector::unit(3, 2)));

    auto m = SparseMatrix::from_dense({{Rational(2), Rational(0)}, {Rational(0), Rational(0)}});
    auto x = solve(m, QVector::unit(2, 0));
    REQUIRE(x);
    CHECK(m.apply(*x) == QVector::unit(2, 0));
    CHECK_FALSE(solve(m, QVector::unit(2, 1)));
  }

  TEST_CASE("serialization round-trips and rejects malformed input") {
    auto m = SparseMatrix::from_dense({{Rational(1, 2), Rational(0)}, {Rational(-3), Rational(4, 7)}});
    std::stringstream ss;
    write_matrix(ss, m);
    CHECK(ss.str() == "2 2 3\n0 0 1/2\n1 0 -3/1\n1 1 4/7\n");
    CHECK(read_matrix(ss) == m);
    std::stringstream bad1("2 2 1\n5 0 1\n");
    CHECK_THROWS_AS(read_matrix(bad1), FormatError);
    std::stringstream bad2("2 2 2\n1 0 1\n0 0 1\n");
    CHECK_THROWS_AS(read_matrix(bad2), FormatError);
    std::stringstream bad3("1 1 1\n0 0 0\n");
    CHECK_THROWS_AS(read_matrix(bad3), FormatError);
  }

  TEST_CASE("memory guard raises a resource error") {
    CapGuard guard;
    set_nnz_cap(10);
    TripletBuilder tb(100, 100);
    CHECK_THROWS_AS(
        [&] {
          for (Index i = 0; i < 20; ++i) tb.add(i, i, Rational(1));
        }(),
        ResourceError);
    set_nnz_cap(1000);
    CHECK_THROWS_AS(leibniz_differential(*build_g(1).algebra, 6), ResourceError);
  }
}
