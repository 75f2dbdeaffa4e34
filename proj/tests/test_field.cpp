#include <random>

#include "doctest.h"
#include "mdc/error.hpp"
#include "mdc/field.hpp"

using namespace mdc;

namespace {

void check_axioms(const Field& f, Element a, Element b, Element c) {
  CHECK(f.add(a, b) == f.add(b, a));
  CHECK(f.mul(a, b) == f.mul(b, a));
  CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
  CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
  CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
}

Matrix random_matrix(std::mt19937_64& rng, int q, int rows, int cols) {
  Matrix m(q, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = static_cast<Element>(rng() % q);
  return m;
}

// All matrices over GF(2) of the given shape, as bit patterns.
Matrix gf2_from_bits(int rows, int cols, unsigned bits) {
  Matrix m(2, rows, cols);
  for (int i = 0; i < rows * cols; ++i) m(i / cols, i % cols) = (bits >> i) & 1u;
  return m;
}

}  // namespace

TEST_CASE("field axioms, exhaustive for small orders") {
  for (int q : {2, 3, 4}) {
    const Field& f = Field::get(q);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.sub(f.add(a, b), b) == a);
        for (int c = 0; c < q; ++c) check_axioms(f, a, b, c);
      }
    }
  }
}

TEST_CASE("field axioms, randomized for GF(256)") {
  const Field& f = Field::get(256);
  std::mt19937_64 rng(3);
  for (int a = 1; a < 256; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  for (int i = 0; i < 20000; ++i)
    check_axioms(f, rng() & 0xFF, rng() & 0xFF, rng() & 0xFF);
  // Products from the standard 0x11B reduction.
  CHECK(f.mul(0x57, 0x83) == 0xC1);
  CHECK(f.mul(0x53, 0xCA) == 0x01);
  CHECK(f.add(0x57, 0x83) == (0x57 ^ 0x83));
}

TEST_CASE("GF(4) uses x^2 + x + 1") {
  const Field& f = Field::get(4);
  CHECK(f.mul(2, 2) == 3);  // x^2 = x + 1
  CHECK(f.mul(2, 3) == 1);
  CHECK(f.add(2, 3) == 1);
}

TEST_CASE("unsupported field orders are rejected") {
  CHECK_FALSE(Field::supported(5));
  CHECK_THROWS_AS(Field::get(8), Error);
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix::identity(2, 3)) == 3);
  CHECK(rank(Matrix(2, 2, 5)) == 0);
  CHECK(rank(Matrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
  CHECK(rank(Matrix::from_rows(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 3);
}

TEST_CASE("solve_right examples") {
  std::mt19937_64 rng(1);
  const Matrix b = random_matrix(rng, 4, 3, 2);
  const auto x = solve_right(Matrix::identity(4, 3), b);
  REQUIRE(x.has_value());
  CHECK(*x == b);
  CHECK_FALSE(solve_right(Matrix(2, 2, 2), Matrix::from_rows(2, {{1}, {0}})));
  CHECK_FALSE(solve_right(Matrix::from_rows(2, {{1}, {1}}),
                          Matrix::from_rows(2, {{1}, {0}})));
  CHECK_THROWS_AS(solve_right(Matrix(2, 2, 2), Matrix(2, 3, 1)), Error);
}

TEST_CASE("property: solve_right agrees with the augmented rank test") {
  for (int rows = 1; rows <= 4; ++rows)
    for (int cols = 1; rows * cols <= 12; ++cols) {
      const unsigned count = 1u << (rows * cols);
      for (unsigned bits = 0; bits < count; ++bits) {
        const Matrix a = gf2_from_bits(rows, cols, bits);
        const int ra = rank(a);
        for (unsigned v = 0; v < (1u << rows); ++v) {
          const Matrix b = gf2_from_bits(rows, 1, v);
          const auto x = solve_right(a, b);
          CHECK(x.has_value() == (rank(a.hstack(b)) == ra));
          if (x) CHECK(a * *x == b);
        }
      }
    }
}

TEST_CASE("property: rank is invariant under transpose, row swaps and scaling") {
  std::mt19937_64 rng(9);
  for (int q : {2, 3, 4, 256}) {
    const Field& f = Field::get(q);
    for (int rep = 0; rep < 200; ++rep) {
      const int rows = 1 + static_cast<int>(rng() % 5);
      const int cols = 1 + static_cast<int>(rng() % 5);
      Matrix m = random_matrix(rng, q, rows, cols);
      const int r = rank(m);
      CHECK(r <= std::min(rows, cols));
      CHECK(rank(m.transpose()) == r);
      std::vector<int> order(rows);
      for (int i = 0; i < rows; ++i) order[i] = rows - 1 - i;
      CHECK(rank(m.select_rows(order)) == r);
      const Element s = static_cast<Element>(1 + rng() % (q - 1));
      const int row = static_cast<int>(rng() % rows);
      for (int c = 0; c < cols; ++c) m(row, c) = f.mul(s, m(row, c));
      CHECK(rank(m) == r);
    }
  }
}

TEST_CASE("matrix algebra") {
  const Matrix a = Matrix::from_rows(4, {{1, 2}, {3, 0}});
  CHECK(a * Matrix::identity(4, 2) == a);
  CHECK((a + a) == Matrix(4, 2, 2));  // characteristic 2
  CHECK(a.hstack(a).cols() == 4);
  CHECK(a.vstack(a).rows() == 4);
  const std::vector<Element> row = {1, 1};
  CHECK(a.left_multiply(row) == std::vector<Element>{2, 2});
  Matrix m = Matrix::from_rows(2, {{0, 1, 1}, {1, 1, 0}});
  CHECK(row_reduce(m) == 2);
  CHECK(m == Matrix::from_rows(2, {{1, 0, 1}, {0, 1, 1}}));
}
