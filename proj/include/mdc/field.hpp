#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mdc {

using Element = std::uint8_t;

/// Arithmetic in GF(q) for q in {2, 3, 4, 256}. GF(4) is GF(2)[x]/(x^2+x+1)
/// with x encoded as 2; GF(256) reduces by x^8+x^4+x^3+x+1 (0x11B).
/// Instances are immutable lookup tables shared across threads.
class Field {
 public:
  // Throws Error(InvalidInput) for unsupported orders.
  static const Field& get(int order);
  static bool supported(int order) noexcept;

  int order() const noexcept { return order_; }

  Element add(Element a, Element b) const { return add_[idx(a, b)]; }
  Element sub(Element a, Element b) const { return add(a, neg_[b]); }
  Element mul(Element a, Element b) const { return mul_[idx(a, b)]; }
  Element neg(Element a) const { return neg_[a]; }
  // a != 0.
  Element inv(Element a) const { return inv_[a]; }

 private:
  explicit Field(int order);
  std::size_t idx(Element a, Element b) const {
    return static_cast<std::size_t>(a) * order_ + b;
  }

  int order_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::array<Element, 256> neg_{};
  std::array<Element, 256> inv_{};
};

/// Dense row-major matrix over a fixed field.
class Matrix {
 public:
  Matrix(int field_order, int rows, int cols);
  Matrix(int field_order, int rows, int cols, std::vector<Element> entries);

  static Matrix identity(int field_order, int n);
  // from_rows(2, {{1, 1, 0}, {0, 1, 1}}).
  static Matrix from_rows(int field_order,
                          std::initializer_list<std::vector<Element>> rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int field_order() const noexcept { return field_->order(); }
  const Field& field() const noexcept { return *field_; }
  std::span<const Element> entries() const noexcept { return entries_; }

  Element operator()(int r, int c) const { return entries_[at(r, c)]; }
  Element& operator()(int r, int c) { return entries_[at(r, c)]; }

  Matrix transpose() const;
  Matrix select_columns(std::span<const int> cols) const;
  Matrix select_rows(std::span<const int> rows) const;
  Matrix hstack(const Matrix& right) const;
  Matrix vstack(const Matrix& below) const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;

  // Row vector times matrix.
  std::vector<Element> left_multiply(std::span<const Element> row) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_order() == b.field_order() && a.rows_ == b.rows_ &&
           a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t at(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  const Field* field_;
  int rows_;
  int cols_;
  std::vector<Element> entries_;
};

// Reduced row echelon form in place; returns the rank. Pivots are chosen as
// the first nonzero entry of each column.
int row_reduce(Matrix& m);

int rank(const Matrix& m);

// X with a * X == b, or nullopt when some column of b is outside the column
// space of a. Throws Error(InvalidInput) if a.rows() != b.rows().
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

}  // namespace mdc
