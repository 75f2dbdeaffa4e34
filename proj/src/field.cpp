#include "mdc/field.hpp"

#include <string>

#include "mdc/error.hpp"

namespace mdc {

namespace {

// Carry-less product reduced by `poly` (which includes the leading term).
Element poly_mul(unsigned a, unsigned b, unsigned poly, int degree) {
  unsigned p = 0;
  while (b) {
    if (b & 1u) p ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << degree)) a ^= poly;
  }
  return static_cast<Element>(p);
}

}  // namespace

bool Field::supported(int order) noexcept {
  return order == 2 || order == 3 || order == 4 || order == 256;
}

const Field& Field::get(int order) {
  static const Field gf2(2);
  static const Field gf3(3);
  static const Field gf4(4);
  static const Field gf256(256);
  switch (order) {
    case 2: return gf2;
    case 3: return gf3;
    case 4: return gf4;
    case 256: return gf256;
    default:
      throw Error(ErrorKind::InvalidInput,
                  "unsupported field order " + std::to_string(order));
  }
}

Field::Field(int order)
    : order_(order),
      add_(static_cast<std::size_t>(order) * order),
      mul_(static_cast<std::size_t>(order) * order) {
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      Element s = 0, p = 0;
      if (order == 3) {
        s = static_cast<Element>((a + b) % 3);
        p = static_cast<Element>((a * b) % 3);
      } else if (order == 2) {
        s = static_cast<Element>(a ^ b);
        p = static_cast<Element>(a & b);
      } else if (order == 4) {
        s = static_cast<Element>(a ^ b);
        p = poly_mul(a, b, 0b111, 2);
      } else {
        s = static_cast<Element>(a ^ b);
        p = poly_mul(a, b, 0x11B, 8);
      }
      add_[idx(a, b)] = s;
      mul_[idx(a, b)] = p;
    }
  }
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (add_[idx(a, b)] == 0) neg_[a] = static_cast<Element>(b);
      if (mul_[idx(a, b)] == 1) inv_[a] = static_cast<Element>(b);
    }
  }
}

Matrix::Matrix(int field_order, int rows, int cols)
    : field_(&Field::get(field_order)),
      rows_(rows),
      cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0)
    throw Error(ErrorKind::InvalidInput, "negative matrix dimension");
}

Matrix::Matrix(int field_order, int rows, int cols, std::vector<Element> entries)
    : field_(&Field::get(field_order)),
      rows_(rows),
      cols_(cols),
      entries_(std::move(entries)) {
  if (rows < 0 || cols < 0 ||
      entries_.size() != static_cast<std::size_t>(rows) * cols)
    throw Error(ErrorKind::InvalidInput,
                "matrix entries do not match its dimensions");
  for (Element e : entries_)
    if (e >= field_order)
      throw Error(ErrorKind::InvalidInput,
                  "matrix entry " + std::to_string(e) + " is not in GF(" +
                      std::to_string(field_order) + ")");
}

Matrix Matrix::identity(int field_order, int n) {
  Matrix m(field_order, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(int field_order,
                         std::initializer_list<std::vector<Element>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  std::vector<Element> entries;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c)
      throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(field_order, r, c, std::move(entries));
}

Matrix Matrix::transpose() const {
  Matrix t(field_order(), cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const int> cols) const {
  Matrix out(field_order(), rows_, static_cast<int>(cols.size()));
  for (int r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(r, static_cast<int>(j)) = (*this)(r, cols[j]);
  return out;
}

Matrix Matrix::select_rows(std::span<const int> rows) const {
  Matrix out(field_order(), static_cast<int>(rows.size()), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < cols_; ++c)
      out(static_cast<int>(i), c) = (*this)(rows[i], c);
  return out;
}

Matrix Matrix::hstack(const Matrix& right) const {
  if (right.rows_ != rows_ || right.field_order() != field_order())
    throw Error(ErrorKind::InvalidInput, "hstack of incompatible matrices");
  Matrix out(field_order(), rows_, cols_ + right.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (int c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
  }
  return out;
}

Matrix Matrix::vstack(const Matrix& below) const {
  if (below.cols_ != cols_ || below.field_order() != field_order())
    throw Error(ErrorKind::InvalidInput, "vstack of incompatible matrices");
  std::vector<Element> e = entries_;
  e.insert(e.end(), below.entries_.begin(), below.entries_.end());
  return Matrix(field_order(), rows_ + below.rows_, cols_, std::move(e));
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || rhs.field_order() != field_order())
    throw Error(ErrorKind::InvalidInput, "product of incompatible matrices");
  const Field& f = *field_;
  Matrix out(field_order(), rows_, rhs.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Element a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < rhs.cols_; ++c)
        out(r, c) = f.add(out(r, c), f.mul(a, rhs(k, c)));
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ ||
      rhs.field_order() != field_order())
    throw Error(ErrorKind::InvalidInput, "sum of incompatible matrices");
  Matrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = field_->add(entries_[i], rhs.entries_[i]);
  return out;
}

std::vector<Element> Matrix::left_multiply(std::span<const Element> row) const {
  if (static_cast<int>(row.size()) != rows_)
    throw Error(ErrorKind::InvalidInput,
                "row vector length does not match matrix rows");
  const Field& f = *field_;
  std::vector<Element> out(cols_, 0);
  for (int r = 0; r < rows_; ++r) {
    if (row[r] == 0) continue;
    for (int c = 0; c < cols_; ++c)
      out[c] = f.add(out[c], f.mul(row[r], (*this)(r, c)));
  }
  return out;
}

int row_reduce(Matrix& m) {
  const Field& f = m.field();
  int pivot_row = 0;
  for (int c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    int sel = -1;
    for (int r = pivot_row; r < m.rows(); ++r)
      if (m(r, c) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != pivot_row)
      for (int k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(pivot_row, k));
    const Element scale = f.inv(m(pivot_row, c));
    for (int k = c; k < m.cols(); ++k) m(pivot_row, k) = f.mul(m(pivot_row, k), scale);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, c) == 0) continue;
      const Element factor = m(r, c);
      for (int k = c; k < m.cols(); ++k)
        m(r, k) = f.sub(m(r, k), f.mul(factor, m(pivot_row, k)));
    }
    ++pivot_row;
  }
  return pivot_row;
}

int rank(const Matrix& m) {
  Matrix copy = m;
  return row_reduce(copy);
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.field_order() != b.field_order())
    throw Error(ErrorKind::InvalidInput,
                "solve_right needs matching row counts and fields");
  Matrix aug = a.hstack(b);
  const int r = row_reduce(aug);
  Matrix x(a.field_order(), a.cols(), b.cols());
  for (int row = 0; row < r; ++row) {
    int pivot = 0;
    while (pivot < aug.cols() && aug(row, pivot) == 0) ++pivot;
    // A pivot inside the b block means rank([a | b]) > rank(a).
    if (pivot >= a.cols()) return std::nullopt;
    for (int c = 0; c < b.cols(); ++c) x(pivot, c) = aug(row, a.cols() + c);
  }
  return x;
}

}  // namespace mdc
