#include "dvg/matrix.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "dvg/error.hpp"

namespace dvg {

namespace {

void check_shape(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_dst -= f * row_src
void sub_row(Matrix& m, std::size_t dst, std::size_t src, const WittElem& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!m(src, j).is_zero()) m(dst, j) -= f * m(src, j);
  }
}

// col_dst -= f * col_src
void sub_col(Matrix& m, std::size_t dst, std::size_t src, const WittElem& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m(i, src).is_zero()) m(i, dst) -= f * m(i, src);
  }
}

}  // namespace

Matrix::Matrix(const WittRing& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, ring.zero()) {}

Matrix Matrix::identity(const WittRing& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Matrix Matrix::from_rows(const WittRing& ring, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    check_shape(rows[i].size() == c, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = ring.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(const WittRing& ring, std::span<const Vector> columns) {
  const std::size_t c = columns.size();
  const std::size_t r = c == 0 ? 0 : columns.front().size();
  Matrix m(ring, r, c);
  for (std::size_t j = 0; j < c; ++j) {
    check_shape(columns[j].size() == r, "ragged columns");
    for (std::size_t i = 0; i < r; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_shape(a.cols_ == b.rows_, "matrix product shapes");
  Matrix c(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const WittElem& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  check_shape(a.cols_ == v.size(), "matrix-vector shapes");
  Vector out(a.rows_, a.ring_.zero());
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum shapes");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_shape(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix difference shapes");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

Matrix operator*(const WittElem& s, const Matrix& a) {
  Matrix c = a;
  for (auto& x : c.data_) x = s * x;
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ring_ == b.ring_ && a.data_ == b.data_;
}

Matrix frobenius(const Matrix& a, std::int64_t power) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = frobenius(a(i, j), power);
  return c;
}

Vector frobenius(const Vector& v, std::int64_t power) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(frobenius(x, power));
  return out;
}

Matrix change_precision(const Matrix& a, const WittRing& target) {
  Matrix c(target, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = change_precision(a(i, j), target);
  return c;
}

bool congruent(const Matrix& a, const Matrix& b, int level) {
  const Matrix diff = a - b;
  for (std::size_t i = 0; i < diff.rows(); ++i)
    for (std::size_t j = 0; j < diff.cols(); ++j)
      if (valuation_capped(diff(i, j)) < level) return false;
  return true;
}

Matrix block_diagonal(std::span<const Matrix> blocks) {
  check_shape(!blocks.empty(), "no blocks");
  std::size_t n = 0;
  for (const auto& b : blocks) {
    check_shape(b.is_square(), "blocks must be square");
    n += b.rows();
  }
  Matrix m(blocks.front().ring(), n, n);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(offset + i, offset + j) = b(i, j);
    offset += b.rows();
  }
  return m;
}

Matrix random_matrix(const WittRing& ring, std::size_t rows, std::size_t cols, SplitMix64& rng) {
  Matrix m(ring, rows, cols);
  const auto deg = static_cast<std::size_t>(ring.deg());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<std::uint64_t> c(deg);
      for (auto& x : c) x = rng.uniform(ring.modulus());
      m(i, j) = ring.element(std::move(c));
    }
  return m;
}

Vector random_vector(const WittRing& ring, std::size_t n, SplitMix64& rng) {
  return random_matrix(ring, n, 1, rng).column(0);
}

SmithForm smith_form(const Matrix& a) {
  const WittRing& ring = a.ring();
  const int cap = ring.precision();
  Matrix m = a;
  SmithForm out{{}, {}, Matrix::identity(ring, a.rows()), Matrix::identity(ring, a.cols())};
  const std::size_t n = std::min(a.rows(), a.cols());

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pi = k, pj = k;
    int best = cap;
    for (std::size_t i = k; i < m.rows() && best > 0; ++i)
      for (std::size_t j = k; j < m.cols(); ++j) {
        const int v = valuation_capped(m(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (best == cap) {
      for (std::size_t rest = k; rest < n; ++rest) {
        out.valuations.push_back(cap);
        out.diagonal.push_back(ring.zero());
      }
      break;
    }
    swap_rows(m, k, pi);
    swap_rows(out.left, k, pi);
    swap_cols(m, k, pj);
    swap_cols(out.right, k, pj);

    const WittElem unit_inv = unit_inverse(divide_by_p_power(m(k, k), best));
    for (std::size_t i = k + 1; i < m.rows(); ++i) {
      if (m(i, k).is_zero()) continue;
      const WittElem f = divide_by_p_power(m(i, k), best) * unit_inv;
      sub_row(m, i, k, f);
      sub_row(out.left, i, k, f);
    }
    for (std::size_t j = k + 1; j < m.cols(); ++j) {
      if (m(k, j).is_zero()) continue;
      const WittElem f = divide_by_p_power(m(k, j), best) * unit_inv;
      sub_col(m, j, k, f);
      sub_col(out.right, j, k, f);
    }
    out.valuations.push_back(best);
    out.diagonal.push_back(m(k, k));
  }
  return out;
}

std::size_t residue_rank(const Matrix& a) {
  const auto vals = smith_form(a).valuations;
  return static_cast<std::size_t>(std::count(vals.begin(), vals.end(), 0));
}

bool is_invertible(const Matrix& a) { return a.is_square() && residue_rank(a) == a.rows(); }

namespace {

// Gauss-Jordan on [a | rhs] with unit pivots; returns the transformed rhs.
Matrix eliminate(Matrix a, Matrix rhs) {
  check_shape(a.is_square() && rhs.rows() == a.rows(), "solve shapes");
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k).is_unit()) {
        pivot = i;
        break;
      }
    if (pivot == n) throw Error(ErrorCode::NotInvertible, "matrix is singular mod p");
    swap_rows(a, k, pivot);
    swap_rows(rhs, k, pivot);
    const WittElem inv = unit_inverse(a(k, k));
    for (std::size_t j = 0; j < n; ++j) a(k, j) = inv * a(k, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(k, j) = inv * rhs(k, j);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const WittElem f = a(i, k);
      sub_row(a, i, k, f);
      sub_row(rhs, i, k, f);
    }
  }
  return rhs;
}

}  // namespace

Matrix inverse(const Matrix& a) {
  check_shape(a.is_square(), "inverse of a non-square matrix");
  return eliminate(a, Matrix::identity(a.ring(), a.rows()));
}

Vector solve(const Matrix& a, const Vector& b) {
  const std::array<Vector, 1> cols{b};
  return eliminate(a, Matrix::from_columns(a.ring(), cols)).column(0);
}

std::vector<WittElem> characteristic_polynomial(const Matrix& a) {
  check_shape(a.is_square(), "characteristic polynomial of a non-square matrix");
  const WittRing& ring = a.ring();
  const std::size_t n = a.rows();
  // Coefficient vector of the trailing principal block, built from the bottom-right corner up.
  std::vector<WittElem> poly{ring.one()};
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = n - 1 - step;
    const std::size_t m = step;  // size of the block below/right of (k, k)
    // First column of the Toeplitz factor: 1, -a_kk, -R C, -R A1 C, ..., -R A1^{m-1} C.
    std::vector<WittElem> t;
    t.reserve(m + 2);
    t.push_back(ring.one());
    t.push_back(-a(k, k));
    Vector w(m, ring.zero());
    for (std::size_t i = 0; i < m; ++i) w[i] = a(k + 1 + i, k);
    for (std::size_t power = 0; power < m; ++power) {
      WittElem rc = ring.zero();
      for (std::size_t i = 0; i < m; ++i) rc += a(k, k + 1 + i) * w[i];
      t.push_back(-rc);
      if (power + 1 < m) {
        Vector next(m, ring.zero());
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) next[i] += a(k + 1 + i, k + 1 + j) * w[j];
        w = std::move(next);
      }
    }
    std::vector<WittElem> next(m + 2, ring.zero());
    for (std::size_t i = 0; i < m + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, m); ++j) next[i] += t[i - j] * poly[j];
    poly = std::move(next);
  }
  return poly;
}

WittElem determinant(const Matrix& a) {
  const auto poly = characteristic_polynomial(a);
  return a.rows() % 2 == 0 ? poly.back() : -poly.back();
}

}  // namespace dvg
