#pragma once

// Dense matrices over a WittRing and the exact linear algebra the rest of the
// library needs: Smith valuations over the chain ring W/p^N, unit-pivot
// inversion and solving, and a division-free characteristic polynomial.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dvg/rng.hpp"
#include "dvg/witt_ring.hpp"

namespace dvg {

using Vector = std::vector<WittElem>;

class Matrix {
 public:
  Matrix(const WittRing& ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const WittRing& ring, std::size_t n);
  /// Entries given row by row as integers.
  static Matrix from_rows(const WittRing& ring, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_columns(const WittRing& ring, std::span<const Vector> columns);

  const WittRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  WittElem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const WittElem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const WittElem& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  WittRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<WittElem> data_;
};

/// Entrywise sigma^power.
Matrix frobenius(const Matrix& a, std::int64_t power = 1);
Vector frobenius(const Vector& v, std::int64_t power = 1);

/// Entrywise change_precision.
Matrix change_precision(const Matrix& a, const WittRing& target);

/// Every entry is congruent to the corresponding entry of b mod p^level.
bool congruent(const Matrix& a, const Matrix& b, int level);

Matrix block_diagonal(std::span<const Matrix> blocks);

/// Entries uniform in the power-basis representation, filled row by row and
/// coefficient by coefficient from `rng`.
Matrix random_matrix(const WittRing& ring, std::size_t rows, std::size_t cols, SplitMix64& rng);
Vector random_vector(const WittRing& ring, std::size_t n, SplitMix64& rng);

/// Smith normal form over the chain ring W/p^N: left * a * right = diag(d_0, ...),
/// with d_i = p^{valuations[i]} * unit, valuations nondecreasing, and a
/// valuation of N standing for an entry that is zero at working precision.
struct SmithForm {
  std::vector<int> valuations;
  std::vector<WittElem> diagonal;
  Matrix left;
  Matrix right;
};

SmithForm smith_form(const Matrix& a);

/// Rank of the reduction mod p over the residue field.
std::size_t residue_rank(const Matrix& a);

/// Square with unit determinant.
bool is_invertible(const Matrix& a);

/// Throws NotInvertible.
Matrix inverse(const Matrix& a);

/// Solves a x = b for a square matrix with unit determinant. Throws NotInvertible.
Vector solve(const Matrix& a, const Vector& b);

/// Coefficients (1, c_1, ..., c_n) of det(t I - a) = t^n + c_1 t^{n-1} + ... + c_n,
/// computed with the Samuelson-Berkowitz recurrence (no divisions).
std::vector<WittElem> characteristic_polynomial(const Matrix& a);

WittElem determinant(const Matrix& a);

}  // namespace dvg
