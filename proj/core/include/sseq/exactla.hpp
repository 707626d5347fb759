#pragma once

// Exact rational linear algebra: matrices over Q, canonical subspaces in
// reduced echelon form, subquotients with canonical complement bases.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace sseq {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "a", "-a" or "a/b" into a reduced rational. Throws ParseError.
Scalar parse_scalar(std::string_view text);

/// "a" when the denominator is 1, "a/b" otherwise.
std::string format_scalar(const Scalar& x);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row_span(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  std::vector<Vector> columns() const;

  Matrix transpose() const;
  Vector apply(std::span<const Scalar> v) const;
  Matrix scaled(const Scalar& s) const;
  Matrix submatrix(std::span<const std::size_t> row_idx,
                   std::span<const std::size_t> col_idx) const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Stacks matrices side by side; all must share the row count.
Matrix hstack(const Matrix& a, const Matrix& b);

struct EchelonForm {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

EchelonForm row_reduce(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in canonical order.
std::vector<Vector> nullspace(const Matrix& m);

/// A particular solution of m x = b with all free variables set to zero,
/// or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b);

/// Subspace of Q^ambient held by its reduced echelon basis. Two subspaces are
/// equal iff their bases are equal.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  /// Throws InvariantViolation if a vector has the wrong length.
  static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient);
  static Subspace column_span(const Matrix& m);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  /// Canonical basis vectors (the nonzero rows of the reduced echelon form).
  const std::vector<Vector>& vectors() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// ambient × dim matrix whose columns are the canonical basis.
  Matrix basis() const;

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& other) const;

  /// Coefficients of v in the canonical basis, nullopt if v is outside.
  std::optional<Vector> coordinates(std::span<const Scalar> v) const;

  /// v minus its canonical component along this subspace: the result vanishes
  /// on every pivot position. Linear, with kernel exactly this subspace.
  Vector reduce(std::span<const Scalar> v) const;

  /// Linear combination of the canonical basis.
  Vector combine(std::span<const Scalar> coeffs) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

Subspace operator+(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// f(u).
Subspace image(const Matrix& f, const Subspace& u);
/// {v : f v ∈ w}.
Subspace preimage(const Matrix& f, const Subspace& w);
Subspace kernel(const Matrix& f);

/// Z / B for subspaces B ⊆ Z of a common ambient space. Elements are named by
/// their coordinates in the canonical complement: the reduced echelon basis of
/// the image of Z under the projection killing B.
class Subquotient {
 public:
  Subquotient() = default;
  /// Throws InvariantViolation when B ⊄ Z.
  Subquotient(Subspace numerator, Subspace denominator);

  static Subquotient whole(std::size_t ambient);

  std::size_t ambient_dim() const { return numerator_.ambient_dim(); }
  std::size_t dim() const { return complement_.dim(); }

  const Subspace& numerator() const { return numerator_; }
  const Subspace& denominator() const { return denominator_; }
  /// Complement vectors; each lies in the numerator.
  const std::vector<Vector>& complement() const { return complement_.vectors(); }
  Matrix complement_basis() const { return complement_.basis(); }

  std::optional<Vector> try_coordinates(std::span<const Scalar> v) const;
  /// Class of v; throws InvariantViolation if v is not in the numerator.
  Vector coordinates(std::span<const Scalar> v) const;
  /// Canonical representative of a class.
  Vector lift(std::span<const Scalar> coords) const;

  friend bool operator==(const Subquotient& a, const Subquotient& b) = default;

 private:
  Subspace numerator_;
  Subspace denominator_;
  Subspace complement_;
};

/// Matrix of the map source → target induced by f, in canonical complement
/// coordinates. Throws InvariantViolation naming the offending basis vector
/// when f(Z) ⊄ Z' or f(B) ⊄ B'.
Matrix induced_map(const Matrix& f, const Subquotient& source, const Subquotient& target);

struct PairingRank {
  std::size_t rank = 0;
  bool nondegenerate = false;
};

/// Rank of a bilinear pairing given by its Gram matrix; throws on non-square.
PairingRank pairing_rank(const Matrix& gram);

std::string format_vector(std::span<const Scalar> v);

}  // namespace sseq
