#pragma once

#include <string>
#include <vector>

#include "twistmap/field.hpp"

namespace twistmap {

using Vec = std::vector<Elem>;

/// Dense matrix over a FiniteField. Matrices act on column vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FiniteField& f, int rows, int cols);
  Matrix(const FiniteField& f, int rows, int cols, std::vector<Elem> entries);

  static Matrix identity(const FiniteField& f, int n);
  /// Matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(const FiniteField& f, int rows, const std::vector<Vec>& cols);
  static Matrix from_rows(const FiniteField& f, int cols, const std::vector<Vec>& rows);

  const FiniteField& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem at(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  Elem& at(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<Elem>& entries() const { return a_; }

  Vec column(int j) const;
  Vec row(int i) const;

  Matrix transpose() const;
  /// Throws std::domain_error when singular.
  Matrix inverse() const;
  int rank() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }
  /// Reduced row echelon form with zero rows dropped.
  Matrix rref() const;
  /// Basis of {x : M x = 0}.
  std::vector<Vec> kernel() const;
  /// Entrywise x -> x^(p^k).
  Matrix frobenius(int k) const;
  Matrix map_entries(const std::vector<Elem>& table, const FiniteField& target) const;

  Vec apply(const Vec& x) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Row-major integer list; the prime field prints as residues.
  std::vector<int> to_ints() const;
  std::string to_string() const;

 private:
  const FiniteField* field_ = nullptr;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> a_;
};

/// Sum_i x_i * y_i.
Elem dot(const FiniteField& f, const Vec& x, const Vec& y);
Vec scale(const FiniteField& f, Elem c, const Vec& x);
Vec add(const FiniteField& f, const Vec& x, const Vec& y);
bool is_zero(const Vec& x);
/// Scales so the first nonzero coordinate is 1.
Vec normalize_projective(const FiniteField& f, const Vec& x);
/// Standard basis vector e_i of length n.
Vec unit(int n, int i);

/// A subspace of F^n stored by its reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(const FiniteField& f, int n);
  static Subspace whole(const FiniteField& f, int n);
  static Subspace span(const FiniteField& f, int n, const std::vector<Vec>& vectors);

  const FiniteField& field() const { return *field_; }
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }

  bool contains(const Vec& x) const;
  bool contains(const Subspace& other) const;
  /// Annihilator under the standard pairing sum x_i y_i.
  Subspace perp() const;
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  const FiniteField* field_ = nullptr;
  int n_ = 0;
  std::vector<Vec> basis_;
};

/// Index of a square matrix among all |F|^(n*n) matrices (entries as base-|F| digits).
std::uint64_t encode_matrix(const Matrix& m);
Matrix decode_matrix(const FiniteField& f, int n, std::uint64_t code);

/// Every invertible n x n matrix in encoding order. Throws BoundExceeded when
/// |F|^(n*n) exceeds limit.
std::vector<Matrix> enumerate_invertible(const FiniteField& f, int n, std::uint64_t limit);

/// Generators of GL_n: elementary transvections by a spanning set of F over
/// its prime field, and diag(a, 1, ..., 1) for a primitive element a.
std::vector<Matrix> gl_generators(const FiniteField& f, int n);

}  // namespace twistmap
