#include "twistmap/linalg.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "twistmap/errors.hpp"

namespace twistmap {

Matrix::Matrix(const FiniteField& f, int rows, int cols)
    : field_(&f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), 0) {}

Matrix::Matrix(const FiniteField& f, int rows, int cols, std::vector<Elem> entries)
    : field_(&f), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(rows * cols)) {
    throw std::invalid_argument("matrix entry count does not match its shape");
  }
  for (Elem e : a_)
    if (e >= f.size()) throw std::invalid_argument("matrix entry outside the field");
}

Matrix Matrix::identity(const FiniteField& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const FiniteField& f, int rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j) {
    const Vec& c = cols[static_cast<std::size_t>(j)];
    if (static_cast<int>(c.size()) != rows) throw std::invalid_argument("column length mismatch");
    for (int i = 0; i < rows; ++i) m.at(i, j) = c[static_cast<std::size_t>(i)];
  }
  return m;
}

Matrix Matrix::from_rows(const FiniteField& f, int cols, const std::vector<Vec>& rows) {
  Matrix m(f, static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows_; ++i) {
    const Vec& r = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("row length mismatch");
    for (int j = 0; j < cols; ++j) m.at(i, j) = r[static_cast<std::size_t>(j)];
  }
  return m;
}

Vec Matrix::column(int j) const {
  Vec c(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = at(i, j);
  return c;
}

Vec Matrix::row(int i) const {
  return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

Matrix Matrix::transpose() const {
  Matrix t(*field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

namespace {

// In-place Gauss-Jordan elimination on the first `limit` columns; returns pivot columns.
std::vector<int> eliminate(const FiniteField& f, Matrix& m, int limit) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < limit && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    const Elem s = f.inv(m.at(r, c));
    for (int j = 0; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), s);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Elem k = m.at(i, c);
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(k, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::domain_error("inverse of a non-square matrix");
  const int n = rows_;
  Matrix aug(*field_, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = 1;
  }
  if (static_cast<int>(eliminate(*field_, aug, n).size()) != n) throw std::domain_error("singular matrix");
  Matrix inv(*field_, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(eliminate(*field_, m, cols_).size());
}

Matrix Matrix::rref() const {
  Matrix m = *this;
  const int r = static_cast<int>(eliminate(*field_, m, cols_).size());
  Matrix out(*field_, r, cols_);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

std::vector<Vec> Matrix::kernel() const {
  Matrix m = *this;
  const auto pivots = eliminate(*field_, m, cols_);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vec> out;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vec x(static_cast<std::size_t>(cols_), 0);
    x[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      x[static_cast<std::size_t>(pivots[r])] = field_->neg(m.at(static_cast<int>(r), free));
    }
    out.push_back(std::move(x));
  }
  return out;
}

Matrix Matrix::frobenius(int k) const {
  if (k == 0) return *this;
  long long e = 1;
  for (int i = 0; i < k; ++i) e *= field_->characteristic();
  Matrix out = *this;
  for (auto& v : out.a_) v = field_->pow(v, e);
  return out;
}

Matrix Matrix::map_entries(const std::vector<Elem>& table, const FiniteField& target) const {
  Matrix out(target, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = table[a_[k]];
  return out;
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector length mismatch");
  Vec y(static_cast<std::size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i) {
    Elem s = 0;
    for (int j = 0; j < cols_; ++j) s = field_->add(s, field_->mul(at(i, j), x[static_cast<std::size_t>(j)]));
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  const FiniteField& f = *a.field_;
  Matrix c(f, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Elem x = a.at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c.at(i, j) = f.add(c.at(i, j), f.mul(x, b.at(k, j)));
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] = a.field_->add(a.a_[k], b.a_[k]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] = a.field_->sub(a.a_[k], b.a_[k]);
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<int> Matrix::to_ints() const { return std::vector<int>(a_.begin(), a_.end()); }

std::string Matrix::to_string() const {
  std::string out;
  for (int i = 0; i < rows_; ++i) {
    out += '[';
    for (int j = 0; j < cols_; ++j) {
      if (j) out += ' ';
      out += std::to_string(at(i, j));
    }
    out += "]\n";
  }
  return out;
}

Elem dot(const FiniteField& f, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pairing length mismatch");
  Elem s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s = f.add(s, f.mul(x[i], y[i]));
  return s;
}

Vec scale(const FiniteField& f, Elem c, const Vec& x) {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f.mul(c, x[i]);
  return y;
}

Vec add(const FiniteField& f, const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = f.add(x[i], y[i]);
  return z;
}

bool is_zero(const Vec& x) {
  for (Elem e : x)
    if (e != 0) return false;
  return true;
}

Vec normalize_projective(const FiniteField& f, const Vec& x) {
  for (Elem e : x)
    if (e != 0) return scale(f, f.inv(e), x);
  throw std::invalid_argument("zero vector spans no line");
}

Vec unit(int n, int i) {
  Vec e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

Subspace Subspace::zero(const FiniteField& f, int n) {
  Subspace s;
  s.field_ = &f;
  s.n_ = n;
  return s;
}

Subspace Subspace::whole(const FiniteField& f, int n) {
  std::vector<Vec> b;
  for (int i = 0; i < n; ++i) b.push_back(unit(n, i));
  return span(f, n, b);
}

Subspace Subspace::span(const FiniteField& f, int n, const std::vector<Vec>& vectors) {
  Subspace s = zero(f, n);
  if (vectors.empty()) return s;
  const Matrix r = Matrix::from_rows(f, n, vectors).rref();
  for (int i = 0; i < r.rows(); ++i) s.basis_.push_back(r.row(i));
  return s;
}

bool Subspace::contains(const Vec& x) const {
  std::vector<Vec> rows = basis_;
  rows.push_back(x);
  return Matrix::from_rows(*field_, n_, rows).rank() == dim();
}

bool Subspace::contains(const Subspace& other) const { return sum(other).dim() == dim(); }

Subspace Subspace::perp() const {
  if (basis_.empty()) return whole(*field_, n_);
  return span(*field_, n_, Matrix::from_rows(*field_, n_, basis_).kernel());
}

Subspace Subspace::sum(const Subspace& other) const {
  std::vector<Vec> rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return span(*field_, n_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
  return perp().sum(other.perp()).perp();
}

std::uint64_t encode_matrix(const Matrix& m) {
  std::uint64_t code = 0;
  const auto& e = m.entries();
  for (auto it = e.rbegin(); it != e.rend(); ++it) code = code * static_cast<std::uint64_t>(m.field().size()) + *it;
  return code;
}

Matrix decode_matrix(const FiniteField& f, int n, std::uint64_t code) {
  std::vector<Elem> e(static_cast<std::size_t>(n * n));
  for (auto& v : e) {
    v = static_cast<Elem>(code % static_cast<std::uint64_t>(f.size()));
    code /= static_cast<std::uint64_t>(f.size());
  }
  return Matrix(f, n, n, std::move(e));
}

namespace {

std::uint64_t matrix_space_size(const FiniteField& f, int n, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (int k = 0; k < n * n; ++k) {
    total *= static_cast<std::uint64_t>(f.size());
    if (total > limit) {
      throw BoundExceeded(std::to_string(n) + "x" + std::to_string(n) + " matrices over " + f.name() +
                          " exceed the enumeration bound " + std::to_string(limit));
    }
  }
  return total;
}

}  // namespace

std::vector<Matrix> enumerate_invertible(const FiniteField& f, int n, std::uint64_t limit) {
  const std::uint64_t total = matrix_space_size(f, n, limit);
  std::vector<Matrix> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix m = decode_matrix(f, n, code);
    if (m.invertible()) out.push_back(std::move(m));
  }
  return out;
}

std::vector<Matrix> gl_generators(const FiniteField& f, int n) {
  std::vector<Matrix> gens;
  Elem a = 1;
  for (int d = 0; d < f.degree(); ++d) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Matrix t = Matrix::identity(f, n);
        t.at(i, j) = a;
        gens.push_back(std::move(t));
      }
    }
    a = f.mul(a, f.primitive());
  }
  if (f.size() > 2) {
    Matrix d = Matrix::identity(f, n);
    d.at(0, 0) = f.primitive();
    gens.push_back(std::move(d));
  }
  return gens;
}

}  // namespace twistmap
