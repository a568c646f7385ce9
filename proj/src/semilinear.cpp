#include "twistmap/semilinear.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "twistmap/errors.hpp"

namespace twistmap {

FieldSpec FieldSpec::twisted(const FiniteField& f, int q) {
  if (q == 1) return linear(f);
  int a = 0;
  long long v = 1;
  while (v < q) {
    v *= f.characteristic();
    ++a;
  }
  if (v != q) throw std::invalid_argument("q must be a power of the characteristic");
  if (f.degree() % a != 0) throw std::invalid_argument("q is not a subfield size of " + f.name());
  return {&f, q};
}

int FieldSpec::frobenius_shift(int t) const {
  if (q == 1) return 0;
  int a = 0;
  for (long long v = 1; v < q; v *= field->characteristic()) ++a;
  const int period = field->degree() / a;
  const int k = ((t % period) + period) % period;
  return a * k;
}

Elem FieldSpec::frob(Elem x, int t) const {
  const int k = frobenius_shift(t);
  if (k == 0) return x;
  long long e = 1;
  for (int i = 0; i < k; ++i) e *= field->characteristic();
  return field->pow(x, e);
}

Vec FieldSpec::frob(const Vec& x, int t) const {
  if (frobenius_shift(t) == 0) return x;
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = frob(x[i], t);
  return y;
}

Matrix FieldSpec::frob(const Matrix& m, int t) const { return m.frobenius(frobenius_shift(t)); }

SemilinearElement::SemilinearElement(FieldSpec spec, int degree, Matrix matrix)
    : spec_(spec), degree_(degree), matrix_(std::move(matrix)) {
  if (&matrix_.field() != spec_.field) throw std::invalid_argument("matrix lives over a different field");
  if (!matrix_.invertible()) throw std::invalid_argument("semilinear element needs an invertible matrix");
}

SemilinearElement SemilinearElement::identity(FieldSpec spec, int n) {
  return SemilinearElement(spec, 0, Matrix::identity(*spec.field, n));
}

Vec SemilinearElement::apply(const Vec& x) const { return matrix_.apply(spec_.frob(x, degree_)); }

Subspace SemilinearElement::image(const Subspace& s) const {
  std::vector<Vec> imgs;
  for (const auto& b : s.basis()) imgs.push_back(apply(b));
  return Subspace::span(field(), dim(), imgs);
}

SemilinearElement SemilinearElement::compose(const SemilinearElement& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("composing elements of different dimension");
  return SemilinearElement(spec_, degree_ + other.degree_, matrix_ * spec_.frob(other.matrix_, degree_));
}

SemilinearElement SemilinearElement::inverse() const {
  return SemilinearElement(spec_, -degree_, spec_.frob(matrix_.inverse(), -degree_));
}

Elem pairing(const FiniteField& f, const Vec& x, const Vec& xi) { return dot(f, x, xi); }

SemilinearElement check_of(const SemilinearElement& g) {
  return SemilinearElement(g.spec(), g.degree(), g.matrix().inverse().transpose());
}

SemilinearElement star_mul(const SemilinearElement& g, const SemilinearElement& h) {
  if (h.degree() % 2 == 0) return g.compose(h);
  return check_of(g).compose(h);
}

SemilinearElement star_inv(const SemilinearElement& g) {
  if (g.degree() % 2 == 0) return g.inverse();
  return check_of(g).inverse();
}

SemilinearElement star_pow(const SemilinearElement& g, int j) {
  if (g.degree() != 1) throw std::invalid_argument("star_pow needs a degree-1 element");
  StarPowers powers(g);
  return powers(j);
}

StarPowers::StarPowers(SemilinearElement g) : g_(std::move(g)) {
  if (g_.degree() != 1) throw std::invalid_argument("star powers need a degree-1 element");
  cache_.emplace(0, SemilinearElement::identity(g_.spec(), g_.dim()));
  cache_.emplace(1, g_);
  cache_.emplace(-1, star_inv(g_));
}

const SemilinearElement& StarPowers::operator()(int j) {
  if (auto it = cache_.find(j); it != cache_.end()) return it->second;
  SemilinearElement val = j > 0 ? star_mul((*this)(j - 1), g_) : star_mul((*this)(j + 1), (*this)(-1));
  return cache_.emplace(j, std::move(val)).first->second;
}

Matrix phi_matrix(const SemilinearElement& g) { return star_mul(g, g).matrix(); }

long long binom(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  long long r = 1;
  for (long long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

namespace {

void require_model_partition(const Partition& p) {
  if (p.empty()) throw std::invalid_argument("standard model needs a nonempty partition");
}

}  // namespace

int standard_index(const Partition& p, int r, int i) {
  int off = 0;
  for (int k = 0; k < r; ++k) off += 2 * p.parts()[static_cast<std::size_t>(k)] - 1;
  return off + i;
}

std::vector<std::vector<long long>> standard_pairing(const Partition& p) {
  require_model_partition(p);
  const int n = 2 * p.total() - p.length();
  std::vector<std::vector<long long>> P(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
  for (int r = 0; r < p.length(); ++r) {
    const int pr = p.parts()[static_cast<std::size_t>(r)];
    for (int i = 0; i <= 2 * pr - 2; ++i) {
      for (int j = 0; j <= 2 * pr - 2; ++j) {
        const int d = j - i;
        long long v = 0;
        if (d >= pr - 1) v = binom(d + pr - 1, d - pr + 1);
        else if (d <= -pr) v = binom(-d + pr - 2, -d - pr);
        P[static_cast<std::size_t>(standard_index(p, r, i))][static_cast<std::size_t>(standard_index(p, r, j))] = v;
      }
    }
  }
  return P;
}

Matrix standard_g_prime(const Partition& p, const FiniteField& f) {
  require_model_partition(p);
  const auto P = standard_pairing(p);
  const int n = static_cast<int>(P.size());
  Matrix pm(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pm.at(i, j) = f.from_int(P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  Matrix z(f, n, n);
  for (int r = 0; r < p.length(); ++r) {
    const int pr = p.parts()[static_cast<std::size_t>(r)];
    for (int j = 0; j < 2 * pr - 2; ++j) z.at(standard_index(p, r, j + 1), standard_index(p, r, j)) = 1;
    const int last = standard_index(p, r, 2 * pr - 2);
    for (int k = 0; k <= 2 * pr - 2; ++k) {
      const long long c = (k % 2 == 0 ? 1 : -1) * binom(2 * pr - 1, k);
      z.at(standard_index(p, r, k), last) = f.from_int(c);
    }
  }
  return z * pm.inverse();
}

SemilinearElement build_standard_g(const Partition& p, FieldSpec spec) {
  require_model_partition(p);
  if (spec.q != 1) throw std::invalid_argument("the standard model is built with q = 1");
  const FiniteField& f = *spec.field;
  const auto P = standard_pairing(p);
  const int n = static_cast<int>(P.size());
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = f.from_int(P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  SemilinearElement g(spec, 1, m);
  if (!(check_of(g).matrix() == standard_g_prime(p, f))) {
    throw CheckFailure("standard model: check(g) differs from g' for p = " + p.to_string());
  }
  std::vector<int> blocks;
  for (int pr : p.parts()) blocks.push_back(2 * pr - 1);
  if (jordan_type(phi_matrix(g)) != Partition::from_unsorted(blocks)) {
    throw CheckFailure("standard model: g^{*2} has the wrong Jordan type for p = " + p.to_string());
  }
  return g;
}

bool is_unipotent(const Matrix& u) {
  const int n = u.rows();
  const Matrix nil = u - Matrix::identity(u.field(), n);
  Matrix pw = Matrix::identity(u.field(), n);
  for (int k = 0; k < n; ++k) pw = pw * nil;
  return pw.rank() == 0;
}

Partition jordan_type(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::domain_error("jordan_type needs a square matrix");
  const int n = u.rows();
  const Matrix nil = u - Matrix::identity(u.field(), n);
  std::vector<int> ranks{n};
  Matrix pw = Matrix::identity(u.field(), n);
  for (int k = 1; k <= n; ++k) {
    pw = pw * nil;
    ranks.push_back(pw.rank());
  }
  if (ranks.back() != 0) throw std::domain_error("matrix is not unipotent");
  ranks.push_back(0);
  std::vector<int> parts;
  for (int k = 1; k <= n; ++k) {
    const int at_least_k = ranks[static_cast<std::size_t>(k - 1)] - ranks[static_cast<std::size_t>(k)];
    const int at_least_k1 = ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k + 1)];
    for (int c = 0; c < at_least_k - at_least_k1; ++c) parts.push_back(k);
  }
  return Partition::from_unsorted(std::move(parts));
}

namespace {

Matrix matrix_power(const Matrix& m, int k) {
  Matrix out = Matrix::identity(m.field(), m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

Elem standard_form_value(const SemilinearElement& g, const Partition& p, int t) {
  const int pt = p.parts().at(static_cast<std::size_t>(t));
  const Matrix nil = phi_matrix(g) - Matrix::identity(g.field(), g.dim());
  const Vec y = matrix_power(nil, pt - 1).apply(unit(g.dim(), standard_index(p, t, 0)));
  return pairing(g.field(), y, g.apply(y));
}

int epsilon_invariant(const SemilinearElement& g, int i) {
  const FiniteField& f = g.field();
  if (f.characteristic() != 2) throw std::invalid_argument("epsilon is defined in characteristic 2");
  if (g.degree() != 1 || g.spec().q != 1) throw std::invalid_argument("epsilon needs a degree-1 element with q = 1");
  if (i <= 0 || i % 2 == 0) throw std::invalid_argument("epsilon is taken at odd positive i");
  const Matrix phi = phi_matrix(g);
  const Partition jt = jordan_type(phi);
  const int mu = jt.multiplicity(i);
  if (mu == 0) throw std::invalid_argument(std::to_string(i) + " is not a Jordan block size");
  if (mu % 2 == 1) return 1;
  const Matrix nil = phi - Matrix::identity(f, g.dim());
  const Matrix a = matrix_power(nil, (i - 1) / 2);
  const auto ker = matrix_power(nil, i).kernel();
  std::vector<Vec> ak;
  for (const auto& k : ker) ak.push_back(a.apply(k));
  auto form = [&](std::size_t x, std::size_t y) { return pairing(f, ak[x], g.apply(ak[y])); };
  for (std::size_t x = 0; x < ak.size(); ++x) {
    if (form(x, x) != 0) return 1;
    for (std::size_t y = x + 1; y < ak.size(); ++y)
      if (f.add(form(x, y), form(y, x)) != 0) return 1;
  }
  return 0;
}

DecoratedPartition class_invariant(const SemilinearElement& g) {
  const Partition jt = jordan_type(phi_matrix(g));
  std::map<int, int> eps;
  for (int i = 1; i <= jt.largest(); i += 2)
    if (jt.multiplicity(i) > 0) eps[i] = epsilon_invariant(g, i);
  try {
    return validate_decorated(jt, eps);
  } catch (const std::invalid_argument& e) {
    throw CheckFailure(std::string("class invariant violates the classification: ") + e.what());
  }
}

SemilinearElement twisted_conjugate(const Matrix& x, const SemilinearElement& g) {
  const SemilinearElement xe(g.spec(), 0, x);
  return star_mul(star_mul(xe, g), star_inv(xe));
}

}  // namespace twistmap
