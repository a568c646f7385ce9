#pragma once

#include <map>
#include <string>

#include "twistmap/linalg.hpp"
#include "twistmap/partition.hpp"

namespace twistmap {

/// Working field plus the Frobenius parameter q: q == 1 makes every twist
/// trivial, otherwise q is a power of the characteristic whose exponent
/// divides the field degree.
struct FieldSpec {
  const FiniteField* field = nullptr;
  int q = 1;

  static FieldSpec linear(const FiniteField& f) { return {&f, 1}; }
  /// Throws std::invalid_argument when q is not a power of p inside the field.
  static FieldSpec twisted(const FiniteField& f, int q);

  /// Exponent k with x^(q^t) = x^(p^k) on the working field.
  int frobenius_shift(int t) const;
  Elem frob(Elem x, int t) const;
  Vec frob(const Vec& x, int t) const;
  Matrix frob(const Matrix& m, int t) const;
  std::string header() const { return field->name(); }
};

/// An element of G^j: x -> M F^j(x), where F raises coordinates to the q-th
/// power. Even j maps V to V, odd j maps V to V*; both are written in the
/// standard basis and its dual basis.
class SemilinearElement {
 public:
  /// Throws std::invalid_argument unless matrix is square and invertible.
  SemilinearElement(FieldSpec spec, int degree, Matrix matrix);

  static SemilinearElement identity(FieldSpec spec, int n);

  const FieldSpec& spec() const { return spec_; }
  const FiniteField& field() const { return *spec_.field; }
  int degree() const { return degree_; }
  int dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  bool maps_to_dual() const { return degree_ % 2 != 0; }

  Vec apply(const Vec& x) const;
  /// Image of a subspace; semilinear bijections carry subspaces to subspaces.
  Subspace image(const Subspace& s) const;
  /// Ordinary composition (this after other).
  SemilinearElement compose(const SemilinearElement& other) const;
  /// Ordinary inverse, of degree -j.
  SemilinearElement inverse() const;

  friend bool operator==(const SemilinearElement& a, const SemilinearElement& b) {
    return a.degree_ == b.degree_ && a.spec_.q == b.spec_.q && a.matrix_ == b.matrix_;
  }

 private:
  FieldSpec spec_;
  int degree_;
  Matrix matrix_;
};

/// The pairing (x, xi) = sum x_i xi_i between V and V*.
Elem pairing(const FiniteField& f, const Vec& x, const Vec& xi);

/// The element with (check(g) xi, g x) = (x, xi)^(q^j) for odd j and
/// (g x, check(g) xi) = (x, xi)^(q^j) for even j.
SemilinearElement check_of(const SemilinearElement& g);

/// g * h = g h when deg h is even and check(g) h when it is odd.
SemilinearElement star_mul(const SemilinearElement& g, const SemilinearElement& h);
SemilinearElement star_inv(const SemilinearElement& g);
/// Iterated star product of a degree-1 element; negative j uses star_inv.
SemilinearElement star_pow(const SemilinearElement& g, int j);

/// Memoised star powers of one degree-1 element.
class StarPowers {
 public:
  explicit StarPowers(SemilinearElement g);
  const SemilinearElement& operator()(int j);
  const SemilinearElement& base() const { return g_; }

 private:
  SemilinearElement g_;
  std::map<int, SemilinearElement> cache_;
};

/// g^{*2} as a linear map of V.
Matrix phi_matrix(const SemilinearElement& g);

/// Binomial coefficient over the integers; zero when b < 0, b > a or a < 0.
long long binom(long long a, long long b);

/// Integer pairing matrix of the binomial standard model for p (block
/// diagonal, one block of size 2 p_r - 1 per part).
std::vector<std::vector<long long>> standard_pairing(const Partition& p);

/// Basis index of z^r_i in the standard model (r and i zero-based).
int standard_index(const Partition& p, int r, int i);

/// The degree-1 element g with g(z^r_i) = z'^r_i; requires q == 1 and
/// 2|p| = n + len(p). Throws CheckFailure if the internal checks on the model
/// (check(g) = g', Jordan type of g^{*2}) fail.
SemilinearElement build_standard_g(const Partition& p, FieldSpec spec);

/// The map g' of the standard model as a matrix V* -> V.
Matrix standard_g_prime(const Partition& p, const FiniteField& f);

/// Jordan type of a unipotent matrix; throws std::domain_error otherwise.
Partition jordan_type(const Matrix& u);
bool is_unipotent(const Matrix& u);

/// Value of ((phi - 1)^(p_t - 1) x, g (phi - 1)^(p_t - 1) x) at x = z^t_0 in
/// the standard model, t counted from 0; it is nonzero for every part.
Elem standard_form_value(const SemilinearElement& g, const Partition& p, int t);

/// The 0/1 invariant of a degree-1 element in characteristic 2 with unipotent
/// g^{*2}, decided by the quadratic form on ker N^i. Throws
/// std::invalid_argument when i is even, not a part, or the characteristic is odd.
int epsilon_invariant(const SemilinearElement& g, int i);

/// (Jordan type of g^{*2}, epsilon on odd parts). Characteristic 2, q == 1.
DecoratedPartition class_invariant(const SemilinearElement& g);

/// x * g * x^{*(-1)} for x in G^0 given by an invertible matrix.
SemilinearElement twisted_conjugate(const Matrix& x, const SemilinearElement& g);

}  // namespace twistmap
