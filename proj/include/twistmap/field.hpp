#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twistmap {

/// Field elements are indices 0..size-1: the base-p digits of an index are the
/// coefficients of a polynomial in the generator. 0..p-1 is the prime field.
using Elem = std::uint16_t;

/// The finite field with p^degree elements, built from the first primitive
/// polynomial in lexicographic order. Table driven; size is capped at 1024.
class FiniteField {
 public:
  /// Cached instance; references stay valid for the program's lifetime.
  static const FiniteField& get(int p, int degree);

  int characteristic() const { return p_; }
  int degree() const { return degree_; }
  int size() const { return size_; }
  std::string name() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
  }
  /// Throws std::domain_error on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, long long k) const;
  /// Image of an integer under Z -> F.
  Elem from_int(long long v) const;
  /// A generator of the multiplicative group.
  Elem primitive() const { return size_ > 2 ? exp_[1] : Elem{1}; }
  /// Multiplicative order; 0 for the zero element.
  long long order(Elem a) const;

  /// Embedding of the subfield with p^sub_degree elements (sub_degree must
  /// divide degree), indexed by the subfield's own element encoding.
  std::vector<Elem> embedding_of(const FiniteField& sub) const;

  FiniteField(int p, int degree);

 private:
  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * size_ + b; }

  int p_;
  int degree_;
  int size_;
  std::vector<int> modulus_;  // monic, low degree first, length degree+1
  std::vector<Elem> add_;
  std::vector<Elem> neg_;
  std::vector<int> log_;
  std::vector<Elem> exp_;  // doubled so log sums index directly
};

/// Integer prime test, trial division.
bool is_prime(int v);

}  // namespace twistmap
