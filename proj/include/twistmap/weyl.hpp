#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "twistmap/partition.hpp"

namespace twistmap {

/// An element of S_n in one-line notation; images are 1-based.
/// Composition follows (u * v)(j) = u(v(j)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless images is a bijection of [1,n].
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Parses "3,2,1".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int j) const { return images_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  /// Cycles listed from their smallest element, in increasing order of that element.
  std::vector<std::vector<int>> cycles() const;
  Partition cycle_type() const;
  std::string to_string() const;

  friend Permutation operator*(const Permutation& u, const Permutation& v);
  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Inversion count, which is the Coxeter length in S_n.
int length(const Permutation& w);

/// The reversal j -> n+1-j.
Permutation longest(int n);

/// The twist w -> w0 w w0 induced by the non-identity component.
Permutation twist(const Permutation& w);

/// Label of the twisted class of w: the cycle type of w * w0.
struct TwistedClassLabel {
  Partition cycle_type;
  auto operator<=>(const TwistedClassLabel&) const = default;
  bool operator==(const TwistedClassLabel&) const = default;
};

TwistedClassLabel twisted_class_label(const Permutation& w);

/// Requires weakly decreasing positive parts with 2 * sum = n + length.
/// Returns n, or throws std::invalid_argument.
int odd_model_dimension(const Partition& p);

/// The minimal-length representative attached to p; n = 2*|p| - len(p).
Permutation z_perm(const Partition& p);

/// The cycles of w0 * z_perm(p) written out explicitly from p, one per part,
/// each starting at the element the closed-form description starts from.
std::vector<std::vector<int>> expected_z_cycles(const Partition& p);

bool is_elliptic(const TwistedClassLabel& label);

/// Limits for exhaustive searches over S_n.
struct WeylBounds {
  int max_n = 7;
};

/// The orbit of w under w -> y^{-1} w twist(y).
std::set<Permutation> twisted_class_of(const Permutation& w, const WeylBounds& bounds = {});

/// Every element of S_n, in lexicographic order.
std::vector<Permutation> all_permutations(int n, const WeylBounds& bounds = {});

struct MinLengthResult {
  int length = 0;
  std::set<Permutation> elements;
};

/// Minimal length over the class with this label and the set of elements attaining it.
MinLengthResult min_length_in_class(const TwistedClassLabel& label, int n, const WeylBounds& bounds = {});

/// Subsets J of {1..n-1} (simple reflection s_i <-> i) stable under i -> n-i.
std::vector<std::vector<int>> twist_stable_subsets(int n);

/// Number of orbits of i -> n-i on the complement of J in {1..n-1}.
int twist_orbits_outside(int n, const std::vector<int>& J);

/// w lies in the standard parabolic subgroup generated by J.
bool in_parabolic(const Permutation& w, const std::vector<int>& J);

/// w is elliptic for the twisted action of W_J: its W_J-orbit avoids every
/// proper twist-stable parabolic W_J' with J' strictly inside J.
bool is_elliptic_in_parabolic(const Permutation& w, const std::vector<int>& J);

/// Smallest number of twist-orbits on S - J over stable J such that the class
/// meets W_J in an element elliptic for W_J. Zero exactly for elliptic classes.
int mu_of_class(const TwistedClassLabel& label, int n, const WeylBounds& bounds = {});

}  // namespace twistmap
