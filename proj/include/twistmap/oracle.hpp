#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "twistmap/partition.hpp"
#include "twistmap/semilinear.hpp"
#include "twistmap/weyl.hpp"

namespace twistmap {

/// Decorated partition in characteristic 2, Jordan type of g^{*2} otherwise.
using ClassInvariant = std::variant<DecoratedPartition, Partition>;

std::string invariant_to_string(const ClassInvariant& inv);
/// Closure order on invariants of the same kind: decorated order in
/// characteristic 2 and dominance otherwise.
bool invariant_le(const ClassInvariant& a, const ClassInvariant& b);

struct OracleBounds {
  std::uint64_t max_matrices = 10'000'000;
  std::uint64_t max_flags = 1'000'000;
};

struct RationalOrbit {
  SemilinearElement representative;
  std::uint64_t size = 0;
};

struct InventoryClass {
  ClassInvariant invariant;
  SemilinearElement representative;
  std::uint64_t size = 0;
  /// Rational orbits sharing this invariant, in discovery order.
  std::vector<RationalOrbit> rational_orbits;
};

/// Degree-1 elements with unipotent g^{*2} over a field with q = 1, grouped
/// by twisted conjugation orbit and keyed by invariant.
struct ClassInventory {
  FieldSpec field;
  int n = 0;
  std::uint64_t group_order = 0;
  std::uint64_t elements = 0;
  std::vector<InventoryClass> classes;

  const InventoryClass* find(const ClassInvariant& inv) const;
};

/// Throws BoundExceeded when |F|^(n*n) exceeds the bound.
ClassInventory enumerate_classes(int n, const FiniteField& f, const OracleBounds& bounds = {});

/// |{x in GL_n : x g x^{*(-1)} = g}|.
std::uint64_t centralizer_order(const SemilinearElement& g, const OracleBounds& bounds = {});

/// Copy of g over an extension of its field.
SemilinearElement extend_scalars(const SemilinearElement& g, const FiniteField& target);

struct SigmaLevel {
  int m = 0;
  std::string field;
  std::set<ClassInvariant> members;
};

struct SigmaReport {
  Permutation w;
  std::vector<SigmaLevel> levels;
  std::set<ClassInvariant> united;
  /// Invariants absent at the first level but present later.
  std::set<ClassInvariant> late;
  bool monotone = true;
};

/// Sigma_{w,D} by exhaustion over F_{p^m} for each m: an invariant belongs
/// when some flag V over that field has (V, g.V) in relative position w.
/// The optional log receives one line per level.
SigmaReport sigma_w_D(const Permutation& w, const ClassInventory& inventory, const std::vector<int>& ms,
                      const OracleBounds& bounds = {},
                      const std::function<void(const std::string&)>& log = nullptr);

struct TheoremReport {
  Partition p;
  SigmaReport sigma;
  std::vector<ClassInvariant> minima;
  ClassInvariant expected;
  bool unique_minimum = false;
  bool matches_expected = false;
  /// The expected invariant lies below every member of Sigma.
  bool closure_below_all = false;
  bool ok() const { return unique_minimum && matches_expected && closure_below_all; }
};

/// Checks Sigma_{z_perm(p),D} for a unique minimum equal to the elliptic
/// image of p.
TheoremReport verify_unique_minimum(const ClassInventory& inventory, const Partition& p, const std::vector<int>& ms,
                                 const OracleBounds& bounds = {},
                                 const std::function<void(const std::string&)>& log = nullptr);

struct EllipticReport {
  std::vector<TheoremReport> per_class;
  bool distinct_minima = false;
  bool ok() const;
};

/// Runs verify_unique_minimum for every model partition of the inventory's n and
/// checks that distinct classes have distinct minima.
EllipticReport verify_all_elliptic(const ClassInventory& inventory, const std::vector<int>& ms,
                                   const OracleBounds& bounds = {},
                                   const std::function<void(const std::string&)>& log = nullptr);

}  // namespace twistmap
