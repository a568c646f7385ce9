#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twistmap/partition.hpp"
#include "twistmap/weyl.hpp"

namespace twistmap {

/// Each odd part 2a+1 is kept and each even part 2a becomes a,a.
Partition phi_prime(const Partition& lambda);

/// Every lambda with phi_prime(lambda) == gamma, in decreasing order. Empty
/// when some even part of gamma has odd multiplicity.
std::vector<Partition> fiber_phi_prime(const Partition& gamma);

struct PsiPrimeResult {
  TwistedClassLabel label;
  int mu = 0;
  /// (lambda, mu) for every member of the fiber.
  std::vector<std::pair<Partition, int>> fiber;
};

/// The fiber member of minimal mu. Throws std::invalid_argument on an invalid
/// gamma and CheckFailure when the minimum is not attained uniquely.
PsiPrimeResult psi_prime(const Partition& gamma, const WeylBounds& bounds = {});

/// Parts 2p_i - 1 with eps equal to 1 on every part value.
DecoratedPartition phi_char2_elliptic(const Partition& p);

/// Odd-parts partition (2p_1 - 1, ..., 2p_s - 1).
Partition elliptic_jordan_type(const Partition& p);

struct LengthDimension {
  int ell = 0;          // p_1 + 3p_2 + ... + (2s-1)p_s - (s^2 + s)/2
  int ell_printed = 0;  // same sum with - (s^2 - s)/2
  int inversions = 0;   // length(z_perm(p))
  long long twice_d = 0;
  int d = 0;
  bool holds() const { return twice_d % 2 == 0 && ell == inversions && ell == d; }
  bool printed_holds() const { return twice_d % 2 == 0 && ell_printed == inversions && ell_printed == d; }
};

/// Throws std::invalid_argument for p outside the z_perm domain and
/// CheckFailure if 2d is odd.
LengthDimension length_dimension_identity(const Partition& p);

/// All weakly decreasing p with 2|p| - len(p) = n.
std::vector<Partition> model_partitions(int n);

struct PhiTableEntry {
  std::string class_name;
  std::string target_name;
  bool distinguished = false;
  bool elliptic() const { return !class_name.empty() && class_name.back() == '!'; }
};

enum class ExceptionalCase { E6_p2, D4_p3 };

const std::vector<PhiTableEntry>& exceptional_phi_table(ExceptionalCase c);
/// Targets in the order the classes are listed by codimension.
std::vector<std::string> exceptional_targets(ExceptionalCase c);
/// FNV-1a 64 over "class|target|dist" lines.
std::uint64_t table_checksum(ExceptionalCase c);
/// Looks up a class ignoring '_' and spaces; "~A" and "tA" stand for the tilde.
/// Throws std::out_of_range on an unknown name.
const PhiTableEntry& exceptional_lookup(ExceptionalCase c, std::string_view class_name);
ExceptionalCase parse_exceptional_case(std::string_view name);

}  // namespace twistmap
