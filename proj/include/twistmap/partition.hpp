#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace twistmap {

/// A weakly decreasing sequence of positive integers. Stored without
/// trailing zeros; dual(i) returns 0 beyond the largest part.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);

  /// Sorts and drops zeros before validating.
  static Partition from_unsorted(std::vector<int> parts);
  /// Parses "5,4,3,3". The empty string is the empty partition.
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return total_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  bool empty() const { return parts_.empty(); }
  /// 1-based; 0 past the end.
  int part(int i) const;

  /// Number of parts equal to i.
  int multiplicity(int i) const;
  /// c*_i = number of parts >= i (0 for i past the largest part).
  int dual_at(int i) const;
  Partition dual() const;
  /// Sum of the first i parts.
  int prefix_sum(int i) const;
  /// Sum of the first i parts of the dual.
  int dual_prefix_sum(int i) const;

  bool all_parts_odd() const;
  /// True when every even part value occurs an even number of times.
  bool even_parts_paired() const;

  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// All partitions of n in reverse lexicographic order, starting from (n).
std::vector<Partition> partitions_of(int n);

/// Prefix sums of a never exceed those of b. Throws on different totals.
bool dominance_le(const Partition& a, const Partition& b);

/// A unipotent class label in characteristic 2: the Jordan type c together
/// with a bit for each odd part value. Even part values must have even
/// multiplicity and eps(i) = 1 is forced when the multiplicity of i is odd.
class DecoratedPartition {
 public:
  DecoratedPartition() = default;

  const Partition& shape() const { return shape_; }
  const std::map<int, int>& eps() const { return eps_; }
  /// Extended value: -1 if i is even or not a part, otherwise eps(i).
  int eps_extended(int i) const;

  /// Prints "3:1,3:1,1:0"; even parts carry no eps.
  std::string to_string() const;
  static DecoratedPartition parse(std::string_view text);

  auto operator<=>(const DecoratedPartition&) const = default;
  bool operator==(const DecoratedPartition&) const = default;

 private:
  friend DecoratedPartition validate_decorated(const Partition& c, const std::map<int, int>& eps);
  Partition shape_;
  std::map<int, int> eps_;
};

/// Throws std::invalid_argument on an even part with odd multiplicity, an eps
/// value on an even or absent part, a missing eps on an odd part, a value
/// outside {0,1}, or eps(i) = 0 where the multiplicity of i is odd.
DecoratedPartition validate_decorated(const Partition& c, const std::map<int, int>& eps);

/// Closure order on char-2 classes: a lies in the closure of b.
/// Throws on different totals.
bool decorated_closure_le(const DecoratedPartition& a, const DecoratedPartition& b);

/// Every valid decorated partition of n.
std::vector<DecoratedPartition> decorated_partitions_of(int n);

}  // namespace twistmap
