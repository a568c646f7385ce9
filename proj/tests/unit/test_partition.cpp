#include <algorithm>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "twistmap/partition.hpp"

using namespace twistmap;

namespace {

// Young diagram transposition by filling a 0/1 grid.
Partition transpose_by_grid(const Partition& p) {
  if (p.empty()) return p;
  std::vector<std::vector<int>> grid(p.length(), std::vector<int>(p.largest(), 0));
  for (int i = 0; i < p.length(); ++i)
    for (int j = 0; j < p.part(i + 1); ++j) grid[i][j] = 1;
  std::vector<int> cols;
  for (int j = 0; j < p.largest(); ++j) {
    int c = 0;
    for (int i = 0; i < p.length(); ++i) c += grid[i][j];
    cols.push_back(c);
  }
  return Partition(cols);
}

// Count partitions of n by the usual recurrence on the largest part.
long long count_partitions(int n, int max_part) {
  if (n == 0) return 1;
  long long total = 0;
  for (int k = std::min(n, max_part); k >= 1; --k) total += count_partitions(n - k, k);
  return total;
}

DecoratedPartition dp(const char* s) { return DecoratedPartition::parse(s); }

}  // namespace

TEST_CASE("partition parsing and validation") {
  CHECK(Partition::parse("5,4,3,3").parts() == std::vector<int>{5, 4, 3, 3});
  CHECK(Partition::parse("").empty());
  CHECK_THROWS_AS(Partition::parse("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(Partition::parse("3,0"), std::invalid_argument);
  CHECK_THROWS_AS(Partition::parse("3,x"), std::invalid_argument);
  CHECK(Partition::from_unsorted({1, 3, 0, 2}) == Partition::parse("3,2,1"));
  CHECK(Partition::parse("5,4,3,3,2,2,1,1").to_string() == "5,4,3,3,2,2,1,1");
}

TEST_CASE("dual") {
  CHECK(Partition::parse("3,1").dual() == Partition::parse("2,1,1"));
  CHECK(Partition::parse("1,1,1").dual() == Partition::parse("3"));
  CHECK(Partition::parse("3,1").dual_at(4) == 0);
  for (int n = 0; n <= 20; ++n) {
    for (const auto& p : partitions_of(n)) {
      CHECK(p.dual() == transpose_by_grid(p));
      CHECK(p.dual().dual() == p);
    }
  }
}

TEST_CASE("partitions_of enumerates each partition once") {
  for (int n = 0; n <= 15; ++n) {
    const auto ps = partitions_of(n);
    CHECK(static_cast<long long>(ps.size()) == count_partitions(n, n));
    CHECK(std::is_sorted(ps.rbegin(), ps.rend()));
    for (const auto& p : ps) CHECK(p.total() == n);
  }
  CHECK(partitions_of(4).front() == Partition::parse("4"));
}

TEST_CASE("multiplicity") {
  CHECK(Partition::parse("3,3,1").multiplicity(3) == 2);
  CHECK(Partition::parse("3,3,1").multiplicity(2) == 0);
  CHECK(Partition::parse("5,3,3,2,2,1,1,1,1,1,1").multiplicity(1) == 6);
  for (int n = 1; n <= 12; ++n) {
    for (const auto& p : partitions_of(n)) {
      for (int i = 1; i <= n + 1; ++i) CHECK(p.multiplicity(i) == p.dual_at(i) - p.dual_at(i + 1));
    }
  }
}

TEST_CASE("dominance") {
  CHECK(dominance_le(Partition::parse("2,2"), Partition::parse("3,1")));
  CHECK_FALSE(dominance_le(Partition::parse("3,1"), Partition::parse("2,2")));
  for (const auto& p : partitions_of(4)) CHECK(dominance_le(Partition::parse("1,1,1,1"), p));
  CHECK_THROWS_AS(dominance_le(Partition::parse("2"), Partition::parse("2,1")), std::invalid_argument);

  // The dual prefix sums give the same order, reversed.
  for (int n = 1; n <= 10; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& a : ps) {
      for (const auto& b : ps) {
        bool dual_form = true;
        for (int i = 1; i <= n; ++i) dual_form = dual_form && a.dual_prefix_sum(i) >= b.dual_prefix_sum(i);
        CHECK(dominance_le(a, b) == dual_form);
      }
    }
  }
}

TEST_CASE("dominance is a partial order") {
  for (int n = 1; n <= 10; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& a : ps) {
      CHECK(dominance_le(a, a));
      for (const auto& b : ps) {
        if (dominance_le(a, b) && dominance_le(b, a)) CHECK(a == b);
        if (!dominance_le(a, b)) continue;
        for (const auto& c : ps) {
          if (dominance_le(b, c)) CHECK(dominance_le(a, c));
        }
      }
    }
  }
}

TEST_CASE("equal dual prefix sums force the dual and multiplicity bounds") {
  for (int n = 1; n <= 9; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& c : ps) {
      for (const auto& d : ps) {
        if (!dominance_le(c, d)) continue;
        for (int i = 1; i <= n + 1; ++i) {
          if (c.dual_prefix_sum(i) != d.dual_prefix_sum(i)) continue;
          CHECK(c.dual_at(i) <= d.dual_at(i));
          if (c.multiplicity(i) > 0) CHECK(d.multiplicity(i) > 0);
        }
      }
    }
  }
}

TEST_CASE("decorated partitions: validation") {
  CHECK_NOTHROW(validate_decorated(Partition::parse("3,1"), {{3, 1}, {1, 1}}));
  CHECK_THROWS_AS(validate_decorated(Partition::parse("2,1"), {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_decorated(Partition::parse("3"), {{3, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_decorated(Partition::parse("2,2"), {{2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_decorated(Partition::parse("3,3"), {{3, 1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_decorated(Partition::parse("3,3"), {}), std::invalid_argument);
  CHECK_THROWS_AS(validate_decorated(Partition::parse("3,3"), {{3, 2}}), std::invalid_argument);

  const DecoratedPartition d = dp("3:1,3:1,2,2,1:0,1:0");
  CHECK(d.to_string() == "3:1,3:1,2,2,1:0,1:0");
  CHECK(d.eps_extended(3) == 1);
  CHECK(d.eps_extended(1) == 0);
  CHECK(d.eps_extended(2) == -1);
  CHECK(d.eps_extended(5) == -1);
}

TEST_CASE("decorated partitions: enumeration") {
  // Brute force: every partition with paired even parts, every eps choice on
  // odd values of even multiplicity.
  for (int n = 1; n <= 8; ++n) {
    std::size_t expected = 0;
    for (const auto& p : partitions_of(n)) {
      if (!p.even_parts_paired()) continue;
      std::size_t free_bits = 0;
      for (int v = 1; v <= n; v += 2) {
        if (p.multiplicity(v) > 0 && p.multiplicity(v) % 2 == 0) ++free_bits;
      }
      expected += std::size_t{1} << free_bits;
    }
    CHECK(decorated_partitions_of(n).size() == expected);
  }
}

TEST_CASE("decorated closure order") {
  CHECK(decorated_closure_le(dp("3:0,3:0"), dp("3:1,3:1")));
  CHECK_FALSE(decorated_closure_le(dp("3:1,3:1"), dp("3:0,3:0")));
  CHECK_THROWS_AS(decorated_closure_le(dp("1:1"), dp("1:1,1:1")), std::invalid_argument);
  for (int n = 1; n <= 8; ++n) {
    const auto ds = decorated_partitions_of(n);
    for (const auto& a : ds) {
      CHECK(decorated_closure_le(a, a));
      for (const auto& b : ds) {
        if (!decorated_closure_le(a, b)) continue;
        CHECK(dominance_le(a.shape(), b.shape()));
        if (decorated_closure_le(b, a)) CHECK(a == b);
        for (const auto& c : ds) {
          if (decorated_closure_le(b, c)) CHECK(decorated_closure_le(a, c));
        }
      }
    }
  }
}
