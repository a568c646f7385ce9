#include <set>
#include <stdexcept>

#include "doctest.h"
#include "twistmap/classmaps.hpp"
#include "twistmap/weyl.hpp"

using namespace twistmap;

namespace {

// The three assignment families, written out independently of the library.
Permutation z_from_rules(const Partition& p) {
  int n = 0;
  for (int part : p.parts()) n += 2 * part - 1;
  std::vector<int> im(n + 1, 0);
  int P = 0;
  int Q = 0;
  for (int pr : p.parts()) {
    for (int i = 1; i <= pr - 1; ++i) im[Q + i] = P + i + 1;
    im[n - (P + pr - 1)] = P + 1;
    for (int i = 0; i <= pr - 2; ++i) im[n - (P + i)] = n - (Q + i);
    P += pr;
    Q += pr - 1;
  }
  return Permutation(std::vector<int>(im.begin() + 1, im.end()));
}

int inversions_naive(const Permutation& w) {
  int c = 0;
  for (int i = 1; i <= w.size(); ++i)
    for (int j = i + 1; j <= w.size(); ++j) c += w(i) > w(j) ? 1 : 0;
  return c;
}

Permutation P(const char* s) { return Permutation::parse(s); }

}  // namespace

TEST_CASE("permutations") {
  CHECK(P("3,2,1").to_string() == "3,2,1");
  CHECK_THROWS_AS(P("1,1"), std::invalid_argument);
  CHECK_THROWS_AS(P("1,3"), std::invalid_argument);
  const Permutation u = P("2,3,1");
  const Permutation v = P("2,1,3");
  CHECK((u * v)(1) == u(v(1)));
  CHECK((u * u.inverse()) == Permutation::identity(3));
  CHECK(u.cycle_type() == Partition::parse("3"));
}

TEST_CASE("length, longest and twist") {
  CHECK(length(Permutation::identity(4)) == 0);
  for (int n = 1; n <= 7; ++n) CHECK(length(longest(n)) == n * (n - 1) / 2);
  CHECK(length(P("3,2,1")) == 3);
  CHECK(longest(1) == Permutation::identity(1));
  CHECK(longest(2) == P("2,1"));
  CHECK(longest(3) == P("3,2,1"));
  CHECK(twist(Permutation::identity(3)) == Permutation::identity(3));
  CHECK(twist(longest(3)) == longest(3));
  CHECK(twist(P("2,1,3")) == P("1,3,2"));
  for (int n = 1; n <= 6; ++n) {
    for (const auto& w : all_permutations(n)) {
      CHECK(length(w) == inversions_naive(w));
      CHECK(twist(twist(w)) == w);
      CHECK(length(twist(w)) == length(w));
    }
  }
}

TEST_CASE("twisted class labels") {
  CHECK(twisted_class_label(P("2,1,3")).cycle_type == Partition::parse("3"));
  CHECK(twisted_class_label(P("3,2,1")).cycle_type == Partition::parse("1,1,1"));
  CHECK(twisted_class_label(Permutation::identity(2)).cycle_type == Partition::parse("2"));
  CHECK(is_elliptic({Partition::parse("3")}));
  CHECK_FALSE(is_elliptic({Partition::parse("2")}));
  CHECK(is_elliptic({Partition::parse("1,1,1")}));
}

TEST_CASE("twisted classes partition S_n and are separated by labels") {
  CHECK(twisted_class_of(Permutation::identity(1)).size() == 1);
  for (int n = 1; n <= 6; ++n) {
    std::set<Permutation> covered;
    std::set<Partition> labels;
    int orbits = 0;
    for (const auto& w : all_permutations(n)) {
      if (covered.count(w)) continue;
      const auto orbit = twisted_class_of(w);
      ++orbits;
      const Partition label = twisted_class_label(w).cycle_type;
      CHECK(labels.insert(label).second);
      for (const auto& v : orbit) {
        CHECK(twisted_class_label(v).cycle_type == label);
        CHECK(covered.insert(v).second);
      }
    }
    CHECK(orbits == static_cast<int>(partitions_of(n).size()));
    CHECK(covered.size() == all_permutations(n).size());
  }
  std::set<Permutation> expected;
  for (const auto& w : all_permutations(2)) {
    if (twisted_class_label(w).cycle_type == Partition::parse("2")) expected.insert(w);
  }
  CHECK(twisted_class_of(Permutation::identity(2)) == expected);
  CHECK_THROWS(twisted_class_of(Permutation::identity(8)));
}

TEST_CASE("z_perm") {
  CHECK(z_perm(Partition::parse("1")) == Permutation::identity(1));
  CHECK(z_perm(Partition::parse("2")) == P("2,1,3"));
  CHECK(z_perm(Partition::parse("1,1,1")) == P("3,2,1"));
  CHECK(odd_model_dimension(Partition::parse("3,1,1,1,1,1")) == 10);
  for (int n = 1; n <= 12; ++n) {
    for (const auto& p : model_partitions(n)) {
      const Permutation z = z_perm(p);
      CHECK(z == z_from_rules(p));
      CHECK(twisted_class_label(z).cycle_type == elliptic_jordan_type(p));
    }
  }
}

TEST_CASE("cycle display of the twisted square") {
  for (int n = 1; n <= 9; ++n) {
    for (const auto& p : model_partitions(n)) {
      const Permutation ww = longest(n) * z_perm(p);
      const auto cycles = expected_z_cycles(p);
      int covered = 0;
      for (std::size_t r = 0; r < cycles.size(); ++r) {
        const auto& c = cycles[r];
        CHECK(static_cast<int>(c.size()) == 2 * p.part(static_cast<int>(r) + 1) - 1);
        covered += static_cast<int>(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) CHECK(ww(c[k]) == c[(k + 1) % c.size()]);
      }
      CHECK(covered == n);
    }
  }
  // 1 -> n-1 -> 2 -> n-2 -> ... for p = (3,1), n = 6
  CHECK(expected_z_cycles(Partition::parse("3,1")).front() == std::vector<int>{1, 5, 2, 4, 6});
}

TEST_CASE("minimal length") {
  const auto three = min_length_in_class({Partition::parse("3")}, 3);
  CHECK(three.length == 1);
  CHECK(three.elements.count(P("2,1,3")) == 1);
  const auto ones = min_length_in_class({Partition::parse("1,1,1")}, 3);
  CHECK(ones.length == 3);
  CHECK(ones.elements.count(P("3,2,1")) == 1);
  const auto one = min_length_in_class({Partition::parse("1")}, 1);
  CHECK(one.length == 0);
  CHECK(one.elements.size() == 1);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : model_partitions(n)) {
      const TwistedClassLabel label{elliptic_jordan_type(p)};
      int best = 1 << 20;
      for (const auto& w : all_permutations(n)) {
        if (twisted_class_label(w) == label) best = std::min(best, inversions_naive(w));
      }
      CHECK(length(z_perm(p)) == best);
    }
  }
}

TEST_CASE("mu") {
  CHECK(mu_of_class({Partition::parse("2")}, 2) == 1);
  CHECK(mu_of_class({Partition::parse("1,1")}, 2) == 0);
  CHECK(mu_of_class({Partition::parse("2,1")}, 3) > 0);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& label : partitions_of(n)) {
      const int mu = mu_of_class({label}, n);
      CHECK((mu == 0) == label.all_parts_odd());
    }
  }
  CHECK(twist_stable_subsets(3).size() == 2);
  CHECK(twist_orbits_outside(4, {}) == 2);
}
