#include "doctest.h"
#include "twistmap/classmaps.hpp"
#include "twistmap/errors.hpp"
#include "twistmap/oracle.hpp"

using namespace twistmap;

namespace {

// |{M invertible : M^{-T} M unipotent}|, the degree-1 elements with unipotent square.
std::uint64_t count_unipotent_square(const FiniteField& f, int n) {
  std::uint64_t c = 0;
  for (const auto& m : enumerate_invertible(f, n, 1'000'000)) {
    Matrix u = m.inverse().transpose() * m;
    Matrix N = u - Matrix::identity(f, n);
    Matrix pw = N;
    for (int k = 1; k < n; ++k) pw = pw * N;
    c += pw == Matrix(f, n, n) ? 1 : 0;
  }
  return c;
}

}  // namespace

TEST_CASE("inventory sizes and orbit-stabilizer") {
  for (auto [p, e, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {2, 1, 3}}) {
    const FiniteField& f = FiniteField::get(p, e);
    const ClassInventory inv = enumerate_classes(n, f);
    CAPTURE(f.name());
    CHECK(inv.elements == count_unipotent_square(f, n));
    std::uint64_t total = 0;
    for (const auto& c : inv.classes) {
      std::uint64_t orbit_total = 0;
      for (const auto& o : c.rational_orbits) {
        CHECK(o.size * centralizer_order(o.representative) == inv.group_order);
        orbit_total += o.size;
      }
      CHECK(orbit_total == c.size);
      total += c.size;
      CHECK(inv.find(c.invariant) == &c);
    }
    CHECK(total == inv.elements);
  }
  const ClassInventory one = enumerate_classes(1, FiniteField::get(2, 1));
  CHECK(one.classes.size() == 1);
  CHECK(invariant_to_string(one.classes.front().invariant) == "1:1");
  const ClassInventory two = enumerate_classes(2, FiniteField::get(2, 1));
  CHECK(two.elements == 4);
  CHECK(two.classes.size() == 2);
  CHECK(two.find(DecoratedPartition::parse("1:1,1:1")) != nullptr);
  CHECK(two.find(DecoratedPartition::parse("1:0,1:0")) != nullptr);
  const ClassInventory odd = enumerate_classes(2, FiniteField::get(3, 1));
  CHECK(odd.classes.size() == 1);
  CHECK(invariant_to_string(odd.classes.front().invariant) == "1,1");
  CHECK_THROWS_AS(enumerate_classes(3, FiniteField::get(2, 1), OracleBounds{100, 100}), BoundExceeded);
}

TEST_CASE("invariant order") {
  CHECK(invariant_le(DecoratedPartition::parse("1:0,1:0"), DecoratedPartition::parse("1:1,1:1")));
  CHECK_FALSE(invariant_le(DecoratedPartition::parse("1:1,1:1"), DecoratedPartition::parse("1:0,1:0")));
  CHECK(invariant_le(Partition::parse("1,1,1"), Partition::parse("3")));
}

TEST_CASE("extend_scalars") {
  const FiniteField& f4 = FiniteField::get(2, 2);
  const ClassInventory inv = enumerate_classes(2, FiniteField::get(2, 1));
  for (const auto& c : inv.classes) {
    const SemilinearElement h = extend_scalars(c.representative, f4);
    CHECK(&h.field() == &f4);
    CHECK(h.matrix().to_ints() == c.representative.matrix().to_ints());
    CHECK(ClassInvariant(class_invariant(h)) == c.invariant);
  }
}

TEST_CASE("unique minimum of Sigma") {
  const ClassInventory inv = enumerate_classes(2, FiniteField::get(2, 1));
  const TheoremReport r = verify_unique_minimum(inv, Partition::parse("1,1"), {1, 2});
  CHECK(r.ok());
  CHECK(r.sigma.monotone);
  CHECK(invariant_to_string(r.expected) == "1:1,1:1");
  CHECK(r.minima.size() == 1);
  for (const auto& s : r.sigma.united) CHECK(invariant_le(r.expected, s));

  const ClassInventory inv3 = enumerate_classes(3, FiniteField::get(2, 1));
  const EllipticReport all = verify_all_elliptic(inv3, {1});
  CHECK(all.ok());
  CHECK(all.distinct_minima);
  CHECK(all.per_class.size() == model_partitions(3).size());
}

TEST_CASE("Sigma agrees across minimal-length members of a class") {
  const ClassInventory inv = enumerate_classes(3, FiniteField::get(2, 1));
  for (const auto& p : model_partitions(3)) {
    const auto minimal = min_length_in_class({elliptic_jordan_type(p)}, 3);
    const SigmaReport base = sigma_w_D(z_perm(p), inv, {1});
    CHECK(minimal.elements.count(z_perm(p)) == 1);
    for (const auto& w : minimal.elements) CHECK(sigma_w_D(w, inv, {1}).united == base.united);
  }
}
