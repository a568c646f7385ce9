#include <set>
#include <stdexcept>

#include "doctest.h"
#include "twistmap/classmaps.hpp"
#include "twistmap/errors.hpp"

using namespace twistmap;

namespace {

Partition P(const char* s) { return Partition::parse(s); }

std::vector<Partition> preimage_naive(const Partition& gamma) {
  std::vector<Partition> out;
  for (const auto& l : partitions_of(gamma.total())) {
    if (phi_prime(l) == gamma) out.push_back(l);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

TEST_CASE("phi_prime") {
  CHECK(phi_prime(P("5,4,3,3,2,2,1,1")) == P("5,3,3,2,2,1,1,1,1,1,1"));
  CHECK(phi_prime(P("2")) == P("1,1"));
  CHECK(phi_prime(P("1")) == P("1"));
  CHECK(phi_prime(P("")) == P(""));
  CHECK(fiber_phi_prime(P("2,2,1")) == std::vector<Partition>{P("4,1")});
  CHECK(fiber_phi_prime(P("1,1")) == std::vector<Partition>{P("2"), P("1,1")});
  CHECK(fiber_phi_prime(P("2,1")).empty());
  for (int n = 0; n <= 12; ++n) {
    std::set<Partition> image;
    for (const auto& l : partitions_of(n)) {
      const Partition g = phi_prime(l);
      CHECK(g.total() == n);
      CHECK(g.even_parts_paired());
      image.insert(g);
    }
    for (const auto& g : partitions_of(n)) {
      const auto fiber = fiber_phi_prime(g);
      CHECK(fiber == preimage_naive(g));
      CHECK(image.count(g) == (g.even_parts_paired() ? 1u : 0u));
      // Odd-part partitions are fixed, so phi' restricted to them is injective.
      if (g.all_parts_odd()) CHECK(phi_prime(g) == g);
    }
  }
}

TEST_CASE("psi_prime") {
  CHECK(psi_prime(P("1,1")).label.cycle_type == P("1,1"));
  CHECK(psi_prime(P("2,2")).label.cycle_type == P("4"));
  CHECK(psi_prime(P("1,1")).mu == 0);
  CHECK(psi_prime(P("2,2")).fiber.size() == 1);
  CHECK(fiber_phi_prime(P("1,1,1,1")) == std::vector<Partition>{P("2,2"), P("2,1,1"), P("1,1,1,1")});
  CHECK(psi_prime(P("1,1,1,1")).label.cycle_type == P("1,1,1,1"));
  CHECK(psi_prime(P("3")).label.cycle_type == P("3"));
  CHECK_THROWS_AS(psi_prime(P("2,1")), std::invalid_argument);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& gamma : partitions_of(n)) {
      if (!gamma.even_parts_paired()) continue;
      const PsiPrimeResult r = psi_prime(gamma);
      CHECK(phi_prime(r.label.cycle_type) == gamma);
      int best = 1 << 20;
      int at_best = 0;
      for (const auto& l : preimage_naive(gamma)) {
        const int mu = mu_of_class({l}, n);
        if (mu < best) {
          best = mu;
          at_best = 0;
        }
        if (mu == best) ++at_best;
      }
      CHECK(r.mu == best);
      CHECK(at_best == 1);
      CHECK(r.fiber.size() == preimage_naive(gamma).size());
    }
  }
}

TEST_CASE("elliptic images") {
  CHECK(elliptic_jordan_type(P("2,1")) == P("3,1"));
  CHECK(phi_char2_elliptic(P("2,1")).to_string() == "3:1,1:1");
  CHECK(phi_char2_elliptic(P("1,1")).to_string() == "1:1,1:1");
  CHECK(model_partitions(1) == std::vector<Partition>{P("1")});
  CHECK(model_partitions(3).size() == 2);
  for (int n = 1; n <= 10; ++n) {
    std::set<DecoratedPartition> images;
    for (const auto& p : partitions_of(n)) {
      const auto d = phi_char2_elliptic(p);
      CHECK(images.insert(d).second);
      CHECK(d.shape() == elliptic_jordan_type(p));
      CHECK(d.shape().all_parts_odd());
    }
  }
  for (int n = 1; n <= 12; ++n) {
    for (const auto& p : model_partitions(n)) CHECK(2 * p.total() - p.length() == n);
  }
}

TEST_CASE("length equals dimension") {
  const LengthDimension two = length_dimension_identity(P("2"));
  CHECK(two.ell == 1);
  CHECK(two.inversions == 1);
  CHECK(two.d == 1);
  CHECK(two.holds());
  CHECK(two.ell_printed == 2);
  CHECK_FALSE(two.printed_holds());
  const LengthDimension ones = length_dimension_identity(P("1,1,1"));
  CHECK(ones.ell == 3);
  CHECK(ones.d == 3);
  const LengthDimension three = length_dimension_identity(P("3"));
  CHECK(three.ell == 2);
  CHECK(three.d == 2);
  for (int n = 1; n <= 12; ++n) {
    for (const auto& p : model_partitions(n)) CHECK(length_dimension_identity(p).holds());
  }
}

TEST_CASE("exceptional tables") {
  const auto& e6 = exceptional_phi_table(ExceptionalCase::E6_p2);
  const auto& d4 = exceptional_phi_table(ExceptionalCase::D4_p3);
  CHECK(e6.size() == 25);
  CHECK(d4.size() == 7);
  CHECK(exceptional_targets(ExceptionalCase::E6_p2).size() == 17);
  CHECK(exceptional_targets(ExceptionalCase::D4_p3).size() == 5);
  for (auto c : {ExceptionalCase::E6_p2, ExceptionalCase::D4_p3}) {
    std::string text;
    std::set<std::string> from_rows;
    for (const auto& e : exceptional_phi_table(c)) {
      text += e.class_name + "|" + e.target_name + (e.distinguished ? "|dist\n" : "|\n");
      from_rows.insert(e.target_name);
    }
    CHECK(table_checksum(c) == fnv1a(text));
    const auto targets = exceptional_targets(c);
    CHECK(std::set<std::string>(targets.begin(), targets.end()) == from_rows);
  }
  CHECK(table_checksum(ExceptionalCase::E6_p2) == 0x6da6f63e7a76df9eULL);
  CHECK(table_checksum(ExceptionalCase::D4_p3) == 0x46e00abd859bc439ULL);
  int dist = 0;
  for (const auto& e : e6) dist += e.distinguished ? 1 : 0;
  CHECK(dist == 4);
  int d4_dist = 0;
  for (const auto& e : d4) d4_dist += e.distinguished ? 1 : 0;
  CHECK(d4_dist == 2);
  CHECK(exceptional_lookup(ExceptionalCase::E6_p2, "E6(a_1)!").target_name == "γ_4");
  CHECK(exceptional_lookup(ExceptionalCase::E6_p2, "E_6(a_1)!").distinguished);
  CHECK(exceptional_lookup(ExceptionalCase::D4_p3, "F4!").target_name == "γ_2");
  CHECK(exceptional_lookup(ExceptionalCase::D4_p3, "~A_2").target_name == "γ_14");
  CHECK(exceptional_lookup(ExceptionalCase::D4_p3, "tA2").target_name == "γ_14");
  CHECK_THROWS_AS(exceptional_lookup(ExceptionalCase::D4_p3, "G2"), std::out_of_range);
  CHECK(parse_exceptional_case("e6") == ExceptionalCase::E6_p2);
  CHECK(parse_exceptional_case("d4_p3") == ExceptionalCase::D4_p3);
}
