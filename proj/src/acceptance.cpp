#include "twistmap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <set>
#include <sstream>

#include "twistmap/classmaps.hpp"
#include "twistmap/oracle.hpp"
#include "twistmap/partition.hpp"
#include "twistmap/semilinear.hpp"
#include "twistmap/varieties.hpp"
#include "twistmap/weyl.hpp"

namespace twistmap {

namespace {

struct Outcome {
  bool pass = true;
  std::string failure;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      failure = what;
    }
  }
};

bool follows_cycles(const Permutation& u, const std::vector<std::vector<int>>& cycles) {
  int covered = 0;
  for (const auto& c : cycles) {
    covered += static_cast<int>(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (u(c[k]) != c[(k + 1) % c.size()]) return false;
    }
  }
  return covered == u.size();
}

void phi_prime_example(Outcome& o) {
  const Partition out = phi_prime(Partition::parse("5,4,3,3,2,2,1,1"));
  o.require(out == Partition::parse("5,3,3,2,2,1,1,1,1,1,1"), "got " + out.to_string());
  o.detail << "(5,4,3,3,2,2,1,1) -> (" << out.to_string() << ")";
}

void minimal_length(Outcome& o) {
  int checked = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : model_partitions(n)) {
      const Permutation z = z_perm(p);
      const TwistedClassLabel label = twisted_class_label(z);
      o.require(label.cycle_type == elliptic_jordan_type(p), "class label of z for " + p.to_string());
      const MinLengthResult best = min_length_in_class(label, n);
      o.require(length(z) == best.length && best.elements.count(z) == 1,
                "z for " + p.to_string() + " has length " + std::to_string(length(z)) + ", class minimum " +
                    std::to_string(best.length));
      o.require(follows_cycles(longest(n) * z, expected_z_cycles(p)), "cycle display differs for " + p.to_string());
      ++checked;
    }
  }
  o.detail << checked << " elliptic classes, n <= 6";
}

void length_dimension(Outcome& o) {
  int checked = 0;
  for (int n = 1; n <= 12; ++n) {
    for (const auto& p : model_partitions(n)) {
      const LengthDimension r = length_dimension_identity(p);
      o.require(r.holds(), "identity fails for " + p.to_string());
      ++checked;
    }
  }
  const LengthDimension printed = length_dimension_identity(Partition::parse("2"));
  o.require(!printed.printed_holds(), "printed variant unexpectedly holds for p=(2)");
  o.detail << checked << " partitions, printed variant gives " << printed.ell_printed << " != " << printed.d
           << " at p=(2)";
}

void standard_model(Outcome& o) {
  int checked = 0;
  for (int prime : {2, 3}) {
    const FiniteField& f = FiniteField::get(prime, 1);
    for (int n = 1; n <= 9; ++n) {
      for (const auto& p : model_partitions(n)) {
        const SemilinearElement g = build_standard_g(p, FieldSpec::linear(f));
        o.require(check_of(g).matrix() == standard_g_prime(p, f), "check differs from g' for " + p.to_string());
        o.require(jordan_type(phi_matrix(g)) == elliptic_jordan_type(p), "Jordan type for " + p.to_string());
        if (prime == 2) {
          o.require(class_invariant(g) == phi_char2_elliptic(p), "eps for " + p.to_string());
        } else {
          for (int t = 0; t < p.length(); ++t) {
            o.require(standard_form_value(g, p, t) != 0, "form value vanishes for " + p.to_string());
          }
        }
        ++checked;
      }
    }
  }
  o.detail << checked << " models over F2 and F3";
}

void bijection(Outcome& o) {
  int samples = 0;
  std::uint64_t points = 0;
  for (int prime : {2, 3}) {
    const FiniteField& f = FiniteField::get(prime, 1);
    for (int n = 1; n <= 3; ++n) {
      for (const auto& p : model_partitions(n)) {
        const SemilinearElement g0 = build_standard_g(p, FieldSpec::linear(f));
        std::vector<SemilinearElement> gs{g0};
        const auto gens = gl_generators(f, n);
        for (const auto& x : gens) gs.push_back(twisted_conjugate(x, g0));
        if (gens.size() >= 2) gs.push_back(twisted_conjugate(gens[0] * gens[1], g0));
        for (const auto& g : gs) {
          const auto xs = enumerate_X_g(g, p);
          const auto ss = enumerate_S_g(g, p);
          o.require(xs.size() == ss.size(), "|X_g| != |S_g| for " + p.to_string() + " over " + f.name());
          for (const auto& pair : xs) {
            const CanonicalVectors cv = flags_to_lines(g, pair, p);
            o.require(canonical_vectors_hold(g, pair, p, cv), "canonical vectors fail");
            o.require(lines_to_flags(g, cv.lines, p) == pair, "flags -> lines -> flags is not the identity");
          }
          for (const auto& lines : ss) {
            const FlagPair pair = lines_to_flags(g, lines, p);
            o.require(flags_to_lines(g, pair, p).lines.same_lines(lines, f), "lines -> flags -> lines is not the identity");
          }
          points += xs.size();
          ++samples;
        }
      }
    }
  }
  o.detail << samples << " elements, " << points << " points";
}

void oracle_theorem(Outcome& o, const std::function<void(const std::string&)>& log) {
  struct Run {
    int n;
    int degree;
    std::vector<int> ms;
  };
  for (const Run& run : {Run{2, 1, {1, 2}}, Run{2, 2, {1}}, Run{3, 1, {1}}}) {
    const ClassInventory inv = enumerate_classes(run.n, FiniteField::get(2, run.degree));
    const EllipticReport rep = verify_all_elliptic(inv, run.ms, {}, log);
    for (const auto& r : rep.per_class) {
      o.require(r.ok(), "n=" + std::to_string(run.n) + " p=" + r.p.to_string() + " minimum is not the expected " +
                            invariant_to_string(r.expected));
    }
    o.require(rep.distinct_minima, "equal minima for distinct elliptic classes at n=" + std::to_string(run.n));
    o.detail << "n=" << run.n << "/F" << inv.field.field->size() << ":";
    for (const auto& r : rep.per_class) {
      o.detail << " " << r.p.to_string() << "->" << (r.minima.empty() ? "-" : invariant_to_string(r.minima[0]));
    }
    o.detail << "; ";
  }
}

void transitivity(Outcome& o) {
  const FiniteField& f = FiniteField::get(2, 1);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& p : model_partitions(n)) {
      const TransitivityReport r = transitivity_check(build_standard_g(p, FieldSpec::linear(f)), p);
      o.require(r.transitive(), "p=" + p.to_string() + ": " + std::to_string(r.orbits) + " orbits on " +
                                    std::to_string(r.pairs) + " pairs");
      o.detail << p.to_string() << ":" << r.pairs << " pairs/" << r.orbits << " orbit; ";
    }
  }
}

void unitary(Outcome& o) {
  const UnitaryCount one = count_unitary_dl(1, 2, Partition::parse("1"), 1);
  o.require(one.x_tilde == 3 && one.x_tilde == one.x_flags * 3 && one.free_action, "n=1 count or free action");
  o.detail << "n=1: " << one.x_tilde << " = " << one.x_flags << "*3; ";
  for (int m : {1, 2}) {
    const UnitaryCount u = count_unitary_dl(2, 2, Partition::parse("1,1"), m);
    o.require(u.x_flags == u.x_lines, "flag and line counts differ over F" + std::to_string(u.field_size));
    o.require(u.free_action, "action not free over F" + std::to_string(u.field_size));
    if (m == 1) {
      o.require(u.fibers.size() == 1 && u.fibers.begin()->first == 9 && u.product_formula(),
                "fibers over F4 are not all of size 9");
    }
    o.detail << "F" << u.field_size << ": X=" << u.x_flags << " lines=" << u.x_lines << " fibers";
    for (const auto& [size, count] : u.fibers) o.detail << " " << count << "x" << size;
    o.detail << "; ";
  }
}

void psi(Outcome& o) {
  int checked = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& gamma : partitions_of(n)) {
      if (!gamma.even_parts_paired()) continue;
      const PsiPrimeResult r = psi_prime(gamma);
      o.require(phi_prime(r.label.cycle_type) == gamma, "phi' psi' differs at " + gamma.to_string());
      ++checked;
    }
  }
  o.detail << checked << " targets, unique minimum each";
}

void partition_orders(Outcome& o) {
  for (int n = 0; n <= 20; ++n) {
    for (const auto& p : partitions_of(n)) o.require(p.dual().dual() == p, "dual not an involution at " + p.to_string());
  }
  for (int n = 1; n <= 10; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& a : ps) {
      o.require(dominance_le(a, a), "reflexivity");
      for (const auto& b : ps) {
        if (dominance_le(a, b) && dominance_le(b, a)) o.require(a == b, "antisymmetry");
        if (!dominance_le(a, b)) continue;
        for (const auto& c : ps) {
          if (dominance_le(b, c)) o.require(dominance_le(a, c), "transitivity");
        }
      }
    }
  }
  for (int n = 1; n <= 9; ++n) {
    const auto ps = partitions_of(n);
    for (const auto& c : ps) {
      for (const auto& d : ps) {
        if (!dominance_le(c, d)) continue;
        for (int i = 1; i <= n + 1; ++i) {
          if (c.dual_prefix_sum(i) != d.dual_prefix_sum(i)) continue;
          o.require(c.dual_at(i) <= d.dual_at(i), "dual bound at " + c.to_string() + " <= " + d.to_string());
          if (c.multiplicity(i) > 0) o.require(d.multiplicity(i) > 0, "multiplicity at " + c.to_string());
        }
      }
    }
  }
  for (int n = 1; n <= 8; ++n) {
    const auto ds = decorated_partitions_of(n);
    for (const auto& a : ds) {
      o.require(decorated_closure_le(a, a), "decorated reflexivity");
      for (const auto& b : ds) {
        if (!decorated_closure_le(a, b)) continue;
        if (decorated_closure_le(b, a)) o.require(a == b, "decorated antisymmetry");
        for (const auto& c : ds) {
          if (decorated_closure_le(b, c)) o.require(decorated_closure_le(a, c), "decorated transitivity");
        }
      }
    }
  }
  o.detail << "dual n<=20, dominance n<=10, dual-prefix lemma n<=9, decorated n<=8";
}

constexpr std::uint64_t kE6Checksum = 0x6da6f63e7a76df9eULL;
constexpr std::uint64_t kD4Checksum = 0x46e00abd859bc439ULL;

void tables(Outcome& o) {
  const auto& e6 = exceptional_phi_table(ExceptionalCase::E6_p2);
  const auto& d4 = exceptional_phi_table(ExceptionalCase::D4_p3);
  std::set<std::string> e6_targets;
  std::set<std::string> e6_dist;
  for (const auto& e : e6) {
    e6_targets.insert(e.target_name);
    if (e.distinguished) e6_dist.insert(e.target_name);
  }
  std::set<std::string> d4_targets;
  int d4_dist = 0;
  for (const auto& e : d4) {
    d4_targets.insert(e.target_name);
    d4_dist += e.distinguished ? 1 : 0;
  }
  o.require(e6.size() == 25, "E6 source count");
  o.require(e6_targets.size() == 17 && exceptional_targets(ExceptionalCase::E6_p2).size() == 17, "E6 target count");
  o.require(e6_dist.size() == 4, "E6 dist count");
  o.require(d4_dist == 2, "D4 dist count");
  o.require(d4_targets.size() == 5 && exceptional_targets(ExceptionalCase::D4_p3).size() == 5, "D4 target count");
  o.require(table_checksum(ExceptionalCase::E6_p2) == kE6Checksum, "E6 checksum");
  o.require(table_checksum(ExceptionalCase::D4_p3) == kD4Checksum, "D4 checksum");
  o.require(exceptional_lookup(ExceptionalCase::E6_p2, "E6(a_1)!").target_name == "γ_4", "E6(a1) lookup");
  o.require(exceptional_lookup(ExceptionalCase::D4_p3, "F4!").target_name == "γ_2", "F4 lookup");
  for (const auto* table : {&e6, &d4}) {
    std::set<std::string> elliptic_images;
    for (const auto& e : *table) {
      if (e.elliptic()) o.require(elliptic_images.insert(e.target_name).second, "two elliptic classes share a target");
    }
    for (const auto& e : *table) {
      if (e.distinguished) o.require(elliptic_images.count(e.target_name) == 1, "dist target without elliptic preimage");
    }
  }
  o.detail << "E6 " << e6.size() << " classes -> " << e6_targets.size() << " targets, " << e6_dist.size()
           << " dist; D4 " << d4.size() << " classes -> " << d4_targets.size() << " targets, " << d4_dist << " dist";
}

const char* const kTitles[] = {
    "",
    "phi' example",
    "minimal length of z in its twisted class",
    "length equals centralizer dimension",
    "standard binomial model",
    "flag and line models agree",
    "oracle: unique minimum of Sigma (char 2)",
    "transitivity on pairs",
    "unitary point counts",
    "psi' sections phi'",
    "partition order suites",
    "exceptional tables",
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 11; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = id;
    r.title = kTitles[id];
    const double spent = std::chrono::duration<double>(clock::now() - start).count();
    if (spent > options.budget_seconds) {
      r.skipped = true;
      r.detail = "skipped: budget exhausted";
      out.push_back(r);
      continue;
    }
    const auto t0 = clock::now();
    Outcome o;
    try {
      switch (id) {
        case 1: phi_prime_example(o); break;
        case 2: minimal_length(o); break;
        case 3: length_dimension(o); break;
        case 4: standard_model(o); break;
        case 5: bijection(o); break;
        case 6: oracle_theorem(o, options.log); break;
        case 7: transitivity(o); break;
        case 8: unitary(o); break;
        case 9: psi(o); break;
        case 10: partition_orders(o); break;
        case 11: tables(o); break;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    r.pass = o.pass;
    r.detail = o.pass ? o.detail.str() : o.failure;
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    if (options.log) options.log(format_result(r));
    out.push_back(r);
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.title << " (" << r.detail << ")";
  s.precision(2);
  s << std::fixed << " [" << r.seconds << "s]";
  return s.str();
}

}  // namespace twistmap
