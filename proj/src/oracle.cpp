#include "twistmap/oracle.hpp"

#include <atomic>
#include <deque>
#include <stdexcept>

#include "twistmap/classmaps.hpp"
#include "twistmap/errors.hpp"
#include "twistmap/parallel.hpp"
#include "twistmap/varieties.hpp"

namespace twistmap {

std::string invariant_to_string(const ClassInvariant& inv) {
  return std::visit([](const auto& v) { return v.to_string(); }, inv);
}

bool invariant_le(const ClassInvariant& a, const ClassInvariant& b) {
  if (a.index() != b.index()) throw std::invalid_argument("invariants of different kinds");
  if (const auto* da = std::get_if<DecoratedPartition>(&a)) {
    return decorated_closure_le(*da, std::get<DecoratedPartition>(b));
  }
  return dominance_le(std::get<Partition>(a), std::get<Partition>(b));
}

const InventoryClass* ClassInventory::find(const ClassInvariant& inv) const {
  for (const auto& c : classes) {
    if (c.invariant == inv) return &c;
  }
  return nullptr;
}

namespace {

std::uint64_t checked_space(const FiniteField& f, int n, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (int k = 0; k < n * n; ++k) {
    total *= static_cast<std::uint64_t>(f.size());
    if (total > limit) {
      throw BoundExceeded("matrix space " + f.name() + "^(" + std::to_string(n * n) + ") exceeds the bound");
    }
  }
  return total;
}

std::uint64_t gl_order(const FiniteField& f, int n) {
  std::uint64_t qn = 1;
  for (int k = 0; k < n; ++k) qn *= static_cast<std::uint64_t>(f.size());
  std::uint64_t order = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= static_cast<std::uint64_t>(f.size());
  }
  return order;
}

ClassInvariant invariant_of(const SemilinearElement& g) {
  if (g.field().characteristic() == 2) return class_invariant(g);
  return jordan_type(phi_matrix(g));
}

}  // namespace

ClassInventory enumerate_classes(int n, const FiniteField& f, const OracleBounds& bounds) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  const std::uint64_t total = checked_space(f, n, bounds.max_matrices);
  const FieldSpec spec = FieldSpec::linear(f);

  std::vector<char> member(static_cast<std::size_t>(total), 0);
  parallel_for(static_cast<std::size_t>(total), [&](std::size_t code) {
    Matrix m = decode_matrix(f, n, code);
    if (!m.invertible()) return;
    if (is_unipotent(phi_matrix(SemilinearElement(spec, 1, std::move(m))))) member[code] = 1;
  });

  ClassInventory inv{spec, n, gl_order(f, n), 0, {}};
  std::map<ClassInvariant, std::size_t> slot;
  const auto gens = gl_generators(f, n);
  std::vector<char> seen(member.size(), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (!member[code]) continue;
    ++inv.elements;
    if (seen[code]) continue;
    SemilinearElement rep(spec, 1, decode_matrix(f, n, code));
    std::uint64_t size = 0;
    std::deque<SemilinearElement> queue{rep};
    seen[code] = 1;
    while (!queue.empty()) {
      SemilinearElement g = std::move(queue.front());
      queue.pop_front();
      ++size;
      for (const auto& x : gens) {
        SemilinearElement h = twisted_conjugate(x, g);
        const std::uint64_t c = encode_matrix(h.matrix());
        if (!member[c]) throw CheckFailure("twisted conjugation left the unipotent locus");
        if (!seen[c]) {
          seen[c] = 1;
          queue.push_back(std::move(h));
        }
      }
    }
    ClassInvariant key = invariant_of(rep);
    auto [it, fresh] = slot.emplace(key, inv.classes.size());
    if (fresh) inv.classes.push_back(InventoryClass{key, rep, 0, {}});
    InventoryClass& cls = inv.classes[it->second];
    cls.size += size;
    cls.rational_orbits.push_back(RationalOrbit{rep, size});
  }
  return inv;
}

std::uint64_t centralizer_order(const SemilinearElement& g, const OracleBounds& bounds) {
  const auto group = enumerate_invertible(g.field(), g.dim(), bounds.max_matrices);
  std::atomic<std::uint64_t> count{0};
  parallel_for(group.size(), [&](std::size_t i) {
    if (twisted_conjugate(group[i], g) == g) count.fetch_add(1, std::memory_order_relaxed);
  });
  return count.load();
}

SemilinearElement extend_scalars(const SemilinearElement& g, const FiniteField& target) {
  const auto table = target.embedding_of(g.field());
  FieldSpec spec = g.spec();
  spec.field = &target;
  return SemilinearElement(spec, g.degree(), g.matrix().map_entries(table, target));
}

SigmaReport sigma_w_D(const Permutation& w, const ClassInventory& inventory, const std::vector<int>& ms,
                      const OracleBounds& bounds, const std::function<void(const std::string&)>& log) {
  if (w.size() != inventory.n) throw std::invalid_argument("permutation size differs from n");
  if (inventory.field.q != 1) throw std::invalid_argument("oracle requires q = 1");
  const FiniteField& base = *inventory.field.field;
  SigmaReport report;
  report.w = w;
  for (int m : ms) {
    if (m < 1) throw std::invalid_argument("field degree must be positive");
    const FiniteField& f = FiniteField::get(base.characteristic(), base.degree() * m);
    if (flag_count(f, inventory.n) > bounds.max_flags) {
      throw BoundExceeded("flag count over " + f.name() + " exceeds the bound");
    }
    VarietyBounds vb;
    vb.max_flags = bounds.max_flags;
    const auto flags = enumerate_flags(f, inventory.n, vb);
    SigmaLevel level{m, f.name(), {}};
    for (const auto& cls : inventory.classes) {
      const SemilinearElement g = extend_scalars(cls.representative, f);
      std::atomic<bool> hit{false};
      parallel_for(flags.size(), [&](std::size_t i) {
        if (hit.load(std::memory_order_relaxed)) return;
        if (relative_position(flags[i], g_dot_flag(g, flags[i])) == w) hit.store(true);
      });
      if (hit.load()) level.members.insert(cls.invariant);
    }
    if (!report.levels.empty()) {
      for (const auto& inv : report.levels.back().members) {
        if (!level.members.count(inv)) report.monotone = false;
      }
      for (const auto& inv : level.members) {
        if (!report.united.count(inv)) report.late.insert(inv);
      }
    }
    report.united.insert(level.members.begin(), level.members.end());
    if (log) {
      std::string line = "w=" + w.to_string() + " over " + level.field + ": " +
                         std::to_string(level.members.size()) + " classes";
      for (const auto& inv : level.members) line += " [" + invariant_to_string(inv) + "]";
      log(line);
    }
    report.levels.push_back(std::move(level));
  }
  return report;
}

TheoremReport verify_unique_minimum(const ClassInventory& inventory, const Partition& p, const std::vector<int>& ms,
                                 const OracleBounds& bounds, const std::function<void(const std::string&)>& log) {
  if (odd_model_dimension(p) != inventory.n) throw std::invalid_argument("partition does not match n");
  const bool char2 = inventory.field.field->characteristic() == 2;
  TheoremReport r{p, sigma_w_D(z_perm(p), inventory, ms, bounds, log), {},
                  char2 ? ClassInvariant(phi_char2_elliptic(p)) : ClassInvariant(elliptic_jordan_type(p))};
  const auto& members = r.sigma.united;
  for (const auto& a : members) {
    bool minimal = true;
    for (const auto& b : members) {
      if (!(a == b) && invariant_le(b, a)) minimal = false;
    }
    if (minimal) r.minima.push_back(a);
  }
  if (r.minima.size() == 1) {
    r.unique_minimum = true;
    for (const auto& b : members) r.unique_minimum = r.unique_minimum && invariant_le(r.minima.front(), b);
    r.matches_expected = r.minima.front() == r.expected;
  }
  r.closure_below_all = !members.empty();
  for (const auto& b : members) r.closure_below_all = r.closure_below_all && invariant_le(r.expected, b);
  return r;
}

bool EllipticReport::ok() const {
  if (!distinct_minima) return false;
  for (const auto& r : per_class) {
    if (!r.ok()) return false;
  }
  return true;
}

EllipticReport verify_all_elliptic(const ClassInventory& inventory, const std::vector<int>& ms,
                                   const OracleBounds& bounds, const std::function<void(const std::string&)>& log) {
  EllipticReport out;
  std::set<ClassInvariant> minima;
  out.distinct_minima = true;
  for (const auto& p : model_partitions(inventory.n)) {
    out.per_class.push_back(verify_unique_minimum(inventory, p, ms, bounds, log));
    const auto& r = out.per_class.back();
    if (r.minima.size() != 1 || !minima.insert(r.minima.front()).second) out.distinct_minima = false;
  }
  return out;
}

}  // namespace twistmap
