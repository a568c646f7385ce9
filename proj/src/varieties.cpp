#include "twistmap/varieties.hpp"

#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "twistmap/errors.hpp"
#include "twistmap/parallel.hpp"

namespace twistmap {

namespace {

// Row echelon basis grown one vector at a time; rows carry a leading 1 and
// vanish at the pivots of earlier rows.
class Echelon {
 public:
  explicit Echelon(const FiniteField& f) : f_(f) {}

  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Elem c = v[static_cast<std::size_t>(piv_[r])];
      if (c == 0) continue;
      const Vec& row = rows_[r];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = f_.sub(v[k], f_.mul(c, row[k]));
    }
    return v;
  }

  bool insert(const Vec& v) {
    Vec red = reduce(v);
    for (std::size_t k = 0; k < red.size(); ++k) {
      if (red[k] == 0) continue;
      rows_.push_back(scale(f_, f_.inv(red[k]), red));
      piv_.push_back(static_cast<int>(k));
      return true;
    }
    return false;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  const FiniteField& f_;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

std::vector<int> prefix_parts(const Partition& p) {
  std::vector<int> out{0};
  for (int c : p.parts()) out.push_back(out.back() + c);
  return out;
}

std::vector<int> prefix_parts_minus_one(const Partition& p) {
  std::vector<int> out{0};
  for (int c : p.parts()) out.push_back(out.back() + c - 1);
  return out;
}

int model_dimension(const Partition& p) { return 2 * p.total() - p.length(); }

int part_at(const Partition& p, int r) { return p.parts()[static_cast<std::size_t>(r)]; }

// Vectors g^{*j} v_k for k < r with j in [lo, 2p_k + hi_shift] and k = r with
// j in [lo, hi_r], keeping only j of the requested parity.
std::vector<Vec> collect(StarPowers& powers, const std::vector<Vec>& v, const Partition& p, int r, int lo,
                         int hi_shift, int hi_r, bool odd) {
  std::vector<Vec> out;
  auto take = [&](int k, int a, int b) {
    for (int j = a; j <= b; ++j) {
      if ((j % 2 != 0) != odd) continue;
      out.push_back(powers(j).apply(v[static_cast<std::size_t>(k)]));
    }
  };
  for (int k = 0; k < r; ++k) take(k, lo, 2 * part_at(p, k) + hi_shift);
  if (r < static_cast<int>(v.size())) take(r, lo, hi_r);
  return out;
}

bool odd_pairings_vanish(StarPowers& powers, const FiniteField& f, const Vec& x, const Vec& y, int lo, int hi) {
  for (int j = lo; j <= hi; ++j) {
    if (j % 2 == 0) continue;
    if (pairing(f, x, powers(j).apply(y)) != 0) return false;
  }
  return true;
}

void check_model_partition(const Partition& p, int n) {
  if (p.empty() || model_dimension(p) != n) {
    throw std::invalid_argument("partition " + p.to_string() + " does not fit dimension " + std::to_string(n));
  }
}

}  // namespace

Flag Flag::from_basis(const FiniteField& f, const std::vector<Vec>& vectors) {
  Flag flag;
  flag.field_ = &f;
  Echelon ech(f);
  for (const auto& v : vectors) {
    if (!ech.insert(v)) throw std::invalid_argument("flag basis vectors are dependent");
  }
  flag.basis_ = ech.rows();
  return flag;
}

Flag Flag::from_chain(const std::vector<Subspace>& chain) {
  if (chain.empty()) throw std::invalid_argument("empty chain");
  const int n = static_cast<int>(chain.size()) - 1;
  std::vector<Vec> picks;
  for (int i = 1; i <= n; ++i) {
    const Subspace& cur = chain[static_cast<std::size_t>(i)];
    const Subspace& prev = chain[static_cast<std::size_t>(i - 1)];
    if (cur.dim() != i || prev.dim() != i - 1 || !cur.contains(prev)) {
      throw std::invalid_argument("subspaces do not form a complete flag");
    }
    for (const auto& b : cur.basis()) {
      if (!prev.contains(b)) {
        picks.push_back(b);
        break;
      }
    }
  }
  return from_basis(chain.front().field(), picks);
}

Flag Flag::standard(const FiniteField& f, int n) {
  std::vector<Vec> b;
  for (int i = 0; i < n; ++i) b.push_back(unit(n, i));
  return from_basis(f, b);
}

Subspace Flag::subspace(int i) const {
  return Subspace::span(*field_, dim(), std::vector<Vec>(basis_.begin(), basis_.begin() + i));
}

std::string Flag::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ' ';
    out += '(';
    for (std::size_t k = 0; k < basis_[i].size(); ++k) {
      if (k) out += ',';
      out += std::to_string(basis_[i][k]);
    }
    out += ')';
  }
  return out;
}

bool LineSequence::same_lines(const LineSequence& other, const FiniteField& f) const {
  if (vectors.size() != other.vectors.size()) return false;
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (normalize_projective(f, vectors[r]) != normalize_projective(f, other.vectors[r])) return false;
  }
  return true;
}

std::uint64_t flag_count(const FiniteField& f, int n) {
  const auto Q = static_cast<std::uint64_t>(f.size());
  std::uint64_t total = 1;
  std::uint64_t qk = 1;
  for (int k = 1; k <= n; ++k) {
    qk *= Q;
    const std::uint64_t factor = (qk - 1) / (Q - 1);
    if (total > std::numeric_limits<std::uint64_t>::max() / factor) return std::numeric_limits<std::uint64_t>::max();
    total *= factor;
  }
  return total;
}

namespace {

// Vectors supported on `free` with leading coordinate 1.
std::vector<Vec> projective_points(const FiniteField& f, int n, const std::vector<int>& free) {
  std::vector<Vec> out;
  const int s = static_cast<int>(free.size());
  for (int lead = 0; lead < s; ++lead) {
    const int tail = s - 1 - lead;
    std::uint64_t count = 1;
    for (int k = 0; k < tail; ++k) count *= static_cast<std::uint64_t>(f.size());
    for (std::uint64_t code = 0; code < count; ++code) {
      Vec x(static_cast<std::size_t>(n), 0);
      x[static_cast<std::size_t>(free[static_cast<std::size_t>(lead)])] = 1;
      std::uint64_t c = code;
      for (int k = lead + 1; k < s; ++k) {
        x[static_cast<std::size_t>(free[static_cast<std::size_t>(k)])] =
            static_cast<Elem>(c % static_cast<std::uint64_t>(f.size()));
        c /= static_cast<std::uint64_t>(f.size());
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace

std::vector<Vec> enumerate_lines(const FiniteField& f, int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  return projective_points(f, n, all);
}

std::vector<Flag> enumerate_flags(const FiniteField& f, int n, const VarietyBounds& bounds) {
  const std::uint64_t count = flag_count(f, n);
  if (count > bounds.max_flags) {
    throw BoundExceeded("flag count over " + f.name() + " in dimension " + std::to_string(n) +
                        " exceeds the bound " + std::to_string(bounds.max_flags));
  }
  std::vector<Flag> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<Vec> cur;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(Flag::from_basis(f, cur));
      return;
    }
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<std::size_t>(i)]) free.push_back(i);
    for (auto& x : projective_points(f, n, free)) {
      int lead = 0;
      while (x[static_cast<std::size_t>(lead)] == 0) ++lead;
      used[static_cast<std::size_t>(lead)] = true;
      cur.push_back(std::move(x));
      rec();
      cur.pop_back();
      used[static_cast<std::size_t>(lead)] = false;
    }
  };
  rec();
  return out;
}

Permutation relative_position(const Flag& a, const Flag& b) {
  const int n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("flags live in different dimensions");
  // D[j][k] = dim(a_j meet b_k) = j + k - rank(a_1..a_j, b_1..b_k).
  std::vector<std::vector<int>> D(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n + 1), 0));
  for (int j = 0; j <= n; ++j) {
    Echelon ech(a.field());
    for (int i = 0; i < j; ++i) ech.insert(a.basis()[static_cast<std::size_t>(i)]);
    for (int k = 1; k <= n; ++k) {
      ech.insert(b.basis()[static_cast<std::size_t>(k - 1)]);
      D[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = j + k - ech.rank();
    }
  }
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  for (int h = 1; h <= n; ++h) {
    for (int j = 1; j <= n; ++j) {
      const auto J = static_cast<std::size_t>(j);
      const auto H = static_cast<std::size_t>(h);
      if (D[J][H] - D[J - 1][H] - D[J][H - 1] + D[J - 1][H - 1] == 1) {
        if (w[H - 1] != 0) throw CheckFailure("relative position is not unique");
        w[H - 1] = j;
      }
    }
  }
  return Permutation(std::move(w));
}

Flag g_dot_flag(const SemilinearElement& g, const Flag& f) {
  const int n = f.dim();
  std::vector<Subspace> chain;
  for (int i = 0; i <= n; ++i) {
    if (g.maps_to_dual()) chain.push_back(g.image(f.subspace(n - i)).perp());
    else chain.push_back(g.image(f.subspace(i)));
  }
  return Flag::from_chain(chain);
}

bool line_sequence_is_valid(StarPowers& powers, const LineSequence& lines, const Partition& p) {
  const SemilinearElement& g = powers.base();
  const FiniteField& f = g.field();
  if (static_cast<int>(lines.vectors.size()) != p.length()) return false;
  const auto& v = lines.vectors;
  for (int r = 0; r < p.length(); ++r) {
    const Vec& vr = v[static_cast<std::size_t>(r)];
    if (static_cast<int>(vr.size()) != g.dim() || is_zero(vr)) return false;
    for (int t = 0; t < r; ++t) {
      const int pt = part_at(p, t);
      if (!odd_pairings_vanish(powers, f, vr, v[static_cast<std::size_t>(t)], -2 * pt + 1, 2 * pt - 2)) return false;
    }
    const int pr = part_at(p, r);
    if (!odd_pairings_vanish(powers, f, vr, vr, -2 * pr + 2, 2 * pr - 2)) return false;
    if (pairing(f, vr, powers(2 * pr - 1).apply(vr)) == 0) return false;
  }
  return true;
}

bool line_sequence_is_valid(const SemilinearElement& g, const LineSequence& lines, const Partition& p) {
  StarPowers powers(g);
  return line_sequence_is_valid(powers, lines, p);
}

bool is_direct_sum_decomposition(StarPowers& powers, const LineSequence& lines, const Partition& p) {
  const SemilinearElement& g = powers.base();
  Echelon ech(g.field());
  int count = 0;
  for (int k = 0; k < p.length(); ++k) {
    const int pk = part_at(p, k);
    for (int h = 0; h <= 2 * pk - 2; ++h) {
      ++count;
      if (!ech.insert(powers(-2 * pk + 2 * h).apply(lines.vectors[static_cast<std::size_t>(k)]))) return false;
    }
  }
  return count == g.dim();
}

FlagPair lines_to_flags(const SemilinearElement& g, const LineSequence& lines, const Partition& p) {
  const int n = g.dim();
  check_model_partition(p, n);
  StarPowers powers(g);
  if (!line_sequence_is_valid(powers, lines, p)) throw std::invalid_argument("invalid line sequence");
  const FiniteField& f = g.field();
  const auto& v = lines.vectors;
  const auto P = prefix_parts(p);
  const auto Q = prefix_parts_minus_one(p);

  std::vector<std::optional<Subspace>> V(static_cast<std::size_t>(n + 1));
  std::vector<std::optional<Subspace>> Vp(static_cast<std::size_t>(n + 1));
  auto assign = [](std::vector<std::optional<Subspace>>& slots, int idx, Subspace s) {
    auto& slot = slots[static_cast<std::size_t>(idx)];
    if (slot && !(*slot == s)) throw CheckFailure("the two descriptions of a middle subspace disagree");
    slot = std::move(s);
  };
  auto span = [&](const std::vector<Vec>& vecs) { return Subspace::span(f, n, vecs); };

  for (int r = 0; r < p.length(); ++r) {
    const int pr = part_at(p, r);
    const int Pr = P[static_cast<std::size_t>(r)];
    const int Qr = Q[static_cast<std::size_t>(r)];
    for (int i = 1; i <= pr; ++i) {
      assign(V, Pr + i, span(collect(powers, v, p, r, 0, -2, 2 * i - 1, false)));
      assign(Vp, n - (Pr + i), span(collect(powers, v, p, r, 1, -1, 2 * i, true)).perp());
    }
    for (int i = 1; i <= pr - 1; ++i) {
      assign(V, n - (Qr + i), span(collect(powers, v, p, r, 0, -2, 2 * i - 1, true)).perp());
      assign(Vp, Qr + i, span(collect(powers, v, p, r, 1, -1, 2 * i, false)));
    }
  }
  V[0] = Subspace::zero(f, n);
  Vp[0] = Subspace::zero(f, n);
  V[static_cast<std::size_t>(n)] = Subspace::whole(f, n);
  Vp[static_cast<std::size_t>(n)] = Subspace::whole(f, n);
  std::vector<Subspace> chain;
  std::vector<Subspace> chain_p;
  for (int i = 0; i <= n; ++i) {
    if (!V[static_cast<std::size_t>(i)] || !Vp[static_cast<std::size_t>(i)]) {
      throw CheckFailure("line formulas leave subspace " + std::to_string(i) + " undefined");
    }
    chain.push_back(*V[static_cast<std::size_t>(i)]);
    chain_p.push_back(*Vp[static_cast<std::size_t>(i)]);
  }
  Flag a;
  Flag b;
  try {
    a = Flag::from_chain(chain);
    b = Flag::from_chain(chain_p);
  } catch (const std::invalid_argument& e) {
    throw CheckFailure(std::string("line formulas do not give flags: ") + e.what());
  }
  if (!(g_dot_flag(g, a) == b)) throw CheckFailure("line formulas: second flag is not g.V");
  if (relative_position(a, b) != z_perm(p)) throw CheckFailure("line formulas: wrong relative position");
  return {a, b};
}

namespace {

// Smallest lambda with lambda * lambda^(q^j) * c = 1, if any.
std::optional<Elem> normalizer(const SemilinearElement& g, Elem c, int j) {
  const FiniteField& f = g.field();
  for (int x = 1; x < f.size(); ++x) {
    const auto l = static_cast<Elem>(x);
    if (f.mul(f.mul(l, g.spec().frob(l, j)), c) == 1) return l;
  }
  return std::nullopt;
}

}  // namespace

CanonicalVectors flags_to_lines(const SemilinearElement& g, const FlagPair& pair, const Partition& p) {
  const int n = g.dim();
  check_model_partition(p, n);
  if (!(g_dot_flag(g, pair.first) == pair.second) || relative_position(pair.first, pair.second) != z_perm(p)) {
    throw CheckFailure("flag pair is not a point of X_g");
  }
  const FiniteField& f = g.field();
  StarPowers powers(g);
  const auto P = prefix_parts(p);
  CanonicalVectors cv;
  auto& v = cv.lines.vectors;
  for (int u = 0; u < p.length(); ++u) {
    std::vector<Vec> e;
    for (int k = 0; k < u; ++k) {
      for (int j = -2 * part_at(p, k) + 1; j <= -1; j += 2) e.push_back(powers(j).apply(v[static_cast<std::size_t>(k)]));
    }
    const Subspace line = pair.first.subspace(P[static_cast<std::size_t>(u)] + 1).intersect(Subspace::span(f, n, e).perp());
    if (line.dim() != 1) throw CheckFailure("canonical vector is not determined by the flags");
    Vec x = line.basis().front();
    const int j = 2 * part_at(p, u) - 1;
    const Elem c = pairing(f, x, powers(j).apply(x));
    if (c == 0) throw CheckFailure("canonical vector has vanishing top pairing");
    if (auto l = normalizer(g, c, j)) {
      x = scale(f, *l, x);
      cv.pairing.push_back(1);
    } else {
      cv.pairing.push_back(c);
      cv.normalized = false;
    }
    v.push_back(std::move(x));
  }
  return cv;
}

bool canonical_vectors_hold(const SemilinearElement& g, const FlagPair& pair, const Partition& p,
                            const CanonicalVectors& cv) {
  const int n = g.dim();
  const FiniteField& f = g.field();
  StarPowers powers(g);
  const auto& v = cv.lines.vectors;
  const auto P = prefix_parts(p);
  const auto Q = prefix_parts_minus_one(p);
  if (!line_sequence_is_valid(powers, cv.lines, p)) return false;
  for (int r = 0; r < p.length(); ++r) {
    const int pr = part_at(p, r);
    for (int i = 1; i <= pr; ++i) {
      const Subspace s = Subspace::span(f, n, collect(powers, v, p, r, 0, -2, 2 * i - 1, false));
      if (!(s == pair.first.subspace(P[static_cast<std::size_t>(r)] + i))) return false;
    }
    for (int i = 1; i <= pr - 1; ++i) {
      const Subspace s = Subspace::span(f, n, collect(powers, v, p, r, 1, -1, 2 * i, false));
      if (!(s == pair.second.subspace(Q[static_cast<std::size_t>(r)] + i))) return false;
    }
    std::vector<Vec> e;
    for (int k = 0; k <= r; ++k) {
      for (int j = -2 * part_at(p, k) + 1; j <= -1; j += 2) e.push_back(powers(j).apply(v[static_cast<std::size_t>(k)]));
    }
    const Subspace comp = Subspace::span(f, n, e).perp();
    const Subspace head = pair.first.subspace(P[static_cast<std::size_t>(r + 1)]);
    if (head.dim() + comp.dim() != n || head.intersect(comp).dim() != 0) return false;
    const Elem top = pairing(f, v[static_cast<std::size_t>(r)], powers(2 * pr - 1).apply(v[static_cast<std::size_t>(r)]));
    if (top != cv.pairing[static_cast<std::size_t>(r)]) return false;
    if (cv.normalized && top != 1) return false;
  }
  return true;
}

std::vector<FlagPair> enumerate_X_g(const SemilinearElement& g, const Partition& p, const VarietyBounds& bounds) {
  check_model_partition(p, g.dim());
  if (g.degree() != 1) throw std::invalid_argument("X_g needs a degree-1 element");
  const auto flags = enumerate_flags(g.field(), g.dim(), bounds);
  const Permutation w = z_perm(p);
  std::vector<std::optional<Flag>> image(flags.size());
  parallel_for(flags.size(), [&](std::size_t i) {
    Flag b = g_dot_flag(g, flags[i]);
    if (relative_position(flags[i], b) == w) image[i] = std::move(b);
  });
  std::vector<FlagPair> out;
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (image[i]) out.emplace_back(flags[i], *image[i]);
  return out;
}

std::vector<LineSequence> enumerate_S_g(const SemilinearElement& g, const Partition& p, const VarietyBounds& bounds) {
  check_model_partition(p, g.dim());
  if (g.degree() != 1) throw std::invalid_argument("S_g needs a degree-1 element");
  const auto lines = enumerate_lines(g.field(), g.dim());
  std::uint64_t tuples = 1;
  for (int r = 0; r < p.length(); ++r) {
    tuples *= lines.size();
    if (tuples > bounds.max_tuples) throw BoundExceeded("line tuples exceed the enumeration bound");
  }
  std::vector<std::vector<LineSequence>> found(lines.size());
  parallel_for(lines.size(), [&](std::size_t first) {
    StarPowers powers(g);
    LineSequence cur;
    cur.vectors.push_back(lines[first]);
    std::function<void()> rec = [&] {
      // Conditions for the newest line only; earlier ones were checked on entry.
      const int r = static_cast<int>(cur.vectors.size()) - 1;
      const Vec& vr = cur.vectors.back();
      const FiniteField& f = g.field();
      for (int t = 0; t < r; ++t) {
        const int pt = part_at(p, t);
        if (!odd_pairings_vanish(powers, f, vr, cur.vectors[static_cast<std::size_t>(t)], -2 * pt + 1, 2 * pt - 2)) return;
      }
      const int pr = part_at(p, r);
      if (!odd_pairings_vanish(powers, f, vr, vr, -2 * pr + 2, 2 * pr - 2)) return;
      if (pairing(f, vr, powers(2 * pr - 1).apply(vr)) == 0) return;
      if (r + 1 == p.length()) {
        found[first].push_back(cur);
        return;
      }
      for (const auto& next : lines) {
        cur.vectors.push_back(next);
        rec();
        cur.vectors.pop_back();
      }
    };
    rec();
  });
  std::vector<LineSequence> out;
  for (auto& part : found)
    for (auto& s : part) out.push_back(std::move(s));
  return out;
}

LineSequence standard_lines(const SemilinearElement& g, const Partition& p) {
  check_model_partition(p, g.dim());
  StarPowers powers(g);
  LineSequence out;
  for (int r = 0; r < p.length(); ++r) {
    out.vectors.push_back(powers(2).apply(unit(g.dim(), standard_index(p, r, part_at(p, r) - 1))));
  }
  return out;
}

TransitivityReport transitivity_check(const SemilinearElement& g_class_rep, const Partition& p,
                                      const VarietyBounds& bounds) {
  const int n = g_class_rep.dim();
  check_model_partition(p, n);
  if (g_class_rep.spec().q != 1 || g_class_rep.degree() != 1) {
    throw std::invalid_argument("transitivity check needs a degree-1 element with q = 1");
  }
  const FiniteField& f = g_class_rep.field();
  const FieldSpec spec = g_class_rep.spec();
  const Partition type = jordan_type(phi_matrix(g_class_rep));
  const auto mats = enumerate_invertible(f, n, bounds.max_matrices);
  const auto flags = enumerate_flags(f, n, bounds);
  std::map<Flag, std::size_t> flag_index;
  for (std::size_t i = 0; i < flags.size(); ++i) flag_index.emplace(flags[i], i);
  const Permutation w = z_perm(p);

  std::vector<char> in_class(mats.size(), 0);
  std::vector<std::vector<std::size_t>> good_flags(mats.size());
  parallel_for(mats.size(), [&](std::size_t k) {
    const SemilinearElement g(spec, 1, mats[k]);
    const Matrix phi = phi_matrix(g);
    if (!is_unipotent(phi) || jordan_type(phi) != type) return;
    in_class[k] = 1;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (relative_position(flags[i], g_dot_flag(g, flags[i])) == w) good_flags[k].push_back(i);
  });

  TransitivityReport rep;
  const auto nflags = static_cast<std::uint64_t>(flags.size());
  std::unordered_map<std::uint64_t, bool> seen;
  std::vector<std::uint64_t> keys;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (!in_class[k]) continue;
    ++rep.elements;
    for (std::size_t i : good_flags[k]) {
      const std::uint64_t key = encode_matrix(mats[k]) * nflags + i;
      seen.emplace(key, false);
      keys.push_back(key);
    }
  }
  rep.pairs = keys.size();
  const auto gens = gl_generators(f, n);
  for (std::uint64_t start : keys) {
    if (seen[start]) continue;
    ++rep.orbits;
    seen[start] = true;
    std::deque<std::uint64_t> todo{start};
    while (!todo.empty()) {
      const std::uint64_t key = todo.front();
      todo.pop_front();
      const SemilinearElement g(spec, 1, decode_matrix(f, n, key / nflags));
      const Flag& fl = flags[static_cast<std::size_t>(key % nflags)];
      for (const auto& x : gens) {
        const SemilinearElement gx = twisted_conjugate(x, g);
        std::vector<Vec> moved;
        for (const auto& b : fl.basis()) moved.push_back(x.apply(b));
        const std::size_t fi = flag_index.at(Flag::from_basis(f, moved));
        const std::uint64_t next = encode_matrix(gx.matrix()) * nflags + fi;
        auto it = seen.find(next);
        if (it == seen.end()) throw CheckFailure("pair set is not stable under GL_n");
        if (!it->second) {
          it->second = true;
          todo.push_back(next);
        }
      }
    }
  }
  return rep;
}

namespace {

Matrix z_basis(const SemilinearElement& g, const CanonicalVectors& cv, const Partition& p) {
  StarPowers powers(g);
  std::vector<Vec> cols(static_cast<std::size_t>(g.dim()));
  for (int t = 0; t < p.length(); ++t) {
    const int pt = part_at(p, t);
    for (int i = 0; i <= 2 * pt - 2; ++i) {
      cols[static_cast<std::size_t>(standard_index(p, t, i))] =
          powers(2 * i - 2 * pt).apply(cv.lines.vectors[static_cast<std::size_t>(t)]);
    }
  }
  return Matrix::from_columns(g.field(), g.dim(), cols);
}

bool fixes(const Matrix& t, const Flag& fl) {
  std::vector<Vec> moved;
  for (const auto& b : fl.basis()) moved.push_back(t.apply(b));
  return Flag::from_basis(fl.field(), moved) == fl;
}

}  // namespace

Matrix rigidity_map(const SemilinearElement& g, const SemilinearElement& g_tilde, const FlagPair& pair,
                    const Partition& p) {
  const CanonicalVectors cv = flags_to_lines(g, pair, p);
  const CanonicalVectors cvt = flags_to_lines(g_tilde, pair, p);
  if (!cv.normalized || !cvt.normalized) throw CheckFailure("rigidity needs normalized canonical vectors");
  const Matrix T = z_basis(g_tilde, cvt, p) * z_basis(g, cv, p).inverse();
  const SemilinearElement te(g.spec(), 0, T);
  const SemilinearElement back = check_of(te).inverse().compose(g_tilde).compose(te);
  if (!(back == g)) throw CheckFailure("rigidity map does not conjugate g_tilde to g");
  if (!fixes(T, pair.first) || !fixes(T, pair.second)) throw CheckFailure("rigidity map moves the flags");
  return T;
}

Elem hermitian(const SemilinearElement& g, const Vec& x, const Vec& y) {
  return pairing(g.field(), x, g.apply(y));
}

UnitaryCount count_unitary_dl(int n, int q, const Partition& p, int m, const VarietyBounds& bounds) {
  if (q < 2) throw std::invalid_argument("unitary counts need q > 1");
  if (m < 1) throw std::invalid_argument("m must be positive");
  check_model_partition(p, n);
  int prime = 2;
  while (q % prime != 0) ++prime;
  int a = 0;
  for (int v = q; v > 1; v /= prime) {
    if (v % prime != 0) throw std::invalid_argument("q must be a prime power");
    ++a;
  }
  const FiniteField& f = FiniteField::get(prime, 2 * a * m);
  const FieldSpec spec = FieldSpec::twisted(f, q);
  const SemilinearElement g(spec, 1, Matrix::identity(f, n));

  UnitaryCount out;
  out.m = m;
  out.field_size = f.size();
  out.x_flags = enumerate_X_g(g, p, bounds).size();
  const auto lines = enumerate_S_g(g, p, bounds);
  out.x_lines = lines.size();

  // X~ : vector tuples with <v_r, phi^h v_t> = 0, ..., <v_r, phi^{p_r-1} v_r> = 1.
  std::uint64_t vectors_per_slot = 1;
  for (int k = 0; k < n; ++k) vectors_per_slot *= static_cast<std::uint64_t>(f.size());
  std::uint64_t tuples = 1;
  for (int r = 0; r < p.length(); ++r) {
    tuples *= vectors_per_slot;
    if (tuples > bounds.max_tuples) throw BoundExceeded("vector tuples exceed the enumeration bound");
  }
  StarPowers powers(g);
  auto phi_h = [&](int h, const Vec& x) { return powers(2 * h).apply(x); };
  std::vector<Vec> nonzero;
  for (std::uint64_t code = 1; code < vectors_per_slot; ++code) {
    Vec x(static_cast<std::size_t>(n));
    std::uint64_t c = code;
    for (auto& e : x) {
      e = static_cast<Elem>(c % static_cast<std::uint64_t>(f.size()));
      c /= static_cast<std::uint64_t>(f.size());
    }
    nonzero.push_back(std::move(x));
  }
  std::set<std::vector<Vec>> tilde;
  std::vector<Vec> cur;
  std::function<void()> rec = [&] {
    const int r = static_cast<int>(cur.size());
    if (r == p.length()) {
      tilde.insert(cur);
      return;
    }
    const int pr = part_at(p, r);
    for (const auto& x : nonzero) {
      bool ok = hermitian(g, x, phi_h(pr - 1, x)) == 1;
      for (int h = -pr + 1; ok && h <= pr - 2; ++h) ok = hermitian(g, x, phi_h(h, x)) == 0;
      for (int t = 0; ok && t < r; ++t) {
        const int pt = part_at(p, t);
        for (int h = -pt; ok && h <= pt - 2; ++h) ok = hermitian(g, x, phi_h(h, cur[static_cast<std::size_t>(t)])) == 0;
      }
      if (!ok) continue;
      cur.push_back(x);
      rec();
      cur.pop_back();
    }
  };
  rec();
  out.x_tilde = tilde.size();

  // Lambda = prod_r {l : l^(q^{2p_r-1}+1) = 1}.
  const auto group = static_cast<std::uint64_t>(f.size() - 1);
  std::vector<std::vector<Elem>> roots;
  out.lambda_rational = 1;
  out.lambda_full = 1;
  for (int r = 0; r < p.length(); ++r) {
    std::uint64_t e = 1;
    std::uint64_t e_mod = 1;
    for (int k = 0; k < 2 * part_at(p, r) - 1; ++k) {
      e *= static_cast<std::uint64_t>(q);
      e_mod = e_mod * static_cast<std::uint64_t>(q) % group;
    }
    out.lambda_full *= e + 1;
    std::vector<Elem> rs;
    for (int x = 1; x < f.size(); ++x)
      if (f.pow(static_cast<Elem>(x), static_cast<long long>((e_mod + 1) % group)) == 1) rs.push_back(static_cast<Elem>(x));
    out.lambda_rational *= rs.size();
    roots.push_back(std::move(rs));
  }

  out.free_action = true;
  std::map<std::vector<Vec>, std::uint64_t> fiber;
  for (const auto& pt : tilde) {
    std::vector<Vec> key;
    for (const auto& x : pt) key.push_back(normalize_projective(f, x));
    ++fiber[key];
    std::set<std::vector<Vec>> orbit;
    std::vector<std::size_t> idx(pt.size(), 0);
    while (true) {
      std::vector<Vec> img;
      for (std::size_t r = 0; r < pt.size(); ++r) img.push_back(scale(f, roots[r][idx[r]], pt[r]));
      if (!tilde.count(img)) out.free_action = false;
      orbit.insert(std::move(img));
      std::size_t r = 0;
      while (r < idx.size() && ++idx[r] == roots[r].size()) idx[r++] = 0;
      if (r == idx.size()) break;
    }
    if (orbit.size() != out.lambda_rational) out.free_action = false;
  }
  std::set<std::vector<Vec>> line_keys;
  for (const auto& s : lines) {
    std::vector<Vec> key;
    for (const auto& x : s.vectors) key.push_back(normalize_projective(f, x));
    line_keys.insert(key);
    auto it = fiber.find(key);
    ++out.fibers[it == fiber.end() ? 0 : it->second];
  }
  for (const auto& [key, count] : fiber) {
    if (!line_keys.count(key)) throw CheckFailure("a point of X~ lies over no line sequence");
  }
  return out;
}

}  // namespace twistmap
