#include "twistmap/weyl.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "twistmap/errors.hpp"

namespace twistmap {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation of [1,n]");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  return Permutation(std::move(im));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> im;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(start, end - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw std::invalid_argument("bad permutation syntax: '" + std::string(text) + "'");
    }
    im.push_back(v);
    start = end + 1;
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int j = 1; j <= size(); ++j) inv[static_cast<std::size_t>((*this)(j) - 1)] = j;
  return Permutation(std::move(inv));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size() + 1, false);
  for (int start = 1; start <= size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cyc;
    for (int j = start; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      cyc.push_back(j);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

Partition Permutation::cycle_type() const {
  std::vector<int> lens;
  for (const auto& c : cycles()) lens.push_back(static_cast<int>(c.size()));
  return Partition::from_unsorted(std::move(lens));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out;
}

Permutation operator*(const Permutation& u, const Permutation& v) {
  if (u.size() != v.size()) throw std::invalid_argument("composing permutations of different degree");
  std::vector<int> im(static_cast<std::size_t>(u.size()));
  for (int j = 1; j <= u.size(); ++j) im[static_cast<std::size_t>(j - 1)] = u(v(j));
  return Permutation(std::move(im));
}

int length(const Permutation& w) {
  int inv = 0;
  for (int i = 1; i <= w.size(); ++i)
    for (int j = i + 1; j <= w.size(); ++j)
      if (w(i) > w(j)) ++inv;
  return inv;
}

Permutation longest(int n) {
  if (n < 1) throw std::invalid_argument("longest: n must be positive");
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) im[static_cast<std::size_t>(j - 1)] = n + 1 - j;
  return Permutation(std::move(im));
}

Permutation twist(const Permutation& w) {
  const Permutation w0 = longest(w.size());
  return w0 * w * w0;
}

TwistedClassLabel twisted_class_label(const Permutation& w) {
  return {(w * longest(w.size())).cycle_type()};
}

int odd_model_dimension(const Partition& p) {
  if (p.empty()) throw std::invalid_argument("odd model needs a nonempty partition");
  return 2 * p.total() - p.length();
}

Permutation z_perm(const Partition& p) {
  const int n = odd_model_dimension(p);
  std::vector<int> im(static_cast<std::size_t>(n), 0);
  auto set = [&](int from, int to) {
    if (from < 1 || from > n || im[static_cast<std::size_t>(from - 1)] != 0) {
      throw std::logic_error("z_perm: rules do not define a permutation");
    }
    im[static_cast<std::size_t>(from - 1)] = to;
  };
  int P = 0;  // p_1 + ... + p_{r-1}
  int Q = 0;  // (p_1 - 1) + ... + (p_{r-1} - 1)
  for (int pr : p.parts()) {
    for (int i = 1; i <= pr - 1; ++i) set(Q + i, P + i + 1);
    set(n - (P + pr - 1), P + 1);
    for (int i = 0; i <= pr - 2; ++i) set(n - (P + i), n - (Q + i));
    P += pr;
    Q += pr - 1;
  }
  return Permutation(std::move(im));
}

std::vector<std::vector<int>> expected_z_cycles(const Partition& p) {
  const int n = odd_model_dimension(p);
  std::vector<std::vector<int>> out;
  int P = 0;
  int Q = 0;
  for (int pr : p.parts()) {
    std::vector<int> cyc;
    for (int i = 1; i <= pr - 1; ++i) {
      cyc.push_back(Q + i);
      cyc.push_back(n - (P + i));
    }
    cyc.push_back(n - P);
    out.push_back(std::move(cyc));
    P += pr;
    Q += pr - 1;
  }
  return out;
}

bool is_elliptic(const TwistedClassLabel& label) { return label.cycle_type.all_parts_odd(); }

std::vector<Permutation> all_permutations(int n, const WeylBounds& bounds) {
  if (n > bounds.max_n) {
    throw BoundExceeded("S_" + std::to_string(n) + " exceeds the search bound n <= " +
                        std::to_string(bounds.max_n));
  }
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

namespace {

Permutation simple_reflection(int n, int i) {
  std::vector<int> im(static_cast<std::size_t>(n));
  std::iota(im.begin(), im.end(), 1);
  std::swap(im[static_cast<std::size_t>(i - 1)], im[static_cast<std::size_t>(i)]);
  return Permutation(std::move(im));
}

// Closure of w under w -> s_i w s_{n-i} for i in gens.
std::set<Permutation> twisted_orbit(const Permutation& w, const std::vector<int>& gens) {
  const int n = w.size();
  std::vector<std::pair<Permutation, Permutation>> moves;
  for (int i : gens) moves.emplace_back(simple_reflection(n, i), simple_reflection(n, n - i));
  std::set<Permutation> orbit{w};
  std::deque<Permutation> todo{w};
  while (!todo.empty()) {
    Permutation cur = std::move(todo.front());
    todo.pop_front();
    for (const auto& [left, right] : moves) {
      Permutation next = left * cur * right;
      if (orbit.insert(next).second) todo.push_back(std::move(next));
    }
  }
  return orbit;
}

}  // namespace

std::set<Permutation> twisted_class_of(const Permutation& w, const WeylBounds& bounds) {
  const int n = w.size();
  if (n > bounds.max_n) {
    throw BoundExceeded("twisted class search bound n <= " + std::to_string(bounds.max_n) + " exceeded");
  }
  std::vector<int> gens(static_cast<std::size_t>(std::max(n - 1, 0)));
  std::iota(gens.begin(), gens.end(), 1);
  return twisted_orbit(w, gens);
}

namespace {

Permutation find_with_label(const TwistedClassLabel& label, int n, const WeylBounds& bounds) {
  if (label.cycle_type.total() != n) throw std::invalid_argument("label is not a partition of n");
  for (const auto& w : all_permutations(n, bounds)) {
    if (twisted_class_label(w) == label) return w;
  }
  throw CheckFailure("no permutation carries label " + label.cycle_type.to_string());
}

}  // namespace

MinLengthResult min_length_in_class(const TwistedClassLabel& label, int n, const WeylBounds& bounds) {
  const auto cls = twisted_class_of(find_with_label(label, n, bounds), bounds);
  MinLengthResult res;
  res.length = std::numeric_limits<int>::max();
  for (const auto& w : cls) res.length = std::min(res.length, length(w));
  for (const auto& w : cls)
    if (length(w) == res.length) res.elements.insert(w);
  return res;
}

std::vector<std::vector<int>> twist_stable_subsets(int n) {
  // Orbit representatives i <= n - i.
  std::vector<int> reps;
  for (int i = 1; i <= n - 1; ++i)
    if (i <= n - i) reps.push_back(i);
  std::vector<std::vector<int>> out;
  const std::size_t count = std::size_t{1} << reps.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<int> J;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (!((mask >> k) & 1U)) continue;
      J.push_back(reps[k]);
      if (n - reps[k] != reps[k]) J.push_back(n - reps[k]);
    }
    std::sort(J.begin(), J.end());
    out.push_back(std::move(J));
  }
  return out;
}

int twist_orbits_outside(int n, const std::vector<int>& J) {
  int orbits = 0;
  for (int i = 1; i <= n - 1; ++i) {
    if (i > n - i) continue;
    if (std::find(J.begin(), J.end(), i) == J.end()) ++orbits;
  }
  return orbits;
}

bool in_parabolic(const Permutation& w, const std::vector<int>& J) {
  // W_J permutes each maximal run of positions joined by the reflections in J.
  const int n = w.size();
  std::vector<int> block(static_cast<std::size_t>(n) + 1, 0);
  int b = 0;
  for (int j = 1; j <= n; ++j) {
    if (j > 1 && std::find(J.begin(), J.end(), j - 1) == J.end()) ++b;
    block[static_cast<std::size_t>(j)] = b;
  }
  for (int j = 1; j <= n; ++j)
    if (block[static_cast<std::size_t>(w(j))] != block[static_cast<std::size_t>(j)]) return false;
  return true;
}

bool is_elliptic_in_parabolic(const Permutation& w, const std::vector<int>& J) {
  if (!in_parabolic(w, J)) return false;
  const auto orbit = twisted_orbit(w, J);
  for (const auto& sub : twist_stable_subsets(w.size())) {
    const bool proper_subset =
        sub.size() < J.size() && std::includes(J.begin(), J.end(), sub.begin(), sub.end());
    if (!proper_subset) continue;
    for (const auto& y : orbit)
      if (in_parabolic(y, sub)) return false;
  }
  return true;
}

int mu_of_class(const TwistedClassLabel& label, int n, const WeylBounds& bounds) {
  const auto cls = twisted_class_of(find_with_label(label, n, bounds), bounds);
  int best = std::numeric_limits<int>::max();
  for (const auto& J : twist_stable_subsets(n)) {
    const int orbits = twist_orbits_outside(n, J);
    if (orbits >= best) continue;
    for (const auto& w : cls) {
      if (is_elliptic_in_parabolic(w, J)) {
        best = orbits;
        break;
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) {
    throw CheckFailure("no stable parabolic makes class " + label.cycle_type.to_string() + " elliptic");
  }
  return best;
}

}  // namespace twistmap
