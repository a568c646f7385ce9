#include "twistmap/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace twistmap {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }
  total_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::from_unsorted(std::vector<int> parts) {
  std::erase(parts, 0);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

Partition Partition::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) return Partition();
  std::vector<int> parts;
  for (auto piece : split(text, ',')) parts.push_back(parse_int(piece));
  return Partition(std::move(parts));
}

int Partition::part(int i) const {
  if (i < 1 || i > length()) return 0;
  return parts_[static_cast<std::size_t>(i - 1)];
}

int Partition::multiplicity(int i) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

int Partition::dual_at(int i) const {
  if (i < 1) return length();
  return static_cast<int>(
      std::count_if(parts_.begin(), parts_.end(), [i](int c) { return c >= i; }));
}

Partition Partition::dual() const {
  std::vector<int> d;
  for (int i = 1; i <= largest(); ++i) d.push_back(dual_at(i));
  return Partition(std::move(d));
}

int Partition::prefix_sum(int i) const {
  int s = 0;
  for (int j = 1; j <= std::min(i, length()); ++j) s += part(j);
  return s;
}

int Partition::dual_prefix_sum(int i) const {
  int s = 0;
  for (int j = 1; j <= std::min(i, largest()); ++j) s += dual_at(j);
  return s;
}

bool Partition::all_parts_odd() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int c) { return c % 2 == 1; });
}

bool Partition::even_parts_paired() const {
  for (int v = 2; v <= largest(); v += 2) {
    if (multiplicity(v) % 2 != 0) return false;
  }
  return true;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative n");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(remaining - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

bool dominance_le(const Partition& a, const Partition& b) {
  if (a.total() != b.total()) throw std::invalid_argument("dominance_le: totals differ");
  const int len = std::max(a.length(), b.length());
  for (int i = 1; i <= len; ++i) {
    if (a.prefix_sum(i) > b.prefix_sum(i)) return false;
  }
  return true;
}

int DecoratedPartition::eps_extended(int i) const {
  if (i % 2 == 0 || shape_.multiplicity(i) == 0) return -1;
  return eps_.at(i);
}

std::string DecoratedPartition::to_string() const {
  std::string out;
  for (int i = 1; i <= shape_.length(); ++i) {
    if (i > 1) out += ',';
    const int c = shape_.part(i);
    out += std::to_string(c);
    if (c % 2 == 1) out += ':' + std::to_string(eps_.at(c));
  }
  return out;
}

DecoratedPartition DecoratedPartition::parse(std::string_view text) {
  text = trim(text);
  std::vector<int> parts;
  std::map<int, int> eps;
  if (!text.empty()) {
    for (auto piece : split(text, ',')) {
      auto colon = piece.find(':');
      const int c = parse_int(piece.substr(0, colon));
      parts.push_back(c);
      if (colon == std::string_view::npos) continue;
      const int e = parse_int(piece.substr(colon + 1));
      auto [it, inserted] = eps.emplace(c, e);
      if (!inserted && it->second != e) {
        throw std::invalid_argument("inconsistent eps for part " + std::to_string(c));
      }
    }
  }
  return validate_decorated(Partition(std::move(parts)), eps);
}

DecoratedPartition validate_decorated(const Partition& c, const std::map<int, int>& eps) {
  for (int v = 2; v <= c.largest(); v += 2) {
    if (c.multiplicity(v) % 2 != 0) {
      throw std::invalid_argument("even part " + std::to_string(v) + " has odd multiplicity");
    }
  }
  for (const auto& [i, e] : eps) {
    if (i % 2 == 0) throw std::invalid_argument("eps given on even value " + std::to_string(i));
    if (c.multiplicity(i) == 0) throw std::invalid_argument("eps given on absent part " + std::to_string(i));
    if (e != 0 && e != 1) throw std::invalid_argument("eps values must be 0 or 1");
  }
  for (int i = 1; i <= c.largest(); i += 2) {
    const int mu = c.multiplicity(i);
    if (mu == 0) continue;
    auto it = eps.find(i);
    if (it == eps.end()) throw std::invalid_argument("missing eps for odd part " + std::to_string(i));
    if (mu % 2 == 1 && it->second != 1) {
      throw std::invalid_argument("eps(" + std::to_string(i) + ") must be 1: odd multiplicity");
    }
  }
  DecoratedPartition d;
  d.shape_ = c;
  d.eps_ = eps;
  return d;
}

bool decorated_closure_le(const DecoratedPartition& a, const DecoratedPartition& b) {
  const Partition& c = a.shape();
  const Partition& cp = b.shape();
  if (c.total() != cp.total()) throw std::invalid_argument("decorated_closure_le: totals differ");
  if (!dominance_le(c, cp)) return false;
  // Past largest + 1 both sides coincide (eps = -1, dual parts 0).
  const int top = std::max(c.largest(), cp.largest()) + 1;
  for (int i = 1; i <= top; ++i) {
    const int lhs = c.dual_prefix_sum(i);
    const int rhs = cp.dual_prefix_sum(i);
    if (lhs - std::max(a.eps_extended(i), 0) < rhs - std::max(b.eps_extended(i), 0)) return false;
    if (lhs == rhs && (c.dual_at(i + 1) - cp.dual_at(i + 1)) % 2 != 0 && b.eps_extended(i) == 0) {
      return false;
    }
  }
  return true;
}

std::vector<DecoratedPartition> decorated_partitions_of(int n) {
  std::vector<DecoratedPartition> out;
  for (const auto& c : partitions_of(n)) {
    if (!c.even_parts_paired()) continue;
    std::vector<int> free_parts;
    std::map<int, int> eps;
    for (int i = 1; i <= c.largest(); i += 2) {
      const int mu = c.multiplicity(i);
      if (mu == 0) continue;
      eps[i] = 1;
      if (mu % 2 == 0) free_parts.push_back(i);
    }
    const std::size_t choices = std::size_t{1} << free_parts.size();
    for (std::size_t mask = 0; mask < choices; ++mask) {
      for (std::size_t k = 0; k < free_parts.size(); ++k) eps[free_parts[k]] = (mask >> k) & 1U ? 0 : 1;
      out.push_back(validate_decorated(c, eps));
    }
  }
  return out;
}

}  // namespace twistmap
