#include "twistmap/classmaps.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "twistmap/errors.hpp"

namespace twistmap {

Partition phi_prime(const Partition& lambda) {
  std::vector<int> out;
  for (int part : lambda.parts()) {
    if (part % 2 == 1) {
      out.push_back(part);
    } else {
      out.push_back(part / 2);
      out.push_back(part / 2);
    }
  }
  return Partition::from_unsorted(std::move(out));
}

std::vector<Partition> fiber_phi_prime(const Partition& gamma) {
  if (!gamma.even_parts_paired()) return {};
  std::map<int, int> mult;
  for (int part : gamma.parts()) ++mult[part];
  std::vector<std::pair<int, int>> groups(mult.begin(), mult.end());

  // An unfused even value a would map to a/2,a/2, so even values fuse completely.
  std::vector<Partition> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      out.push_back(Partition::from_unsorted(parts));
      return;
    }
    const auto [a, m] = groups[g];
    const int lo = a % 2 == 0 ? m / 2 : 0;
    for (int k = lo; k <= m / 2; ++k) {
      const std::size_t mark = parts.size();
      parts.insert(parts.end(), static_cast<std::size_t>(k), 2 * a);
      parts.insert(parts.end(), static_cast<std::size_t>(m - 2 * k), a);
      self(self, g + 1);
      parts.resize(mark);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

PsiPrimeResult psi_prime(const Partition& gamma, const WeylBounds& bounds) {
  if (!gamma.even_parts_paired()) {
    throw std::invalid_argument("even part with odd multiplicity in " + gamma.to_string());
  }
  PsiPrimeResult res;
  const int n = gamma.total();
  for (const auto& lambda : fiber_phi_prime(gamma)) {
    res.fiber.emplace_back(lambda, mu_of_class(TwistedClassLabel{lambda}, n, bounds));
  }
  if (res.fiber.empty()) throw CheckFailure("empty fiber over " + gamma.to_string());
  int best = res.fiber.front().second;
  for (const auto& [lambda, mu] : res.fiber) best = std::min(best, mu);
  int hits = 0;
  for (const auto& [lambda, mu] : res.fiber) {
    if (mu == best) {
      ++hits;
      res.label = TwistedClassLabel{lambda};
    }
  }
  if (hits != 1) {
    throw CheckFailure("mu minimum over the fiber of " + gamma.to_string() + " attained " +
                       std::to_string(hits) + " times");
  }
  res.mu = best;
  return res;
}

Partition elliptic_jordan_type(const Partition& p) {
  odd_model_dimension(p);
  std::vector<int> parts;
  for (int part : p.parts()) parts.push_back(2 * part - 1);
  return Partition(std::move(parts));
}

DecoratedPartition phi_char2_elliptic(const Partition& p) {
  const Partition c = elliptic_jordan_type(p);
  std::map<int, int> eps;
  for (int part : c.parts()) eps[part] = 1;
  return validate_decorated(c, eps);
}

LengthDimension length_dimension_identity(const Partition& p) {
  const int n = odd_model_dimension(p);
  LengthDimension r;
  const int s = p.length();
  int weighted = 0;
  for (int i = 1; i <= s; ++i) weighted += (2 * i - 1) * p.part(i);
  r.ell = weighted - (s * s + s) / 2;
  r.ell_printed = weighted - (s * s - s) / 2;
  r.inversions = length(z_perm(p));

  const Partition f = elliptic_jordan_type(p).dual();
  long long sq = 0;
  long long odd = 0;
  for (int h = 1; h <= f.length(); ++h) {
    sq += 1LL * f.part(h) * f.part(h);
    if (h % 2 == 1) odd += f.part(h);
  }
  r.twice_d = sq - 2 * odd + n;
  if (r.twice_d % 2 != 0) throw CheckFailure("centralizer dimension is not an integer for " + p.to_string());
  r.d = static_cast<int>(r.twice_d / 2);
  return r;
}

std::vector<Partition> model_partitions(int n) {
  std::vector<Partition> out;
  for (int s = 1; s <= n; ++s) {
    if ((n + s) % 2 != 0) continue;
    for (const auto& p : partitions_of((n + s) / 2)) {
      if (p.length() == s) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace {

const std::vector<PhiTableEntry> kE6 = {
    {"2A_1", "γ_52", false},        {"4A_1", "γ_52", false},
    {"A_0!", "γ_36", false},        {"A_1", "γ_36", false},
    {"3A_1", "γ_36", false},        {"A_32A_1", "γ_30", false},
    {"A_3A_1", "γ_24", false},      {"D_4", "γ_28", false},
    {"A_3", "γ_22^20", false},      {"D_4(a_1)!", "γ_18", false},
    {"D_5(a_1)", "γ_18", false},    {"A_5A_1", "γ_22^14", false},
    {"E_6(a_2)!", "γ_16^14", false}, {"A_5", "γ_16^14", false},
    {"A_2!", "γ_16^12", false},     {"A_22A_1", "γ_16^12", false},
    {"A_2A_1", "γ_16^12", false},   {"2A_2!", "γ_14", false},
    {"2A_2A_1", "γ_14", false},     {"3A_2!", "γ_12", true},
    {"A_4A_1", "γ_10^8", false},    {"D_5", "γ_10^9", false},
    {"A_4!", "γ_8", true},          {"E_6!", "γ_6", true},
    {"E_6(a_1)!", "γ_4", true},
};

const std::vector<PhiTableEntry> kD4 = {
    {"Ã_2", "γ_14", false},  {"Ã_2A_2!", "γ_8", false}, {"Ã_2A_1", "γ_8", false},
    {"C_3A_1!", "γ_6", false}, {"C_3", "γ_6", false},    {"F_4(a_1)!", "γ_4", true},
    {"F_4!", "γ_2", true},
};

const std::vector<std::string> kE6Targets = {"γ_52", "γ_36", "γ_30", "γ_28", "γ_24", "γ_22^20",
                                             "γ_22^14", "γ_18", "γ_16^14", "γ_16^12", "γ_14", "γ_12",
                                             "γ_10^8", "γ_10^9", "γ_8", "γ_6", "γ_4"};
const std::vector<std::string> kD4Targets = {"γ_14", "γ_8", "γ_6", "γ_4", "γ_2"};

std::string normalize_name(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '_' || c == ' ') continue;
    if ((c == '~' || c == 't') && i + 1 < s.size() && s[i + 1] == 'A') {
      out += "Ã";
      ++i;
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

const std::vector<PhiTableEntry>& exceptional_phi_table(ExceptionalCase c) {
  return c == ExceptionalCase::E6_p2 ? kE6 : kD4;
}

std::vector<std::string> exceptional_targets(ExceptionalCase c) {
  return c == ExceptionalCase::E6_p2 ? kE6Targets : kD4Targets;
}

std::uint64_t table_checksum(ExceptionalCase c) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& e : exceptional_phi_table(c)) {
    feed(e.class_name);
    feed("|");
    feed(e.target_name);
    feed(e.distinguished ? "|dist\n" : "|\n");
  }
  return h;
}

const PhiTableEntry& exceptional_lookup(ExceptionalCase c, std::string_view class_name) {
  const std::string key = normalize_name(class_name);
  for (const auto& e : exceptional_phi_table(c)) {
    if (normalize_name(e.class_name) == key) return e;
  }
  throw std::out_of_range("unknown class name: " + std::string(class_name));
}

ExceptionalCase parse_exceptional_case(std::string_view name) {
  std::string s;
  for (char ch : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "e6" || s == "e6_p2") return ExceptionalCase::E6_p2;
  if (s == "d4" || s == "d4_p3") return ExceptionalCase::D4_p3;
  throw std::invalid_argument("unknown table: " + std::string(name));
}

}  // namespace twistmap
