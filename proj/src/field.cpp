#include "twistmap/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace twistmap {

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<int>;  // low degree first, coefficients mod p

Poly digits(int value, int p, int len) {
  Poly out(static_cast<std::size_t>(len), 0);
  for (int k = 0; k < len; ++k) {
    out[static_cast<std::size_t>(k)] = value % p;
    value /= p;
  }
  return out;
}

int undigits(const Poly& d, int p) {
  int v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

// Multiplies a residue (length degree) by x modulo the monic modulus.
Poly times_x(const Poly& a, const Poly& modulus, int p) {
  const std::size_t deg = a.size();
  Poly out(deg, 0);
  const int carry = a[deg - 1];
  for (std::size_t k = deg - 1; k > 0; --k) out[k] = a[k - 1];
  out[0] = 0;
  for (std::size_t k = 0; k < deg; ++k) out[k] = ((out[k] - carry * modulus[k]) % p + p) % p;
  return out;
}

}  // namespace

FiniteField::FiniteField(int p, int degree) : p_(p), degree_(degree) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (degree < 1) throw std::invalid_argument("field degree must be positive");
  long long sz = 1;
  for (int k = 0; k < degree; ++k) sz *= p;
  if (sz > 1024) throw std::invalid_argument("field size above 1024 is not supported");
  size_ = static_cast<int>(sz);

  add_.resize(static_cast<std::size_t>(size_) * size_);
  neg_.resize(static_cast<std::size_t>(size_));
  for (int a = 0; a < size_; ++a) {
    const Poly da = digits(a, p, degree);
    Poly dn(da.size());
    for (std::size_t k = 0; k < da.size(); ++k) dn[k] = (p - da[k]) % p;
    neg_[static_cast<std::size_t>(a)] = static_cast<Elem>(undigits(dn, p));
    for (int b = 0; b < size_; ++b) {
      const Poly db = digits(b, p, degree);
      Poly ds(da.size());
      for (std::size_t k = 0; k < da.size(); ++k) ds[k] = (da[k] + db[k]) % p;
      add_[idx(static_cast<Elem>(a), static_cast<Elem>(b))] = static_cast<Elem>(undigits(ds, p));
    }
  }

  // First monic polynomial (lexicographic in the lower coefficients) for which
  // x generates the multiplicative group.
  const int group = size_ - 1;
  for (int low = 0; low < size_; ++low) {
    Poly mod = digits(low, p, degree);
    mod.push_back(1);
    if (mod[0] == 0 && size_ > 2) continue;
    Poly cur(static_cast<std::size_t>(degree), 0);
    cur[0] = 1;
    std::vector<Elem> powers;
    std::vector<bool> seen(static_cast<std::size_t>(size_), false);
    bool ok = true;
    for (int k = 0; k < group; ++k) {
      const int v = undigits(cur, p);
      if (v == 0 || seen[static_cast<std::size_t>(v)]) {
        ok = false;
        break;
      }
      seen[static_cast<std::size_t>(v)] = true;
      powers.push_back(static_cast<Elem>(v));
      cur = degree == 1 ? Poly{(cur[0] * ((p - mod[0]) % p)) % p} : times_x(cur, mod, p);
    }
    if (!ok || undigits(cur, p) != 1) continue;
    modulus_ = mod;
    log_.assign(static_cast<std::size_t>(size_), -1);
    exp_.resize(static_cast<std::size_t>(2 * group));
    for (int k = 0; k < group; ++k) {
      log_[powers[static_cast<std::size_t>(k)]] = k;
      exp_[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k)];
      exp_[static_cast<std::size_t>(k + group)] = powers[static_cast<std::size_t>(k)];
    }
    return;
  }
  throw std::logic_error("no primitive polynomial found");
}

const FiniteField& FiniteField::get(int p, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FiniteField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, degree}];
  if (!slot) slot = std::make_unique<FiniteField>(p, degree);
  return *slot;
}

std::string FiniteField::name() const {
  return "F" + std::to_string(p_) + "^" + std::to_string(degree_);
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  const int group = size_ - 1;
  return exp_[static_cast<std::size_t>((group - log_[a]) % group)];
}

Elem FiniteField::pow(Elem a, long long k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) throw std::domain_error("negative power of zero");
    return 0;
  }
  const long long group = size_ - 1;
  long long e = (static_cast<long long>(log_[a]) * (k % group)) % group;
  if (e < 0) e += group;
  return exp_[static_cast<std::size_t>(e)];
}

Elem FiniteField::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

long long FiniteField::order(Elem a) const {
  if (a == 0) return 0;
  long long k = 1;
  Elem x = a;
  while (x != 1) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::vector<Elem> FiniteField::embedding_of(const FiniteField& sub) const {
  if (sub.p_ != p_ || degree_ % sub.degree_ != 0) {
    throw std::invalid_argument(sub.name() + " is not a subfield of " + name());
  }
  // Find a root of the subfield's modulus; its powers realise the embedding.
  const int k = sub.degree_;
  for (int cand = 0; cand < size_; ++cand) {
    const auto c = static_cast<Elem>(cand);
    Elem val = 0;
    Elem xp = 1;
    for (int j = 0; j <= k; ++j) {
      val = add(val, mul(from_int(sub.modulus_[static_cast<std::size_t>(j)]), xp));
      xp = mul(xp, c);
    }
    if (val != 0) continue;
    std::vector<Elem> map(static_cast<std::size_t>(sub.size_));
    for (int a = 0; a < sub.size_; ++a) {
      const Poly d = digits(a, p_, k);
      Elem img = 0;
      Elem cp = 1;
      for (int j = 0; j < k; ++j) {
        img = add(img, mul(from_int(d[static_cast<std::size_t>(j)]), cp));
        cp = mul(cp, c);
      }
      map[static_cast<std::size_t>(a)] = img;
    }
    return map;
  }
  throw std::logic_error("subfield modulus has no root");
}

}  // namespace twistmap
