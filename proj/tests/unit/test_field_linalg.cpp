#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "twistmap/errors.hpp"
#include "twistmap/field.hpp"
#include "twistmap/linalg.hpp"

using namespace twistmap;

namespace {

std::vector<int> digits(int v, int p, int e) {
  std::vector<int> d(e);
  for (int k = 0; k < e; ++k, v /= p) d[k] = v % p;
  return d;
}

Matrix random_matrix(const FiniteField& f, int r, int c, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, f.size() - 1);
  Matrix m(f, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<Elem>(pick(rng));
  return m;
}

std::vector<Vec> all_vectors(const FiniteField& f, int n) {
  std::vector<Vec> out;
  int total = 1;
  for (int k = 0; k < n; ++k) total *= f.size();
  for (int code = 0; code < total; ++code) {
    Vec v(n);
    for (int k = 0, c = code; k < n; ++k, c /= f.size()) v[k] = static_cast<Elem>(c % f.size());
    out.push_back(v);
  }
  return out;
}

std::uint64_t gl_size(int q, int n) {
  std::uint64_t qn = 1;
  for (int k = 0; k < n; ++k) qn *= q;
  std::uint64_t order = 1;
  for (std::uint64_t qi = 1; qi < qn; qi *= q) order *= qn - qi;
  return order;
}

}  // namespace

TEST_CASE("field axioms") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    const FiniteField& f = FiniteField::get(p, e);
    CAPTURE(f.name());
    CHECK(f.size() == static_cast<int>(std::pow(p, e)));
    for (int a = 0; a < f.size(); ++a) {
      const Elem x = static_cast<Elem>(a);
      CHECK(f.pow(x, f.size()) == x);
      CHECK(f.add(x, f.neg(x)) == 0);
      if (x != 0) CHECK(f.mul(x, f.inv(x)) == 1);
      for (int b = 0; b < f.size(); ++b) {
        const Elem y = static_cast<Elem>(b);
        // Addition is coefficientwise mod p in this encoding.
        const auto dx = digits(a, p, e);
        const auto dy = digits(b, p, e);
        const auto ds = digits(f.add(x, y), p, e);
        for (int k = 0; k < e; ++k) CHECK(ds[k] == (dx[k] + dy[k]) % p);
        CHECK(f.mul(x, y) == f.mul(y, x));
        for (int c = 0; c < f.size(); ++c) {
          const Elem z = static_cast<Elem>(c);
          CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
          CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
        }
      }
    }
    CHECK(f.order(f.primitive()) == f.size() - 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
  }
}

TEST_CASE("prime field matches integers mod p") {
  const FiniteField& f = FiniteField::get(7, 1);
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) CHECK(f.mul(a, b) == (a * b) % 7);
  CHECK(f.from_int(-1) == 6);
  const FiniteField& g = FiniteField::get(3, 2);
  CHECK(g.from_int(5) == 2);
}

TEST_CASE("subfield embeddings are ring maps") {
  for (auto [p, sub, big] : std::vector<std::tuple<int, int, int>>{{2, 1, 2}, {2, 2, 4}, {2, 1, 3}, {3, 1, 2}, {2, 3, 6}}) {
    const FiniteField& s = FiniteField::get(p, sub);
    const FiniteField& b = FiniteField::get(p, big);
    const auto emb = b.embedding_of(s);
    std::set<Elem> image(emb.begin(), emb.end());
    CHECK(image.size() == static_cast<std::size_t>(s.size()));
    for (int x = 0; x < s.size(); ++x) {
      for (int y = 0; y < s.size(); ++y) {
        CHECK(emb[s.add(x, y)] == b.add(emb[x], emb[y]));
        CHECK(emb[s.mul(x, y)] == b.mul(emb[x], emb[y]));
      }
    }
  }
}

TEST_CASE("matrix inverse, rank and kernel") {
  std::mt19937 rng(7);
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const FiniteField& f = FiniteField::get(p, e);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 1 + trial % 5;
      const Matrix m = random_matrix(f, n, n, rng);
      if (m.invertible()) {
        CHECK(m * m.inverse() == Matrix::identity(f, n));
        CHECK(m.inverse() * m == Matrix::identity(f, n));
        CHECK(m.transpose().inverse() == m.inverse().transpose());
      } else {
        CHECK_THROWS_AS(m.inverse(), std::domain_error);
      }
      const Matrix r = random_matrix(f, n, n + 2, rng);
      const auto ker = r.kernel();
      CHECK(r.rank() + static_cast<int>(ker.size()) == n + 2);
      for (const auto& v : ker) CHECK(is_zero(r.apply(v)));
      CHECK(r.rref().rref() == r.rref());
      CHECK(r.rref().rows() == r.rank());
    }
  }
}

TEST_CASE("subspace operations agree with brute force membership") {
  std::mt19937 rng(11);
  const FiniteField& f = FiniteField::get(2, 1);
  const int n = 4;
  const auto vectors = all_vectors(f, n);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vec> ua;
    std::vector<Vec> wa;
    for (int k = 0; k < 2; ++k) {
      ua.push_back(random_matrix(f, n, 1, rng).column(0));
      wa.push_back(random_matrix(f, n, 1, rng).column(0));
    }
    const Subspace U = Subspace::span(f, n, ua);
    const Subspace W = Subspace::span(f, n, wa);
    const Subspace I = U.intersect(W);
    const Subspace S = U.sum(W);
    CHECK(S.dim() + I.dim() == U.dim() + W.dim());
    CHECK(U.perp().dim() == n - U.dim());
    CHECK(U.perp().perp() == U);
    for (const auto& v : vectors) {
      CHECK(I.contains(v) == (U.contains(v) && W.contains(v)));
      bool orth = true;
      for (const auto& b : U.basis()) orth = orth && dot(f, v, b) == 0;
      CHECK(U.perp().contains(v) == orth);
    }
  }
  CHECK(Subspace::zero(f, 3).dim() == 0);
  CHECK(Subspace::whole(f, 3).dim() == 3);
  CHECK(normalize_projective(FiniteField::get(3, 1), {0, 2, 1}) == Vec{0, 1, 2});
}

TEST_CASE("matrix encoding and GL enumeration") {
  const FiniteField& f = FiniteField::get(3, 1);
  for (std::uint64_t code : {0ULL, 1ULL, 4000ULL, 19682ULL}) CHECK(encode_matrix(decode_matrix(f, 3, code)) == code);
  CHECK(enumerate_invertible(FiniteField::get(2, 1), 3, 1000).size() == gl_size(2, 3));
  CHECK(enumerate_invertible(f, 2, 1000).size() == gl_size(3, 2));
  CHECK_THROWS_AS(enumerate_invertible(f, 3, 100), BoundExceeded);
}

TEST_CASE("gl_generators generate GL_n") {
  for (auto [p, e, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {2, 1, 2}}) {
    const FiniteField& f = FiniteField::get(p, e);
    const auto gens = gl_generators(f, n);
    std::set<std::uint64_t> seen{encode_matrix(Matrix::identity(f, n))};
    std::deque<Matrix> queue{Matrix::identity(f, n)};
    while (!queue.empty()) {
      const Matrix m = queue.front();
      queue.pop_front();
      for (const auto& g : gens) {
        const Matrix h = g * m;
        if (seen.insert(encode_matrix(h)).second) queue.push_back(h);
      }
    }
    CHECK(seen.size() == gl_size(f.size(), n));
  }
}
