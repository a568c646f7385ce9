#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twistmap/linalg.hpp"
#include "twistmap/partition.hpp"
#include "twistmap/semilinear.hpp"
#include "twistmap/weyl.hpp"

namespace twistmap {

/// A complete flag 0 = V_0 < V_1 < ... < V_n = F^n, stored by its canonical
/// adapted basis: b_i spans V_i modulo V_{i-1}, vanishes at the pivots of
/// b_1..b_{i-1} and has leading coordinate 1. Equal flags have equal bases.
class Flag {
 public:
  Flag() = default;
  /// Flag spanned by the prefixes of a basis. Throws if the vectors are dependent.
  static Flag from_basis(const FiniteField& f, const std::vector<Vec>& vectors);
  /// Flag from V_0..V_n; throws std::invalid_argument unless it is a strict chain.
  static Flag from_chain(const std::vector<Subspace>& chain);
  /// The coordinate flag V_i = span(e_1..e_i).
  static Flag standard(const FiniteField& f, int n);

  const FiniteField& field() const { return *field_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }
  Subspace subspace(int i) const;
  std::string to_string() const;

  friend bool operator==(const Flag& a, const Flag& b) { return a.basis_ == b.basis_; }
  friend bool operator<(const Flag& a, const Flag& b) { return a.basis_ < b.basis_; }

 private:
  const FiniteField* field_ = nullptr;
  std::vector<Vec> basis_;
};

using FlagPair = std::pair<Flag, Flag>;

/// Size limits for the exhaustive enumerations.
struct VarietyBounds {
  std::uint64_t max_flags = 1'000'000;
  std::uint64_t max_tuples = 10'000'000;
  std::uint64_t max_matrices = 10'000'000;
};

/// Number of complete flags of F^n, i.e. the q-factorial [n]_Q!.
std::uint64_t flag_count(const FiniteField& f, int n);
std::vector<Flag> enumerate_flags(const FiniteField& f, int n, const VarietyBounds& bounds = {});
/// Projective representatives of lines of F^n (first nonzero coordinate 1).
std::vector<Vec> enumerate_lines(const FiniteField& f, int n);

/// The w with dim(b_j meet a_{w(j)}) = dim(b_j meet a_{w(j)-1}) + 1 for all j,
/// where a is the unprimed and b the primed flag.
Permutation relative_position(const Flag& a, const Flag& b);

/// (g.V)_i = g V_i for even degree and (g V_{n-i})^perp for odd degree.
Flag g_dot_flag(const SemilinearElement& g, const Flag& f);

/// sigma vectors spanning the lines L_1..L_sigma.
struct LineSequence {
  std::vector<Vec> vectors;
  /// Same lines, compared projectively.
  bool same_lines(const LineSequence& other, const FiniteField& f) const;
};

bool line_sequence_is_valid(StarPowers& powers, const LineSequence& lines, const Partition& p);
bool line_sequence_is_valid(const SemilinearElement& g, const LineSequence& lines, const Partition& p);

/// The lines g^{*(-2p_k+2h)} L_k, h in [0, 2p_k - 2], form a direct sum decomposition.
bool is_direct_sum_decomposition(StarPowers& powers, const LineSequence& lines, const Partition& p);

/// The flag pair built from the four sum/perp formulas. Throws
/// std::invalid_argument on an invalid line sequence and CheckFailure if the
/// result is not a point of X_g.
FlagPair lines_to_flags(const SemilinearElement& g, const LineSequence& lines, const Partition& p);

/// Canonical vectors of a point of X_g. pairing[r] holds
/// (v_r, g^{*(2p_r-1)} v_r); it is 1 when the working field allows the
/// normalization, and the raw scalar otherwise.
struct CanonicalVectors {
  LineSequence lines;
  std::vector<Elem> pairing;
  bool normalized = true;
};

/// Throws CheckFailure when the pair is not a point of X_g for z_perm(p).
CanonicalVectors flags_to_lines(const SemilinearElement& g, const FlagPair& pair, const Partition& p);

/// All six conditions on canonical vectors: the two flag descriptions, the
/// complement property, the two vanishing families and the normalization.
bool canonical_vectors_hold(const SemilinearElement& g, const FlagPair& pair, const Partition& p,
                            const CanonicalVectors& cv);

/// Points of X_g over the working field.
std::vector<FlagPair> enumerate_X_g(const SemilinearElement& g, const Partition& p,
                                    const VarietyBounds& bounds = {});
/// Valid line sequences, one projective representative per line.
std::vector<LineSequence> enumerate_S_g(const SemilinearElement& g, const Partition& p,
                                        const VarietyBounds& bounds = {});

/// Standard lines of the binomial model: v_r = g^{*2} z^r_{p_r - 1}.
LineSequence standard_lines(const SemilinearElement& g, const Partition& p);

struct TransitivityReport {
  std::uint64_t elements = 0;  // elements of G^1 with the Jordan type of the representative
  std::uint64_t pairs = 0;     // (g, V) with (V, g.V) in relative position z_perm(p)
  std::uint64_t orbits = 0;
  bool transitive() const { return pairs > 0 && orbits == 1; }
};

/// Orbit count of GL_n acting by x:(g, V) -> (x*g*x^{*(-1)}, xV) on pairs whose
/// g^{*2} has the Jordan type of the representative. Requires q == 1.
TransitivityReport transitivity_check(const SemilinearElement& g_class_rep, const Partition& p,
                                      const VarietyBounds& bounds = {});

/// The map T sending the basis z^t_i of g to that of g_tilde, both built from
/// the canonical vectors of the shared flag pair. Throws CheckFailure unless
/// g = check(T)^{-1} g_tilde T and T fixes both flags.
Matrix rigidity_map(const SemilinearElement& g, const SemilinearElement& g_tilde, const FlagPair& pair,
                    const Partition& p);

/// Point counts of the unitary model over F_{q^{2m}} with g the identity
/// matrix in degree 1.
struct UnitaryCount {
  int m = 0;
  int field_size = 0;
  std::uint64_t x_flags = 0;
  std::uint64_t x_lines = 0;
  std::uint64_t x_tilde = 0;
  std::uint64_t lambda_rational = 0;  // |Lambda(F_{q^{2m}})|
  std::uint64_t lambda_full = 0;      // prod (q^{2p_r-1} + 1)
  bool free_action = false;
  /// fiber size -> number of points of X with that fiber
  std::map<std::uint64_t, std::uint64_t> fibers;
  bool product_formula() const { return x_tilde == x_lines * lambda_full; }
};

UnitaryCount count_unitary_dl(int n, int q, const Partition& p, int m, const VarietyBounds& bounds = {});

/// The hermitian form <x, y> = (x, g y).
Elem hermitian(const SemilinearElement& g, const Vec& x, const Vec& y);

}  // namespace twistmap
