#pragma once

// Filtered tensor products of evaluation modules, fusion products, and their
// bigraded characters.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusion/exact.hpp"
#include "fusion/lie.hpp"

namespace fusion {

/// Filtration F^0 of the tensor space, stored block by block. A block collects
/// the basis vectors with one value of (Cartan weights, labels, aux). Inside a
/// block every filtration vector is kept in echelon form together with the
/// level at which it entered; the level-i vectors span a complement of F^{i-1}
/// in F^i.
class Filtration {
 public:
  struct Row {
    Vec v;               // coordinates inside the block, pivot entry = 1
    std::size_t pivot;   // first nonzero coordinate
    int level;
  };
  struct Block {
    std::vector<int> key;
    std::vector<std::size_t> indices;  // global tensor indices, ascending
    std::vector<Row> rows;             // sorted by pivot
  };
  /// How block keys are composed: cartan_count Cartan eigenvalues, then
  /// label_count labels, then aux when has_aux.
  struct KeyLayout {
    std::size_t cartan_count = 0;
    std::size_t label_count = 0;
    bool has_aux = false;
    bool cartan_diagonal = false;
  };

  std::size_t ambient_dim() const { return ambient_; }
  /// Terminal index D, F^D = whole space.
  int depth() const { return static_cast<int>(dims_.size()) - 1; }
  /// dim F^0, ..., dim F^D.
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t t_cutoff() const { return cutoff_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const KeyLayout& layout() const { return layout_; }
  const std::vector<CyclicModule>& factors() const { return factors_; }
  const EvaluationPoints& points() const { return points_; }

  /// F^i as an explicit subspace of the tensor space (i > depth gives everything).
  Subspace subspace(int i) const;
  /// Global coordinates of the level-i complement vectors.
  std::vector<Vec> level_vectors(int i) const;

 private:
  friend Filtration filtered_tensor(const std::vector<CyclicModule>&, const EvaluationPoints&);
  friend class FiltrationBuilder;

  std::vector<CyclicModule> factors_;
  EvaluationPoints points_;
  std::size_t ambient_ = 0;
  std::size_t cutoff_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Block> blocks_;
  KeyLayout layout_;
};

/// F^0 = U(a) v, F^i = U(a)(F^{i-1} + sum_{k=1..K} (a t^k) F^{i-k}) with
/// K = sum_i (D_i + 1) - 1. Throws InputError on repeated points or
/// incompatible modules, InvariantViolation when v does not generate.
Filtration filtered_tensor(const std::vector<CyclicModule>& modules, const EvaluationPoints& z);

/// gr F as a graded cyclic module; basis ordered by level, block key, pivot.
CyclicModule fuse(const std::vector<CyclicModule>& modules, const EvaluationPoints& z);
CyclicModule fuse(const Filtration& flt);

struct CharKey {
  std::vector<int> weight;
  int tdeg = 0;
  std::optional<int> aux;
  friend auto operator<=>(const CharKey&, const CharKey&) = default;
  friend bool operator==(const CharKey&, const CharKey&) = default;
};

/// Multiplicity table over (weight, t-degree, aux). The weight vector lists the
/// Cartan eigenvalues (or the chosen weight generator) followed by labels.
struct BigradedChar {
  std::string algebra;
  std::size_t cartan_count = 0;
  std::size_t label_count = 0;
  std::map<CharKey, std::int64_t> entries;

  std::int64_t total() const;
  /// Sum over t-degrees for each weight (aux dropped).
  std::map<std::vector<int>, std::int64_t> at_q_one() const;
  /// Drops the aux axis.
  BigradedChar without_aux() const;
  friend bool operator==(const BigradedChar&, const BigradedChar&) = default;
};

struct CharOptions {
  bool aux = false;
  /// Restrict the weight to one Cartan generator (index into the presentation).
  std::optional<std::size_t> weight_generator;
};

BigradedChar bigraded_character(const Filtration& flt, CharOptions opts = {});
/// Character of a t-graded module (e.g. a fusion product); ungraded modules sit in degree 0.
BigradedChar bigraded_character(const CyclicModule& m, CharOptions opts = {});

/// ch(z, q) = sum dim V_{r,s} z^r q^s. For one Cartan coordinate r = (top - mu)/2;
/// for label-only weights r is the total label degree.
BiPoly zq_polynomial(const BigradedChar& ch);

/// Rewrites an sl_{n+1} character of a product of symmetric powers with total
/// degree `total` in the multidegree coordinates a_1..a_n of e_0^{b_0} e^a,
/// so it can be compared with the abelian character.
BigradedChar sl_to_multidegree(const BigradedChar& ch, int total);

/// Highest-weight multiplicities in each (t-degree, aux) slice, for sl2 and
/// sl2 (+) sl2. Keys carry the highest weight in `weight`.
std::map<CharKey, std::int64_t> gr_decompose(const BigradedChar& ch);

/// eta -> c_q(eta) with exponents (q, aux); the aux exponent is 0 without aux.
struct KostkaTable {
  bool aux = false;
  std::map<std::vector<int>, BiPoly> entries;

  /// c_q(eta) with the aux variable set to 1.
  QPoly plain(const std::vector<int>& eta) const;
};

KostkaTable kostka_from_char(const BigradedChar& ch);
KostkaTable kostka_table(const std::vector<CyclicModule>& modules, const EvaluationPoints& z,
                         bool aux = false);

struct IndependenceReport {
  bool agree = true;
  std::vector<EvaluationPoints> samples;
  std::optional<std::pair<std::size_t, std::size_t>> disagreeing;  // indices into samples
};

/// Characters at n_samples random point sets (seeds seed, seed+1, ...).
IndependenceReport z_independence(const std::vector<CyclicModule>& modules,
                                  std::size_t n_samples, std::uint64_t seed);

}  // namespace fusion
