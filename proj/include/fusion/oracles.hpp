#pragma once

// Independent routes to fusion characters of sl2 irreps: the character
// recurrence, the Demazure-type induction step, and the quotient of the
// polynomial ring in f-bar variables by the psi-relation ideal.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fusion/exact.hpp"
#include "fusion/filtration.hpp"

namespace fusion {

/// ch(z, q) of the fusion product of sl2 irreps with the given dimensions, via
/// ch(P, d) = ch(P; qz, q) + z ch(P, d-1) with d the largest dimension.
/// Dimension-1 factors are dropped; the empty product is 1.
BiPoly recurrence_char(std::vector<int> dims);

/// One induction step on a (weight, t-degree) character of sl2: twist the
/// t-degree by the f-degree, shift weights by lambda, then take
/// (dim_i - dim_{-i-2}) copies of pi(i) in each t-degree.
/// Throws InvariantViolation on a negative multiplicity.
BigradedChar demazure_step_char(const BigradedChar& ch_s, int lambda);
/// Iterates demazure_step_char from the trivial character over the sorted weights.
BigradedChar demazure_iterate(std::vector<int> lambdas);
BigradedChar trivial_sl2_char();

/// (f-degree r, t-degree s) -> multiplicity.
struct FBigradedChar {
  std::map<std::pair<int, int>, std::int64_t> entries;

  std::int64_t total() const;
  static FBigradedChar from_zq(const BiPoly& ch);
  BiPoly to_zq() const;
  friend bool operator==(const FBigradedChar&, const FBigradedChar&) = default;
};

struct PsiIdealSpec {
  int k = 1;               // relations psi_{k+1}(s) for all s
  std::optional<int> j;    // extra relation psi_{j+1}(0)
  int N = 1;               // retained variables f-bar_0 .. f-bar_{N-1}
  /// Exploratory relations psi_order(s), each added as a single generator.
  std::vector<std::pair<int, int>> extra;

  void validate() const;
  /// (j+1)(k+1)^{N-1}, or (k+1)^N without j.
  std::int64_t expected_total() const;
  /// Largest f-degree with a nonzero quotient: j + k(N-1), or kN.
  int default_max_r() const;
};

struct PsiCellStats {
  int r = 0, s = 0;
  int bound = 0;            // index bound B at which the sandwich closed
  std::size_t columns = 0;  // monomials at that bound
  std::size_t rows = 0;     // ideal generators at that bound
};

struct PsiResult {
  FBigradedChar ch;
  std::int64_t expected_total = 0;
  std::vector<PsiCellStats> cells;
};

/// Dimension of the image of C[f-bar_0..f-bar_{N-1}] in each bidegree of
/// C[f-bar_0, f-bar_1, ...] / I. Cells are computed with an increasing index
/// bound B: a sub-ideal gives an upper bound, truncation f-bar_{>B} = 0 a lower
/// bound, and B = s is the unrestricted computation. Negative max values pick
/// the defaults default_max_r() and max_r (N-1).
PsiResult psi_quotient(const PsiIdealSpec& spec, int max_r = -1, int max_s = -1);
FBigradedChar psi_quotient_char(const PsiIdealSpec& spec, int max_r = -1, int max_s = -1);

/// (r, s) -> (r, r(N-1) - s). Throws InputError when s is outside 0..r(N-1).
FBigradedChar psi_to_fusion_grading(const FBigradedChar& ch, int N);

}  // namespace fusion
