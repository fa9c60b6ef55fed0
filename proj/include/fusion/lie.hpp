#pragma once

// Lie algebra presentations, cyclic (possibly t-graded) modules over their
// current algebras, the module families used throughout, and the matrices of
// a (x) t^k on tensor products of evaluation modules.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusion/exact.hpp"

namespace fusion {

/// Finite-dimensional Lie algebra given by structure constants
/// [g_a, g_b] = sum_c bracket[a][b][c] g_c.
struct LiePresentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::vector<Vec>> bracket;
  std::vector<std::size_t> cartan;   // commuting, diagonal in every built module
  std::vector<std::size_t> raising;  // kill the highest vector

  std::size_t size() const { return generators.size(); }
  /// Index of a generator by name; throws InputError if absent.
  std::size_t index_of(const std::string& gen) const;

  /// Derives structure constants from a faithful matrix realization. The
  /// matrices must be linearly independent and closed under commutators.
  static LiePresentation from_matrices(std::string name, std::vector<std::string> generators,
                                       const std::vector<Mat>& mats,
                                       std::vector<std::size_t> cartan,
                                       std::vector<std::size_t> raising);

  /// Violations of antisymmetry or the Jacobi identity; empty when consistent.
  std::vector<std::string> check() const;
};

using Presentation = std::shared_ptr<const LiePresentation>;

/// sl2 with generators (e, f, h).
Presentation sl2_algebra();
/// sl2 (+) sl2 with generators (e1, f1, h1, e2, f2, h2).
Presentation sl2_pair_algebra();
/// Abelian algebra with generators x1..xn.
Presentation abelian_algebra(std::size_t n);
/// sl_{n+1}: raising E_ij (i<j), then h_1..h_n, then lowering E_ij (i>j).
Presentation sl_algebra(std::size_t n);

/// Representation of the current algebra a (x) C[t] with a distinguished
/// cyclic vector. action[g][r] is the matrix of g (x) t^r for r = 0..max_tdeg();
/// higher powers act by zero. Ungraded modules carry only r = 0.
struct CyclicModule {
  Presentation algebra;
  std::size_t dim = 0;
  std::vector<std::vector<Mat>> action;
  Vec cyclic;
  std::optional<std::vector<int>> t_grading;
  std::optional<std::vector<int>> aux_grading;
  /// Extra integer labels per basis vector (multidegree for abelian modules).
  std::optional<std::vector<std::vector<int>>> labels;
  /// Human-readable origin, e.g. "sl2:3".
  std::string descriptor;

  /// Largest r with g (x) t^r possibly nonzero (0 for ungraded modules).
  std::size_t max_tdeg() const { return action.empty() ? 0 : action.front().size() - 1; }
  const Mat& op(std::size_t gen, std::size_t r = 0) const { return action.at(gen).at(r); }
};

/// Irreducible sl2 module of highest weight m. Basis v_i = f^i v, i = 0..m;
/// f v_i = v_{i+1}, e v_i = i(m-i+1) v_{i-1}, h v_i = (m-2i) v_i.
CyclicModule build_sl2_irrep(int m);
/// N_k = sum of irreps 0..k with cyclic vector the sum of highest vectors and
/// aux grading equal to the summand's highest weight. With doubled, the
/// sl2 (+) sl2 module sum_eta pi_eta (x) pi_eta instead.
CyclicModule build_level_sum(int k, bool doubled);
/// C[x_1..x_n] / (degree > r) over the abelian algebra; cyclic vector 1.
/// Basis ordered by total degree, then lexicographically (x_1 first).
CyclicModule build_abelian_powers(std::size_t n, int r);
/// Sym^r(C^{n+1}) over sl_{n+1}; cyclic vector e_0^r. Basis ordered like
/// build_abelian_powers(n, r) under e_0^{r-|a|} e^a <-> x^a.
CyclicModule build_slN_sym(std::size_t n, int r);

/// Pairwise-distinct evaluation points.
struct EvaluationPoints {
  std::vector<Rat> z;

  std::size_t size() const { return z.size(); }
  /// Throws InputError on a repeated point.
  void validate() const;
  static EvaluationPoints defaults(std::size_t n);  // z_i = i, 1-based
  /// Distinct rationals p/q with |p| <= 1000, 1 <= q <= 1000 from a seeded mt19937_64.
  static EvaluationPoints random(std::size_t n, std::uint64_t seed);
  static EvaluationPoints parse(const std::string& csv);
  std::string to_string() const;
};

struct CurrentOperator {
  std::size_t generator = 0;
  std::size_t power = 0;
};

/// Sparse column-major operator on the tensor-product space.
struct SparseOp {
  std::size_t dim = 0;
  std::vector<std::vector<std::pair<std::size_t, Rat>>> columns;

  Mat dense() const;
};

/// Mixed-radix tensor basis helper: global index <-> per-factor digits.
struct TensorShape {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> strides;

  explicit TensorShape(std::vector<std::size_t> factor_dims);
  std::size_t total() const;
  std::size_t digit(std::size_t index, std::size_t factor) const {
    return (index / strides[factor]) % dims[factor];
  }
};

/// a (x) t^k on pi_1(z_1) (x) ... (x) pi_n(z_n), with
/// a t^k (u) = sum_i sum_r C(k,r) z_i^{k-r} (a t^r)^{(i)} u.
SparseOp current_op_sparse(const std::vector<CyclicModule>& modules, const EvaluationPoints& z,
                           CurrentOperator op);
Mat current_op_matrix(const std::vector<CyclicModule>& modules, const EvaluationPoints& z,
                      CurrentOperator op);
/// Tensor product of the cyclic vectors.
Vec tensor_cyclic_vector(const std::vector<CyclicModule>& modules);
/// Throws InputError if the modules do not share one presentation.
void check_same_algebra(const std::vector<CyclicModule>& modules);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks shapes, bracket relations for all (a t^r, b t^s), grading
/// compatibility and a nonzero cyclic vector.
ValidationReport validate_module(const CyclicModule& m);

}  // namespace fusion
