#include "fusion/lie.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fusion/errors.hpp"

namespace fusion {

namespace {

Vec flatten(const Mat& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

Mat unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Mat m(n, n);
  m(i, j) = Rat(1);
  return m;
}

// Combination sum_c coeffs[c] * mats[c]; `like` fixes the shape.
Mat combine(const Vec& coeffs, const std::vector<Mat>& mats, const Mat& like) {
  Mat out(like.rows(), like.cols());
  for (std::size_t c = 0; c < coeffs.size(); ++c)
    if (!coeffs[c].is_zero()) out += mats[c] * coeffs[c];
  return out;
}

// Exponent vectors of total degree <= r, by degree, then descending lex.
std::vector<std::vector<int>> monomials_up_to(std::size_t n, int r) {
  std::vector<std::vector<int>> out;
  for (int d = 0; d <= r; ++d) {
    std::vector<int> a(n, 0);
    // recursive fill: first variable takes the largest share first
    auto fill = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == n) {
        a[i] = left;
        out.push_back(a);
        return;
      }
      for (int x = left; x >= 0; --x) {
        a[i] = x;
        self(self, i + 1, left - x);
      }
    };
    if (n == 0) {
      if (d == 0) out.emplace_back();
      continue;
    }
    fill(fill, 0, d);
  }
  return out;
}

}  // namespace

std::size_t LiePresentation::index_of(const std::string& gen) const {
  const auto it = std::find(generators.begin(), generators.end(), gen);
  if (it == generators.end())
    throw InputError("algebra " + name + " has no generator '" + gen + "'");
  return static_cast<std::size_t>(it - generators.begin());
}

LiePresentation LiePresentation::from_matrices(std::string name, std::vector<std::string> gens,
                                               const std::vector<Mat>& mats,
                                               std::vector<std::size_t> cartan,
                                               std::vector<std::size_t> raising) {
  const std::size_t g = mats.size();
  if (gens.size() != g) throw InputError("generator names and matrices differ in number");
  if (g == 0) throw InputError("empty generator list");
  const std::size_t flat = mats.front().rows() * mats.front().cols();
  for (const auto& m : mats)
    if (m.rows() != mats.front().rows() || m.cols() != mats.front().cols() || m.rows() != m.cols())
      throw InputError("generator matrices must be square of one size");

  // rows (vec X_c | e_c): reducing (vec T | 0) leaves (0 | -coords of T)
  std::vector<Vec> rows;
  for (std::size_t c = 0; c < g; ++c) {
    Vec row = flatten(mats[c]);
    row.resize(flat + g);
    row[flat + c] = Rat(1);
    rows.push_back(std::move(row));
  }
  const Subspace space = rref_basis(rows, flat + g);
  for (std::size_t p : space.pivots())
    if (p >= flat) throw InputError("generator matrices of " + name + " are linearly dependent");

  LiePresentation lp;
  lp.name = std::move(name);
  lp.generators = std::move(gens);
  lp.cartan = std::move(cartan);
  lp.raising = std::move(raising);
  lp.bracket.assign(g, std::vector<Vec>(g, Vec(g)));
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      Vec t = flatten(commutator(mats[a], mats[b]));
      t.resize(flat + g);
      const Vec res = space.reduce(std::move(t));
      for (std::size_t i = 0; i < flat; ++i)
        if (!res[i].is_zero())
          throw InputError("matrices of " + lp.name + " are not closed under brackets");
      for (std::size_t c = 0; c < g; ++c) lp.bracket[a][b][c] = -res[flat + c];
    }
  for (std::size_t c : lp.cartan)
    if (c >= g) throw InputError("Cartan index out of range");
  for (std::size_t c : lp.raising)
    if (c >= g) throw InputError("raising index out of range");
  return lp;
}

std::vector<std::string> LiePresentation::check() const {
  std::vector<std::string> bad;
  const std::size_t g = size();
  if (bracket.size() != g) return {"bracket table has wrong size"};
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b)
      for (std::size_t c = 0; c < g; ++c)
        if (bracket[a][b][c] != -bracket[b][a][c])
          bad.push_back("antisymmetry fails for [" + generators[a] + "," + generators[b] + "]");
  // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0
  auto br = [&](std::size_t a, const Vec& v) {
    Vec out(g);
    for (std::size_t x = 0; x < g; ++x)
      if (!v[x].is_zero())
        for (std::size_t y = 0; y < g; ++y) out[y] += v[x] * bracket[a][x][y];
    return out;
  };
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a + 1; b < g; ++b)
      for (std::size_t c = b + 1; c < g; ++c) {
        Vec s = br(a, bracket[b][c]);
        const Vec t = br(b, bracket[c][a]);
        const Vec u = br(c, bracket[a][b]);
        for (std::size_t y = 0; y < g; ++y) s[y] += t[y] + u[y];
        if (!is_zero(s))
          bad.push_back("Jacobi fails for " + generators[a] + "," + generators[b] + "," +
                        generators[c]);
      }
  return bad;
}

Presentation sl2_algebra() {
  static const Presentation p = [] {
    const Mat e = unit_matrix(2, 0, 1);
    const Mat f = unit_matrix(2, 1, 0);
    const Mat h = unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1);
    return std::make_shared<const LiePresentation>(
        LiePresentation::from_matrices("sl2", {"e", "f", "h"}, {e, f, h}, {2}, {0}));
  }();
  return p;
}

Presentation sl2_pair_algebra() {
  static const Presentation p = [] {
    const Mat e = unit_matrix(2, 0, 1);
    const Mat f = unit_matrix(2, 1, 0);
    const Mat h = unit_matrix(2, 0, 0) - unit_matrix(2, 1, 1);
    const Mat zero(2, 2);
    auto block = [&](const Mat& a, const Mat& b) {
      Mat m(4, 4);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          m(i, j) = a(i, j);
          m(i + 2, j + 2) = b(i, j);
        }
      return m;
    };
    return std::make_shared<const LiePresentation>(LiePresentation::from_matrices(
        "sl2+sl2", {"e1", "f1", "h1", "e2", "f2", "h2"},
        {block(e, zero), block(f, zero), block(h, zero), block(zero, e), block(zero, f),
         block(zero, h)},
        {2, 5}, {0, 3}));
  }();
  return p;
}

Presentation abelian_algebra(std::size_t n) {
  if (n == 0) throw InputError("abelian algebra needs n >= 1");
  auto lp = std::make_shared<LiePresentation>();
  lp->name = "abelian" + std::to_string(n);
  for (std::size_t i = 1; i <= n; ++i) lp->generators.push_back("x" + std::to_string(i));
  lp->bracket.assign(n, std::vector<Vec>(n, Vec(n)));
  return lp;
}

Presentation sl_algebra(std::size_t n) {
  if (n == 0 || n > 8) throw InputError("sl_{n+1} is supported for 1 <= n <= 8");
  const std::size_t d = n + 1;
  std::vector<std::string> names;
  std::vector<Mat> mats;
  std::vector<std::size_t> cartan, raising;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      raising.push_back(names.size());
      names.push_back("E" + std::to_string(i) + std::to_string(j));
      mats.push_back(unit_matrix(d, i, j));
    }
  for (std::size_t i = 1; i <= n; ++i) {
    cartan.push_back(names.size());
    names.push_back("h" + std::to_string(i));
    mats.push_back(unit_matrix(d, i - 1, i - 1) - unit_matrix(d, i, i));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      names.push_back("E" + std::to_string(i) + std::to_string(j));
      mats.push_back(unit_matrix(d, i, j));
    }
  return std::make_shared<const LiePresentation>(LiePresentation::from_matrices(
      "sl" + std::to_string(d), std::move(names), mats, std::move(cartan), std::move(raising)));
}

// ---------------------------------------------------------------- builders

CyclicModule build_sl2_irrep(int m) {
  if (m < 0) throw InputError("sl2 highest weight must be nonnegative");
  const auto d = static_cast<std::size_t>(m) + 1;
  Mat e(d, d), f(d, d), h(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const long il = static_cast<long>(i);
    h(i, i) = Rat(m - 2 * il);
    if (i + 1 < d) f(i + 1, i) = Rat(1);
    if (i > 0) e(i - 1, i) = Rat(il * (m - il + 1));
  }
  CyclicModule mod;
  mod.algebra = sl2_algebra();
  mod.dim = d;
  mod.action = {{e}, {f}, {h}};
  mod.cyclic = Vec(d);
  mod.cyclic[0] = Rat(1);
  mod.descriptor = "sl2:" + std::to_string(m);
  return mod;
}

CyclicModule build_level_sum(int k, bool doubled) {
  if (k < 0) throw InputError("level must be nonnegative");
  std::vector<CyclicModule> parts;
  for (int eta = 0; eta <= k; ++eta) parts.push_back(build_sl2_irrep(eta));

  CyclicModule mod;
  mod.algebra = doubled ? sl2_pair_algebra() : sl2_algebra();
  const std::size_t gens = mod.algebra->size();
  std::size_t total = 0;
  for (const auto& p : parts) total += doubled ? p.dim * p.dim : p.dim;
  mod.dim = total;
  mod.action.assign(gens, {Mat(total, total)});
  mod.cyclic = Vec(total);
  mod.aux_grading = std::vector<int>(total);

  std::size_t off = 0;
  for (int eta = 0; eta <= k; ++eta) {
    const auto& p = parts[static_cast<std::size_t>(eta)];
    std::vector<Mat> local;
    if (doubled) {
      const Mat id = Mat::identity(p.dim);
      for (std::size_t g = 0; g < 3; ++g) local.push_back(kron(p.op(g), id));
      for (std::size_t g = 0; g < 3; ++g) local.push_back(kron(id, p.op(g)));
    } else {
      for (std::size_t g = 0; g < 3; ++g) local.push_back(p.op(g));
    }
    const std::size_t sz = local.front().rows();
    for (std::size_t g = 0; g < gens; ++g)
      for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) mod.action[g][0](off + i, off + j) = local[g](i, j);
    mod.cyclic[off] = Rat(1);
    for (std::size_t i = 0; i < sz; ++i) (*mod.aux_grading)[off + i] = eta;
    off += sz;
  }
  mod.descriptor = (doubled ? "doubled:" : "level:") + std::to_string(k);
  return mod;
}

CyclicModule build_abelian_powers(std::size_t n, int r) {
  if (n == 0) throw InputError("abelian module needs n >= 1");
  if (r < 0) throw InputError("abelian truncation degree must be nonnegative");
  const auto monos = monomials_up_to(n, r);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

  CyclicModule mod;
  mod.algebra = abelian_algebra(n);
  mod.dim = monos.size();
  mod.action.assign(n, {Mat(mod.dim, mod.dim)});
  for (std::size_t c = 0; c < monos.size(); ++c) {
    int deg = 0;
    for (int x : monos[c]) deg += x;
    if (deg == r) continue;
    for (std::size_t i = 0; i < n; ++i) {
      auto a = monos[c];
      ++a[i];
      mod.action[i][0](index.at(a), c) = Rat(1);
    }
  }
  mod.cyclic = Vec(mod.dim);
  mod.cyclic[0] = Rat(1);
  mod.labels = monos;
  mod.descriptor = "abelian:" + std::to_string(n) + ":" + std::to_string(r);
  return mod;
}

CyclicModule build_slN_sym(std::size_t n, int r) {
  if (n == 0) throw InputError("slN module needs n >= 1");
  if (r < 0) throw InputError("symmetric power must be nonnegative");
  const auto monos = monomials_up_to(n, r);
  // full exponent vectors (b_0, ..., b_n) with b_0 = r - |a|
  std::vector<std::vector<int>> full;
  std::map<std::vector<int>, std::size_t> index;
  for (const auto& a : monos) {
    int deg = 0;
    for (int x : a) deg += x;
    std::vector<int> b{r - deg};
    b.insert(b.end(), a.begin(), a.end());
    index[b] = full.size();
    full.push_back(std::move(b));
  }

  CyclicModule mod;
  mod.algebra = sl_algebra(n);
  mod.dim = full.size();
  const auto& gens = mod.algebra->generators;
  mod.action.assign(gens.size(), {Mat(mod.dim, mod.dim)});
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string& name = gens[g];
    Mat& m = mod.action[g][0];
    if (name[0] == 'h') {
      const auto i = static_cast<std::size_t>(std::stoul(name.substr(1)));
      for (std::size_t c = 0; c < full.size(); ++c) m(c, c) = Rat(full[c][i - 1] - full[c][i]);
      continue;
    }
    // E_ij: e_j -> e_i, acting as a derivation
    const auto i = static_cast<std::size_t>(name[1] - '0');
    const auto j = static_cast<std::size_t>(name[2] - '0');
    for (std::size_t c = 0; c < full.size(); ++c) {
      if (full[c][j] == 0) continue;
      auto b = full[c];
      const int mult = b[j];
      --b[j];
      ++b[i];
      m(index.at(b), c) = Rat(mult);
    }
  }
  mod.cyclic = Vec(mod.dim);
  mod.cyclic[0] = Rat(1);
  mod.descriptor = "slN:" + std::to_string(n) + ":" + std::to_string(r);
  return mod;
}

// ---------------------------------------------------------------- points

void EvaluationPoints::validate() const {
  std::set<Rat> seen;
  for (const auto& x : z)
    if (!seen.insert(x).second)
      throw InputError("evaluation points must be pairwise distinct; repeated " + x.to_string());
}

EvaluationPoints EvaluationPoints::defaults(std::size_t n) {
  EvaluationPoints p;
  for (std::size_t i = 1; i <= n; ++i) p.z.emplace_back(static_cast<long>(i));
  return p;
}

EvaluationPoints EvaluationPoints::random(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  EvaluationPoints p;
  std::set<Rat> seen;
  while (p.z.size() < n) {
    const long num = static_cast<long>(gen() % 2001) - 1000;
    const long den = static_cast<long>(gen() % 1000) + 1;
    Rat x(num, den);
    if (seen.insert(x).second) p.z.push_back(x);
  }
  return p;
}

EvaluationPoints EvaluationPoints::parse(const std::string& csv) {
  EvaluationPoints p;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) p.z.push_back(Rat::parse(item));
  p.validate();
  return p;
}

std::string EvaluationPoints::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + z[i].to_string();
  return s;
}

// ---------------------------------------------------------------- operators

Mat SparseOp::dense() const {
  Mat m(dim, dim);
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c]) m(r, c) = v;
  return m;
}

TensorShape::TensorShape(std::vector<std::size_t> factor_dims)
    : dims(std::move(factor_dims)), strides(dims.size()) {
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = s;
    s *= dims[i];
  }
}

std::size_t TensorShape::total() const {
  std::size_t t = 1;
  for (std::size_t d : dims) t *= d;
  return t;
}

void check_same_algebra(const std::vector<CyclicModule>& modules) {
  if (modules.empty()) throw InputError("empty module list");
  const auto& first = *modules.front().algebra;
  for (const auto& m : modules) {
    if (m.algebra == modules.front().algebra) continue;
    if (m.algebra->name != first.name || m.algebra->generators != first.generators ||
        m.algebra->bracket != first.bracket)
      throw InputError("modules are over different algebras (" + first.name + " vs " +
                       m.algebra->name + ")");
  }
}

SparseOp current_op_sparse(const std::vector<CyclicModule>& modules, const EvaluationPoints& z,
                           CurrentOperator op) {
  check_same_algebra(modules);
  if (modules.size() != z.size())
    throw InputError("need one evaluation point per module (" + std::to_string(modules.size()) +
                     " modules, " + std::to_string(z.size()) + " points)");
  if (op.generator >= modules.front().algebra->size())
    throw InputError("generator index out of range");

  std::vector<std::size_t> dims;
  for (const auto& m : modules) dims.push_back(m.dim);
  const TensorShape shape(dims);
  const std::size_t n = modules.size();
  const auto k = static_cast<unsigned>(op.power);

  // per factor: combined sparse columns of sum_r C(k,r) z^{k-r} rho(a t^r)
  std::vector<std::vector<std::vector<std::pair<std::size_t, Rat>>>> local(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = modules[i];
    Mat acc(m.dim, m.dim);
    const std::size_t top = std::min<std::size_t>(op.power, m.max_tdeg());
    for (std::size_t r = 0; r <= top; ++r) {
      const Rat coef =
          binomial(k, static_cast<unsigned>(r)) * pow(z.z[i], k - static_cast<unsigned>(r));
      if (!coef.is_zero()) acc += m.op(op.generator, r) * coef;
    }
    local[i].resize(m.dim);
    for (std::size_t c = 0; c < m.dim; ++c)
      for (std::size_t rr = 0; rr < m.dim; ++rr)
        if (!acc(rr, c).is_zero()) local[i][c].emplace_back(rr, acc(rr, c));
  }

  SparseOp out;
  out.dim = shape.total();
  out.columns.resize(out.dim);
  for (std::size_t col = 0; col < out.dim; ++col) {
    std::map<std::size_t, Rat> acc;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = shape.digit(col, i);
      for (const auto& [row, v] : local[i][d]) {
        const std::size_t target = col + row * shape.strides[i] - d * shape.strides[i];
        acc[target] += v;
      }
    }
    for (auto& [row, v] : acc)
      if (!v.is_zero()) out.columns[col].emplace_back(row, std::move(v));
  }
  return out;
}

Mat current_op_matrix(const std::vector<CyclicModule>& modules, const EvaluationPoints& z,
                      CurrentOperator op) {
  return current_op_sparse(modules, z, op).dense();
}

Vec tensor_cyclic_vector(const std::vector<CyclicModule>& modules) {
  Vec v{Rat(1)};
  for (const auto& m : modules) {
    Vec next(v.size() * m.dim);
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (v[a].is_zero()) continue;
      for (std::size_t b = 0; b < m.dim; ++b)
        if (!m.cyclic[b].is_zero()) next[a * m.dim + b] = v[a] * m.cyclic[b];
    }
    v = std::move(next);
  }
  return v;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_module(const CyclicModule& m) {
  ValidationReport rep;
  auto& bad = rep.violations;
  if (!m.algebra) {
    bad.push_back("module has no algebra");
    return rep;
  }
  const auto& alg = *m.algebra;
  if (m.action.size() != alg.size()) {
    bad.push_back("expected " + std::to_string(alg.size()) + " generator actions, got " +
                  std::to_string(m.action.size()));
    return rep;
  }
  const std::size_t levels = m.action.front().size();
  for (std::size_t g = 0; g < m.action.size(); ++g) {
    if (m.action[g].size() != levels || levels == 0) {
      bad.push_back("generator " + alg.generators[g] + " has inconsistent t-power count");
      return rep;
    }
    for (const auto& mat : m.action[g])
      if (mat.rows() != m.dim || mat.cols() != m.dim) {
        bad.push_back("generator " + alg.generators[g] + " matrix has wrong shape");
        return rep;
      }
  }
  if (m.cyclic.size() != m.dim) bad.push_back("cyclic vector has wrong length");
  else if (is_zero(m.cyclic)) bad.push_back("cyclic vector is zero");
  if (m.aux_grading && m.aux_grading->size() != m.dim) bad.push_back("aux grading has wrong length");
  if (m.labels && m.labels->size() != m.dim) bad.push_back("label list has wrong length");

  const std::size_t top = levels - 1;
  for (std::size_t a = 0; a < alg.size(); ++a)
    for (std::size_t b = a; b < alg.size(); ++b)
      for (std::size_t r = 0; r <= top; ++r)
        for (std::size_t s = (a == b ? r + 1 : 0); s <= top; ++s) {
          const Mat lhs = commutator(m.op(a, r), m.op(b, s));
          Mat rhs(m.dim, m.dim);
          if (r + s <= top) {
            std::vector<Mat> mats;
            for (std::size_t c = 0; c < alg.size(); ++c) mats.push_back(m.op(c, r + s));
            rhs = combine(alg.bracket[a][b], mats, rhs);
          }
          if (lhs != rhs)
            bad.push_back("bracket violation: [" + alg.generators[a] + " t^" + std::to_string(r) +
                          ", " + alg.generators[b] + " t^" + std::to_string(s) + "]");
        }

  if (m.t_grading) {
    const auto& t = *m.t_grading;
    if (t.size() != m.dim) {
      bad.push_back("t grading has wrong length");
    } else {
      for (std::size_t g = 0; g < alg.size(); ++g)
        for (std::size_t r = 0; r <= top; ++r) {
          const Mat& mat = m.op(g, r);
          bool ok = true;
          for (std::size_t i = 0; i < m.dim && ok; ++i)
            for (std::size_t j = 0; j < m.dim && ok; ++j)
              if (!mat(i, j).is_zero() && t[i] != t[j] + static_cast<int>(r)) ok = false;
          if (!ok)
            bad.push_back("grading violation: " + alg.generators[g] + " t^" + std::to_string(r) +
                          " does not raise t-degree by " + std::to_string(r));
        }
    }
  } else if (top > 0) {
    bad.push_back("module has t-power actions but no t grading");
  }
  return rep;
}

}  // namespace fusion
