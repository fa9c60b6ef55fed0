#include "fusion/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "fusion/errors.hpp"

namespace fusion {

// ---------------------------------------------------------------- recurrence

namespace {

BiPoly recurrence_memo(std::vector<int> dims, std::map<std::vector<int>, BiPoly>& memo) {
  dims.erase(std::remove(dims.begin(), dims.end(), 1), dims.end());
  std::sort(dims.begin(), dims.end());
  if (dims.empty()) return BiPoly::monomial(0, 0);
  if (const auto it = memo.find(dims); it != memo.end()) return it->second;

  const int top = dims.back();
  std::vector<int> rest(dims.begin(), dims.end() - 1);
  BiPoly out = recurrence_memo(rest, memo).twist_second(1);
  rest.push_back(top - 1);
  out += BiPoly::monomial(1, 0) * recurrence_memo(rest, memo);
  memo.emplace(dims, out);
  return out;
}

}  // namespace

BiPoly recurrence_char(std::vector<int> dims) {
  for (int d : dims)
    if (d < 1) throw InputError("module dimensions must be positive");
  std::map<std::vector<int>, BiPoly> memo;
  return recurrence_memo(std::move(dims), memo);
}

// ---------------------------------------------------------------- Demazure step

BigradedChar trivial_sl2_char() {
  BigradedChar ch;
  ch.algebra = "sl2";
  ch.cartan_count = 1;
  ch.entries[CharKey{{0}, 0, std::nullopt}] = 1;
  return ch;
}

BigradedChar demazure_step_char(const BigradedChar& ch_s, int lambda) {
  if (lambda < 0) throw InputError("lambda must be nonnegative");
  if (ch_s.cartan_count != 1 || ch_s.label_count != 0)
    throw InputError("induction step needs an sl2 weight character");
  if (ch_s.entries.empty()) throw InputError("empty character");

  int top = ch_s.entries.begin()->first.weight[0];
  for (const auto& [k, m] : ch_s.entries) top = std::max(top, k.weight[0]);

  std::map<std::pair<int, int>, std::int64_t> dim;  // (t-degree, weight)
  for (const auto& [k, m] : ch_s.entries) {
    const int mu = k.weight[0];
    if ((top - mu) % 2 != 0) throw InvariantViolation("weights not in one sl2 string");
    dim[{k.tdeg + (top - mu) / 2, mu + lambda}] += m;
  }
  auto at = [&](int s, int w) {
    const auto it = dim.find({s, w});
    return it == dim.end() ? std::int64_t{0} : it->second;
  };

  std::set<std::pair<int, int>> heads;  // (t-degree, i >= 0)
  for (const auto& [key, m] : dim) {
    if (key.second >= 0) heads.insert({key.first, key.second});
    else if (key.second <= -2) heads.insert({key.first, -key.second - 2});
  }

  BigradedChar out;
  out.algebra = ch_s.algebra;
  out.cartan_count = 1;
  for (const auto& [s, i] : heads) {
    const std::int64_t mult = at(s, i) - at(s, -i - 2);
    if (mult < 0)
      throw InvariantViolation("negative Euler multiplicity for pi(" + std::to_string(i) +
                               ") at t-degree " + std::to_string(s));
    if (mult == 0) continue;
    for (int w = i; w >= -i; w -= 2) out.entries[CharKey{{w}, s, std::nullopt}] += mult;
  }
  return out;
}

BigradedChar demazure_iterate(std::vector<int> lambdas) {
  std::sort(lambdas.begin(), lambdas.end());
  BigradedChar ch = trivial_sl2_char();
  for (int l : lambdas) ch = demazure_step_char(ch, l);
  return ch;
}

// ---------------------------------------------------------------- FBigradedChar

std::int64_t FBigradedChar::total() const {
  std::int64_t t = 0;
  for (const auto& [k, m] : entries) t += m;
  return t;
}

FBigradedChar FBigradedChar::from_zq(const BiPoly& ch) {
  FBigradedChar out;
  for (const auto& [k, m] : ch.terms()) out.entries[k] = m;
  return out;
}

BiPoly FBigradedChar::to_zq() const {
  BiPoly p;
  for (const auto& [k, m] : entries) p.add(k.first, k.second, m);
  return p;
}

FBigradedChar psi_to_fusion_grading(const FBigradedChar& ch, int N) {
  if (N < 1) throw InputError("N must be positive");
  FBigradedChar out;
  for (const auto& [k, m] : ch.entries) {
    const auto [r, s] = k;
    if (r < 0 || s < 0 || s > r * (N - 1))
      throw InputError("entry (" + std::to_string(r) + "," + std::to_string(s) +
                       ") outside the range 0 <= s <= r(N-1)");
    out.entries[{r, r * (N - 1) - s}] += m;
  }
  return out;
}

// ---------------------------------------------------------------- psi ideal

void PsiIdealSpec::validate() const {
  if (k < 1) throw InputError("psi relation order needs k >= 1");
  if (N < 1) throw InputError("N must be positive");
  if (j && (*j < 0 || *j > k)) throw InputError("j must satisfy 0 <= j <= k");
  for (const auto& [order, s] : extra)
    if (order < 1 || s < 0) throw InputError("exploratory relations need order >= 1 and s >= 0");
}

std::int64_t PsiIdealSpec::expected_total() const {
  std::int64_t t = j ? *j + 1 : k + 1;
  for (int i = 1; i < N; ++i) t *= k + 1;
  return t;
}

int PsiIdealSpec::default_max_r() const { return (j ? *j : k) + k * (N - 1); }

namespace {

using Mono = std::vector<std::uint8_t>;  // non-decreasing variable indices

void enumerate(int len, int sum, int lo, int hi, Mono& cur, std::vector<Mono>& out) {
  if (len == 0) {
    if (sum == 0) out.push_back(cur);
    return;
  }
  if (len == 1) {
    if (sum >= lo && sum <= hi) {
      cur.push_back(static_cast<std::uint8_t>(sum));
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int x = lo; x <= hi && x * len <= sum; ++x) {
    cur.push_back(static_cast<std::uint8_t>(x));
    enumerate(len - 1, sum - x, x, hi, cur, out);
    cur.pop_back();
  }
}

std::vector<Mono> monomials(int r, int s, int hi) {
  std::vector<Mono> out;
  Mono cur;
  enumerate(r, s, 0, hi, cur, out);
  return out;
}

Mono multiply(const Mono& a, const Mono& b) {
  Mono out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

std::string key_of(const Mono& m) { return std::string(m.begin(), m.end()); }

// psi_p(s) = sum over ordered (i_1..i_p) with sum s, collected into monomials.
struct Generator {
  int r = 0, s = 0;
  std::vector<std::pair<Mono, long>> terms;
};

Generator psi(int p, int s) {
  Generator g{p, s, {}};
  for (const auto& m : monomials(p, s, s)) {
    long coeff = 1;
    for (int i = 2; i <= p; ++i) coeff *= i;
    for (std::size_t a = 0; a < m.size();) {
      std::size_t b = a;
      while (b < m.size() && m[b] == m[a]) ++b;
      for (std::size_t i = 2; i <= b - a; ++i) coeff /= static_cast<long>(i);
      a = b;
    }
    g.terms.emplace_back(m, coeff);
  }
  return g;
}

struct SparseRow {
  std::vector<std::uint32_t> col;  // ascending
  std::vector<mpz_class> val;
};

// Fraction-free echelon over Z with pivot = largest column.
class PivotEchelon {
 public:
  explicit PivotEchelon(std::size_t cols) : by_pivot_(cols, -1) {}

  void insert(SparseRow r) {
    while (!r.col.empty()) {
      const auto p = r.col.back();
      const int idx = by_pivot_[p];
      if (idx < 0) {
        normalize(r);
        by_pivot_[p] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(r));
        return;
      }
      eliminate(r, rows_[static_cast<std::size_t>(idx)]);
    }
  }

  std::vector<const SparseRow*> rows_below(std::size_t limit) const {
    std::vector<const SparseRow*> out;
    for (std::size_t i = 0; i < limit; ++i)
      if (by_pivot_[i] >= 0) out.push_back(&rows_[static_cast<std::size_t>(by_pivot_[i])]);
    return out;
  }

  std::size_t pivots_below(std::size_t limit) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < limit; ++i) c += by_pivot_[i] >= 0;
    return c;
  }

 private:
  static void normalize(SparseRow& r) {
    mpz_class g = 0;
    for (const auto& v : r.val) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) break;
    }
    if (r.val.back() < 0) g = -g;
    if (g != 1)
      for (auto& v : r.val) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }

  // a <- (lead b / g) a - (lead a / g) b, cancelling the shared pivot.
  static void eliminate(SparseRow& a, const SparseRow& b) {
    mpz_class g, ma, mb;
    mpz_gcd(g.get_mpz_t(), a.val.back().get_mpz_t(), b.val.back().get_mpz_t());
    mpz_divexact(ma.get_mpz_t(), b.val.back().get_mpz_t(), g.get_mpz_t());
    mpz_divexact(mb.get_mpz_t(), a.val.back().get_mpz_t(), g.get_mpz_t());
    SparseRow out;
    out.col.reserve(a.col.size() + b.col.size());
    out.val.reserve(a.col.size() + b.col.size());
    std::size_t i = 0, j = 0;
    const std::size_t na = a.col.size() - 1, nb = b.col.size() - 1;  // pivots cancel
    mpz_class t;
    while (i < na || j < nb) {
      if (j >= nb || (i < na && a.col[i] < b.col[j])) {
        out.col.push_back(a.col[i]);
        out.val.push_back(ma * a.val[i]);
        ++i;
      } else if (i >= na || b.col[j] < a.col[i]) {
        out.col.push_back(b.col[j]);
        out.val.push_back(-mb * b.val[j]);
        ++j;
      } else {
        t = ma * a.val[i] - mb * b.val[j];
        if (t != 0) {
          out.col.push_back(a.col[i]);
          out.val.push_back(t);
        }
        ++i;
        ++j;
      }
    }
    a = std::move(out);
    if (!a.col.empty()) normalize(a);
  }

  std::vector<int> by_pivot_;
  std::vector<SparseRow> rows_;
};

// Polynomial as (monomial, integer coefficient) pairs.
using PolyTerms = std::vector<std::pair<Mono, mpz_class>>;

struct CellOutcome {
  std::int64_t image = 0;
  PsiCellStats stats;
  std::vector<PolyTerms> intersection;  // ideal elements inside C[f_0..f_inner]
};

// Columns ordered so that monomials in the retained variables come first and,
// among the rest, those with fewer large indices are smaller. Pivots are the
// largest columns, so elimination clears the high-index monomials first.
bool column_less(const Mono& a, const Mono& b, int retained, int inner) {
  const auto zone = [&](const Mono& m) { return m.empty() || m.back() <= retained ? 0 : (m.back() <= inner ? 1 : 2); };
  if (zone(a) != zone(b)) return zone(a) < zone(b);
  int ha = 0, hb = 0, qa = 0, qb = 0;
  for (const auto x : a) {
    ha += x > retained;
    qa += int{x} * int{x};
  }
  for (const auto x : b) {
    hb += x > retained;
    qb += int{x} * int{x};
  }
  if (ha != hb) return ha < hb;
  if (qa != qb) return qa > qb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// Lowering derivation f_m -> (a m + b) f_{m-1} applied to a polynomial.
PolyTerms lower(const PolyTerms& v, int a, int b) {
  std::map<Mono, mpz_class> acc;
  for (const auto& [m, c] : v)
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0 || (i > 0 && m[i] == m[i - 1])) continue;
      std::size_t mult = 0;
      while (i + mult < m.size() && m[i + mult] == m[i]) ++mult;
      Mono out = m;
      --out[i];
      acc[out] += c * static_cast<long>(mult) * (a * m[i] + b);
    }
  PolyTerms out;
  for (auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, std::move(c));
  return out;
}

PolyTerms times_variable(const PolyTerms& v, int i) {
  PolyTerms out;
  for (const auto& [m, c] : v) out.emplace_back(multiply(m, Mono{static_cast<std::uint8_t>(i)}), c);
  return out;
}

struct Reduced {
  std::size_t columns = 0;
  std::vector<std::size_t> retained_pivots;  // after each group
  std::vector<PolyTerms> intersection;     // part inside C[f_0..f_inner] after the first group
};

// Echelon form of groups of polynomials inserted one group after another. The
// retained monomials are the smallest columns, so pivots below their count
// span the part of the row space inside R. Stops early once R is covered.
Reduced reduce(const std::vector<std::vector<PolyTerms>>& groups, const std::vector<Mono>& retained_cols,
               int retained, int inner) {
  const std::size_t n_retained = retained_cols.size();
  std::vector<Mono> cols = retained_cols;
  std::unordered_map<std::string, std::uint32_t> index;
  for (const auto& m : retained_cols) index.emplace(key_of(m), 0);
  for (const auto& group : groups)
    for (const auto& p : group)
      for (const auto& [m, c] : p)
        if (index.emplace(key_of(m), 0).second) cols.push_back(m);
  std::sort(cols.begin(), cols.end(),
            [=](const Mono& a, const Mono& b) { return column_less(a, b, retained, inner); });
  std::size_t n_inner = 0;
  while (n_inner < cols.size() && (cols[n_inner].empty() || cols[n_inner].back() <= inner)) ++n_inner;
  for (std::size_t i = 0; i < cols.size(); ++i) index[key_of(cols[i])] = static_cast<std::uint32_t>(i);

  Reduced out;
  out.columns = cols.size();
  PivotEchelon ech(cols.size());
  for (const auto& group : groups) {
    std::vector<SparseRow> rows;
    rows.reserve(group.size());
    for (const auto& p : group) {
      std::map<std::uint32_t, mpz_class> acc;
      for (const auto& [m, c] : p) acc[index.at(key_of(m))] += c;
      SparseRow row;
      for (auto& [col, c] : acc)
        if (c != 0) {
          row.col.push_back(col);
          row.val.push_back(std::move(c));
        }
      if (!row.col.empty()) rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) {
      if (a.col.back() != b.col.back()) return a.col.back() < b.col.back();
      return a.col.size() < b.col.size();
    });
    for (auto& row : rows) ech.insert(std::move(row));
    out.retained_pivots.push_back(ech.pivots_below(n_retained));
    if (out.retained_pivots.size() == 1)
      for (const auto* row : ech.rows_below(n_inner)) {
        PolyTerms v;
        for (std::size_t i = 0; i < row->col.size(); ++i) v.emplace_back(cols[row->col[i]], row->val[i]);
        out.intersection.push_back(std::move(v));
      }
    if (out.retained_pivots.back() == n_retained) break;
  }
  return out;
}

class PsiCellSolver {
 public:
  PsiCellSolver(const PsiIdealSpec& spec, int max_s) : spec_(spec), inner_(spec.N + 2) {
    for (int s = 0; s <= max_s; ++s) gens_.push_back(psi(spec.k + 1, s));
    if (spec.j) gens_.push_back(psi(*spec.j + 1, 0));
    for (const auto& [order, s] : spec.extra) gens_.push_back(psi(order, s));
  }

  /// Largest variable index of the ideal elements handed from cell to cell.
  int inner() const { return inner_; }

  // `known` lists ideal elements inside C[f_0..f_inner] already found for this cell.
  CellOutcome solve(int r, int s, const std::vector<PolyTerms>& known) const {
    const int retained = spec_.N - 1;
    const std::vector<Mono> retained_cols = monomials(r, s, std::min(retained, s));
    const std::size_t n_retained = retained_cols.size();
    if (n_retained == 0) return {0, {r, s, retained, 0, 0}, {}};

    for (const int hi : bounds(s)) {
      // full: ideal elements inside C[f_0..f_hi]; truncated: the rest with f_{>hi} = 0
      std::vector<PolyTerms> full, truncated;
      for (const auto& v : known) {
        PolyTerms cut;
        for (const auto& t : v)
          if (t.first.empty() || t.first.back() <= hi) cut.push_back(t);
        (cut.size() == v.size() ? full : truncated).push_back(std::move(cut));
      }
      for (const auto& g : gens_) {
        if (g.r > r || g.s > s) continue;
        std::vector<const std::pair<Mono, long>*> terms;
        for (const auto& t : g.terms)
          if (t.first.empty() || t.first.back() <= hi) terms.push_back(&t);
        if (terms.empty()) continue;
        auto& dest = terms.size() == g.terms.size() ? full : truncated;
        for (const auto& m : monomials(r - g.r, s - g.s, hi)) {
          PolyTerms row;
          row.reserve(terms.size());
          for (const auto* t : terms) row.emplace_back(multiply(m, t->first), mpz_class(t->second));
          dest.push_back(std::move(row));
        }
      }
      const PsiCellStats stats{r, s, hi, 0, full.size() + truncated.size()};
      Reduced red = reduce({std::move(full), std::move(truncated)}, retained_cols, retained, inner_);
      const std::size_t sub = red.retained_pivots.front();
      const std::size_t trunc = red.retained_pivots.back();
      // The sub-ideal bounds the image from above, truncation from below.
      if (sub == trunc || hi == s) {
        CellOutcome out{static_cast<std::int64_t>(n_retained - trunc), stats, std::move(red.intersection)};
        out.stats.columns = red.columns;
        return out;
      }
    }
    throw InvariantViolation("psi cell search ended without closing");
  }

 private:
  // Index bounds N-1, N, ..., s; the last one is the exact computation.
  std::vector<int> bounds(int s) const {
    std::vector<int> out;
    for (int b = std::min(std::max(spec_.N - 1, 0), s); b <= s; ++b) out.push_back(b);
    return out;
  }

  const PsiIdealSpec& spec_;
  std::vector<Generator> gens_;
  int inner_ = 0;
};

}  // namespace

PsiResult psi_quotient(const PsiIdealSpec& spec, int max_r, int max_s) {
  spec.validate();
  if (max_r < 0) max_r = spec.default_max_r();
  if (max_s < 0) max_s = max_r * (spec.N - 1);

  PsiResult res;
  res.expected_total = spec.expected_total();
  const PsiCellSolver solver(spec, max_s);
  // I ∩ C[f_0..f_inner] is stable under multiplication by f_0..f_inner and
  // under the lowering derivations f_m -> f_{m-1}, f_m -> m f_{m-1} (they send
  // f(z) to z f and z f + z^2 f', and kill f_0). Elements found in one cell
  // are passed on to (r+1, s+i) and (r, s-1). Single exploratory generators
  // break the stability, so they get no propagation.
  const bool propagate = spec.extra.empty();
  std::map<std::pair<int, int>, std::vector<PolyTerms>> found;
  for (int r = 0; r <= max_r; ++r) {
    const int top = std::min(max_s, r * (spec.N - 1));
    for (int s = top; s >= 0; --s) {
      std::vector<PolyTerms> known;
      if (propagate) {
        for (int i = 0; i <= solver.inner() && i <= s; ++i)
          if (const auto it = found.find({r - 1, s - i}); it != found.end())
            for (const auto& v : it->second) known.push_back(times_variable(v, i));
        if (const auto it = found.find({r, s + 1}); it != found.end())
          for (const auto& v : it->second) {
            known.push_back(lower(v, 0, 1));
            known.push_back(lower(v, 1, 0));
          }
      }
      auto out = solver.solve(r, s, known);
      res.cells.push_back(out.stats);
      if (out.image > 0) res.ch.entries[{r, s}] = out.image;
      if (propagate) found[{r, s}] = std::move(out.intersection);
    }
    for (auto it = found.begin(); it != found.end();)
      it = it->first.first < r ? found.erase(it) : std::next(it);
  }
  std::sort(res.cells.begin(), res.cells.end(),
            [](const PsiCellStats& a, const PsiCellStats& b) { return std::pair(a.r, a.s) < std::pair(b.r, b.s); });
  return res;
}

FBigradedChar psi_quotient_char(const PsiIdealSpec& spec, int max_r, int max_s) {
  return psi_quotient(spec, max_r, max_s).ch;
}

}  // namespace fusion
