// Acceptance run: one PASS/FAIL line per criterion A1..A10. Criteria that
// concern conjectures print WARN instead of FAIL and do not affect the exit code.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusion/filtration.hpp"
#include "fusion/oracles.hpp"
#include "fusion/verlinde.hpp"

using namespace fusion;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string note;
};

int failures = 0;

void report(const std::string& id, bool conjecture, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const char* status = v.ok ? "PASS" : (conjecture ? "WARN" : "FAIL");
  if (!v.ok && !conjecture) ++failures;
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", secs);
  std::cout << id << " " << status << (conjecture ? " [conjecture-level]" : "") << " " << time << "  " << v.note
            << std::endl;
}

// Conjecture-level part of a criterion, folded into its line.
std::string side_check(const std::string& what, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  return "; " + what + (v.ok ? " holds (" : " WARN (") + v.note + ")";
}

std::string list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::vector<CyclicModule> irreps(const std::vector<int>& ms) {
  std::vector<CyclicModule> out;
  for (int m : ms) out.push_back(build_sl2_irrep(m));
  return out;
}

// ---------------------------------------------------------------- brute force

// Rank of a list of rational vectors by plain Gaussian elimination.
std::size_t rank_of(std::vector<Vec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const Rat factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Filtration of pi(m_1)(z_1) (x) ... by the degree in t, computed from scratch:
// F^s is spanned by words of a (x) t^r of total degree <= s applied to the
// product of highest vectors. Returns (weight, degree) -> dimension of the
// associated graded piece.
std::map<std::pair<int, int>, std::int64_t> brute_graded(const std::vector<int>& ms, const std::vector<Rat>& z) {
  std::vector<std::size_t> dims;
  std::size_t total = 1;
  for (int m : ms) {
    dims.push_back(static_cast<std::size_t>(m + 1));
    total *= dims.back();
  }
  // basis index -> tuple of f-exponents
  auto digits = [&](std::size_t idx) {
    std::vector<int> d(ms.size());
    for (std::size_t i = ms.size(); i-- > 0;) {
      d[i] = static_cast<int>(idx % dims[i]);
      idx /= dims[i];
    }
    return d;
  };
  auto index = [&](const std::vector<int>& d) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) idx = idx * dims[i] + static_cast<std::size_t>(d[i]);
    return idx;
  };
  std::vector<int> weight(total);
  for (std::size_t b = 0; b < total; ++b) {
    const auto d = digits(b);
    int w = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) w += ms[i] - 2 * d[i];
    weight[b] = w;
  }
  // x (x) t^r on a vector; x = 0 (e), 1 (f), 2 (h)
  auto act = [&](int x, int r, const Vec& v) {
    Vec out(total);
    for (std::size_t b = 0; b < total; ++b) {
      if (v[b].is_zero()) continue;
      const auto d = digits(b);
      for (std::size_t i = 0; i < ms.size(); ++i) {
        const Rat c = pow(z[i], static_cast<unsigned>(r)) * v[b];
        if (c.is_zero()) continue;
        auto e = d;
        if (x == 0 && d[i] > 0) {
          --e[i];
          out[index(e)] += c * Rat(d[i] * (ms[i] - d[i] + 1));
        } else if (x == 1 && d[i] < ms[i]) {
          ++e[i];
          out[index(e)] += c;
        } else if (x == 2) {
          out[b] += c * Rat(ms[i] - 2 * d[i]);
        }
      }
    }
    return out;
  };
  auto independent = [&](std::vector<Vec>& basis, const Vec& v) {
    auto trial = basis;
    trial.push_back(v);
    if (rank_of(trial) > basis.size()) {
      basis.push_back(v);
      return true;
    }
    return false;
  };
  // weight-space dimension of span(basis): the span is h-stable, so project
  auto weight_dims = [&](const std::vector<Vec>& basis) {
    std::map<int, std::int64_t> out;
    std::set<int> ws(weight.begin(), weight.end());
    for (int w : ws) {
      std::vector<Vec> proj;
      for (const auto& v : basis) {
        Vec p(total);
        for (std::size_t b = 0; b < total; ++b)
          if (weight[b] == w) p[b] = v[b];
        proj.push_back(p);
      }
      if (const auto r = rank_of(proj); r > 0) out[w] = static_cast<std::int64_t>(r);
    }
    return out;
  };

  Vec v0(total);
  v0[0] = Rat(1);
  std::vector<std::vector<Vec>> levels;  // levels[s]: basis of F^s
  std::map<std::pair<int, int>, std::int64_t> graded;
  std::map<int, std::int64_t> prev;
  for (int s = 0;; ++s) {
    std::vector<Vec> basis = s == 0 ? std::vector<Vec>{} : levels.back();
    std::vector<Vec> queue;
    if (s == 0) queue.push_back(v0);
    for (int r = 1; r <= s; ++r)
      for (const auto& w : levels[static_cast<std::size_t>(s - r)])
        for (int x = 0; x < 3; ++x) queue.push_back(act(x, r, w));
    // close under degree-0 operators
    while (!queue.empty()) {
      const Vec v = queue.back();
      queue.pop_back();
      if (!independent(basis, v)) continue;
      for (int x = 0; x < 3; ++x) queue.push_back(act(x, 0, v));
    }
    const auto wd = weight_dims(basis);
    for (const auto& [w, d] : wd) {
      const auto it = prev.find(w);
      if (const auto diff = d - (it == prev.end() ? 0 : it->second); diff > 0) graded[{w, s}] = diff;
    }
    prev = wd;
    levels.push_back(basis);
    if (basis.size() == total) break;
  }
  return graded;
}

// Clebsch-Gordan multiplicities by weight counting.
std::map<int, std::int64_t> clebsch_gordan(const std::vector<int>& ms) {
  std::map<int, std::int64_t> w{{0, 1}};
  for (int m : ms) {
    std::map<int, std::int64_t> next;
    for (const auto& [mu, c] : w)
      for (int i = 0; i <= m; ++i) next[mu + m - 2 * i] += c;
    w = next;
  }
  std::map<int, std::int64_t> mult;
  for (const auto& [mu, c] : w)
    if (mu >= 0) {
      const auto up = w.find(mu + 2);
      if (const auto d = c - (up == w.end() ? 0 : up->second); d != 0) mult[mu] = d;
    }
  return mult;
}

// All multisets of highest weights 0..4 (dims <= 5) with 1..4 factors.
std::vector<std::vector<int>> a2_suite() {
  std::vector<std::vector<int>> out;
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& cur, int lo) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == 4) return;
    for (int m = lo; m <= 4; ++m) {
      cur.push_back(m);
      rec(cur, m);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(cur, 0);
  return out;
}

}  // namespace

int main() {
  std::cout << "acceptance criteria, exact equality throughout" << std::endl;

  report("A1", false, [] {
    const auto mods = irreps({1, 1});
    const auto z = EvaluationPoints::defaults(2);
    const auto ch = bigraded_character(fuse(mods, z));
    if (zq_polynomial(ch).to_string() != "1 + z + z*q + z^2")
      return Verdict{false, "ch(z,q) = " + zq_polynomial(ch).to_string()};
    const std::map<CharKey, std::int64_t> gr{{{{2}, 0, {}}, 1}, {{{0}, 1, {}}, 1}};
    if (gr_decompose(ch) != gr) return Verdict{false, "gr decomposition differs from pi(2) + q pi(0)"};
    // brute-force span computation at two point sets
    for (const auto& pts : {std::vector<Rat>{Rat(0), Rat(1)}, std::vector<Rat>{Rat(1), Rat(2)}}) {
      std::map<std::pair<int, int>, std::int64_t> engine;
      for (const auto& [k, m] : ch.entries) engine[{k.weight[0], k.tdeg}] = m;
      if (brute_graded({1, 1}, pts) != engine) return Verdict{false, "brute-force span disagrees"};
    }
    return Verdict{true, "ch = 1 + z + z*q + z^2, gr = pi(2) q^0 + pi(0) q^1, brute-force span agrees"};
  });

  const auto suite = a2_suite();
  std::map<std::vector<int>, BigradedChar> chars;  // default points

  report("A2", false, [&] {
    std::size_t brute = 0;
    for (const auto& ms : suite) {
      const auto mods = irreps(ms);
      const auto z = EvaluationPoints::defaults(ms.size());
      const auto f = filtered_tensor(mods, z);
      const auto ch = bigraded_character(f);
      chars[ms] = ch;
      const auto table = kostka_from_char(ch);
      std::map<int, std::int64_t> q1;
      for (const auto& [eta, p] : table.entries)
        if (const auto v = table.plain(eta).at_one(); v != 0) q1[eta[0]] = v;
      if (q1 != clebsch_gordan(ms)) return Verdict{false, list(ms) + ": q=1 multiplicities differ"};
      std::size_t dim = 1;
      for (int m : ms) dim *= static_cast<std::size_t>(m + 1);
      if (dim <= 27) {
        std::map<std::pair<int, int>, std::int64_t> engine;
        for (const auto& [k, m] : ch.entries) engine[{k.weight[0], k.tdeg}] = m;
        if (brute_graded(ms, z.z) != engine) return Verdict{false, list(ms) + ": brute-force span disagrees"};
        ++brute;
      }
    }
    return Verdict{true, std::to_string(suite.size()) + " multisets; " + std::to_string(brute) +
                             " also matched against a brute-force span computation"};
  });

  report("A3", false, [&] {
    for (const auto& ms : suite) {
      if (ms.size() < 2) continue;
      const auto mods = irreps(ms);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto z = EvaluationPoints::random(ms.size(), seed);
        if (bigraded_character(filtered_tensor(mods, z)) != chars.at(ms))
          return Verdict{false, list(ms) + " at points " + z.to_string()};
      }
    }
    const auto mixed = side_check("conjecture check on mixed graded inputs", [&] {
      int count = 0;
      for (int a = 0; a <= 2; ++a)
        for (int b = a; b <= 2; ++b)
          for (int c = 0; c <= 2; ++c) {
            const auto inner = fuse(irreps({a, b}), EvaluationPoints::defaults(2));
            const std::vector<CyclicModule> mods{inner, build_sl2_irrep(c)};
            const auto base = bigraded_character(filtered_tensor(mods, EvaluationPoints::defaults(2)));
            for (std::uint64_t seed = 1; seed <= 5; ++seed)
              if (bigraded_character(filtered_tensor(mods, EvaluationPoints::random(2, seed))) != base)
                return Verdict{false, "fuse([" + std::to_string(a) + "],[" + std::to_string(b) + "]) with [" +
                                          std::to_string(c) + "], seed " + std::to_string(seed)};
            ++count;
          }
      return Verdict{true, "mixed graded inputs: " + std::to_string(count) + " products, 5 point sets each"};
    });
    return Verdict{true, "A2 suite, 5 random point sets each (seeds 1..5)" + mixed};
  });

  report("A4", false, [&] {
    for (const auto& ms : suite) {
      std::vector<int> dims;
      for (int m : ms) dims.push_back(m + 1);
      const auto rec = recurrence_char(dims);
      const auto fus = zq_polynomial(chars.at(ms));
      if (rec != fus) return Verdict{false, list(ms) + ": " + rec.to_string() + " vs " + fus.to_string()};
    }
    return Verdict{true, std::to_string(suite.size()) + " multisets"};
  });

  report("A5", false, [&] {
    for (const auto& ms : suite) {
      const auto dem = demazure_iterate(ms);
      if (dem.entries != chars.at(ms).entries) return Verdict{false, list(ms) + ": characters differ"};
    }
    return Verdict{true, std::to_string(suite.size()) + " multisets, full (weight, degree) tables"};
  });

  report("A6", false, [] {
    int cases = 0;
    for (int k = 1; k <= 3; ++k)
      for (int N = 1; N <= 4; ++N)
        for (int j = 0; j <= k; ++j) {
          const auto res = psi_quotient(PsiIdealSpec{k, j, N, {}});
          std::int64_t expected = j + 1;
          for (int i = 1; i < N; ++i) expected *= k + 1;
          const std::string at = "k=" + std::to_string(k) + " N=" + std::to_string(N) + " j=" + std::to_string(j);
          if (res.ch.total() != expected || res.expected_total != expected)
            return Verdict{false, at + ": dimension " + std::to_string(res.ch.total()) + ", expected " +
                                      std::to_string(expected)};
          std::vector<int> ms{j};
          for (int i = 1; i < N; ++i) ms.push_back(k);
          const auto fus = bigraded_character(fuse(irreps(ms), EvaluationPoints::defaults(ms.size())));
          FBigradedChar engine;
          const int top = j + (N - 1) * k;
          for (const auto& [key, m] : fus.entries) engine.entries[{(top - key.weight[0]) / 2, key.tdeg}] += m;
          if (psi_to_fusion_grading(res.ch, N) != engine) return Verdict{false, at + ": bigraded tables differ"};
          ++cases;
        }
    return Verdict{true, std::to_string(cases) + " cases k<=3, N<=4, j<=k, totals (j+1)(k+1)^(N-1)"};
  });

  // alternating orbit sum of plain tensor-power multiplicities
  auto orbit_dims = [](int k, int n) {
    std::map<int, std::int64_t> w{{0, 1}};
    for (int i = 0; i < n; ++i) {
      std::map<int, std::int64_t> next;
      for (const auto& [mu, c] : w)
        for (int eta = 0; eta <= k; ++eta)
          for (int x = eta; x >= -eta; x -= 2) next[mu + x] += c;
      w = next;
    }
    auto at = [&](int m) {
      const auto it = w.find(m);
      return it == w.end() ? std::int64_t{0} : it->second;
    };
    std::map<int, std::int64_t> out;
    for (int lambda = 0; lambda <= k; ++lambda) {
      std::int64_t c = 0;
      // reflections of lambda: 2a(k+2) + lambda (even) and 2a(k+2) - lambda - 2 (odd)
      for (int a = -n - 2; a <= n + 2; ++a) {
        const int even = 2 * a * (k + 2) + lambda, odd = 2 * a * (k + 2) - lambda - 2;
        if (even >= 0) c += at(even) - at(even + 2);
        if (odd >= 0) c -= at(odd) - at(odd + 2);
      }
      out[lambda] = c;
    }
    return out;
  };

  report("A7", false, [&] {
    const auto spot = coinvariant_dims(1, 2);
    if (spot.at(0) != 2 || spot.at(1) != 2) return Verdict{false, "(k=1, n=2) spot values"};
    for (int k = 0; k <= 2; ++k)
      for (int n = 1; n <= 3; ++n) {
        const auto dims = coinvariant_dims(k, n);
        if (dims != orbit_dims(k, n))
          return Verdict{false, "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": Verlinde ring vs orbit sum"};
        for (int lambda = 0; lambda <= k; ++lambda) {
          const auto p = qverlinde(k, lambda, n, QVariant::plain).plain;
          if (p.at_one() != dims.at(lambda))
            return Verdict{false, "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) + " n=" +
                                      std::to_string(n) + ": " + p.to_string() + " at q=1"};
        }
      }
    return Verdict{true, "k<=2, n<=3, all lambda; c_0 = c_1 = 2 at (k=1, n=2)"};
  });

  report("A8", true, [] {
    for (int k = 0; k <= 2; ++k)
      for (int n = 1; n <= 3; ++n)
        for (int lambda = 0; lambda <= k; ++lambda) {
          const auto p = qverlinde(k, lambda, n, QVariant::plain);
          const std::string at =
              "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) + " n=" + std::to_string(n);
          if (!p.plain.nonnegative()) return Verdict{false, at + ": " + p.plain.to_string()};
          const auto h = qverlinde(k, lambda, n, QVariant::hgraded);
          QPoly at_one;
          for (const auto& [ex, c] : h.hgraded.terms()) at_one.add(ex.first, c);
          if (at_one != p.plain) return Verdict{false, at + ": hgraded at aux=1 differs"};
        }
    return Verdict{true, "nonnegative and hgraded -> plain for k<=2, n<=3; " + calibrated_convention().describe()};
  });

  report("A9", false, [] {
    std::vector<std::vector<int>> rss;
    for (int a = 0; a <= 2; ++a) {
      rss.push_back({a});
      for (int b = a; b <= 2; ++b) {
        rss.push_back({a, b});
        for (int c = b; c <= 2; ++c) rss.push_back({a, b, c});
      }
    }
    for (const auto& rs : rss) {
      std::vector<CyclicModule> sl, ab;
      int total = 0;
      for (int r : rs) {
        sl.push_back(build_slN_sym(2, r));
        ab.push_back(build_abelian_powers(2, r));
        total += r;
      }
      const auto z = EvaluationPoints::defaults(rs.size());
      const auto lhs = sl_to_multidegree(bigraded_character(filtered_tensor(sl, z)), total);
      const auto rhs = bigraded_character(filtered_tensor(ab, z));
      if (lhs.entries != rhs.entries) return Verdict{false, "r = " + list(rs) + ": restriction differs"};
      if (rs.size() >= 2) {
        if (!z_independence(sl, 5, 1).agree) return Verdict{false, "r = " + list(rs) + ": sl3 depends on points"};
        if (!z_independence(ab, 5, 1).agree) return Verdict{false, "r = " + list(rs) + ": abelian depends on points"};
      }
    }
    return Verdict{true, std::to_string(rss.size()) + " products over sl3, r_i <= 2, <= 3 factors; 5 point sets"};
  });

  auto assoc = [](int a, int b, int c) {
    const auto inner = fuse(irreps({a, b}), EvaluationPoints::defaults(2));
    const auto lhs = bigraded_character(fuse({inner, build_sl2_irrep(c)}, EvaluationPoints::defaults(2)));
    const auto rhs = bigraded_character(fuse(irreps({a, b, c}), EvaluationPoints::defaults(3)));
    return lhs.entries == rhs.entries;
  };

  report("A10", false, [&] {
    int count = 0;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (int c = std::max(a, b); c <= 3; ++c, ++count)
          if (!assoc(a, b, c)) return Verdict{false, list({a, b, c})};
    const auto others = side_check("conjecture check on other orderings", [&] {
      int count = 0;
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
          for (int c = 0; c < std::max(a, b); ++c, ++count)
            if (!assoc(a, b, c)) return Verdict{false, list({a, b, c})};
      return Verdict{true, std::to_string(count) + " triples in other orderings"};
    });
    return Verdict{true, std::to_string(count) + " triples with dim pi_3 >= dim pi_1, dim pi_2, dims <= 4" + others};
  });

  std::cout << (failures == 0 ? "all asserted criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
