#include "fusion/checks.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "fusion/errors.hpp"
#include "fusion/filtration.hpp"
#include "fusion/oracles.hpp"
#include "fusion/verlinde.hpp"

namespace fusion {

std::string CheckLine::format() const {
  const char* s = status == CheckStatus::pass ? "PASS" : (status == CheckStatus::warn ? "WARN" : "FAIL");
  std::string out = std::string(s) + "  " + suite + ": " + name;
  if (conjecture) out += " [conjecture]";
  if (!detail.empty()) out += " (" + detail + ")";
  return out;
}

bool any_failed(const std::vector<CheckLine>& lines) {
  return std::any_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.status == CheckStatus::fail; });
}

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Runner {
 public:
  Runner(std::string suite, std::vector<CheckLine>& out, const std::function<void(const CheckLine&)>& sink)
      : suite_(std::move(suite)), out_(out), sink_(sink) {}

  template <class F>
  void run(const std::string& name, bool conjecture, F&& body) {
    CheckLine line{CheckStatus::pass, conjecture, suite_, name, ""};
    try {
      const Outcome o = body();
      line.detail = o.detail;
      if (!o.ok) line.status = conjecture ? CheckStatus::warn : CheckStatus::fail;
    } catch (const std::exception& e) {
      line.status = conjecture ? CheckStatus::warn : CheckStatus::fail;
      line.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(line);
    if (sink_) sink_(line);
  }

 private:
  std::string suite_;
  std::vector<CheckLine>& out_;
  const std::function<void(const CheckLine&)>& sink_;
};

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

// Random multisets of sl2 highest weights, sorted, without repeats.
std::vector<std::vector<int>> random_weight_lists(std::mt19937_64& rng, std::size_t count, int max_m, int max_n) {
  std::vector<std::vector<int>> out;
  std::uniform_int_distribution<int> len(1, max_n), wt(0, max_m);
  for (std::size_t guard = 0; out.size() < count && guard < 50 * count; ++guard) {
    std::vector<int> ms(static_cast<std::size_t>(len(rng)));
    for (auto& m : ms) m = wt(rng);
    std::sort(ms.begin(), ms.end());
    if (std::find(out.begin(), out.end(), ms) == out.end()) out.push_back(ms);
  }
  return out;
}

// Clebsch-Gordan multiplicities of pi(m_1) (x) ... by weight counting.
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

BiPoly fused_zq(const std::vector<int>& ms) {
  return zq_polynomial(bigraded_character(filtered_tensor(irreps(ms), EvaluationPoints::defaults(ms.size()))));
}

// ---------------------------------------------------------------- filtration

void filtration_suite(Runner& run, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto cases = random_weight_lists(rng, 8, 3, 4);
  std::string covered;
  for (const auto& ms : cases) covered += list(ms);

  run.run("filtration exhausts the tensor product and the fusion module validates", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      const auto mods = irreps(ms);
      const auto f = filtered_tensor(mods, EvaluationPoints::random(ms.size(), seed));
      std::size_t total = 1;
      for (int m : ms) total *= static_cast<std::size_t>(m + 1);
      if (f.dims().back() != total)
        return {false, list(ms) + ": top dimension " + std::to_string(f.dims().back()) + ", tensor dimension " +
                           std::to_string(total)};
      for (std::size_t i = 1; i < f.dims().size(); ++i)
        if (f.dims()[i] <= f.dims()[i - 1]) return {false, list(ms) + ": dimensions not strictly increasing"};
      const auto rep = validate_module(fuse(f));
      if (!rep.ok()) return {false, list(ms) + ": " + rep.violations.front()};
    }
    return {true, covered};
  });

  run.run("each filtration step is stable under degree-0 operators", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      const auto mods = irreps(ms);
      const auto z = EvaluationPoints::random(ms.size(), seed + 1);
      const auto f = filtered_tensor(mods, z);
      for (std::size_t g = 0; g < 3; ++g) {
        const Mat op = current_op_matrix(mods, z, {g, 0});
        for (int i = 0; i <= f.depth(); ++i)
          if (!subspace_stable(f.subspace(i), op))
            return {false, list(ms) + ": F^" + std::to_string(i) + " not stable under generator " + std::to_string(g)};
      }
    }
    return {true, covered};
  });

  run.run("q = 1 specialization gives Clebsch-Gordan multiplicities", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      const auto table = kostka_table(irreps(ms), EvaluationPoints::defaults(ms.size()));
      std::map<int, std::int64_t> got;
      for (const auto& [eta, p] : table.entries)
        if (const auto v = table.plain(eta).at_one(); v != 0) got[eta[0]] = v;
      if (got != clebsch_gordan(ms)) return {false, list(ms) + ": Kostka values at q=1 differ from weight counting"};
    }
    return {true, covered};
  });

  run.run("character does not depend on the points (sl2 irreps)", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      const auto rep = z_independence(irreps(ms), 3, seed);
      if (!rep.agree)
        return {false, list(ms) + ": points " + rep.samples[rep.disagreeing->first].to_string() + " vs " +
                           rep.samples[rep.disagreeing->second].to_string()};
    }
    return {true, covered + ", 3 samples each"};
  });

  run.run("character does not depend on the points (fused inputs)", true, [&]() -> Outcome {
    std::string cov;
    for (const auto& ms : cases) {
      if (ms.size() < 2) continue;
      const auto inner = fuse(irreps({ms[0], ms[1]}), EvaluationPoints::defaults(2));
      std::vector<CyclicModule> mods{inner};
      for (std::size_t i = 2; i < ms.size(); ++i) mods.push_back(build_sl2_irrep(ms[i]));
      if (mods.size() < 2) mods.push_back(build_sl2_irrep(1));
      const auto rep = z_independence(mods, 3, seed);
      if (!rep.agree) return {false, "fuse" + list({ms[0], ms[1]}) + " with the rest of " + list(ms)};
      cov += list(ms);
    }
    return {true, cov};
  });

  run.run("abelian:1:r products match sl2:r products in ch(z,q)", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      std::vector<CyclicModule> ab;
      for (int m : ms) ab.push_back(build_abelian_powers(1, m));
      const auto z = EvaluationPoints::defaults(ms.size());
      const auto a = zq_polynomial(bigraded_character(filtered_tensor(ab, z)));
      const auto s = fused_zq(ms);
      if (a != s) return {false, list(ms) + ": abelian " + a.to_string() + ", sl2 " + s.to_string()};
    }
    return {true, covered};
  });

  run.run("sl3 symmetric powers restrict to the abelian fusion product", false, [&]() -> Outcome {
    std::uniform_int_distribution<int> len(2, 3), deg(1, 2);
    std::string cov;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> rs(static_cast<std::size_t>(len(rng)));
      for (auto& r : rs) r = deg(rng);
      if (rs.size() == 3) rs[2] = 1;  // keep the 3-factor case small
      std::vector<CyclicModule> sl, ab;
      int total = 0;
      for (int r : rs) {
        sl.push_back(build_slN_sym(2, r));
        ab.push_back(build_abelian_powers(2, r));
        total += r;
      }
      const auto z = EvaluationPoints::random(rs.size(), seed + static_cast<std::uint64_t>(trial));
      auto lhs = sl_to_multidegree(bigraded_character(filtered_tensor(sl, z)), total);
      auto rhs = bigraded_character(filtered_tensor(ab, z));
      if (lhs.entries != rhs.entries) return {false, "r = " + list(rs) + " at points " + z.to_string()};
      cov += list(rs);
    }
    return {true, "r = " + cov};
  });

  auto assoc = [&](int a, int b, int c) {
    const auto inner = fuse(irreps({a, b}), EvaluationPoints::defaults(2));
    const auto lhs = bigraded_character(fuse({inner, build_sl2_irrep(c)}, EvaluationPoints::defaults(2)));
    const auto rhs = bigraded_character(fuse(irreps({a, b, c}), EvaluationPoints::defaults(3)));
    return std::make_pair(zq_polynomial(lhs), zq_polynomial(rhs));
  };
  run.run("associativity when the last factor is the largest", false, [&]() -> Outcome {
    int count = 0;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (int c = std::max(a, b); c <= 3; ++c) {
          const auto [l, r] = assoc(a, b, c);
          if (l != r)
            return {false, "[" + std::to_string(a) + "]*[" + std::to_string(b) + "] then [" + std::to_string(c) +
                               "]: " + l.to_string() + " vs " + r.to_string()};
          ++count;
        }
    return {true, std::to_string(count) + " triples, dims <= 4"};
  });
  run.run("associativity for other orderings", true, [&]() -> Outcome {
    int count = 0;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (int c = 0; c < std::max(a, b); ++c) {
          const auto [l, r] = assoc(a, b, c);
          if (l != r)
            return {false, "[" + std::to_string(a) + "]*[" + std::to_string(b) + "] then [" + std::to_string(c) +
                               "]: " + l.to_string() + " vs " + r.to_string()};
          ++count;
        }
    return {true, std::to_string(count) + " triples, dims <= 4"};
  });
}

// ---------------------------------------------------------------- oracles

void oracle_suite(Runner& run, std::uint64_t seed, int psi_max_k) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  const auto cases = random_weight_lists(rng, 8, 3, 3);
  std::string covered;
  for (const auto& ms : cases) covered += list(ms);

  run.run("recurrence equals the fusion character", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      std::vector<int> dims;
      for (int m : ms) dims.push_back(m + 1);
      const auto rec = recurrence_char(dims);
      const auto fus = fused_zq(ms);
      if (rec != fus) return {false, list(ms) + ": recurrence " + rec.to_string() + ", fusion " + fus.to_string()};
    }
    return {true, covered};
  });

  run.run("Demazure iteration equals the fusion character", false, [&]() -> Outcome {
    for (const auto& ms : cases) {
      const auto dem = zq_polynomial(demazure_iterate(ms));
      const auto fus = fused_zq(ms);
      if (dem != fus) return {false, list(ms) + ": Demazure " + dem.to_string() + ", fusion " + fus.to_string()};
    }
    return {true, covered};
  });

  for (int k = 1; k <= psi_max_k; ++k)
    run.run("psi quotient equals the fusion character, k = " + std::to_string(k), false, [&]() -> Outcome {
      for (int N = 1; N <= 4; ++N)
        for (int j = 0; j <= k; ++j) {
          const PsiIdealSpec spec{k, j, N, {}};
          const auto res = psi_quotient(spec);
          const std::string at = "N=" + std::to_string(N) + " j=" + std::to_string(j);
          if (res.ch.total() != res.expected_total)
            return {false, at + ": dimension " + std::to_string(res.ch.total()) + ", expected " +
                               std::to_string(res.expected_total)};
          std::vector<int> ms{j};
          for (int i = 1; i < N; ++i) ms.push_back(k);
          const auto psi = psi_to_fusion_grading(res.ch, N).to_zq();
          const auto fus = fused_zq(ms);
          if (psi != fus) return {false, at + ": psi " + psi.to_string() + ", fusion " + fus.to_string()};
        }
      return {true, "N <= 4, j <= " + std::to_string(k) + ", dimensions (j+1)(k+1)^(N-1)"};
    });
}

// ---------------------------------------------------------------- verlinde

std::map<int, std::int64_t> power_weights(int k, int n) {
  std::map<int, std::int64_t> w{{0, 1}};
  for (int i = 0; i < n; ++i) {
    std::map<int, std::int64_t> next;
    for (const auto& [mu, c] : w)
      for (int eta = 0; eta <= k; ++eta)
        for (int x = eta; x >= -eta; x -= 2) next[mu + x] += c;
    w = next;
  }
  return w;
}

void verlinde_suite(Runner& run) {
  run.run("Verlinde product is commutative and associative", false, [&]() -> Outcome {
    for (int k = 0; k <= 3; ++k)
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) {
          const auto A = VerlindeElement::basis(a), B = VerlindeElement::basis(b);
          if (verlinde_product(k, A, B) != verlinde_product(k, B, A))
            return {false, "k=" + std::to_string(k) + " a=" + std::to_string(a) + " b=" + std::to_string(b)};
          for (int c = 0; c <= k; ++c) {
            const auto C = VerlindeElement::basis(c);
            if (verlinde_product(k, verlinde_product(k, A, B), C) != verlinde_product(k, A, verlinde_product(k, B, C)))
              return {false, "k=" + std::to_string(k) + " (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                 std::to_string(c) + ")"};
          }
        }
    return {true, "basis elements, k <= 3"};
  });

  run.run("coinvariant dimensions equal the alternating orbit sum", false, [&]() -> Outcome {
    for (int k = 0; k <= 3; ++k)
      for (int n = 1; n <= 4; ++n) {
        const auto w = power_weights(k, n);
        const auto dims = coinvariant_dims(k, n);
        for (int lambda : alcove(k)) {
          // multiplicity of pi(mu) is w(mu) - w(mu + 2)
          std::int64_t c = 0;
          for (const auto& e : orbit_terms(lambda, k, n * k + 2 * k + 4)) {
            if (e.target_m < 0) continue;
            const auto at = [&](int m) {
              const auto it = w.find(m);
              return it == w.end() ? std::int64_t{0} : it->second;
            };
            c += e.sign * (at(e.target_m) - at(e.target_m + 2));
          }
          if (c != dims.at(lambda))
            return {false, "k=" + std::to_string(k) + " n=" + std::to_string(n) + " lambda=" + std::to_string(lambda) +
                               ": " + std::to_string(dims.at(lambda)) + " vs orbit sum " + std::to_string(c)};
        }
      }
    return {true, "k <= 3, n <= 4"};
  });

  run.run("spot value [N_1]^2 = 2[pi_0] + 2[pi_1]", false, [&]() -> Outcome {
    const auto d = coinvariant_dims(1, 2);
    if (d.at(0) != 2 || d.at(1) != 2)
      return {false, "c_0=" + std::to_string(d.at(0)) + " c_1=" + std::to_string(d.at(1))};
    return {true, ""};
  });

  const auto& conv = calibrated_convention();
  run.run("q-Verlinde sums at q = 1 give the coinvariant dimensions", false, [&]() -> Outcome {
    for (int k = 0; k <= 2; ++k)
      for (int n = 1; n <= 3; ++n) {
        const auto dims = coinvariant_dims(k, n);
        for (int lambda : alcove(k)) {
          const auto p = qverlinde(k, lambda, n, QVariant::plain).plain;
          if (p.at_one() != dims.at(lambda))
            return {false, "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) + " n=" + std::to_string(n) +
                               ": " + p.to_string() + " at q=1 vs " + std::to_string(dims.at(lambda))};
        }
      }
    return {true, "k <= 2, n <= 3; " + conv.describe()};
  });

  run.run("q-Verlinde coefficients are nonnegative", true, [&]() -> Outcome {
    for (int k = 0; k <= 2; ++k)
      for (int n = 1; n <= 3; ++n)
        for (int lambda : alcove(k)) {
          const auto p = qverlinde(k, lambda, n, QVariant::plain).plain;
          if (!p.nonnegative())
            return {false, "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) + " n=" + std::to_string(n) +
                               ": " + p.to_string()};
        }
    return {true, "k <= 2, n <= 3"};
  });

  run.run("h-graded q-Verlinde sums specialize to the plain ones", true, [&]() -> Outcome {
    for (int k = 0; k <= 2; ++k)
      for (int n = 1; n <= 3; ++n)
        for (int lambda : alcove(k)) {
          const auto r = qverlinde(k, lambda, n, QVariant::plain);
          const auto h = qverlinde(k, lambda, n, QVariant::hgraded);
          QPoly at_one;
          for (const auto& [ex, c] : h.hgraded.terms()) at_one.add(ex.first, c);
          if (at_one != r.plain)
            return {false, "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) + " n=" +
                               std::to_string(n) + ": " + at_one.to_string() + " vs " + r.plain.to_string()};
        }
    return {true, "k <= 2, n <= 3"};
  });

  run.run("doubled q-Verlinde sums at q = 1 give the doubled dimensions", true, [&]() -> Outcome {
    for (int k = 0; k <= 2; ++k)
      for (int n = 1; n <= 2; ++n) {
        const auto dims = coinvariant_dims_doubled(k, n);
        for (int lambda : alcove(k)) {
          const auto r = qverlinde(k, lambda, n, QVariant::doubled);
          for (const auto& [mu, p] : r.doubled) {
            const auto it = dims.find({lambda, mu});
            const std::int64_t want = it == dims.end() ? 0 : it->second;
            if (p.at_one() != want || !p.nonnegative())
              return {false, "k=" + std::to_string(k) + " lambda=" + std::to_string(lambda) + " mu=" +
                                 std::to_string(mu) + " n=" + std::to_string(n) + ": " + p.to_string() + " vs " +
                                 std::to_string(want)};
          }
        }
      }
    return {true, "k <= 2, n <= 2"};
  });
}

}  // namespace

std::vector<CheckLine> run_checks(const std::string& suite, const CheckOptions& opts,
                                  const std::function<void(const CheckLine&)>& on_line) {
  if (suite != "all" && suite != "filtration" && suite != "oracles" && suite != "verlinde")
    throw InputError("unknown suite '" + suite + "' (all, filtration, oracles, verlinde)");
  if (opts.psi_max_k < 0 || opts.psi_max_k > 3) throw InputError("psi matrix bound must be in 0..3");
  std::vector<CheckLine> lines;
  if (suite == "all" || suite == "filtration") {
    Runner r("filtration", lines, on_line);
    filtration_suite(r, opts.seed);
  }
  if (suite == "all" || suite == "oracles") {
    Runner r("oracles", lines, on_line);
    oracle_suite(r, opts.seed, opts.psi_max_k);
  }
  if (suite == "all" || suite == "verlinde") {
    Runner r("verlinde", lines, on_line);
    verlinde_suite(r);
  }
  return lines;
}

}  // namespace fusion
