#include <doctest.h>

#include <algorithm>

#include "fusion/errors.hpp"
#include "fusion/filtration.hpp"

using namespace fusion;

namespace {

std::vector<CyclicModule> irreps(std::initializer_list<int> ms) {
  std::vector<CyclicModule> out;
  for (int m : ms) out.push_back(build_sl2_irrep(m));
  return out;
}

// Plain tensor-product weight multiplicities by direct counting.
std::map<int, std::int64_t> brute_weights(const std::vector<int>& ms) {
  std::map<int, std::int64_t> w{{0, 1}};
  for (int m : ms) {
    std::map<int, std::int64_t> next;
    for (const auto& [mu, c] : w)
      for (int i = 0; i <= m; ++i) next[mu + m - 2 * i] += c;
    w = next;
  }
  return w;
}

BigradedChar char_of(const std::vector<CyclicModule>& mods, const EvaluationPoints& z) {
  return bigraded_character(filtered_tensor(mods, z));
}

}  // namespace

TEST_CASE("filtered_tensor examples") {
  const auto f = filtered_tensor(irreps({1, 1}), EvaluationPoints::parse("0,1"));
  CHECK(f.dims() == std::vector<std::size_t>{3, 4});
  // F^0 is the symmetric square
  const auto f0 = f.subspace(0);
  CHECK(subspace_contains(f0, Vec{0, 1, 1, 0}));
  CHECK_FALSE(subspace_contains(f0, Vec{0, 1, -1, 0}));

  for (int m = 0; m <= 4; ++m) {
    const auto single = filtered_tensor(irreps({m}), EvaluationPoints::parse("5/2"));
    CHECK(single.depth() == 0);
    CHECK(single.dims() == std::vector<std::size_t>{static_cast<std::size_t>(m + 1)});
  }
  const auto trivial = filtered_tensor(irreps({0, 0, 0}), EvaluationPoints::defaults(3));
  CHECK(trivial.dims() == std::vector<std::size_t>{1});
}

TEST_CASE("filtered_tensor errors") {
  CHECK_THROWS_AS(filtered_tensor(irreps({1, 1}), EvaluationPoints{{Rat(1), Rat(1)}}), InputError);
  CHECK_THROWS_AS(filtered_tensor(irreps({1, 1}), EvaluationPoints::defaults(3)), InputError);
  CHECK_THROWS_AS(filtered_tensor({build_sl2_irrep(1), build_abelian_powers(1, 1)},
                                  EvaluationPoints::defaults(2)),
                  InputError);
  // cyclic vector that only reaches the pi_1 summand of N_1
  auto partial = build_level_sum(1, false);
  partial.cyclic = Vec{0, 1, 0};
  try {
    filtered_tensor({partial}, EvaluationPoints::defaults(1));
    FAIL("expected InvariantViolation");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("reached dim 2 of 3") != std::string::npos);
  }
  try {
    filtered_tensor({partial, build_level_sum(1, false)}, EvaluationPoints::defaults(2));
    FAIL("expected InvariantViolation");
  } catch (const InvariantViolation& e) {
    CHECK(std::string(e.what()).find("of 9") != std::string::npos);
  }
}

TEST_CASE("fuse examples") {
  const auto g = fuse(irreps({1, 1}), EvaluationPoints::parse("0,1"));
  CHECK(g.dim == 4);
  CHECK(std::count(g.t_grading->begin(), g.t_grading->end(), 0) == 3);
  CHECK(std::count(g.t_grading->begin(), g.t_grading->end(), 1) == 1);
  CHECK(validate_module(g).ok());
  const auto dec = gr_decompose(bigraded_character(g));
  CHECK(dec == std::map<CharKey, std::int64_t>{{CharKey{{2}, 0, {}}, 1}, {CharKey{{0}, 1, {}}, 1}});

  for (int m = 0; m <= 3; ++m) {
    const auto one = fuse(irreps({m}), EvaluationPoints::parse("3"));
    CHECK(one.dim == static_cast<std::size_t>(m + 1));
    CHECK(std::all_of(one.t_grading->begin(), one.t_grading->end(), [](int t) { return t == 0; }));
    CHECK(bigraded_character(one) == bigraded_character(build_sl2_irrep(m)));
  }

  const auto inner = fuse(irreps({1, 1}), EvaluationPoints::parse("0,1"));
  const auto outer = fuse({inner, build_sl2_irrep(1)}, EvaluationPoints::defaults(2));
  CHECK(validate_module(outer).ok());
  CHECK(bigraded_character(outer) == char_of(irreps({1, 1, 1}), EvaluationPoints::defaults(3)));
}

TEST_CASE("fused modules of larger products validate") {
  for (const auto& mods : {irreps({1, 2}), irreps({2, 2}), irreps({1, 1, 2})}) {
    const auto g = fuse(mods, EvaluationPoints::random(mods.size(), 9));
    INFO(g.descriptor);
    const auto rep = validate_module(g);
    CHECK(rep.ok());
    for (const auto& v : rep.violations) MESSAGE(v);
  }
  const auto ab = fuse({build_abelian_powers(2, 1), build_abelian_powers(2, 2)}, EvaluationPoints::defaults(2));
  CHECK(validate_module(ab).ok());
}

TEST_CASE("bigraded_character examples") {
  const auto ch = char_of(irreps({1, 1}), EvaluationPoints::parse("0,1"));
  CHECK(ch.entries == std::map<CharKey, std::int64_t>{{CharKey{{2}, 0, {}}, 1},
                                                      {CharKey{{0}, 0, {}}, 1},
                                                      {CharKey{{0}, 1, {}}, 1},
                                                      {CharKey{{-2}, 0, {}}, 1}});
  CHECK(zq_polynomial(ch).to_string() == "1 + z + z*q + z^2");

  const auto ch3 = char_of(irreps({1, 1, 1}), EvaluationPoints::defaults(3));
  CHECK(zq_polynomial(ch3).to_string() == "1 + z + z*q + z*q^2 + z^2 + z^2*q + z^2*q^2 + z^3");

  CHECK(zq_polynomial(char_of(irreps({3}), EvaluationPoints::defaults(1))).to_string() ==
        "1 + z + z^2 + z^3");
}

TEST_CASE("gr_decompose and kostka_table examples") {
  const auto d3 = gr_decompose(char_of(irreps({1, 1, 1}), EvaluationPoints::defaults(3)));
  CHECK(d3 == std::map<CharKey, std::int64_t>{{CharKey{{3}, 0, {}}, 1},
                                              {CharKey{{1}, 1, {}}, 1},
                                              {CharKey{{1}, 2, {}}, 1}});
  CHECK(gr_decompose(bigraded_character(build_sl2_irrep(4))) ==
        std::map<CharKey, std::int64_t>{{CharKey{{4}, 0, {}}, 1}});

  const auto k2 = kostka_table(irreps({1, 1}), EvaluationPoints::defaults(2));
  CHECK(k2.plain({2}).to_string() == "1");
  CHECK(k2.plain({0}).to_string() == "q");
  const auto k3 = kostka_table(irreps({1, 1, 1}), EvaluationPoints::defaults(3));
  CHECK(k3.plain({3}).to_string() == "1");
  CHECK(k3.plain({1}).to_string() == "q+q^2");
  CHECK(kostka_table(irreps({4}), EvaluationPoints::defaults(1)).plain({4}).to_string() == "1");

  // a character that is not a sum of sl2 strings
  BigradedChar bad;
  bad.algebra = "sl2";
  bad.cartan_count = 1;
  bad.entries[CharKey{{0}, 0, {}}] = 1;
  bad.entries[CharKey{{2}, 0, {}}] = 2;
  CHECK_THROWS_AS(gr_decompose(bad), InvariantViolation);
  CHECK_THROWS_AS(gr_decompose(bigraded_character(build_slN_sym(2, 1))), InputError);
}

TEST_CASE("aux-graded Kostka table of N_1 (x) N_1") {
  const auto n1 = build_level_sum(1, false);
  const auto t = kostka_table({n1, n1}, EvaluationPoints::defaults(2), true);
  CHECK(t.aux);
  // total aux weight of pi_a (x) pi_b is a + b
  CHECK(t.entries.at({2}) == BiPoly::monomial(0, 2));
  CHECK(t.plain({0}).at_one() == 2);
  std::int64_t total = 0;
  for (const auto& [eta, c] : t.entries) total += c.at_one() * (eta[0] + 1);
  CHECK(total == 9);
  CHECK_THROWS_AS(kostka_table(irreps({1, 1}), EvaluationPoints::defaults(2), true), InputError);
}

TEST_CASE("z_independence examples") {
  CHECK(z_independence(irreps({1, 1}), 5, 1).agree);
  CHECK(z_independence(irreps({2, 3}), 5, 1).agree);
  const auto s1 = build_abelian_powers(2, 1);
  const auto rep = z_independence({s1, s1}, 5, 1);
  CHECK(rep.agree);
  CHECK(rep.samples.size() == 5);
  CHECK_THROWS_AS(z_independence({s1, s1}, 1, 1), InputError);
}

TEST_CASE("filtration invariants on a range of sl2 products") {
  const std::vector<std::vector<int>> suite{{1, 2}, {2, 2}, {1, 1, 2}, {3, 1}, {2, 1, 1}, {1, 2, 3}};
  for (const auto& ms : suite) {
    std::vector<CyclicModule> mods;
    for (int m : ms) mods.push_back(build_sl2_irrep(m));
    const auto z = EvaluationPoints::random(mods.size(), 17);
    const auto f = filtered_tensor(mods, z);
    INFO("dims " << ms.size());
    std::size_t expected = 1;
    for (int m : ms) expected *= static_cast<std::size_t>(m + 1);
    CHECK(f.dims().back() == expected);
    CHECK(f.subspace(f.depth()).dim() == expected);

    // equivariance: each F^i is stable under degree-0 operators
    std::vector<Mat> deg0;
    for (std::size_t g = 0; g < 3; ++g) deg0.push_back(current_op_matrix(mods, z, {g, 0}));
    for (int i = 0; i <= f.depth(); ++i) {
      const auto s = f.subspace(i);
      CHECK(s.dim() == f.dims()[static_cast<std::size_t>(i)]);
      for (const auto& m : deg0) CHECK(subspace_stable(s, m));
      if (i > 0) CHECK(f.dims()[static_cast<std::size_t>(i)] > f.dims()[static_cast<std::size_t>(i - 1)]);
    }

    // q = 1 specialization against brute-force weights
    const auto ch = bigraded_character(f);
    std::map<int, std::int64_t> q1;
    for (const auto& [w, c] : ch.at_q_one()) q1[w[0]] = c;
    CHECK(q1 == brute_weights(ms));

    // ordering independence
    auto rev = mods;
    std::reverse(rev.begin(), rev.end());
    auto zr = z;
    std::reverse(zr.z.begin(), zr.z.end());
    CHECK(char_of(rev, zr) == ch);
  }
}

TEST_CASE("mu -> -mu symmetry of the q = 1 character") {
  const auto ch = char_of(irreps({2, 3, 1}), EvaluationPoints::defaults(3));
  const auto q1 = ch.at_q_one();
  for (const auto& [w, c] : q1) CHECK(q1.at({-w[0]}) == c);
}

TEST_CASE("abelian and sl3 characters carry multidegree weights") {
  const auto s1 = build_abelian_powers(1, 1);
  const auto ab = char_of({s1, s1}, EvaluationPoints::parse("0,1"));
  CHECK(ab.cartan_count == 0);
  CHECK(zq_polynomial(ab).to_string() == "1 + z + z*q + z^2");
  const auto sl3 = char_of({build_slN_sym(2, 1), build_slN_sym(2, 1)}, EvaluationPoints::defaults(2));
  CHECK(sl3.cartan_count == 2);
  CHECK(sl3.total() == 9);
  CHECK_THROWS_AS(zq_polynomial(sl3), InputError);
}

TEST_CASE("weight generator selection") {
  const auto nn = build_level_sum(1, true);
  CharOptions opts;
  opts.weight_generator = 2;  // h1
  const auto ch = bigraded_character(filtered_tensor({nn}, EvaluationPoints::defaults(1)), opts);
  CHECK(ch.cartan_count == 1);
  CHECK(ch.total() == 5);
  opts.weight_generator = 0;
  CHECK_THROWS_AS(bigraded_character(filtered_tensor({nn}, EvaluationPoints::defaults(1)), opts), InputError);

  auto skew = build_sl2_irrep(1);
  skew.action[2][0](0, 1) = Rat(1);  // h no longer diagonal
  CHECK_THROWS_AS(bigraded_character(skew), InvariantViolation);
}
