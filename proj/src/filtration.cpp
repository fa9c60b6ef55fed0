#include "fusion/filtration.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "fusion/errors.hpp"

namespace fusion {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool diagonal_integral(const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && !m(i, j).is_zero()) return false;
      if (i == j && !m(i, j).is_integer()) return false;
    }
  return true;
}

int to_int(const Rat& r) { return static_cast<int>(r.num().get_si()); }

}  // namespace

class FiltrationBuilder {
 public:
  FiltrationBuilder(const std::vector<CyclicModule>& modules, const EvaluationPoints& z)
      : modules_(modules), points_(z) {}

  Filtration build();

  // Shared with fuse(): block lookup and operator application on an existing filtration.
  static std::optional<std::pair<std::size_t, Vec>> apply(
      const Filtration& f, const std::vector<std::pair<std::size_t, std::size_t>>& where,
      const SparseOp& op, std::size_t block, const Vec& u);
  static std::vector<std::pair<std::size_t, std::size_t>> locate(const Filtration& f);

 private:
  bool insert(std::size_t block, Vec w, int level);
  void saturate(std::deque<std::pair<std::size_t, Vec>>& queue, int level);

  const std::vector<CyclicModule>& modules_;
  const EvaluationPoints& points_;
  Filtration f_;
  std::vector<std::pair<std::size_t, std::size_t>> where_;  // global -> (block, local)
  std::vector<std::vector<SparseOp>> ops_;                   // [generator][power]
  std::vector<std::vector<std::pair<std::size_t, Vec>>> new_at_;
  std::size_t total_ = 0;
};

std::vector<std::pair<std::size_t, std::size_t>> FiltrationBuilder::locate(const Filtration& f) {
  std::vector<std::pair<std::size_t, std::size_t>> where(f.ambient_dim());
  for (std::size_t b = 0; b < f.blocks().size(); ++b)
    for (std::size_t l = 0; l < f.blocks()[b].indices.size(); ++l)
      where[f.blocks()[b].indices[l]] = {b, l};
  return where;
}

std::optional<std::pair<std::size_t, Vec>> FiltrationBuilder::apply(
    const Filtration& f, const std::vector<std::pair<std::size_t, std::size_t>>& where,
    const SparseOp& op, std::size_t block, const Vec& u) {
  std::size_t target = kNone;
  Vec out;
  const auto& idx = f.blocks()[block].indices;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    for (const auto& [row, c] : op.columns[idx[i]]) {
      const auto [rb, rl] = where[row];
      if (target == kNone) {
        target = rb;
        out.assign(f.blocks()[rb].indices.size(), Rat(0));
      } else if (rb != target) {
        throw InvariantViolation("operator is not homogeneous for the weight labels");
      }
      out[rl] += c * u[i];
    }
  }
  if (target == kNone || is_zero(out)) return std::nullopt;
  return std::make_pair(target, std::move(out));
}

bool FiltrationBuilder::insert(std::size_t block, Vec w, int level) {
  auto& rows = f_.blocks_[block].rows;
  for (const auto& row : rows) {
    const Rat factor = w[row.pivot];
    if (factor.is_zero()) continue;
    for (std::size_t c = row.pivot; c < w.size(); ++c)
      if (!row.v[c].is_zero()) w[c] -= factor * row.v[c];
  }
  std::size_t p = 0;
  while (p < w.size() && w[p].is_zero()) ++p;
  if (p == w.size()) return false;
  const Rat inv = Rat(1) / w[p];
  for (std::size_t c = p; c < w.size(); ++c)
    if (!w[c].is_zero()) w[c] *= inv;
  const auto pos = std::lower_bound(rows.begin(), rows.end(), p,
                                    [](const Filtration::Row& r, std::size_t q) { return r.pivot < q; });
  new_at_[static_cast<std::size_t>(level)].emplace_back(block, w);
  rows.insert(pos, Filtration::Row{std::move(w), p, level});
  ++total_;
  return true;
}

void FiltrationBuilder::saturate(std::deque<std::pair<std::size_t, Vec>>& queue, int level) {
  while (!queue.empty()) {
    auto [b, u] = std::move(queue.front());
    queue.pop_front();
    for (std::size_t g = 0; g < ops_.size(); ++g) {
      auto res = apply(f_, where_, ops_[g][0], b, u);
      if (!res) continue;
      if (insert(res->first, res->second, level)) queue.push_back(new_at_[static_cast<std::size_t>(level)].back());
    }
  }
}

Filtration FiltrationBuilder::build() {
  points_.validate();
  check_same_algebra(modules_);
  if (modules_.size() != points_.size())
    throw InputError("need one evaluation point per module (" + std::to_string(modules_.size()) +
                     " modules, " + std::to_string(points_.size()) + " points)");
  for (const auto& m : modules_)
    if (m.cyclic.size() != m.dim || is_zero(m.cyclic))
      throw InputError("module " + m.descriptor + " has no usable cyclic vector");

  f_.factors_ = modules_;
  f_.points_ = points_;
  const auto& alg = *modules_.front().algebra;

  // key layout
  auto& lay = f_.layout_;
  lay.cartan_diagonal = !alg.cartan.empty();
  for (const auto& m : modules_)
    for (std::size_t c : alg.cartan)
      if (!diagonal_integral(m.op(c))) lay.cartan_diagonal = false;
  lay.cartan_count = lay.cartan_diagonal ? alg.cartan.size() : 0;
  lay.label_count = modules_.front().labels && !modules_.front().labels->empty()
                        ? modules_.front().labels->front().size()
                        : 0;
  for (const auto& m : modules_)
    if (!m.labels || m.labels->empty() || m.labels->front().size() != lay.label_count)
      lay.label_count = 0;
  lay.has_aux = std::all_of(modules_.begin(), modules_.end(),
                            [](const CyclicModule& m) { return m.aux_grading.has_value(); });

  std::vector<std::size_t> dims;
  for (const auto& m : modules_) dims.push_back(m.dim);
  const TensorShape shape(dims);
  f_.ambient_ = shape.total();

  auto key_of = [&](std::size_t index) {
    std::vector<int> key(lay.cartan_count + lay.label_count + (lay.has_aux ? 1 : 0), 0);
    for (std::size_t i = 0; i < modules_.size(); ++i) {
      const auto& m = modules_[i];
      const std::size_t d = shape.digit(index, i);
      for (std::size_t c = 0; c < lay.cartan_count; ++c) key[c] += to_int(m.op(alg.cartan[c])(d, d));
      for (std::size_t l = 0; l < lay.label_count; ++l) key[lay.cartan_count + l] += (*m.labels)[d][l];
      if (lay.has_aux) key.back() += (*m.aux_grading)[d];
    }
    return key;
  };

  // Labels and aux may refine the blocks only if every Cartan component of v is homogeneous.
  const Vec v = tensor_cyclic_vector(modules_);
  {
    std::map<std::vector<int>, std::set<std::vector<int>>> by_cartan;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      const auto key = key_of(i);
      by_cartan[std::vector<int>(key.begin(), key.begin() + static_cast<long>(lay.cartan_count))]
          .insert(key);
    }
    for (const auto& [c, keys] : by_cartan)
      if (keys.size() > 1) {
        lay.label_count = 0;
        lay.has_aux = false;
        break;
      }
  }

  std::map<std::vector<int>, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < f_.ambient_; ++i) grouped[key_of(i)].push_back(i);
  for (auto& [key, idx] : grouped) f_.blocks_.push_back(Filtration::Block{key, std::move(idx), {}});
  where_ = locate(f_);

  std::size_t extent = 0;
  for (const auto& m : modules_) extent += m.max_tdeg() + 1;
  const std::size_t K = extent - 1;
  f_.cutoff_ = K;
  ops_.resize(alg.size());
  for (std::size_t g = 0; g < alg.size(); ++g)
    for (std::size_t k = 0; k <= K; ++k) ops_[g].push_back(current_op_sparse(modules_, points_, {g, k}));

  // level 0
  new_at_.emplace_back();
  {
    std::map<std::size_t, Vec> parts;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      const auto [b, l] = where_[i];
      auto& part = parts[b];
      if (part.empty()) part.assign(f_.blocks_[b].indices.size(), Rat(0));
      part[l] = v[i];
    }
    std::deque<std::pair<std::size_t, Vec>> queue;
    for (auto& [b, part] : parts)
      if (insert(b, part, 0)) queue.push_back(new_at_[0].back());
    saturate(queue, 0);
    f_.dims_.push_back(total_);
  }

  std::size_t empty_streak = 0;
  for (int level = 1; total_ < f_.ambient_; ++level) {
    if (empty_streak >= std::max<std::size_t>(K, 1))
      throw InvariantViolation("cyclic vector does not generate the tensor product: reached dim " +
                               std::to_string(total_) + " of " + std::to_string(f_.ambient_));
    new_at_.emplace_back();
    std::deque<std::pair<std::size_t, Vec>> queue;
    for (std::size_t k = 1; k <= K && k <= static_cast<std::size_t>(level); ++k) {
      const auto source = static_cast<std::size_t>(level) - k;
      for (std::size_t j = 0; j < new_at_[source].size(); ++j) {
        // copy: insert() may grow new_at_[source] when source == level (never, k >= 1)
        const auto [b, u] = new_at_[source][j];
        for (std::size_t g = 0; g < alg.size(); ++g) {
          auto res = apply(f_, where_, ops_[g][k], b, u);
          if (res && insert(res->first, res->second, level))
            queue.push_back(new_at_[static_cast<std::size_t>(level)].back());
        }
      }
    }
    saturate(queue, level);
    empty_streak = new_at_[static_cast<std::size_t>(level)].empty() ? empty_streak + 1 : 0;
    f_.dims_.push_back(total_);
  }
  // trailing empty levels would only repeat the full dimension
  while (f_.dims_.size() > 1 && f_.dims_[f_.dims_.size() - 2] == f_.ambient_) f_.dims_.pop_back();
  if (total_ != f_.ambient_)
    throw InvariantViolation("cyclic vector does not generate the tensor product: reached dim " +
                             std::to_string(total_) + " of " + std::to_string(f_.ambient_));
  return std::move(f_);
}

Filtration filtered_tensor(const std::vector<CyclicModule>& modules, const EvaluationPoints& z) {
  return FiltrationBuilder(modules, z).build();
}

Subspace Filtration::subspace(int i) const {
  std::vector<Vec> vecs;
  for (const auto& b : blocks_)
    for (const auto& r : b.rows)
      if (r.level <= i) {
        Vec g(ambient_);
        for (std::size_t l = 0; l < r.v.size(); ++l) g[b.indices[l]] = r.v[l];
        vecs.push_back(std::move(g));
      }
  return rref_basis(vecs, ambient_);
}

std::vector<Vec> Filtration::level_vectors(int i) const {
  std::vector<Vec> vecs;
  for (const auto& b : blocks_)
    for (const auto& r : b.rows)
      if (r.level == i) {
        Vec g(ambient_);
        for (std::size_t l = 0; l < r.v.size(); ++l) g[b.indices[l]] = r.v[l];
        vecs.push_back(std::move(g));
      }
  return vecs;
}

// ---------------------------------------------------------------- fusion

namespace {

struct Coefficient {
  int level;
  std::size_t pivot;
  Rat value;
};

// Expansion of w (inside block b) in the echelon rows of b.
std::vector<Coefficient> expand(const Filtration::Block& b, Vec w) {
  std::vector<Coefficient> out;
  for (const auto& row : b.rows) {
    const Rat factor = w[row.pivot];
    if (factor.is_zero()) continue;
    for (std::size_t c = row.pivot; c < w.size(); ++c)
      if (!row.v[c].is_zero()) w[c] -= factor * row.v[c];
    out.push_back({row.level, row.pivot, factor});
  }
  if (!is_zero(w)) throw InvariantViolation("vector escaped the filtration");
  return out;
}

}  // namespace

CyclicModule fuse(const Filtration& flt) {
  const auto& alg = flt.factors().front().algebra;
  const auto& blocks = flt.blocks();
  const auto& lay = flt.layout();
  const int depth = flt.depth();

  // fused basis: (level, block, pivot)
  std::vector<std::tuple<int, std::size_t, std::size_t>> order;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t r = 0; r < blocks[b].rows.size(); ++r)
      order.emplace_back(blocks[b].rows[r].level, b, r);
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
    return blocks[std::get<1>(x)].rows[std::get<2>(x)].pivot <
           blocks[std::get<1>(y)].rows[std::get<2>(y)].pivot;
  });
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;  // (block, pivot) -> fused index
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [lvl, b, r] = order[i];
    index[{b, blocks[b].rows[r].pivot}] = i;
  }

  CyclicModule out;
  out.algebra = alg;
  out.dim = order.size();
  out.t_grading = std::vector<int>(out.dim);
  if (lay.has_aux) out.aux_grading = std::vector<int>(out.dim);
  if (lay.label_count > 0) out.labels = std::vector<std::vector<int>>(out.dim);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [lvl, b, r] = order[i];
    (*out.t_grading)[i] = lvl;
    const auto& key = blocks[b].key;
    if (lay.has_aux) (*out.aux_grading)[i] = key.back();
    if (lay.label_count > 0)
      (*out.labels)[i] = std::vector<int>(key.begin() + static_cast<long>(lay.cartan_count),
                                          key.begin() + static_cast<long>(lay.cartan_count + lay.label_count));
  }

  const auto where = FiltrationBuilder::locate(flt);
  out.action.assign(alg->size(), {});
  for (std::size_t g = 0; g < alg->size(); ++g)
    for (int k = 0; k <= depth; ++k) {
      const SparseOp op =
          current_op_sparse(flt.factors(), flt.points(), {g, static_cast<std::size_t>(k)});
      Mat m(out.dim, out.dim);
      for (std::size_t col = 0; col < order.size(); ++col) {
        const auto& [lvl, b, r] = order[col];
        if (lvl + k > depth) continue;
        auto res = FiltrationBuilder::apply(flt, where, op, b, blocks[b].rows[r].v);
        if (!res) continue;
        for (const auto& c : expand(blocks[res->first], res->second)) {
          if (c.level > lvl + k)
            throw InvariantViolation("a t^k raised filtration degree by more than k");
          if (c.level == lvl + k) m(index.at({res->first, c.pivot}), col) = c.value;
        }
      }
      out.action[g].push_back(std::move(m));
    }

  out.cyclic = Vec(out.dim);
  const Vec v = tensor_cyclic_vector(flt.factors());
  std::map<std::size_t, Vec> parts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const auto [b, l] = where[i];
    auto& part = parts[b];
    if (part.empty()) part.assign(blocks[b].indices.size(), Rat(0));
    part[l] = v[i];
  }
  for (auto& [b, part] : parts)
    for (const auto& c : expand(blocks[b], part)) {
      if (c.level != 0) throw InvariantViolation("cyclic vector outside F^0");
      out.cyclic[index.at({b, c.pivot})] = c.value;
    }

  std::string desc = "fuse(";
  for (std::size_t i = 0; i < flt.factors().size(); ++i)
    desc += (i ? "," : "") + flt.factors()[i].descriptor;
  out.descriptor = desc + ")";
  return out;
}

CyclicModule fuse(const std::vector<CyclicModule>& modules, const EvaluationPoints& z) {
  return fuse(filtered_tensor(modules, z));
}

// ---------------------------------------------------------------- characters

std::int64_t BigradedChar::total() const {
  std::int64_t s = 0;
  for (const auto& [k, m] : entries) s += m;
  return s;
}

std::map<std::vector<int>, std::int64_t> BigradedChar::at_q_one() const {
  std::map<std::vector<int>, std::int64_t> out;
  for (const auto& [k, m] : entries) out[k.weight] += m;
  return out;
}

BigradedChar BigradedChar::without_aux() const {
  BigradedChar out = *this;
  out.entries.clear();
  for (const auto& [k, m] : entries) out.entries[CharKey{k.weight, k.tdeg, std::nullopt}] += m;
  return out;
}

namespace {

// Position of the chosen weight generator among the Cartan generators.
std::optional<std::size_t> weight_slot(const LiePresentation& alg, const CharOptions& opts) {
  if (!opts.weight_generator) return std::nullopt;
  const auto it = std::find(alg.cartan.begin(), alg.cartan.end(), *opts.weight_generator);
  if (it == alg.cartan.end())
    throw InputError("weight operator must be one of the Cartan generators of " + alg.name);
  return static_cast<std::size_t>(it - alg.cartan.begin());
}

}  // namespace

BigradedChar bigraded_character(const Filtration& flt, CharOptions opts) {
  const auto& alg = *flt.factors().front().algebra;
  const auto& lay = flt.layout();
  if (!alg.cartan.empty() && !lay.cartan_diagonal)
    throw InvariantViolation("weight operator is not diagonal with integer eigenvalues in the tensor basis");
  if (opts.aux && !lay.has_aux)
    throw InputError("aux grading requested but unavailable for these modules");
  const auto slot = weight_slot(alg, opts);

  BigradedChar ch;
  ch.algebra = alg.name;
  ch.cartan_count = slot ? 1 : lay.cartan_count;
  ch.label_count = lay.label_count;
  for (const auto& b : flt.blocks()) {
    std::vector<int> w;
    if (slot) w.push_back(b.key[*slot]);
    else w.assign(b.key.begin(), b.key.begin() + static_cast<long>(lay.cartan_count));
    w.insert(w.end(), b.key.begin() + static_cast<long>(lay.cartan_count),
             b.key.begin() + static_cast<long>(lay.cartan_count + lay.label_count));
    for (const auto& r : b.rows) {
      CharKey key{w, r.level, opts.aux ? std::optional<int>(b.key.back()) : std::nullopt};
      ++ch.entries[key];
    }
  }
  return ch;
}

BigradedChar bigraded_character(const CyclicModule& m, CharOptions opts) {
  const auto& alg = *m.algebra;
  for (std::size_t c : alg.cartan)
    if (!diagonal_integral(m.op(c)))
      throw InvariantViolation("weight operator " + alg.generators[c] +
                               " is not diagonal with integer eigenvalues");
  if (opts.aux && !m.aux_grading) throw InputError("aux grading requested but module has none");
  const auto slot = weight_slot(alg, opts);
  const std::size_t labels = m.labels && !m.labels->empty() ? m.labels->front().size() : 0;

  BigradedChar ch;
  ch.algebra = alg.name;
  ch.cartan_count = slot ? 1 : alg.cartan.size();
  ch.label_count = labels;
  for (std::size_t i = 0; i < m.dim; ++i) {
    std::vector<int> w;
    if (slot) w.push_back(to_int(m.op(alg.cartan[*slot])(i, i)));
    else
      for (std::size_t c : alg.cartan) w.push_back(to_int(m.op(c)(i, i)));
    if (labels) w.insert(w.end(), (*m.labels)[i].begin(), (*m.labels)[i].end());
    CharKey key{w, m.t_grading ? (*m.t_grading)[i] : 0,
                opts.aux ? std::optional<int>((*m.aux_grading)[i]) : std::nullopt};
    ++ch.entries[key];
  }
  return ch;
}

BiPoly zq_polynomial(const BigradedChar& ch) {
  BiPoly p;
  if (ch.cartan_count == 1 && ch.label_count == 0) {
    int top = std::numeric_limits<int>::min();
    for (const auto& [k, m] : ch.entries) top = std::max(top, k.weight[0]);
    for (const auto& [k, m] : ch.entries) {
      if ((top - k.weight[0]) % 2 != 0) throw InvariantViolation("weights not in one sl2 string");
      p.add((top - k.weight[0]) / 2, k.tdeg, m);
    }
    return p;
  }
  if (ch.cartan_count == 0) {
    for (const auto& [k, m] : ch.entries) {
      int r = 0;
      for (int x : k.weight) r += x;
      p.add(r, k.tdeg, m);
    }
    return p;
  }
  throw InputError("ch(z,q) needs a single Cartan coordinate or label weights");
}

BigradedChar sl_to_multidegree(const BigradedChar& ch, int total) {
  if (ch.label_count != 0 || ch.cartan_count == 0)
    throw InputError("multidegree conversion needs a pure sl_{n+1} character");
  const int n = static_cast<int>(ch.cartan_count);
  BigradedChar out;
  out.algebra = "abelian" + std::to_string(n);
  out.label_count = ch.cartan_count;
  for (const auto& [key, m] : ch.entries) {
    // h_i = b_{i-1} - b_i and sum b = total
    int acc = total;
    for (int i = 1; i <= n; ++i) acc += (n - i + 1) * key.weight[static_cast<std::size_t>(i - 1)];
    if (acc % (n + 1) != 0) throw InvariantViolation("weight is not a symmetric-power weight");
    int b = acc / (n + 1);
    std::vector<int> a;
    for (int i = 1; i <= n; ++i) {
      b -= key.weight[static_cast<std::size_t>(i - 1)];
      if (b < 0) throw InvariantViolation("weight is not a symmetric-power weight");
      a.push_back(b);
    }
    out.entries[{a, key.tdeg, key.aux}] += m;
  }
  return out;
}

std::map<CharKey, std::int64_t> gr_decompose(const BigradedChar& ch) {
  if ((ch.algebra != "sl2" && ch.algebra != "sl2+sl2") || ch.label_count != 0 ||
      ch.cartan_count == 0)
    throw InputError("irreducible decomposition is only available for products of sl2");
  const std::size_t c = ch.cartan_count;
  auto dim_at = [&](CharKey k) {
    const auto it = ch.entries.find(k);
    return it == ch.entries.end() ? std::int64_t{0} : it->second;
  };
  std::map<CharKey, std::int64_t> out;
  for (const auto& [key, m] : ch.entries) {
    if (std::any_of(key.weight.begin(), key.weight.end(), [](int x) { return x < 0; })) continue;
    std::int64_t mult = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << c); ++mask) {
      CharKey shifted = key;
      int sign = 1;
      for (std::size_t i = 0; i < c; ++i)
        if (mask & (std::size_t{1} << i)) {
          shifted.weight[i] += 2;
          sign = -sign;
        }
      mult += sign * dim_at(shifted);
    }
    if (mult < 0)
      throw InvariantViolation("negative multiplicity in graded decomposition at t-degree " +
                               std::to_string(key.tdeg));
    if (mult > 0) out[key] = mult;
  }
  return out;
}

QPoly KostkaTable::plain(const std::vector<int>& eta) const {
  const auto it = entries.find(eta);
  return it == entries.end() ? QPoly() : it->second.second_at_one();
}

KostkaTable kostka_from_char(const BigradedChar& ch) {
  KostkaTable t;
  for (const auto& [key, m] : gr_decompose(ch)) {
    if (key.aux) t.aux = true;
    t.entries[key.weight].add(key.tdeg, key.aux.value_or(0), m);
  }
  return t;
}

KostkaTable kostka_table(const std::vector<CyclicModule>& modules, const EvaluationPoints& z,
                         bool aux) {
  CharOptions opts;
  opts.aux = aux;
  KostkaTable t = kostka_from_char(bigraded_character(filtered_tensor(modules, z), opts));
  t.aux = aux;
  return t;
}

IndependenceReport z_independence(const std::vector<CyclicModule>& modules,
                                  std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw InputError("z_independence needs at least two samples");
  IndependenceReport rep;
  std::optional<BigradedChar> first;
  for (std::size_t s = 0; s < n_samples; ++s) {
    rep.samples.push_back(EvaluationPoints::random(modules.size(), seed + s));
    const auto ch = bigraded_character(filtered_tensor(modules, rep.samples.back()));
    if (!first) first = ch;
    else if (ch != *first && rep.agree) {
      rep.agree = false;
      rep.disagreeing = std::make_pair(std::size_t{0}, s);
    }
  }
  return rep;
}

}  // namespace fusion
