#include "fusion/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fusion/errors.hpp"

namespace fusion {

Rat::Rat(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw InputError("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw InputError("malformed rational literal '" + s + "'");
  mpz_class n(num[0] == '+' ? num.substr(1) : num);
  mpz_class d(den);
  if (d == 0) throw InputError("rational with zero denominator: '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::to_string() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw InputError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rat pow(const Rat& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rat(mpq_class(n, d));
}

Rat binomial(unsigned n, unsigned k) {
  if (k > n) return Rat(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rat(r);
}

bool is_zero(std::span<const Rat> v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

// ---------------------------------------------------------------- Mat

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Rat>>& rows) {
  if (rows.empty()) return Mat();
  Mat m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x.is_zero(); });
}

Vec Mat::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Mat::apply(std::span<const Rat> v) const {
  if (v.size() != cols_) throw InputError("matrix/vector size mismatch");
  Vec out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rat& a = (*this)(r, c);
      if (!a.is_zero()) out[r] += a * v[c];
    }
  }
  return out;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Mat& Mat::operator*=(const Rat& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
  Mat out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rat& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rat& y = b(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  return out;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

// ---------------------------------------------------------------- Subspace

Vec Subspace::reduce(Vec v) const {
  if (v.size() != ambient_) throw InputError("vector length does not match ambient dimension");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rat f = v[pivots_[i]];
    if (f.is_zero()) continue;
    const Vec& b = basis_[i];
    for (std::size_t c = pivots_[i]; c < ambient_; ++c)
      if (!b[c].is_zero()) v[c] -= f * b[c];
  }
  return v;
}

Subspace rref_basis(const std::vector<Vec>& vectors, std::size_t ambient_dim) {
  std::vector<Vec> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != ambient_dim)
      throw InputError("rref_basis: vector of length " + std::to_string(v.size()) +
                       " in ambient dimension " + std::to_string(ambient_dim));
    if (!is_zero(v)) rows.push_back(v);
  }

  Subspace s(ambient_dim);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ambient_dim && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const Rat inv = Rat(1) / rows[rank][col];
    for (std::size_t c = col; c < ambient_dim; ++c) rows[rank][c] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const Rat f = rows[r][col];
      for (std::size_t c = col; c < ambient_dim; ++c)
        if (!rows[rank][c].is_zero()) rows[r][c] -= f * rows[rank][c];
    }
    s.pivots_.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  s.basis_ = std::move(rows);
  return s;
}

Subspace subspace_join(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("subspace_join: ambient mismatch");
  std::vector<Vec> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  return rref_basis(all, a.ambient_dim());
}

bool subspace_contains(const Subspace& s, std::span<const Rat> v) {
  if (v.size() != s.ambient_dim()) throw InputError("subspace_contains: length mismatch");
  return is_zero(s.reduce(Vec(v.begin(), v.end())));
}

bool subspace_stable(const Subspace& s, const Mat& m) {
  for (const auto& b : s.basis())
    if (!subspace_contains(s, m.apply(b))) return false;
  return true;
}

// ---------------------------------------------------------------- QPoly

QPoly QPoly::monomial(int exponent, std::int64_t coeff) {
  QPoly p;
  p.add(exponent, coeff);
  return p;
}

std::int64_t QPoly::coeff(int exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

int QPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
int QPoly::lowest() const { return terms_.empty() ? -1 : terms_.begin()->first; }

std::int64_t QPoly::at_one() const {
  std::int64_t s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

bool QPoly::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

void QPoly::add(int exponent, std::int64_t coeff) {
  if (exponent < 0) throw InputError("QPoly exponent must be nonnegative");
  if (coeff == 0) return;
  auto& c = terms_[exponent];
  c += coeff;
  if (c == 0) terms_.erase(exponent);
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly out;
  for (const auto& [e1, c1] : a.terms_)
    for (const auto& [e2, c2] : b.terms_) out.add(e1 + e2, c1 * c2);
  return out;
}

namespace {

std::string power_string(std::string_view var, int e) {
  if (e == 0) return "";
  std::string s(var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

// Splits "a+b-c" into signed terms; spaces are ignored.
std::vector<std::pair<int, std::string>> split_terms(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  std::vector<std::pair<int, std::string>> out;
  int sign = 1;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    const bool after_caret = i > 0 && s[i - 1] == '^';
    if ((ch == '+' || ch == '-') && !after_caret) {
      if (!cur.empty()) out.emplace_back(sign, cur);
      cur.clear();
      sign = ch == '-' ? -1 : 1;
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.emplace_back(sign, cur);
  return out;
}

// Parses a product like "3*z^2*q" or "3z^2" into coefficient and exponents.
void parse_monomial(const std::string& term, std::string_view v1, std::string_view v2,
                    std::int64_t& coeff, int& e1, int& e2) {
  coeff = 1;
  e1 = e2 = 0;
  std::size_t i = 0;
  if (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
    std::size_t j = i;
    while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
    coeff = std::stoll(term.substr(i, j - i));
    i = j;
  }
  while (i < term.size()) {
    if (term[i] == '*') {
      ++i;
      continue;
    }
    int* target = nullptr;
    std::size_t len = 0;
    if (!v1.empty() && term.compare(i, v1.size(), v1) == 0) {
      target = &e1;
      len = v1.size();
    } else if (!v2.empty() && term.compare(i, v2.size(), v2) == 0) {
      target = &e2;
      len = v2.size();
    } else {
      throw InputError("cannot parse polynomial term '" + term + "'");
    }
    i += len;
    int e = 1;
    if (i < term.size() && term[i] == '^') {
      std::size_t j = i + 1;
      if (j < term.size() && (term[j] == '-' || term[j] == '+')) ++j;
      while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
      e = std::stoi(term.substr(i + 1, j - i - 1));
      i = j;
    }
    *target += e;
  }
}

}  // namespace

QPoly QPoly::parse(std::string_view text) {
  QPoly p;
  for (const auto& [sign, term] : split_terms(text)) {
    std::int64_t c;
    int e, unused;
    parse_monomial(term, "q", "", c, e, unused);
    p.add(e, sign * c);
  }
  return p;
}

std::string QPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const std::int64_t a = c < 0 ? -c : c;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    if (e == 0) os << a;
    else {
      if (a != 1) os << a;
      os << power_string(var, e);
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- BiPoly

BiPoly BiPoly::monomial(int e1, int e2, std::int64_t coeff) {
  BiPoly p;
  p.add(e1, e2, coeff);
  return p;
}

BiPoly BiPoly::parse(std::string_view text, std::string_view var1, std::string_view var2) {
  BiPoly p;
  for (const auto& [sign, term] : split_terms(text)) {
    std::int64_t c;
    int e1, e2;
    parse_monomial(term, var1, var2, c, e1, e2);
    p.add(e1, e2, sign * c);
  }
  return p;
}

std::int64_t BiPoly::coeff(int e1, int e2) const {
  const auto it = terms_.find({e1, e2});
  return it == terms_.end() ? 0 : it->second;
}

bool BiPoly::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

void BiPoly::add(int e1, int e2, std::int64_t coeff) {
  if (coeff == 0) return;
  auto& c = terms_[{e1, e2}];
  c += coeff;
  if (c == 0) terms_.erase({e1, e2});
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [k1, c1] : a.terms_)
    for (const auto& [k2, c2] : b.terms_) out.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return out;
}

BiPoly BiPoly::twist_second(int shift) const {
  BiPoly out;
  for (const auto& [k, c] : terms_) out.add(k.first, k.second + shift * k.first, c);
  return out;
}

QPoly BiPoly::first_at_one() const {
  QPoly out;
  for (const auto& [k, c] : terms_) out.add(k.second, c);
  return out;
}

QPoly BiPoly::second_at_one() const {
  QPoly out;
  for (const auto& [k, c] : terms_) out.add(k.first, c);
  return out;
}

std::int64_t BiPoly::at_one() const {
  std::int64_t s = 0;
  for (const auto& [k, c] : terms_) s += c;
  return s;
}

std::string BiPoly::to_string(std::string_view var1, std::string_view var2) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    const std::int64_t a = c < 0 ? -c : c;
    if (first) os << (c < 0 ? "-" : "");
    else os << (c < 0 ? " - " : " + ");
    std::vector<std::string> factors;
    if (a != 1 || (k.first == 0 && k.second == 0)) factors.push_back(std::to_string(a));
    if (k.first != 0) factors.push_back(power_string(var1, k.first));
    if (k.second != 0) factors.push_back(power_string(var2, k.second));
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    first = false;
  }
  return os.str();
}

}  // namespace fusion
