#pragma once

// Exact scalar, matrix, subspace and polynomial containers shared by every
// other part of the library. Everything here is a value type.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fusion {

/// Arbitrary-precision rational in canonical form (den > 0, gcd(num, den) = 1).
class Rat {
 public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rat(const mpz_class& v) : v_(v) {}

  /// Parses "p", "-p" or "p/q".
  static Rat parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

 private:
  mpq_class v_{0};
};

Rat pow(const Rat& base, unsigned exponent);
/// Binomial coefficient C(n, k) as an exact rational (0 when k > n).
Rat binomial(unsigned n, unsigned k);

using Vec = std::vector<Rat>;

bool is_zero(std::span<const Rat> v);

/// Dense row-major rational matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat identity(std::size_t n);
  /// Builds from nested rows; all rows must have equal length.
  static Mat from_rows(const std::vector<std::vector<Rat>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  Vec column(std::size_t c) const;
  Vec apply(std::span<const Rat> v) const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const Rat& s);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const Rat& s) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

/// [a, b] = ab - ba
Mat commutator(const Mat& a, const Mat& b);
/// Kronecker product a (x) b.
Mat kron(const Mat& a, const Mat& b);

/// Linear subspace of Q^n held as a reduced row-echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the echelon basis; zero iff v is in the span.
  Vec reduce(Vec v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  friend Subspace rref_basis(const std::vector<Vec>& vectors, std::size_t ambient_dim);

  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Reduced row-echelon basis of span(vectors). Pivot = first nonzero entry.
/// Throws InputError if some vector's length differs from ambient_dim.
Subspace rref_basis(const std::vector<Vec>& vectors, std::size_t ambient_dim);
Subspace subspace_join(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& s, std::span<const Rat> v);
/// True iff m * s is contained in s (m square, sized to the ambient space).
bool subspace_stable(const Subspace& s, const Mat& m);

/// Univariate integer polynomial in q with nonnegative exponents.
class QPoly {
 public:
  QPoly() = default;
  /// c * q^e; throws InputError for e < 0.
  static QPoly monomial(int exponent, std::int64_t coeff = 1);
  /// Parses the compact form produced by to_string(), e.g. "1+2q^3" or "q-q^2".
  static QPoly parse(std::string_view text);

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  std::int64_t coeff(int exponent) const;
  bool is_zero() const { return terms_.empty(); }
  int degree() const;   // -1 for the zero polynomial
  int lowest() const;   // -1 for the zero polynomial
  std::int64_t at_one() const;
  bool nonnegative() const;

  void add(int exponent, std::int64_t coeff);
  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend bool operator==(const QPoly&, const QPoly&) = default;

  /// Ascending powers, no spaces: "1", "q+q^2", "2-3q^4".
  std::string to_string(std::string_view var = "q") const;

 private:
  std::map<int, std::int64_t> terms_;
};

/// Integer polynomial in two variables with integer (possibly negative) exponents.
/// Used for ch(z, q) and for (q, aux) gradings.
class BiPoly {
 public:
  using Key = std::pair<int, int>;

  BiPoly() = default;
  static BiPoly monomial(int e1, int e2, std::int64_t coeff = 1);
  /// Parses the spaced form produced by to_string(), e.g. "1 + z + z*q + z^2".
  static BiPoly parse(std::string_view text, std::string_view var1 = "z",
                      std::string_view var2 = "q");

  const std::map<Key, std::int64_t>& terms() const { return terms_; }
  std::int64_t coeff(int e1, int e2) const;
  bool is_zero() const { return terms_.empty(); }
  bool nonnegative() const;

  void add(int e1, int e2, std::int64_t coeff);
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  /// Substitutes var1 -> c * var1 exponentwise: (e1, e2) -> (e1, e2 + shift*e1).
  BiPoly twist_second(int shift) const;
  /// Sets the first variable to 1.
  QPoly first_at_one() const;
  /// Sets the second variable to 1, returning a polynomial in the first.
  QPoly second_at_one() const;
  std::int64_t at_one() const;

  /// Terms ordered by (e1, e2), joined by " + " / " - ": "1 + z + z*q + z^2".
  std::string to_string(std::string_view var1 = "z", std::string_view var2 = "q") const;

 private:
  std::map<Key, std::int64_t> terms_;
};

}  // namespace fusion
