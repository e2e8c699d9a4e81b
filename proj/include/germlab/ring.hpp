#pragma once

// Exact sparse multivariate polynomials over the rationals.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace germlab::ring {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxVariables = 16;

/// Ordered list of distinct variable names. Copies share storage; two sets
/// compare equal when their names agree in order.
class VariableSet {
 public:
  /// Unset state, only useful as a placeholder inside containers.
  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_ ? names_->size() : 0; }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const VariableSet& a, const VariableSet& b);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector with a cached total degree. Unused slots stay zero, so
/// divisibility and products never need the variable count.
class Monomial {
 public:
  Monomial() = default;
  static Monomial from_exponents(std::span<const unsigned> exponents);
  static Monomial unit_power(std::size_t var, unsigned exponent = 1);

  unsigned operator[](std::size_t i) const { return exp_[i]; }
  void set(std::size_t i, unsigned exponent);
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial& other) const noexcept;
  Monomial lcm(const Monomial& other) const;
  /// Requires `divisor.divides(*this)`.
  Monomial quotient(const Monomial& divisor) const;
  /// Index set of variables with positive exponent, as a bit mask.
  std::uint32_t support() const noexcept;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::uint16_t, kMaxVariables> exp_{};
  std::uint32_t degree_ = 0;
};

/// Highest total degree first, then lexicographically descending. This is
/// only the storage and printing order; standard bases use their own order.
struct PrintOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return b < a;
  }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, PrintOrder>;

  explicit Polynomial(VariableSet vars) : vars_(std::move(vars)) {}

  static Polynomial constant(VariableSet vars, const Rational& c);
  static Polynomial variable(VariableSet vars, std::size_t index);
  static Polynomial term(VariableSet vars, const Monomial& m, const Rational& c);

  const VariableSet& variables() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  /// Highest total degree, or -1 for the zero polynomial.
  int degree() const noexcept;
  /// Lowest total degree, or -1 for the zero polynomial.
  int order() const noexcept;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  Polynomial pow(unsigned exponent) const;
  /// Drops every term of total degree >= `degree`.
  Polynomial truncated(unsigned degree) const;

  /// Parseable rendering, e.g. `x^2 - 3/2*x*y + 1`.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_compatible(const Polynomial& other) const;

  VariableSet vars_;
  TermMap terms_;
};

enum class ArithKind { Add, Sub, Mul };

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithKind kind);

Polynomial differentiate(const Polynomial& p, std::size_t var);
Polynomial differentiate(const Polynomial& p, std::string_view var);

/// Composite p(images[0], ..., images[n-1]); every image lives in `target`.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                      const VariableSet& target);
/// Every variable occurring in `p` must be mapped; the target ring is the one
/// shared by the images.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& map);

/// Dense matrix of polynomials over one variable set.
class PolyMatrix {
 public:
  PolyMatrix(VariableSet vars, std::size_t rows, std::size_t cols);
  static PolyMatrix from_rows(VariableSet vars, const std::vector<std::vector<Polynomial>>& rows);
  static PolyMatrix from_columns(VariableSet vars, std::size_t rows,
                                 const std::vector<std::vector<Polynomial>>& columns);

  const VariableSet& variables() const noexcept { return vars_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Polynomial& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Polynomial& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::vector<Polynomial> row(std::size_t r) const;
  std::vector<Polynomial> column(std::size_t c) const;
  PolyMatrix transpose() const;
  /// Keeps the listed columns, in the given order.
  PolyMatrix select_columns(std::span<const std::size_t> columns) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

 private:
  VariableSet vars_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

/// p x n matrix of partials; `F` must be nonempty.
PolyMatrix jacobian_matrix(std::span<const Polynomial> F);
/// Same, but allows an empty `F` (a 0 x n matrix).
PolyMatrix jacobian_matrix(const VariableSet& vars, std::span<const Polynomial> F);
PolyMatrix augment_matrix(const PolyMatrix& DF, std::span<const Polynomial> row);

Polynomial determinant(const PolyMatrix& m);
/// All maximal minors of a matrix with rows <= cols, columns chosen in
/// lexicographic order of their index sets.
std::vector<Polynomial> maximal_minors(const PolyMatrix& m);

class LinearForm {
 public:
  explicit LinearForm(std::vector<Rational> coefficients);

  std::size_t size() const noexcept { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Polynomial to_polynomial(const VariableSet& vars) const;
  /// Reads a homogeneous linear polynomial back into coefficient form.
  static LinearForm from_polynomial(const Polynomial& p);

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;
/// Seed of the `stream`-th independent trial derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// mt19937_64 with a platform-independent integer mapping (the standard
/// distributions are implementation-defined, this one is not).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Draws integer coefficients in [-bound, bound] until one is nonzero.
LinearForm next_linear_form(SeededRng& rng, std::size_t n, std::uint64_t bound);
LinearForm random_linear_form(const VariableSet& vars, std::uint64_t seed, std::uint64_t bound);

}  // namespace germlab::ring
