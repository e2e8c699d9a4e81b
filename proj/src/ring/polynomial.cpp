#include "germlab/error.hpp"
#include "germlab/ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace germlab {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::MissingInput:
      return 2;
    default:
      return static_cast<int>(code);
  }
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::MissingInput: return "MISSING_INPUT";
    case ErrorCode::UnsupportedRegime: return "UNSUPPORTED_REGIME";
    case ErrorCode::NonGeneric: return "NON_GENERIC";
    case ErrorCode::NonIsolated: return "NON_ISOLATED";
    case ErrorCode::Resource: return "RESOURCE";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
  }
  return "UNKNOWN";
}

}  // namespace germlab

namespace germlab::ring {

// ---------------------------------------------------------------------------
// VariableSet

VariableSet::VariableSet(std::vector<std::string> names) {
  if (names.empty()) fail(ErrorCode::InvalidInput, "variable set must be nonempty");
  if (names.size() > kMaxVariables) {
    fail(ErrorCode::InvalidInput,
         "at most " + std::to_string(kMaxVariables) + " variables are supported");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) fail(ErrorCode::InvalidInput, "empty variable name");
    if (!seen.insert(n).second) fail(ErrorCode::InvalidInput, "duplicate variable '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

const std::vector<std::string>& VariableSet::names() const {
  static const std::vector<std::string> kEmpty;
  return names_ ? *names_ : kEmpty;
}

std::optional<std::size_t> VariableSet::index_of(std::string_view name) const {
  if (!names_) return std::nullopt;
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

bool operator==(const VariableSet& a, const VariableSet& b) {
  if (a.names_ == b.names_) return true;
  return a.names() == b.names();
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::from_exponents(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxVariables) fail(ErrorCode::InvalidInput, "too many exponents");
  Monomial m;
  for (std::size_t i = 0; i < exponents.size(); ++i) m.set(i, exponents[i]);
  return m;
}

Monomial Monomial::unit_power(std::size_t var, unsigned exponent) {
  Monomial m;
  m.set(var, exponent);
  return m;
}

void Monomial::set(std::size_t i, unsigned exponent) {
  if (exponent > 0xFFFFu) fail(ErrorCode::Resource, "exponent overflow");
  degree_ = degree_ - exp_[i] + exponent;
  exp_[i] = static_cast<std::uint16_t>(exponent);
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    m.exp_[i] = std::max(exp_[i], other.exp_[i]);
    m.degree_ += m.exp_[i];
  }
  return m;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    m.exp_[i] = static_cast<std::uint16_t>(exp_[i] - divisor.exp_[i]);
  }
  m.degree_ = degree_ - divisor.degree_;
  return m;
}

std::uint32_t Monomial::support() const noexcept {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exp_[i] != 0) mask |= (1u << i);
  }
  return mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned e = unsigned{a.exp_[i]} + b.exp_[i];
    if (e > 0xFFFFu) fail(ErrorCode::Resource, "exponent overflow");
    m.exp_[i] = static_cast<std::uint16_t>(e);
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(VariableSet vars, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(VariableSet vars, std::size_t index) {
  if (index >= vars.size()) fail(ErrorCode::InvalidInput, "variable index out of range");
  Polynomial p(std::move(vars));
  p.add_term(Monomial::unit_power(index), Rational(1));
  return p;
}

Polynomial Polynomial::term(VariableSet vars, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial{}); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const noexcept {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

int Polynomial::order() const noexcept {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.degree());
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (!(vars_ == other.vars_)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial out(a.vars_);
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term(ma * mb, prod);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::truncated(unsigned degree) const {
  Polynomial out(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() < degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

namespace {

std::string monomial_string(const Monomial& m, const VariableSet& vars) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars.name(i);
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += monomial_string(m, vars_);
    }
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Sub: return a - b;
    case ArithKind::Mul: return a * b;
  }
  return a;
}

Polynomial differentiate(const Polynomial& p, std::size_t var) {
  if (var >= p.variables().size()) fail(ErrorCode::InvalidInput, "unknown variable index");
  Polynomial out(p.variables());
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[var];
    if (e == 0) continue;
    Monomial d = m;
    d.set(var, e - 1);
    out.add_term(d, c * e);
  }
  return out;
}

Polynomial differentiate(const Polynomial& p, std::string_view var) {
  auto idx = p.variables().index_of(var);
  if (!idx) fail(ErrorCode::InvalidInput, "unknown variable '" + std::string(var) + "'");
  return differentiate(p, *idx);
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                      const VariableSet& target) {
  const std::size_t n = p.variables().size();
  if (images.size() != n) fail(ErrorCode::InvalidInput, "incomplete substitution map");
  for (const auto& img : images) {
    if (!(img.variables() == target)) fail(ErrorCode::InvalidInput, "substitution targets differ");
  }
  // powers[i][k] = images[i]^k, filled lazily
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  Polynomial out(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] > 0) t *= power(i, m[i]);
    }
    out += t;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& map) {
  const auto& vars = p.variables();
  std::vector<bool> used(vars.size(), false);
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < vars.size(); ++i) used[i] = used[i] || m[i] > 0;
  }
  if (map.empty()) fail(ErrorCode::InvalidInput, "incomplete substitution map");
  const VariableSet target = map.begin()->second.variables();
  std::vector<Polynomial> images;
  images.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = map.find(vars.name(i));
    if (it != map.end()) {
      images.push_back(it->second);
    } else if (used[i]) {
      fail(ErrorCode::InvalidInput, "incomplete substitution map: '" + vars.name(i) + "' unmapped");
    } else {
      images.push_back(Polynomial(target));
    }
  }
  return substitute(p, images, target);
}

}  // namespace germlab::ring
