#include "germlab/error.hpp"
#include "germlab/ring.hpp"

#include <limits>

namespace germlab::ring {

LinearForm::LinearForm(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  bool any = false;
  for (const auto& c : coeffs_) any = any || sgn(c) != 0;
  if (!any) fail(ErrorCode::InvalidInput, "linear form is identically zero");
}

Polynomial LinearForm::to_polynomial(const VariableSet& vars) const {
  if (vars.size() != coeffs_.size()) fail(ErrorCode::InvalidInput, "linear form has the wrong arity");
  Polynomial p(vars);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) p.add_term(Monomial::unit_power(i), coeffs_[i]);
  return p;
}

LinearForm LinearForm::from_polynomial(const Polynomial& p) {
  std::vector<Rational> coeffs(p.variables().size());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != 1) fail(ErrorCode::InvalidInput, "not a homogeneous linear form: " + p.to_string());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (m[i] == 1) coeffs[i] = c;
    }
  }
  return LinearForm(std::move(coeffs));
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return stream == 0 ? seed : mix_seed(seed ^ mix_seed(stream));
}

SeededRng::SeededRng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

std::uint64_t SeededRng::next() { return engine_(); }

std::int64_t SeededRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) fail(ErrorCode::InvalidInput, "empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % span);
}

LinearForm next_linear_form(SeededRng& rng, std::size_t n, std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::InvalidInput, "coefficient bound must be at least 1");
  if (n == 0) fail(ErrorCode::InvalidInput, "linear form over no variables");
  const auto b = static_cast<std::int64_t>(bound);
  while (true) {
    std::vector<Rational> coeffs;
    coeffs.reserve(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t v = rng.uniform(-b, b);
      any = any || v != 0;
      coeffs.emplace_back(static_cast<long>(v));
    }
    if (any) return LinearForm(std::move(coeffs));
  }
}

LinearForm random_linear_form(const VariableSet& vars, std::uint64_t seed, std::uint64_t bound) {
  SeededRng rng(seed);
  return next_linear_form(rng, vars.size(), bound);
}

}  // namespace germlab::ring
