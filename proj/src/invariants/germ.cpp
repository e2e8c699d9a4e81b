#include "germlab/error.hpp"
#include "germlab/invariants.hpp"

#include <bit>

namespace germlab::invariants {

std::uint64_t NatOrInfinity::value() const {
  if (!value_) fail(ErrorCode::InvalidInput, "value of an infinite colength requested");
  return *value_;
}

std::string NatOrInfinity::to_string() const { return value_ ? std::to_string(*value_) : "infinity"; }

NatOrInfinity colength(const SubmodulePresentation& M, const LocalOrder& order, const Limits& limits) {
  auto dim = basis::standard_basis(M, order, limits).quotient_dimension();
  return dim ? NatOrInfinity::finite(*dim) : NatOrInfinity::infinity();
}

NatOrInfinity ideal_colength(const VariableSet& vars, std::span<const Polynomial> gens, const Limits& limits) {
  return colength(SubmodulePresentation::ideal(vars, gens), {}, limits);
}

unsigned germ_dimension(const VariableSet& vars, std::span<const Polynomial> F, const Limits& limits) {
  const std::size_t n = vars.size();
  auto sb = basis::standard_basis(SubmodulePresentation::ideal(vars, F), {}, limits);
  std::vector<std::uint32_t> supports;
  for (const auto& s : sb.staircase()) {
    if (s.monomial.is_one()) fail(ErrorCode::InvalidInput, "equations do not vanish at the origin");
    supports.push_back(s.monomial.support());
  }
  // Largest coordinate subset containing no leading-term support.
  unsigned best = 0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    const auto size = static_cast<unsigned>(std::popcount(subset));
    if (size <= best) continue;
    bool free = true;
    for (auto s : supports) {
      if ((s & ~subset) == 0) {
        free = false;
        break;
      }
    }
    if (free) best = size;
  }
  return best;
}

std::vector<Polynomial> minors_ideal(const PolyMatrix& m, std::span<const Polynomial> F) {
  std::vector<Polynomial> gens(F.begin(), F.end());
  for (auto& minor : ring::maximal_minors(m)) {
    if (!minor.is_zero()) gens.push_back(std::move(minor));
  }
  return gens;
}

GermSpace make_germ(const VariableSet& vars, std::vector<Polynomial> F, std::optional<unsigned> declared_dimension,
                    GermAssertions assertions, const Limits& limits) {
  GermSpace X;
  X.vars = vars;
  X.icis_asserted = assertions.icis;
  X.cm_asserted = assertions.cm;
  for (auto& f : F) {
    if (!(f.variables() == vars)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
    if (f.is_zero()) continue;
    if (f.constant_term() != 0) fail(ErrorCode::InvalidInput, "equation " + f.to_string() + " does not vanish at the origin");
    X.equations.push_back(std::move(f));
  }
  const std::size_t n = vars.size();
  if (X.equations.empty()) {
    X.dimension = static_cast<unsigned>(n);
    X.is_smooth = true;
    X.is_icis = true;
  } else {
    X.dimension = germ_dimension(vars, X.equations, limits);
    if (X.dimension + X.equations.size() == n) {
      auto DF = ring::jacobian_matrix(vars, X.equations);
      auto sing = ideal_colength(vars, minors_ideal(DF, X.equations), limits);
      X.is_icis = sing.is_finite();
      X.is_smooth = sing.is_finite() && sing.value() == 0;
    }
  }
  if (declared_dimension && *declared_dimension != X.dimension) {
    fail(ErrorCode::InvalidInput, "declared dimension " + std::to_string(*declared_dimension) +
                                      " but the equations define a germ of dimension " +
                                      std::to_string(X.dimension));
  }
  if (assertions.icis && !X.is_icis) {
    fail(ErrorCode::UnsupportedRegime, "asserted ICIS, but the germ is not an isolated complete intersection");
  }
  return X;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::NFree: return "n-free";
    case Regime::BothFiniteColength: return "both-finite-colength";
    case Regime::IcisJacobianPair: return "icis-jacobian-pair";
    case Regime::ChartFixture: return "chart-fixture";
  }
  return "unknown";
}

std::optional<Regime> parse_regime(std::string_view name) {
  for (auto r : {Regime::NFree, Regime::BothFiniteColength, Regime::IcisJacobianPair, Regime::ChartFixture}) {
    if (regime_name(r) == name) return r;
  }
  return std::nullopt;
}

std::vector<Integer> draw_coefficients(ring::SeededRng& rng, std::size_t count, std::uint64_t bound) {
  if (bound > static_cast<std::uint64_t>(INT64_MAX / 2)) fail(ErrorCode::InvalidInput, "coefficient bound too large");
  std::vector<Integer> out;
  out.reserve(count);
  const auto b = static_cast<std::int64_t>(bound);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(static_cast<long>(b == 0 ? 0 : rng.uniform(-b, b)));
  }
  return out;
}

}  // namespace germlab::invariants
