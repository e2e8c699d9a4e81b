#include "germlab/error.hpp"
#include "germlab/invariants.hpp"

namespace germlab::invariants {

namespace {

std::vector<Polynomial> relations_of(const SubmodulePresentation& M, const GermSpace& X) {
  std::vector<Polynomial> rel = M.relations;
  for (const auto& f : X.equations) {
    bool present = false;
    for (const auto& r : rel) present = present || r == f;
    if (!present) rel.push_back(f);
  }
  return rel;
}

std::vector<basis::FreeModuleElement> nonzero_generators(const SubmodulePresentation& M) {
  std::vector<basis::FreeModuleElement> out;
  for (const auto& g : M.generators) {
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

Polynomial linear_polynomial(const VariableSet& vars, const std::vector<Integer>& coeffs) {
  Polynomial p(vars);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) p.add_term(ring::Monomial::unit_power(i), Rational(coeffs[i]));
  }
  return p;
}

std::vector<Polynomial> gradient(const Polynomial& f) {
  std::vector<Polynomial> row;
  for (std::size_t i = 0; i < f.variables().size(); ++i) row.push_back(ring::differentiate(f, i));
  return row;
}

}  // namespace

SubmodulePresentation generic_reduction(const SubmodulePresentation& M, const GermSpace& X, std::uint64_t seed,
                                        std::uint64_t bound) {
  const std::size_t k = X.dimension + M.rank - 1;
  SubmodulePresentation out;
  out.vars = M.vars;
  out.rank = M.rank;
  out.relations = relations_of(M, X);
  auto gens = nonzero_generators(M);
  if (gens.size() <= k) {
    out.generators = std::move(gens);
    return out;
  }
  ring::SeededRng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    auto coeffs = draw_coefficients(rng, gens.size(), bound);
    basis::FreeModuleElement combo(M.vars, M.rank);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (coeffs[j] == 0) continue;
      combo += Polynomial::constant(M.vars, Rational(coeffs[j])) * gens[j];
    }
    out.generators.push_back(std::move(combo));
  }
  return out;
}

BrResult br_multiplicity(const SubmodulePresentation& M, const GermSpace& X, const Genericity& gen) {
  if (!(M.vars == X.vars)) fail(ErrorCode::InvalidInput, "module and germ use different variables");
  if (X.dimension == 0) fail(ErrorCode::UnsupportedRegime, "multiplicity on a zero-dimensional germ");
  if (!X.cohen_macaulay()) {
    fail(ErrorCode::UnsupportedRegime,
         "the germ is neither smooth nor an ICIS; Cohen-Macaulayness must be asserted (assert cm)");
  }
  SubmodulePresentation onX = M;
  onX.relations = relations_of(M, X);
  const NatOrInfinity c = colength(onX, {}, gen.limits);
  if (!c.is_finite()) fail(ErrorCode::NonIsolated, "the module does not have finite colength");
  if (c.value() == 0) return BrResult{0, false};

  const std::size_t p = M.rank;
  auto gens = nonzero_generators(M);
  if (gens.size() < p) fail(ErrorCode::InvalidInput, "module has fewer generators than its rank");
  {
    SubmodulePresentation tmp = onX;
    tmp.generators = gens;
    auto minors = ring::maximal_minors(tmp.matrix());
    auto sbF = basis::standard_basis(SubmodulePresentation::ideal(X.vars, onX.relations), {}, gen.limits);
    bool full_rank = false;
    for (const auto& m : minors) {
      if (!basis::contains(sbF, basis::FreeModuleElement(std::vector<Polynomial>{m}), gen.limits)) {
        full_rank = true;
        break;
      }
    }
    if (!full_rank) fail(ErrorCode::InvalidInput, "module is not of generic rank " + std::to_string(p));
  }

  const std::size_t k = X.dimension + p - 1;
  if (gens.size() < k) {
    fail(ErrorCode::Inconsistent, "finite colength with fewer than d+p-1 generators contradicts the dimension");
  }
  if (gens.size() == k) {
    SubmodulePresentation tmp = onX;
    tmp.generators = gens;
    auto e = ideal_colength(X.vars, minors_ideal(tmp.matrix(), onX.relations), gen.limits);
    if (!e.is_finite() || e.value() != c.value()) {
      fail(ErrorCode::Inconsistent, "colength of the module (" + c.to_string() +
                                        ") differs from the colength of its maximal minors (" + e.to_string() +
                                        ")");
    }
    return BrResult{e.value(), false};
  }

  auto value = certify(gen, "br_multiplicity", [&](std::uint64_t s, std::uint64_t b) -> std::optional<std::uint64_t> {
    SubmodulePresentation K = generic_reduction(onX, X, s, b);
    auto e = ideal_colength(X.vars, minors_ideal(K.matrix(), K.relations), gen.limits);
    if (!e.is_finite()) return std::nullopt;
    return e.value();
  });
  return BrResult{value, true};
}

std::uint64_t milnor_hypersurface(const Polynomial& g, const Limits& limits) {
  if (g.constant_term() != 0) fail(ErrorCode::InvalidInput, "g does not vanish at the origin");
  auto c = ideal_colength(g.variables(), gradient(g), limits);
  if (!c.is_finite()) fail(ErrorCode::NonIsolated, "the Jacobian ideal of g has infinite colength");
  return c.value();
}

NatOrInfinity le_greuel_colength(const GermSpace& X, std::span<const Polynomial> row, const Limits& limits) {
  auto DF = ring::jacobian_matrix(X.vars, X.equations);
  auto D = ring::augment_matrix(DF, row);
  if (D.rows() > D.cols()) fail(ErrorCode::UnsupportedRegime, "augmented Jacobian has more rows than columns");
  return ideal_colength(X.vars, minors_ideal(D, X.equations), limits);
}

std::uint64_t le_greuel_step(const GermSpace& X, const Polynomial& f, const Limits& limits) {
  auto c = le_greuel_colength(X, gradient(f), limits);
  if (!c.is_finite()) fail(ErrorCode::NonIsolated, "f does not have an isolated singularity on X");
  return c.value();
}

std::uint64_t milnor_icis(const GermSpace& X, const Genericity& gen) {
  if (X.equations.empty()) return 0;
  if (!X.is_icis) fail(ErrorCode::UnsupportedRegime, "Milnor number requires an ICIS");
  const std::size_t n = X.vars.size();
  const unsigned d = X.dimension;
  if (d == 0) {
    auto c = ideal_colength(X.vars, X.equations, gen.limits);
    return c.value() - 1;
  }
  return certify(gen, "mu_X", [&](std::uint64_t s, std::uint64_t b) -> std::optional<std::uint64_t> {
    ring::SeededRng rng(s);
    GermSpace slice = X;
    std::int64_t total = 0;
    std::int64_t sign = 1;
    for (unsigned j = 0; j < d; ++j) {
      Polynomial l = linear_polynomial(X.vars, draw_coefficients(rng, n, b));
      if (l.is_zero()) return std::nullopt;
      auto e = le_greuel_colength(slice, gradient(l), gen.limits);
      if (!e.is_finite()) return std::nullopt;
      total += sign * static_cast<std::int64_t>(e.value());
      sign = -sign;
      slice.equations.push_back(l);
      slice.dimension -= 1;
    }
    auto base = ideal_colength(X.vars, slice.equations, gen.limits);
    if (!base.is_finite() || base.value() == 0) return std::nullopt;
    total += sign * static_cast<std::int64_t>(base.value() - 1);
    if (total < 0) return std::nullopt;
    return static_cast<std::uint64_t>(total);
  });
}

std::uint64_t generic_linear_le_greuel(const GermSpace& X, const Genericity& gen) {
  const std::size_t n = X.vars.size();
  return certify(gen, "e_L", [&](std::uint64_t s, std::uint64_t b) -> std::optional<std::uint64_t> {
    ring::SeededRng rng(s);
    Polynomial l = linear_polynomial(X.vars, draw_coefficients(rng, n, b));
    if (l.is_zero()) return std::nullopt;
    auto e = le_greuel_colength(X, gradient(l), gen.limits);
    if (!e.is_finite()) return std::nullopt;
    return e.value();
  });
}

std::int64_t pair_multiplicity(const PairSpec& pair, const GermSpace& X, const Genericity& gen) {
  switch (pair.regime) {
    case Regime::NFree: {
      SubmodulePresentation outer = pair.outer;
      outer.relations = relations_of(outer, X);
      auto c = colength(outer, {}, gen.limits);
      if (!c.is_finite() || c.value() != 0) {
        fail(ErrorCode::InvalidInput, "regime n-free requires the outer module to be free");
      }
      if (pair.inner.rank != pair.outer.rank) fail(ErrorCode::InvalidInput, "modules differ in rank");
      return static_cast<std::int64_t>(br_multiplicity(pair.inner, X, gen).value);
    }
    case Regime::BothFiniteColength: {
      SubmodulePresentation inner = pair.inner;
      SubmodulePresentation outer = pair.outer;
      inner.relations = relations_of(inner, X);
      outer.relations = relations_of(outer, X);
      if (inner.rank != outer.rank) fail(ErrorCode::InvalidInput, "modules differ in rank");
      if (!basis::is_submodule(inner, outer, gen.limits)) {
        fail(ErrorCode::InvalidInput, "the inner module is not contained in the outer module");
      }
      auto a = br_multiplicity(inner, X, gen).value;
      auto b = br_multiplicity(outer, X, gen).value;
      return static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
    }
    case Regime::IcisJacobianPair: {
      if (!pair.function) fail(ErrorCode::MissingInput, "regime icis-jacobian-pair needs the function f");
      if (!X.is_icis) fail(ErrorCode::UnsupportedRegime, "regime icis-jacobian-pair needs an ICIS");
      auto ef = le_greuel_step(X, *pair.function, gen.limits);
      auto eL = generic_linear_le_greuel(X, gen);
      return static_cast<std::int64_t>(ef) - static_cast<std::int64_t>(eL);
    }
    case Regime::ChartFixture:
      return static_cast<std::int64_t>(pullback_multiplicity(pair.charts, gen.limits).total);
  }
  fail(ErrorCode::UnsupportedRegime, "unknown regime");
}

}  // namespace germlab::invariants
