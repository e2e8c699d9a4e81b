#include "germlab/error.hpp"
#include "germlab/invariants.hpp"

namespace germlab::invariants {

std::vector<Polynomial> integral_ideal(const VariableSet& vars, std::span<const Polynomial> I, const Limits& limits) {
  std::vector<Polynomial> gens;
  for (const auto& g : I) {
    if (!(g.variables() == vars)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
    if (!g.is_zero()) gens.push_back(g);
  }
  if (gens.empty()) return {};
  auto sbI = basis::standard_basis(SubmodulePresentation::ideal(vars, gens), {}, limits);
  for (const auto& s : sbI.staircase()) {
    if (s.monomial.is_one()) return {Polynomial::constant(vars, 1)};
  }

  // h = sum a_j g_j lies in the integral ideal iff sum a_j dg_j/dz_i is in I
  // for every i, the remaining terms of dh/dz_i being multiples of the g_j.
  const std::size_t n = vars.size();
  PolyMatrix A(vars, n, gens.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) A.at(i, j) = ring::differentiate(gens[j], i);
  }
  auto kernel = basis::kernel_preimage(A, gens, limits);
  std::vector<Polynomial> images;
  for (const auto& a : kernel.generators) {
    Polynomial h(vars);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!a[j].is_zero()) h += a[j] * gens[j];
    }
    if (!h.is_zero()) images.push_back(std::move(h));
  }
  if (images.empty()) return {};
  auto sb = basis::standard_basis(SubmodulePresentation::ideal(vars, images), {}, limits);
  std::vector<Polynomial> out;
  for (const auto& e : sb.elements()) out.push_back(e[0]);
  return out;
}

PullbackResult pullback_multiplicity(std::span<const ChartFixture> charts, const Limits& limits) {
  PullbackResult result;
  for (const auto& chart : charts) {
    const std::size_t m = chart.params.size();
    for (const auto& g : chart.ideal) {
      if (!(g.variables() == chart.params)) fail(ErrorCode::InvalidInput, "chart " + chart.name + ": variable-set mismatch");
    }
    for (std::size_t k = 0; k < chart.centers.size(); ++k) {
      const auto& center = chart.centers[k];
      if (center.size() != m) {
        fail(ErrorCode::InvalidInput, "chart " + chart.name + ": center has " + std::to_string(center.size()) +
                                          " coordinates, expected " + std::to_string(m));
      }
      std::vector<Polynomial> shift;
      for (std::size_t i = 0; i < m; ++i) {
        shift.push_back(Polynomial::variable(chart.params, i) + Polynomial::constant(chart.params, center[i]));
      }
      std::vector<Polynomial> local;
      for (const auto& g : chart.ideal) local.push_back(ring::substitute(g, shift, chart.params));
      auto c = ideal_colength(chart.params, local, limits);
      if (!c.is_finite()) {
        fail(ErrorCode::NonIsolated, "chart " + chart.name + ": ideal has infinite colength at center " +
                                         std::to_string(k));
      }
      result.contributions.push_back(ChartContribution{chart.name, k, c.value()});
      result.total += c.value();
    }
  }
  return result;
}

}  // namespace germlab::invariants
