#include "germlab/basis.hpp"
#include "germlab/error.hpp"

namespace germlab::basis {

namespace {

// Elements of a standard basis of `big` (rank q + p, first q components
// dominating) whose leading term sits in the last p components generate the
// intersection with 0 + O^p.
std::vector<FreeModuleElement> eliminate_block(const SubmodulePresentation& big, std::size_t q,
                                               const Limits& limits) {
  StandardBasis sb = standard_basis(big, {}, limits);
  std::vector<FreeModuleElement> out;
  for (std::size_t i = 0; i < sb.elements().size(); ++i) {
    if (sb.staircase()[i].component < q) continue;
    const auto& e = sb.elements()[i];
    std::vector<Polynomial> tail(e.components().begin() + static_cast<std::ptrdiff_t>(q),
                                 e.components().end());
    out.emplace_back(std::move(tail));
  }
  return out;
}

std::vector<Polynomial> nonzero(std::span<const Polynomial> J) {
  std::vector<Polynomial> out;
  for (const auto& j : J) {
    if (!j.is_zero()) out.push_back(j);
  }
  return out;
}

}  // namespace

SubmodulePresentation module_quotient(const SubmodulePresentation& M, std::span<const Polynomial> J,
                                      const Limits& limits) {
  const std::vector<Polynomial> js = nonzero(J);
  const std::size_t p = M.rank;
  if (js.empty()) return SubmodulePresentation::free_module(M.vars, p, M.relations);
  const std::size_t r = js.size();
  const std::size_t q = r * p;

  SubmodulePresentation big;
  big.vars = M.vars;
  big.rank = q + p;
  for (std::size_t b = 0; b < r; ++b) {
    for (const auto& g : M.all_generators()) {
      if (g.is_zero()) continue;
      FreeModuleElement e(M.vars, big.rank);
      for (std::size_t k = 0; k < p; ++k) e[b * p + k] = g[k];
      big.generators.push_back(std::move(e));
    }
  }
  for (std::size_t k = 0; k < p; ++k) {
    FreeModuleElement e(M.vars, big.rank);
    for (std::size_t b = 0; b < r; ++b) e[b * p + k] = js[b];
    e[q + k] = Polynomial::constant(M.vars, 1);
    big.generators.push_back(std::move(e));
  }

  SubmodulePresentation out;
  out.vars = M.vars;
  out.rank = p;
  out.generators = eliminate_block(big, q, limits);
  out.relations = M.relations;
  return out;
}

SubmodulePresentation saturate(const SubmodulePresentation& M, std::span<const Polynomial> J,
                               const Limits& limits) {
  SubmodulePresentation cur = M;
  for (std::size_t round = 0; round < limits.max_saturation_rounds; ++round) {
    SubmodulePresentation next = module_quotient(cur, J, limits);
    if (is_submodule(next, cur, limits)) return cur;
    cur = std::move(next);
  }
  fail(ErrorCode::Resource, "saturation did not stabilize within " +
                                std::to_string(limits.max_saturation_rounds) + " rounds");
}

SubmodulePresentation kernel_preimage(const PolyMatrix& A, std::span<const Polynomial> I,
                                      const Limits& limits) {
  const std::size_t n = A.rows();
  const std::size_t m = A.cols();
  if (n == 0 || m == 0) fail(ErrorCode::InvalidInput, "kernel preimage of an empty matrix");
  SubmodulePresentation big;
  big.vars = A.variables();
  big.rank = n + m;
  for (std::size_t j = 0; j < m; ++j) {
    FreeModuleElement e(big.vars, big.rank);
    for (std::size_t i = 0; i < n; ++i) e[i] = A.at(i, j);
    e[n + j] = Polynomial::constant(big.vars, 1);
    big.generators.push_back(std::move(e));
  }
  for (const auto& f : nonzero(I)) {
    for (std::size_t k = 0; k < n; ++k) {
      FreeModuleElement e(big.vars, big.rank);
      e[k] = f;
      big.generators.push_back(std::move(e));
    }
  }
  SubmodulePresentation out;
  out.vars = A.variables();
  out.rank = m;
  out.generators = eliminate_block(big, n, limits);
  return out;
}

}  // namespace germlab::basis
