#include "germlab/basis.hpp"
#include "germlab/error.hpp"

namespace germlab::basis {

FreeModuleElement::FreeModuleElement(VariableSet vars, std::size_t rank)
    : vars_(std::move(vars)), comps_(rank, Polynomial(vars_)) {}

FreeModuleElement::FreeModuleElement(std::vector<Polynomial> components) : comps_(std::move(components)) {
  if (comps_.empty()) fail(ErrorCode::InvalidInput, "module element of rank zero");
  vars_ = comps_.front().variables();
  for (const auto& c : comps_) {
    if (!(c.variables() == vars_)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
  }
}

FreeModuleElement FreeModuleElement::unit(VariableSet vars, std::size_t rank, std::size_t k) {
  FreeModuleElement e(std::move(vars), rank);
  e.comps_.at(k) = Polynomial::constant(e.vars_, 1);
  return e;
}

bool FreeModuleElement::is_zero() const noexcept {
  for (const auto& c : comps_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

FreeModuleElement& FreeModuleElement::operator+=(const FreeModuleElement& other) {
  if (other.rank() != rank()) fail(ErrorCode::InvalidInput, "module elements differ in rank");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += other.comps_[i];
  return *this;
}

FreeModuleElement& FreeModuleElement::operator-=(const FreeModuleElement& other) {
  if (other.rank() != rank()) fail(ErrorCode::InvalidInput, "module elements differ in rank");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= other.comps_[i];
  return *this;
}

FreeModuleElement operator*(const Polynomial& a, FreeModuleElement v) {
  for (auto& c : v.comps_) {
    if (!c.is_zero()) c = a * c;
  }
  return v;
}

std::string FreeModuleElement::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) out += ", ";
    out += comps_[i].to_string();
  }
  return out + "]";
}

SubmodulePresentation SubmodulePresentation::ideal(const VariableSet& vars, std::span<const Polynomial> gens,
                                                   std::span<const Polynomial> relations) {
  SubmodulePresentation p;
  p.vars = vars;
  p.rank = 1;
  for (const auto& g : gens) {
    if (!(g.variables() == vars)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
    p.generators.emplace_back(std::vector<Polynomial>{g});
  }
  p.relations.assign(relations.begin(), relations.end());
  return p;
}

SubmodulePresentation SubmodulePresentation::columns(const PolyMatrix& m, std::span<const Polynomial> relations) {
  if (m.rows() == 0) fail(ErrorCode::InvalidInput, "column module of a matrix with no rows");
  SubmodulePresentation p;
  p.vars = m.variables();
  p.rank = m.rows();
  for (std::size_t c = 0; c < m.cols(); ++c) p.generators.emplace_back(m.column(c));
  p.relations.assign(relations.begin(), relations.end());
  return p;
}

SubmodulePresentation SubmodulePresentation::free_module(const VariableSet& vars, std::size_t rank,
                                                         std::span<const Polynomial> relations) {
  SubmodulePresentation p;
  p.vars = vars;
  p.rank = rank;
  for (std::size_t k = 0; k < rank; ++k) p.generators.push_back(FreeModuleElement::unit(vars, rank, k));
  p.relations.assign(relations.begin(), relations.end());
  return p;
}

PolyMatrix SubmodulePresentation::matrix() const {
  PolyMatrix m(vars, rank, generators.size());
  for (std::size_t c = 0; c < generators.size(); ++c) {
    for (std::size_t r = 0; r < rank; ++r) m.at(r, c) = generators[c][r];
  }
  return m;
}

std::vector<FreeModuleElement> SubmodulePresentation::all_generators() const {
  std::vector<FreeModuleElement> out;
  for (const auto& g : generators) {
    if (g.rank() != rank) fail(ErrorCode::InvalidInput, "generator rank differs from module rank");
    out.push_back(g);
  }
  for (std::size_t k = 0; k < rank; ++k) {
    for (const auto& f : relations) {
      if (f.is_zero()) continue;
      FreeModuleElement e(vars, rank);
      e[k] = f;
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Polynomial> SubmodulePresentation::ideal_generators() const {
  if (rank != 1) fail(ErrorCode::InvalidInput, "ideal generators requested from a module of rank > 1");
  std::vector<Polynomial> out;
  for (const auto& g : generators) out.push_back(g[0]);
  return out;
}

std::vector<Polynomial> maximal_ideal(const VariableSet& vars) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < vars.size(); ++i) out.push_back(Polynomial::variable(vars, i));
  return out;
}

namespace {

// Depth-first walk over the standard monomials. Raising one exponent of a
// monomial that is already in the ideal keeps it in the ideal, so each branch
// stops at the first hit.
template <class Visit>
void walk_standard(std::span<const Monomial> gens, std::size_t n, std::size_t var, Monomial& cur,
                   Visit& visit) {
  if (var == n) {
    visit(cur);
    return;
  }
  for (unsigned e = 0;; ++e) {
    cur.set(var, e);
    bool in_ideal = false;
    for (const auto& g : gens) {
      if (g.divides(cur)) {
        in_ideal = true;
        break;
      }
    }
    if (in_ideal) break;
    walk_standard(gens, n, var + 1, cur, visit);
  }
  cur.set(var, 0);
}

bool has_all_pure_powers(std::span<const Monomial> gens, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto& g : gens) {
      if (g.degree() == g[i]) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::optional<std::uint64_t> count_standard_monomials(std::span<const Monomial> gens, std::size_t n) {
  if (!has_all_pure_powers(gens, n)) return std::nullopt;
  std::uint64_t count = 0;
  Monomial cur;
  auto visit = [&](const Monomial&) { ++count; };
  walk_standard(gens, n, 0, cur, visit);
  return count;
}

std::vector<Monomial> list_standard_monomials(std::span<const Monomial> gens, std::size_t n) {
  if (!has_all_pure_powers(gens, n)) fail(ErrorCode::InvalidInput, "infinitely many standard monomials");
  std::vector<Monomial> out;
  Monomial cur;
  auto visit = [&](const Monomial& m) { out.push_back(m); };
  walk_standard(gens, n, 0, cur, visit);
  return out;
}

}  // namespace germlab::basis
