#include "germlab/error.hpp"
#include "germlab/geometry.hpp"

namespace germlab::geometry {

FunctionGerm FunctionGerm::function(Polynomial f) {
  if (f.constant_term() != 0) fail(ErrorCode::InvalidInput, "f does not vanish at the origin");
  FunctionGerm g;
  g.kind_ = FunctionKind::Function;
  for (std::size_t i = 0; i < f.variables().size(); ++i) g.row_.push_back(ring::differentiate(f, i));
  g.f_ = std::move(f);
  return g;
}

FunctionGerm FunctionGerm::linear(const LinearForm& l, const VariableSet& vars) {
  if (l.size() != vars.size()) fail(ErrorCode::InvalidInput, "linear form has the wrong number of coefficients");
  FunctionGerm g = function(l.to_polynomial(vars));
  g.kind_ = FunctionKind::Linear;
  return g;
}

FunctionGerm FunctionGerm::one_form(std::vector<Polynomial> omega) {
  if (omega.empty()) fail(ErrorCode::InvalidInput, "a 1-form needs at least one coefficient");
  for (const auto& w : omega) {
    if (!(w.variables() == omega.front().variables())) fail(ErrorCode::InvalidInput, "variable-set mismatch");
  }
  if (omega.size() != omega.front().variables().size()) {
    fail(ErrorCode::InvalidInput, "a 1-form needs one coefficient per variable");
  }
  FunctionGerm g;
  g.kind_ = FunctionKind::OneForm;
  g.row_ = std::move(omega);
  return g;
}

const VariableSet& FunctionGerm::variables() const { return row_.front().variables(); }

const Polynomial& FunctionGerm::f() const {
  if (!f_) fail(ErrorCode::InvalidInput, "a function is required, not a 1-form");
  return *f_;
}

namespace {

void check_vars(const GermSpace& X, const FunctionGerm& w) {
  if (!(X.vars == w.variables())) fail(ErrorCode::InvalidInput, "function and germ use different variables");
}

}  // namespace

SubmodulePresentation jm(const GermSpace& X) {
  if (X.equations.empty()) fail(ErrorCode::InvalidInput, "JM(X) needs at least one equation");
  return SubmodulePresentation::columns(ring::jacobian_matrix(X.vars, X.equations), X.equations);
}

SubmodulePresentation jm_aug(const GermSpace& X, const FunctionGerm& w) {
  check_vars(X, w);
  auto D = ring::augment_matrix(ring::jacobian_matrix(X.vars, X.equations), w.row());
  return SubmodulePresentation::columns(D, X.equations);
}

SubmodulePresentation jm_relative(const GermSpace& X, const LinearForm& h) {
  const std::size_t n = X.vars.size();
  if (h.size() != n) fail(ErrorCode::InvalidInput, "linear form has the wrong number of coefficients");
  if (X.equations.empty()) fail(ErrorCode::InvalidInput, "JM(X)_h needs at least one equation");
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (h[i] == 0) continue;
    if (pivot == n || cmp(abs(h[i]), abs(h[pivot])) > 0) pivot = i;
  }
  if (pivot == n) fail(ErrorCode::InvalidInput, "h must be nonzero");

  auto DF = ring::jacobian_matrix(X.vars, X.equations);
  SubmodulePresentation out;
  out.vars = X.vars;
  out.rank = X.equations.size();
  out.relations = X.equations;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == pivot) continue;
    const Rational ratio = h[i] / h[pivot];
    std::vector<Polynomial> col;
    bool zero = true;
    for (std::size_t r = 0; r < DF.rows(); ++r) {
      Polynomial entry = DF.at(r, i) - DF.at(r, pivot) * ratio;
      zero = zero && entry.is_zero();
      col.push_back(std::move(entry));
    }
    if (!zero) out.generators.emplace_back(std::move(col));
  }
  return out;
}

}  // namespace germlab::geometry
