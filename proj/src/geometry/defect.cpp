#include "germlab/error.hpp"
#include "germlab/geometry.hpp"

namespace germlab::geometry {

namespace {

using invariants::br_multiplicity;
using invariants::colength;

void require_icis(const GermSpace& X, const char* what) {
  if (!X.is_icis) {
    fail(ErrorCode::UnsupportedRegime, std::string(what) + " is only supported on smooth germs and ICIS");
  }
}

void check_vars(const GermSpace& X, const FunctionGerm& w) {
  if (!(X.vars == w.variables())) fail(ErrorCode::InvalidInput, "function and germ use different variables");
}

// Collects certification records locally and forwards them to the caller's sink.
class LocalLog {
 public:
  explicit LocalLog(const Genericity& gen) : outer_(gen.log), gen_(gen) { gen_.log = &records_; }
  const Genericity& gen() const { return gen_; }
  std::vector<Certification> finish() {
    if (outer_) outer_->insert(outer_->end(), records_.begin(), records_.end());
    return std::move(records_);
  }

 private:
  std::vector<Certification>* outer_;
  Genericity gen_;
  std::vector<Certification> records_;
};

// JM(X) + O_X inside O^(p+1).
SubmodulePresentation jm_plus_free(const GermSpace& X) {
  const std::size_t p = X.equations.size();
  SubmodulePresentation out;
  out.vars = X.vars;
  out.rank = p + 1;
  out.relations = X.equations;
  auto DF = ring::jacobian_matrix(X.vars, X.equations);
  for (std::size_t c = 0; c < DF.cols(); ++c) {
    std::vector<Polynomial> col = DF.column(c);
    col.push_back(Polynomial(X.vars));
    basis::FreeModuleElement e(std::move(col));
    if (!e.is_zero()) out.generators.push_back(std::move(e));
  }
  out.generators.push_back(basis::FreeModuleElement::unit(X.vars, p + 1, p));
  return out;
}

}  // namespace

bool is_limit_tangent_hyperplane(const GermSpace& X, const LinearForm& h, const Genericity& gen) {
  if (h.size() != X.vars.size()) fail(ErrorCode::InvalidInput, "linear form has the wrong number of coefficients");
  if (X.equations.empty()) return false;
  require_icis(X, "the limit tangent hyperplane test");
  SubmodulePresentation rel = jm_relative(X, h);
  if (rel.generators.empty() || !colength(rel, {}, gen.limits).is_finite()) return true;
  const auto a = br_multiplicity(rel, X, gen).value;
  const auto b = br_multiplicity(jm(X), X, gen).value;
  return a != b;
}

bool is_nonsingular_function(const GermSpace& X, const FunctionGerm& f, const Genericity& gen) {
  check_vars(X, f);
  require_icis(X, "the non-singularity test");
  SubmodulePresentation aug = jm_aug(X, f);
  if (!colength(aug, {}, gen.limits).is_finite()) return false;
  const auto a = br_multiplicity(aug, X, gen).value;
  const auto b = br_multiplicity(jm_plus_free(X), X, gen).value;
  return a == b;
}

bool has_isolated_singularity(const GermSpace& X, const FunctionGerm& f, const Genericity& gen) {
  check_vars(X, f);
  require_icis(X, "the isolated singularity test");
  return invariants::le_greuel_colength(X, f.row(), gen.limits).is_finite();
}

DefectReport defect(const GermSpace& X, const FunctionGerm& f, const Genericity& gen) {
  check_vars(X, f);
  require_icis(X, "the defect");
  LocalLog log(gen);
  DefectReport r;
  r.d = X.dimension;
  r.e_f = invariants::le_greuel_step(X, f.f(), gen.limits);
  r.e_L = invariants::generic_linear_le_greuel(X, log.gen());
  r.mu_X = invariants::milnor_icis(X, log.gen());
  if (r.e_f < r.mu_X || r.e_L < r.mu_X) {
    fail(ErrorCode::Inconsistent, "a Le-Greuel colength is smaller than mu(X)");
  }
  r.mu_f_slice = r.e_f - r.mu_X;
  r.mu_L_slice = r.e_L - r.mu_X;
  r.e_pair = static_cast<std::int64_t>(r.e_f) - static_cast<std::int64_t>(r.e_L);
  r.defect = r.d % 2 == 0 ? r.e_pair : -r.e_pair;
  r.certifications = log.finish();
  return r;
}

RadialIndexReport radial_index(const GermSpace& X, const FunctionGerm& omega, const Genericity& gen) {
  check_vars(X, omega);
  require_icis(X, "the radial index");
  RadialIndexReport r;
  r.d = X.dimension;
  auto e = invariants::le_greuel_colength(X, omega.row(), gen.limits);
  if (!e.is_finite()) fail(ErrorCode::NonIsolated, "the 1-form does not have an isolated zero on X");
  r.e_omega = e.value();
  r.e_L = invariants::generic_linear_le_greuel(X, gen);
  r.mu_X = invariants::milnor_icis(X, gen);
  if (r.e_L < r.mu_X) fail(ErrorCode::Inconsistent, "a Le-Greuel colength is smaller than mu(X)");
  r.e_pair = static_cast<std::int64_t>(r.e_omega) - static_cast<std::int64_t>(r.e_L);
  r.link_term = r.e_L - r.mu_X;
  r.index = r.e_pair + static_cast<std::int64_t>(r.link_term);
  return r;
}

}  // namespace germlab::geometry
