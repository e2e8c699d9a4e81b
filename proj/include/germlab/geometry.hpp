#pragma once

// Jacobian modules of germs and the invariants built from them: reduction
// tests, the defect of a function, radial indices of 1-forms, stratified
// sums and the hypersurface bouquet count.

#include "germlab/invariants.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace germlab::geometry {

using invariants::Certification;
using invariants::ChartFixture;
using invariants::GermSpace;
using invariants::Genericity;
using ring::LinearForm;
using ring::Polynomial;
using ring::Rational;
using ring::VariableSet;
using basis::SubmodulePresentation;

enum class FunctionKind { Function, Linear, OneForm };

/// A function f vanishing at 0 or a 1-form sum omega_i dz_i.
class FunctionGerm {
 public:
  static FunctionGerm function(Polynomial f);
  static FunctionGerm linear(const LinearForm& l, const VariableSet& vars);
  static FunctionGerm one_form(std::vector<Polynomial> omega);

  FunctionKind kind() const noexcept { return kind_; }
  const VariableSet& variables() const;
  /// Requires a function or linear kind.
  const Polynomial& f() const;
  /// The row appended to DF: the gradient of f, or omega itself.
  const std::vector<Polynomial>& row() const noexcept { return row_; }

 private:
  FunctionKind kind_ = FunctionKind::Function;
  std::optional<Polynomial> f_;
  std::vector<Polynomial> row_;
};

struct StratumDatum {
  std::string name;
  GermSpace space;
  std::int64_t weight = 1;
};

struct DefectReport {
  unsigned d = 0;
  std::uint64_t mu_X = 0;
  std::uint64_t mu_f_slice = 0;
  std::uint64_t mu_L_slice = 0;
  /// le_greuel_step for f and for the certified generic linear form.
  std::uint64_t e_f = 0;
  std::uint64_t e_L = 0;
  std::int64_t e_pair = 0;
  std::int64_t defect = 0;
  std::vector<Certification> certifications;
};

SubmodulePresentation jm(const GermSpace& X);
SubmodulePresentation jm_aug(const GermSpace& X, const FunctionGerm& w);
/// Derivatives of F along v_i = e_i - (h_i/h_j) e_j, where j maximizes |h_j|
/// (first such index); zero columns are dropped.
SubmodulePresentation jm_relative(const GermSpace& X, const LinearForm& h);

bool is_limit_tangent_hyperplane(const GermSpace& X, const LinearForm& h, const Genericity& gen);
bool is_nonsingular_function(const GermSpace& X, const FunctionGerm& f, const Genericity& gen);
bool has_isolated_singularity(const GermSpace& X, const FunctionGerm& f, const Genericity& gen);

DefectReport defect(const GermSpace& X, const FunctionGerm& f, const Genericity& gen);

struct RadialIndexReport {
  unsigned d = 0;
  std::uint64_t e_omega = 0;
  std::uint64_t e_L = 0;
  std::uint64_t mu_X = 0;
  std::int64_t e_pair = 0;
  /// (-1)^(d-1) times the reduced Euler characteristic of the complex link.
  std::uint64_t link_term = 0;
  std::int64_t index = 0;
};
RadialIndexReport radial_index(const GermSpace& X, const FunctionGerm& omega, const Genericity& gen);

struct StratumTerm {
  std::string name;
  unsigned dimension = 0;
  std::int64_t weight = 1;
  /// e_pair for positive-dimensional strata; 1 for a point.
  std::int64_t multiplicity = 0;
};

struct DModuleReport {
  std::int64_t total = 0;
  std::vector<StratumTerm> terms;
};
DModuleReport dmodule_vanishing_cycles(const std::vector<StratumDatum>& strata, const FunctionGerm& f,
                                       const Genericity& gen);

/// (name, d_alpha, k_alpha) per stratum; the weight field is left as given.
std::vector<StratumTerm> milnor_fiber_report(const std::vector<StratumDatum>& strata, const FunctionGerm& f,
                                             const Genericity& gen);

struct BReportInput {
  Polynomial g;
  std::vector<Polynomial> I;
  FunctionGerm f;
  /// e(JM(X,f), I+O_X) charts.
  std::vector<ChartFixture> main_charts;
  /// e(J(g), I) charts; alternatively `e_Jg_I`.
  std::vector<ChartFixture> jg_charts;
  /// e(JM(X,l), I+O_X) charts for a generic l; alternatively `e_generic`.
  std::vector<ChartFixture> generic_charts;
  std::optional<std::uint64_t> D_infty;
  std::optional<std::uint64_t> lambda0;
  std::optional<std::uint64_t> e_Jg_I;
  std::optional<std::uint64_t> e_generic;
  std::optional<std::uint64_t> mu_slice;
  bool transverse_morse_asserted = false;
};

struct BReport {
  std::int64_t b = 0;
  bool degenerate = false;
  unsigned dim_VI = 0;
  std::uint64_t e_main = 0;
  std::uint64_t e_Jg_I = 0;
  std::uint64_t D_infty = 0;
  std::uint64_t e_VI_f = 0;
  std::optional<std::uint64_t> e_JM_VI;
  std::optional<std::uint64_t> e_generic;
  std::optional<std::uint64_t> lambda0;
  bool lambda0_checked = false;
  bool generic_checked = false;
  /// Degenerate case only: LG(X,f) and mu(g).
  std::uint64_t e_X_f = 0;
  std::uint64_t mu_g = 0;
};
BReport hypersurface_b_report(const BReportInput& in, const Genericity& gen);

struct FamilySample {
  std::vector<Rational> values;
  DefectReport report;
};

enum class FamilyVerdict { Vacuous, Constant, Varies };

struct FamilyScan {
  std::vector<FamilySample> samples;
  FamilyVerdict verdict = FamilyVerdict::Vacuous;
  /// Index of the first sample whose defect differs from sample 0.
  std::optional<std::size_t> first_deviation;
  std::string note;
};

/// F and f live over ring variables followed by `params`; each sample
/// assigns the parameters. Samples run concurrently; output is in input order.
FamilyScan family_defect_scan(const VariableSet& ring_vars, const std::vector<std::string>& params,
                              const std::vector<Polynomial>& F, const Polynomial& f,
                              const std::vector<std::vector<Rational>>& samples, const Genericity& gen);

std::string verdict_name(FamilyVerdict v);

}  // namespace germlab::geometry
