#include "germlab/error.hpp"
#include "germlab/geometry.hpp"

#include <exception>
#include <future>

namespace germlab::geometry {

namespace {

template <class Fn>
auto annotated(const std::string& prefix, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), prefix + ": " + e.what());
  }
}

StratumTerm stratum_term(const StratumDatum& s, const FunctionGerm& f, const Genericity& gen) {
  StratumTerm t;
  t.name = s.name;
  t.dimension = s.space.dimension;
  t.weight = s.weight;
  // A point stratum: the graph of df meets the conormal fibre T*_0 once.
  t.multiplicity = s.space.dimension == 0
                       ? 1
                       : annotated("stratum " + s.name, [&] { return defect(s.space, f, gen).e_pair; });
  return t;
}

}  // namespace

DModuleReport dmodule_vanishing_cycles(const std::vector<StratumDatum>& strata, const FunctionGerm& f,
                                       const Genericity& gen) {
  DModuleReport r;
  for (const auto& s : strata) {
    r.terms.push_back(stratum_term(s, f, gen));
    r.total += r.terms.back().weight * r.terms.back().multiplicity;
  }
  return r;
}

std::vector<StratumTerm> milnor_fiber_report(const std::vector<StratumDatum>& strata, const FunctionGerm& f,
                                             const Genericity& gen) {
  std::vector<StratumTerm> out;
  for (const auto& s : strata) out.push_back(stratum_term(s, f, gen));
  return out;
}

BReport hypersurface_b_report(const BReportInput& in, const Genericity& gen) {
  const VariableSet& vars = in.g.variables();
  if (!(in.f.variables() == vars)) fail(ErrorCode::InvalidInput, "f and g use different variables");
  for (const auto& p : in.I) {
    if (!(p.variables() == vars)) fail(ErrorCode::InvalidInput, "I and g use different variables");
  }
  BReport r;
  const auto ci = invariants::ideal_colength(vars, in.I, gen.limits);
  if (ci.is_finite() && ci.value() == 0) {
    // I is the unit ideal: X has an isolated singularity.
    r.degenerate = true;
    auto X = invariants::make_germ(vars, {in.g}, std::nullopt, {}, gen.limits);
    if (!X.is_icis) fail(ErrorCode::NonIsolated, "I is the unit ideal but X has a non-isolated singularity");
    r.e_X_f = invariants::le_greuel_step(X, in.f.f(), gen.limits);
    r.mu_g = invariants::milnor_hypersurface(in.g, gen.limits);
    r.b = static_cast<std::int64_t>(r.e_X_f) - static_cast<std::int64_t>(r.mu_g);
    return r;
  }

  auto VI = invariants::make_germ(vars, in.I, std::nullopt, {}, gen.limits);
  if (!VI.is_icis) fail(ErrorCode::UnsupportedRegime, "V(I) must be an ICIS");
  if (VI.dimension == 0) fail(ErrorCode::UnsupportedRegime, "V(I) must have positive dimension");
  {
    auto sbI = basis::standard_basis(SubmodulePresentation::ideal(vars, in.I), {}, gen.limits);
    std::vector<Polynomial> Jg{in.g};
    for (std::size_t i = 0; i < vars.size(); ++i) Jg.push_back(ring::differentiate(in.g, i));
    for (const auto& p : Jg) {
      if (!basis::contains(sbI, basis::FreeModuleElement(std::vector<Polynomial>{p}), gen.limits)) {
        fail(ErrorCode::InvalidInput, "g and its partial derivatives must lie in I");
      }
    }
  }
  r.dim_VI = VI.dimension;
  if (r.dim_VI == 1) {
    if (!in.D_infty) fail(ErrorCode::MissingInput, "D_infty is required when V(I) is a curve");
    r.D_infty = *in.D_infty;
  } else if (in.D_infty && *in.D_infty != 0) {
    fail(ErrorCode::Inconsistent, "D_infty must be 0 when V(I) has dimension greater than 1");
  }

  if (in.main_charts.empty()) fail(ErrorCode::MissingInput, "charts for e(JM(X,f), I+O_X) are required");
  r.e_main = invariants::pullback_multiplicity(in.main_charts, gen.limits).total;

  auto from_charts_or_input = [&](const std::vector<ChartFixture>& charts, std::optional<std::uint64_t> given,
                                  const std::string& name) -> std::optional<std::uint64_t> {
    if (charts.empty()) return given;
    const auto total = invariants::pullback_multiplicity(charts, gen.limits).total;
    if (given && *given != total) {
      fail(ErrorCode::Inconsistent, name + " given as " + std::to_string(*given) + " but the charts give " +
                                        std::to_string(total));
    }
    return total;
  };
  auto eJ = from_charts_or_input(in.jg_charts, in.e_Jg_I, "e_Jg_I");
  if (!eJ) fail(ErrorCode::MissingInput, "e(J(g), I) needs jg charts or the input e_Jg_I");
  r.e_Jg_I = *eJ;
  r.e_generic = from_charts_or_input(in.generic_charts, in.e_generic, "e_generic");

  r.e_VI_f = invariants::le_greuel_step(VI, in.f.f(), gen.limits);
  r.b = static_cast<std::int64_t>(r.e_main) - (static_cast<std::int64_t>(r.e_Jg_I) - static_cast<std::int64_t>(r.D_infty)) +
        static_cast<std::int64_t>(r.e_VI_f);

  if (in.lambda0) {
    r.lambda0 = in.lambda0;
    r.e_JM_VI = invariants::br_multiplicity(jm(VI), VI, gen).value;
    const std::uint64_t expected = r.e_Jg_I + *r.e_JM_VI + r.D_infty;
    if (expected != *in.lambda0) {
      fail(ErrorCode::Inconsistent, "lambda0 = " + std::to_string(*in.lambda0) + " but e(J(g),I) + e(JM(V(I))) " +
                                        (r.dim_VI == 1 ? "+ D_infty " : "") + "= " + std::to_string(expected));
    }
    r.lambda0_checked = true;
    if (r.e_generic && in.mu_slice) {
      const std::int64_t rhs = static_cast<std::int64_t>(*in.lambda0) + static_cast<std::int64_t>(*in.mu_slice) -
                               2 * static_cast<std::int64_t>(r.D_infty) - 2 * static_cast<std::int64_t>(*r.e_JM_VI);
      if (rhs != static_cast<std::int64_t>(*r.e_generic)) {
        fail(ErrorCode::Inconsistent, "e_generic = " + std::to_string(*r.e_generic) +
                                          " but lambda0 + mu_slice - 2 D_infty - 2 e(JM(V(I))) = " +
                                          std::to_string(rhs));
      }
      r.generic_checked = true;
    }
  }
  return r;
}

std::string verdict_name(FamilyVerdict v) {
  switch (v) {
    case FamilyVerdict::Vacuous: return "vacuous";
    case FamilyVerdict::Constant: return "constant";
    case FamilyVerdict::Varies: return "varies";
  }
  return "unknown";
}

FamilyScan family_defect_scan(const VariableSet& ring_vars, const std::vector<std::string>& params,
                              const std::vector<Polynomial>& F, const Polynomial& f,
                              const std::vector<std::vector<Rational>>& samples, const Genericity& gen) {
  for (const auto& row : samples) {
    if (row.size() != params.size()) fail(ErrorCode::InvalidInput, "each sample needs one value per parameter");
  }
  auto specialize = [&](const std::vector<Rational>& values) {
    std::map<std::string, Polynomial> map;
    for (std::size_t i = 0; i < ring_vars.size(); ++i) map.emplace(ring_vars.name(i), Polynomial::variable(ring_vars, i));
    for (std::size_t i = 0; i < params.size(); ++i) map.emplace(params[i], Polynomial::constant(ring_vars, values[i]));
    std::vector<Polynomial> Fs;
    for (const auto& p : F) Fs.push_back(ring::substitute(p, map));
    return std::make_pair(std::move(Fs), ring::substitute(f, map));
  };

  struct Outcome {
    DefectReport report;
    std::exception_ptr error;
  };
  std::vector<std::future<Outcome>> jobs;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    jobs.push_back(std::async(std::launch::async, [&, k] {
      Outcome out;
      try {
        Genericity local = gen;
        local.log = nullptr;
        auto [Fs, fs] = specialize(samples[k]);
        auto X = invariants::make_germ(ring_vars, std::move(Fs), std::nullopt, {}, gen.limits);
        annotated("sample " + std::to_string(k), [&] {
          out.report = defect(X, FunctionGerm::function(std::move(fs)), local);
          return 0;
        });
      } catch (...) {
        out.error = std::current_exception();
      }
      return out;
    }));
  }

  FamilyScan scan;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    Outcome out = jobs[k].get();
    if (out.error) {
      for (std::size_t j = k + 1; j < jobs.size(); ++j) jobs[j].wait();
      std::rethrow_exception(out.error);
    }
    if (gen.log) {
      for (auto c : out.report.certifications) {
        c.what = "sample " + std::to_string(k) + ": " + c.what;
        gen.log->push_back(std::move(c));
      }
    }
    scan.samples.push_back(FamilySample{samples[k], std::move(out.report)});
  }
  if (!scan.samples.empty()) {
    scan.verdict = FamilyVerdict::Constant;
    for (std::size_t k = 1; k < scan.samples.size(); ++k) {
      if (scan.samples[k].report.defect != scan.samples[0].report.defect) {
        scan.verdict = FamilyVerdict::Varies;
        scan.first_deviation = k;
        break;
      }
    }
  }
  scan.note =
      "constancy over finitely many samples is evidence, not proof; the family-continuity hypothesis on "
      "H0(JM_z(G)) at the origin is assumed and not verified";
  return scan;
}

}  // namespace germlab::geometry
