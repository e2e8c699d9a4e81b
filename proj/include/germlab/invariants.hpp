#pragma once

// Numerical invariants of germs and modules: colength, dimension,
// Buchsbaum-Rim multiplicity, Milnor numbers and pair multiplicities.

#include "germlab/basis.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

namespace germlab::invariants {

using basis::Limits;
using basis::LocalOrder;
using basis::SubmodulePresentation;
using ring::Integer;
using ring::LinearForm;
using ring::PolyMatrix;
using ring::Polynomial;
using ring::Rational;
using ring::VariableSet;

class NatOrInfinity {
 public:
  static NatOrInfinity finite(std::uint64_t n) { return NatOrInfinity(n); }
  static NatOrInfinity infinity() { return NatOrInfinity(); }

  bool is_finite() const noexcept { return value_.has_value(); }
  /// Requires is_finite().
  std::uint64_t value() const;
  std::string to_string() const;

  friend bool operator==(const NatOrInfinity&, const NatOrInfinity&) = default;

 private:
  NatOrInfinity() = default;
  explicit NatOrInfinity(std::uint64_t n) : value_(n) {}
  std::optional<std::uint64_t> value_;
};

/// One draw of a generic choice that was accepted or rejected.
struct Certification {
  std::string what;
  std::vector<std::uint64_t> seeds;
  std::uint64_t bound = 0;
  bool bound_doubled = false;
  std::string value;
};

/// Randomness and work bounds for every genericity-dependent computation.
/// Values are accepted only when `trials` independent seeds agree.
struct Genericity {
  std::uint64_t seed = 1;
  std::uint64_t bound = 32;
  unsigned trials = 2;
  Limits limits;
  /// Optional sink for certification records.
  std::vector<Certification>* log = nullptr;
};

/// (X,0) in (C^n,0) cut out by F.
struct GermSpace {
  VariableSet vars;
  std::vector<Polynomial> equations;
  unsigned dimension = 0;
  bool is_smooth = false;
  bool is_icis = false;
  bool icis_asserted = false;
  bool cm_asserted = false;

  std::size_t codimension() const { return vars.size() - dimension; }
  bool cohen_macaulay() const { return is_smooth || is_icis || cm_asserted; }
};

struct GermAssertions {
  bool icis = false;
  bool cm = false;
};

/// Computes dimension, smoothness and the ICIS flag. A declared dimension
/// must match; asserting ICIS for a germ that is not one is rejected.
GermSpace make_germ(const VariableSet& vars, std::vector<Polynomial> F,
                    std::optional<unsigned> declared_dimension = std::nullopt, GermAssertions assertions = {},
                    const Limits& limits = {});

enum class Regime { NFree, BothFiniteColength, IcisJacobianPair, ChartFixture };
std::string regime_name(Regime r);
std::optional<Regime> parse_regime(std::string_view name);

struct ChartFixture {
  std::string name;
  VariableSet params;
  std::vector<Polynomial> ideal;
  /// Points (one coordinate per parameter) where local colengths are taken.
  std::vector<std::vector<Rational>> centers;
};

struct PairSpec {
  SubmodulePresentation inner;
  SubmodulePresentation outer;
  Regime regime = Regime::NFree;
  /// For the Jacobian-pair regime: the function f of JM(X,f).
  std::optional<Polynomial> function;
  std::vector<ChartFixture> charts;
};

NatOrInfinity colength(const SubmodulePresentation& M, const LocalOrder& order = {}, const Limits& limits = {});
NatOrInfinity ideal_colength(const VariableSet& vars, std::span<const Polynomial> gens,
                             const Limits& limits = {});
unsigned germ_dimension(const VariableSet& vars, std::span<const Polynomial> F, const Limits& limits = {});

/// Matrix of generators followed by the maximal minors, taken modulo F.
std::vector<Polynomial> minors_ideal(const PolyMatrix& m, std::span<const Polynomial> F);

/// d+p-1 integer combinations of the generators of M (or M itself when it
/// has no more generators than that), certified downstream.
SubmodulePresentation generic_reduction(const SubmodulePresentation& M, const GermSpace& X, std::uint64_t seed,
                                        std::uint64_t bound);

struct BrResult {
  std::uint64_t value = 0;
  bool used_reduction = false;
};
BrResult br_multiplicity(const SubmodulePresentation& M, const GermSpace& X, const Genericity& gen);

std::uint64_t milnor_hypersurface(const Polynomial& g, const Limits& limits = {});
/// colength(F + maximal minors of D(F,row)) = mu(X) + mu(X cap f^-1(0)).
NatOrInfinity le_greuel_colength(const GermSpace& X, std::span<const Polynomial> row, const Limits& limits = {});
std::uint64_t le_greuel_step(const GermSpace& X, const Polynomial& f, const Limits& limits = {});
std::uint64_t milnor_icis(const GermSpace& X, const Genericity& gen);

/// le_greuel_step(X, L) for a certified generic linear form L.
std::uint64_t generic_linear_le_greuel(const GermSpace& X, const Genericity& gen);

std::int64_t pair_multiplicity(const PairSpec& pair, const GermSpace& X, const Genericity& gen);

std::vector<Polynomial> integral_ideal(const VariableSet& vars, std::span<const Polynomial> I,
                                       const Limits& limits = {});

struct ChartContribution {
  std::string chart;
  std::size_t center = 0;
  std::uint64_t value = 0;
};
struct PullbackResult {
  std::uint64_t total = 0;
  std::vector<ChartContribution> contributions;
};
PullbackResult pullback_multiplicity(std::span<const ChartFixture> charts, const Limits& limits = {});

/// Integer coefficients in [-bound, bound]; may be all zero.
std::vector<Integer> draw_coefficients(ring::SeededRng& rng, std::size_t count, std::uint64_t bound);

/// Runs `attempt(seed, bound)` for `trials` derived seeds and accepts the
/// value only if all agree and none is degenerate (nullopt). On failure the
/// bound is doubled once; a second failure raises NonGeneric.
template <class Attempt>
auto certify(const Genericity& gen, const std::string& what, Attempt attempt)
    -> typename std::invoke_result_t<Attempt, std::uint64_t, std::uint64_t>::value_type;

}  // namespace germlab::invariants

#include "germlab/detail/certify.hpp"
