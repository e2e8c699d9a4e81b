#pragma once

// Standard bases in the local ring at the origin (Mora's tangent cone
// algorithm) for ideals and submodules of free modules.

#include "germlab/ring.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace germlab::basis {

using ring::Monomial;
using ring::PolyMatrix;
using ring::Polynomial;
using ring::Rational;
using ring::VariableSet;

/// Negative-degree reverse-lexicographic order on monomials (1 is largest),
/// extended position-over-term. Components listed earlier in
/// `component_priority` dominate; the default is the natural order.
struct LocalOrder {
  std::vector<std::size_t> component_priority;
};

/// Explicit work bounds. Exceeding one raises ErrorCode::Resource.
struct Limits {
  std::uint64_t max_reductions = 5'000'000;
  std::size_t max_basis_size = 20'000;
  std::size_t max_saturation_rounds = 64;
};

class FreeModuleElement {
 public:
  FreeModuleElement(VariableSet vars, std::size_t rank);
  explicit FreeModuleElement(std::vector<Polynomial> components);
  static FreeModuleElement unit(VariableSet vars, std::size_t rank, std::size_t k);

  const VariableSet& variables() const noexcept { return vars_; }
  std::size_t rank() const noexcept { return comps_.size(); }
  const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
  Polynomial& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<Polynomial>& components() const noexcept { return comps_; }
  bool is_zero() const noexcept;

  FreeModuleElement& operator+=(const FreeModuleElement& other);
  FreeModuleElement& operator-=(const FreeModuleElement& other);
  friend FreeModuleElement operator*(const Polynomial& a, FreeModuleElement v);

  std::string to_string() const;
  friend bool operator==(const FreeModuleElement&, const FreeModuleElement&) = default;

 private:
  VariableSet vars_;
  std::vector<Polynomial> comps_;
};

/// Submodule of O^rank generated by `generators`, taken modulo the ideal of
/// `relations` (adjoined to every component).
struct SubmodulePresentation {
  VariableSet vars;
  std::size_t rank = 1;
  std::vector<FreeModuleElement> generators;
  std::vector<Polynomial> relations;

  static SubmodulePresentation ideal(const VariableSet& vars, std::span<const Polynomial> gens,
                                     std::span<const Polynomial> relations = {});
  /// Column module of a matrix; rank = rows.
  static SubmodulePresentation columns(const PolyMatrix& m, std::span<const Polynomial> relations = {});
  static SubmodulePresentation free_module(const VariableSet& vars, std::size_t rank,
                                           std::span<const Polynomial> relations = {});

  /// rank x (#generators) matrix of the generators.
  PolyMatrix matrix() const;
  /// Generators followed by relation multiples of each unit vector.
  std::vector<FreeModuleElement> all_generators() const;
  /// Ideal generators when rank == 1.
  std::vector<Polynomial> ideal_generators() const;
};

struct StaircaseTerm {
  std::size_t component;
  Monomial monomial;
  friend bool operator==(const StaircaseTerm&, const StaircaseTerm&) = default;
};

namespace detail {
struct Term {
  Monomial mono;
  std::uint32_t comp;
  Rational coeff;
};
/// Terms sorted strictly descending in the local order.
struct Vec {
  std::vector<Term> terms;
};
}  // namespace detail

class StandardBasis {
 public:
  const VariableSet& variables() const noexcept { return vars_; }
  std::size_t rank() const noexcept { return rank_; }
  const LocalOrder& order() const noexcept { return order_; }
  const std::vector<FreeModuleElement>& elements() const noexcept { return elements_; }
  /// Minimal generators of the leading module, one per element.
  const std::vector<StaircaseTerm>& staircase() const noexcept { return staircase_; }
  /// When set, every monomial of this total degree or more (in every
  /// component) lies in the module.
  std::optional<unsigned> degree_cutoff() const noexcept { return cutoff_; }

  /// dim_Q O^rank / module, or nullopt when infinite.
  std::optional<std::uint64_t> quotient_dimension() const;
  /// Standard monomials of one component (finite case only).
  std::vector<Monomial> standard_monomials(std::size_t component) const;

 private:
  friend StandardBasis standard_basis(const SubmodulePresentation&, const LocalOrder&, const Limits&);
  friend FreeModuleElement normal_form(const FreeModuleElement&, const StandardBasis&, const Limits&);

  VariableSet vars_;
  std::size_t rank_ = 0;
  LocalOrder order_;
  std::vector<FreeModuleElement> elements_;
  std::vector<StaircaseTerm> staircase_;
  std::vector<detail::Vec> internal_;
  std::optional<unsigned> cutoff_;
};

StandardBasis standard_basis(const SubmodulePresentation& gens, const LocalOrder& order = {},
                             const Limits& limits = {});

/// Mora weak normal form: zero iff `e` lies in the module over the local ring.
FreeModuleElement normal_form(const FreeModuleElement& e, const StandardBasis& sb,
                              const Limits& limits = {});
bool contains(const StandardBasis& sb, const FreeModuleElement& e, const Limits& limits = {});
/// A is contained in B (relations of A included).
bool is_submodule(const SubmodulePresentation& a, const SubmodulePresentation& b,
                  const Limits& limits = {});

/// (M : J) = { h : J h contained in M }.
SubmodulePresentation module_quotient(const SubmodulePresentation& M, std::span<const Polynomial> J,
                                      const Limits& limits = {});
/// (M : J^infinity), the stable value of iterated quotients.
SubmodulePresentation saturate(const SubmodulePresentation& M, std::span<const Polynomial> J,
                               const Limits& limits = {});
/// { a in O^cols : A a in I O^rows }.
SubmodulePresentation kernel_preimage(const PolyMatrix& A, std::span<const Polynomial> I,
                                      const Limits& limits = {});

/// Generators of the maximal ideal (the variables).
std::vector<Polynomial> maximal_ideal(const VariableSet& vars);

/// Number of monomials in `n` variables outside the monomial ideal generated
/// by `gens`; nullopt when some variable has no pure power among them.
std::optional<std::uint64_t> count_standard_monomials(std::span<const Monomial> gens, std::size_t n);
std::vector<Monomial> list_standard_monomials(std::span<const Monomial> gens, std::size_t n);

}  // namespace germlab::basis
