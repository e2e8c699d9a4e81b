#pragma once

// Brute-force linear algebra on jets: O^p / (M + m^D O^p) is finite
// dimensional, so quotient dimensions and membership modulo m^D reduce to
// ranks of explicit rational matrices. Independent of the standard basis code.

#include "germlab/basis.hpp"

#include <map>
#include <optional>
#include <vector>

namespace oracle {

using germlab::basis::FreeModuleElement;
using germlab::ring::Monomial;
using germlab::ring::Polynomial;
using germlab::ring::Rational;

using Row = std::map<std::size_t, Rational>;

inline std::vector<Monomial> monomials_below(std::size_t n, unsigned D) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var == n) {
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  if (D > 0) rec(rec, 0, D - 1);
  return out;
}

class JetSpace {
 public:
  JetSpace(std::size_t n, std::size_t rank, unsigned D) : n_(n), rank_(rank), D_(D) {
    for (std::size_t c = 0; c < rank; ++c) {
      for (const auto& m : monomials_below(n, D)) index_.emplace(std::make_pair(c, m), index_.size());
    }
  }
  std::size_t dimension() const { return index_.size(); }
  unsigned degree() const { return D_; }
  std::size_t nvars() const { return n_; }
  std::size_t index(std::size_t component, const Monomial& m) const { return index_.at({component, m}); }

  Row encode(const FreeModuleElement& e, const Monomial& shift = {}) const {
    Row row;
    for (std::size_t c = 0; c < e.rank(); ++c) {
      for (const auto& [m, coeff] : e[c].terms()) {
        Monomial s = m * shift;
        if (s.degree() >= D_) continue;
        row[index_.at({c, s})] = coeff;
      }
    }
    return row;
  }

 private:
  std::size_t n_;
  std::size_t rank_;
  unsigned D_;
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index_;
};

class Echelon {
 public:
  // Reduces `v` by the current pivots; returns the remainder.
  Row reduce(Row v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const Rational factor = it->second;
      const std::size_t key = it->first;
      for (const auto& [k, c] : p->second) {
        Rational nv = v[k] - factor * c;
        if (nv == 0) {
          v.erase(k);
        } else {
          v[k] = nv;
        }
      }
      it = v.upper_bound(key);
    }
    return v;
  }

  bool insert(Row v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const Rational lead = v.begin()->second;
    for (auto& [k, c] : v) c /= lead;
    pivots_.emplace(v.begin()->first, std::move(v));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, Row> pivots_;
};

/// Span of all monomial multiples of `gens`, truncated below degree D.
inline Echelon module_jets(const std::vector<FreeModuleElement>& gens, const JetSpace& space) {
  Echelon ech;
  const auto shifts = monomials_below(space.nvars(), space.degree());
  for (const auto& g : gens) {
    for (const auto& s : shifts) ech.insert(space.encode(g, s));
  }
  return ech;
}

/// dim O^p / (M + m^D O^p).
inline std::size_t jet_colength(const std::vector<FreeModuleElement>& gens, std::size_t n, std::size_t rank,
                                unsigned D) {
  JetSpace space(n, rank, D);
  return space.dimension() - module_jets(gens, space).rank();
}

/// Colength certified by stabilization: once the truncated dimension stops
/// growing from D to D+1, m^D lies in M + m^{D+1} and hence in M.
inline std::optional<std::size_t> stable_colength(const std::vector<FreeModuleElement>& gens, std::size_t n,
                                                  std::size_t rank, unsigned max_degree) {
  std::size_t prev = jet_colength(gens, n, rank, 1);
  for (unsigned D = 2; D <= max_degree; ++D) {
    std::size_t cur = jet_colength(gens, n, rank, D);
    if (cur == prev) return cur;
    prev = cur;
  }
  return std::nullopt;
}

/// Whether h lies in M + m^D O^p.
inline bool jet_member(const std::vector<FreeModuleElement>& gens, const FreeModuleElement& h, std::size_t n,
                       unsigned D) {
  JetSpace space(n, h.rank(), D);
  Echelon ech = module_jets(gens, space);
  return ech.reduce(space.encode(h)).empty();
}

/// Generators of M + F O^rank, the module viewed on V(F).
inline std::vector<FreeModuleElement> with_relations(std::vector<FreeModuleElement> gens,
                                                     const std::vector<Polynomial>& F, std::size_t rank) {
  for (const auto& f : F) {
    for (std::size_t c = 0; c < rank; ++c) {
      FreeModuleElement e(f.variables(), rank);
      e[c] = f;
      gens.push_back(e);
    }
  }
  return gens;
}

/// dim of { h of degree < D : h in I + m^D, dh/dz_i in I + m^(D-1) for all i },
/// the kernel of an explicit linear map on jets.
inline std::size_t integral_jet_dimension(const std::vector<Polynomial>& I, std::size_t n, unsigned D) {
  std::vector<FreeModuleElement> gens;
  for (const auto& g : I) gens.emplace_back(std::vector<Polynomial>{g});
  JetSpace top(n, 1, D);
  JetSpace low(n, 1, D - 1);
  Echelon in_top = module_jets(gens, top);
  Echelon in_low = module_jets(gens, low);
  const auto monos = monomials_below(n, D);
  Echelon image;
  for (const auto& m : monos) {
    Row out;
    Row r = in_top.reduce(Row{{top.index(0, m), Rational(1)}});
    for (const auto& [k, c] : r) out[k] = c;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0 || m.degree() - 1 >= D - 1) continue;
      Monomial d = m;
      d.set(i, m[i] - 1);
      Row dr = in_low.reduce(Row{{low.index(0, d), Rational(m[i])}});
      const std::size_t offset = top.dimension() + i * low.dimension();
      for (const auto& [k, c] : dr) out[offset + k] = c;
    }
    image.insert(out);
  }
  return monos.size() - image.rank();
}

inline std::vector<FreeModuleElement> as_elements(const std::vector<Polynomial>& ideal) {
  std::vector<FreeModuleElement> out;
  for (const auto& g : ideal) out.emplace_back(std::vector<Polynomial>{g});
  return out;
}

}  // namespace oracle
