#include "germlab/basis.hpp"
#include "germlab/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace germlab::basis {

using detail::Term;
using detail::Vec;

namespace {

class Order {
 public:
  Order(const LocalOrder& order, std::size_t rank, std::size_t nvars) : nvars_(nvars), rank_(rank) {
    if (order.component_priority.empty()) {
      for (std::size_t c = 0; c < rank; ++c) rank_[c] = c;
    } else {
      if (order.component_priority.size() != rank) {
        fail(ErrorCode::InvalidInput, "component priority must list every component once");
      }
      std::vector<bool> seen(rank, false);
      for (std::size_t pos = 0; pos < rank; ++pos) {
        std::size_t c = order.component_priority[pos];
        if (c >= rank || seen[c]) fail(ErrorCode::InvalidInput, "component priority must be a permutation");
        seen[c] = true;
        rank_[c] = pos;
      }
    }
  }

  // > 0 when a is larger.
  int compare_mono(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? 1 : -1;
    for (std::size_t i = nvars_; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    if (ca != cb) return rank_[ca] < rank_[cb] ? 1 : -1;
    return compare_mono(a, b);
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return rank_.size(); }

 private:
  std::size_t nvars_;
  std::vector<std::size_t> rank_;
};

Vec to_vec(const FreeModuleElement& e, const Order& ord) {
  Vec v;
  for (std::uint32_t c = 0; c < e.rank(); ++c) {
    for (const auto& [m, coeff] : e[c].terms()) v.terms.push_back(Term{m, c, coeff});
  }
  std::sort(v.terms.begin(), v.terms.end(), [&](const Term& a, const Term& b) {
    return ord.compare(a.mono, a.comp, b.mono, b.comp) > 0;
  });
  return v;
}

FreeModuleElement from_vec(const Vec& v, const VariableSet& vars, std::size_t rank) {
  FreeModuleElement e(vars, rank);
  for (const auto& t : v.terms) e[t.comp].add_term(t.mono, t.coeff);
  return e;
}

unsigned ecart(const Vec& v) {
  unsigned top = 0;
  for (const auto& t : v.terms) top = std::max(top, t.mono.degree());
  return top - v.terms.front().mono.degree();
}

void truncate(Vec& v, std::optional<unsigned> cutoff) {
  if (!cutoff) return;
  std::erase_if(v.terms, [&](const Term& t) { return t.mono.degree() >= *cutoff; });
}

void make_monic(Vec& v) {
  const Rational lc = v.terms.front().coeff;
  if (lc == 1) return;
  for (auto& t : v.terms) t.coeff /= lc;
}

// h - coeff * shift * g, both operands sorted.
Vec sub_mul(const Vec& h, const Vec& g, const Monomial& shift, const Rational& coeff, const Order& ord,
            std::optional<unsigned> cutoff) {
  Vec out;
  out.terms.reserve(h.terms.size() + g.terms.size());
  std::size_t i = 0;
  std::size_t j = 0;
  auto skip = [&](const Monomial& m) { return cutoff && m.degree() >= *cutoff; };
  while (i < h.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      if (!skip(h.terms[i].mono)) out.terms.push_back(h.terms[i]);
      ++i;
      continue;
    }
    Monomial gm = g.terms[j].mono * shift;
    const std::uint32_t gc = g.terms[j].comp;
    int cmp = i == h.terms.size() ? -1 : ord.compare(h.terms[i].mono, h.terms[i].comp, gm, gc);
    if (cmp > 0) {
      if (!skip(h.terms[i].mono)) out.terms.push_back(h.terms[i]);
      ++i;
    } else if (cmp < 0) {
      if (!skip(gm)) out.terms.push_back(Term{gm, gc, -coeff * g.terms[j].coeff});
      ++j;
    } else {
      Rational c = h.terms[i].coeff - coeff * g.terms[j].coeff;
      if (sgn(c) != 0 && !skip(gm)) out.terms.push_back(Term{gm, gc, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

struct Counter {
  const Limits& limits;
  std::uint64_t reductions = 0;
  void tick() {
    if (++reductions > limits.max_reductions) {
      fail(ErrorCode::Resource, "standard basis exceeded " + std::to_string(limits.max_reductions) +
                                    " reduction steps");
    }
  }
};

struct Reducer {
  const Vec* vec;
  unsigned ecart;
};

// Mora's weak normal form. The reducer set grows by the intermediate
// remainders whose ecart is smaller than that of the chosen divisor.
Vec mora_nf(Vec h, const std::vector<Reducer>& basis, const Order& ord, std::optional<unsigned> cutoff,
            Counter& counter) {
  truncate(h, cutoff);
  std::deque<Vec> extra_store;
  std::vector<Reducer> extra;
  while (!h.terms.empty()) {
    const Term& lt = h.terms.front();
    const Reducer* best = nullptr;
    auto consider = [&](const Reducer& r) {
      const Term& rt = r.vec->terms.front();
      if (rt.comp != lt.comp || !rt.mono.divides(lt.mono)) return;
      if (!best || r.ecart < best->ecart) best = &r;
    };
    for (const auto& r : basis) consider(r);
    for (const auto& r : extra) consider(r);
    if (!best) return h;
    Reducer chosen = *best;
    const unsigned eh = ecart(h);
    if (chosen.ecart > eh) {
      extra_store.push_back(h);
      extra.push_back(Reducer{&extra_store.back(), eh});
    }
    const Term& rt = chosen.vec->terms.front();
    Monomial shift = lt.mono.quotient(rt.mono);
    Rational coeff = lt.coeff / rt.coeff;
    h = sub_mul(h, *chosen.vec, shift, coeff, ord, cutoff);
    counter.tick();
  }
  return h;
}

std::vector<Monomial> leading_monomials(const std::vector<Vec>& vecs, const std::vector<bool>& alive,
                                        std::uint32_t comp) {
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (alive[i] && vecs[i].terms.front().comp == comp) out.push_back(vecs[i].terms.front().mono);
  }
  return out;
}

class Builder {
 public:
  Builder(const Order& ord, const Limits& limits) : ord_(ord), limits_(limits), counter_{limits} {}

  void insert(Vec v) {
    Vec h = mora_nf(std::move(v), reducers(), ord_, cutoff_, counter_);
    if (h.terms.empty()) return;
    make_monic(h);
    add(std::move(h));
  }

  void run() {
    while (!pairs_.empty()) {
      auto [deg, i, j] = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      if (!alive_[i] || !alive_[j]) continue;
      insert(spoly(i, j));
    }
  }

  std::vector<Vec> result() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < vecs_.size(); ++i) {
      if (alive_[i]) out.push_back(vecs_[i]);
    }
    return out;
  }

  std::optional<unsigned> cutoff() const { return cutoff_; }

 private:
  using Pair = std::tuple<unsigned, std::size_t, std::size_t>;

  std::vector<Reducer> reducers() const {
    std::vector<Reducer> out;
    for (std::size_t i = 0; i < vecs_.size(); ++i) {
      if (alive_[i]) out.push_back(Reducer{&vecs_[i], ecarts_[i]});
    }
    return out;
  }

  Monomial lcm_of(std::size_t i, std::size_t j) const {
    return vecs_[i].terms.front().mono.lcm(vecs_[j].terms.front().mono);
  }

  Vec spoly(std::size_t i, std::size_t j) const {
    const Term& a = vecs_[i].terms.front();
    const Term& b = vecs_[j].terms.front();
    Monomial l = a.mono.lcm(b.mono);
    // Both are monic, so x^(l-a) v_i - x^(l-b) v_j.
    Vec zero;
    Vec left = sub_mul(zero, vecs_[i], l.quotient(a.mono), Rational(-1), ord_, cutoff_);
    return sub_mul(left, vecs_[j], l.quotient(b.mono), Rational(1), ord_, cutoff_);
  }

  void add(Vec h) {
    if (vecs_.size() >= limits_.max_basis_size) {
      fail(ErrorCode::Resource, "standard basis exceeded " + std::to_string(limits_.max_basis_size) +
                                    " elements");
    }
    const std::size_t k = vecs_.size();
    const Term lt = h.terms.front();
    const unsigned e = ecart(h);
    vecs_.push_back(std::move(h));
    alive_.push_back(true);
    ecarts_.push_back(e);
    chain_removed_.emplace_back();

    // Gebauer-Moeller chain criterion on the existing pairs. A removed pair
    // is remembered so it can be restored if element k is later dropped.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      auto [deg, i, j] = *it;
      const Term& ti = vecs_[i].terms.front();
      if (ti.comp == lt.comp) {
        Monomial lij = lcm_of(i, j);
        if (lt.mono.divides(lij) && !(lcm_of(i, k) == lij) && !(lcm_of(j, k) == lij)) {
          chain_removed_[k].push_back(*it);
          it = pairs_.erase(it);
          continue;
        }
      }
      ++it;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (!alive_[i] || vecs_[i].terms.front().comp != lt.comp) continue;
      pairs_.insert(Pair{lcm_of(i, k).degree(), i, k});
    }
    update_cutoff();
  }

  void drop(std::size_t k) {
    alive_[k] = false;
    for (const auto& p : chain_removed_[k]) pairs_.insert(p);
    chain_removed_[k].clear();
  }

  void update_cutoff() {
    // The current staircase bounds the final one. For an ideal the local
    // order is degree-compatible, so m^(top+1) lies in the module. Under a
    // position-over-term order a reduction in one component leaves tails of
    // any degree in the later ones, so there only the length bound
    // m^length (O^p/M) = 0 is safe.
    const std::size_t n = ord_.nvars();
    unsigned top = 0;
    std::uint64_t total = 0;
    for (std::uint32_t c = 0; c < ord_.rank(); ++c) {
      std::vector<Monomial> lts = leading_monomials(vecs_, alive_, c);
      auto count = count_standard_monomials(lts, n);
      if (!count) return;
      if (*count == 0) continue;
      total += *count;
      for (const auto& m : list_standard_monomials(lts, n)) top = std::max(top, m.degree());
    }
    unsigned d = 0;
    if (total > 0) d = ord_.rank() == 1 ? top + 1 : static_cast<unsigned>(std::min<std::uint64_t>(total, 1u << 15));
    if (cutoff_ && *cutoff_ <= d) return;
    cutoff_ = d;

    std::vector<Vec> reinsert;
    for (std::size_t i = 0; i < vecs_.size(); ++i) {
      if (!alive_[i]) continue;
      const Term lt = vecs_[i].terms.front();
      truncate(vecs_[i], cutoff_);
      if (vecs_[i].terms.empty()) {
        drop(i);
      } else if (!(vecs_[i].terms.front().mono == lt.mono) || vecs_[i].terms.front().comp != lt.comp) {
        reinsert.push_back(vecs_[i]);
        drop(i);
      } else {
        ecarts_[i] = ecart(vecs_[i]);
      }
    }
    for (auto& v : reinsert) insert(std::move(v));
  }

  const Order& ord_;
  const Limits& limits_;
  Counter counter_;
  std::vector<Vec> vecs_;
  std::vector<bool> alive_;
  std::vector<unsigned> ecarts_;
  std::vector<std::vector<Pair>> chain_removed_;
  std::set<Pair> pairs_;
  std::optional<unsigned> cutoff_;
};

void check_presentation(const SubmodulePresentation& p) {
  if (p.vars.size() == 0) fail(ErrorCode::InvalidInput, "module over an unset variable set");
  if (p.rank == 0) fail(ErrorCode::InvalidInput, "module of rank zero");
  for (const auto& g : p.generators) {
    if (g.rank() != p.rank) fail(ErrorCode::InvalidInput, "generator rank differs from module rank");
    if (!(g.variables() == p.vars)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
  }
  for (const auto& f : p.relations) {
    if (!(f.variables() == p.vars)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
  }
}

}  // namespace

StandardBasis standard_basis(const SubmodulePresentation& gens, const LocalOrder& order, const Limits& limits) {
  check_presentation(gens);
  Order ord(order, gens.rank, gens.vars.size());
  Builder builder(ord, limits);
  for (const auto& g : gens.all_generators()) {
    if (g.is_zero()) continue;
    builder.insert(to_vec(g, ord));
  }
  builder.run();

  std::vector<Vec> vecs = builder.result();
  const auto cutoff = builder.cutoff();
  if (cutoff) {
    // Every monomial of degree `cutoff` lies in the module; add those the
    // computed leading terms miss.
    const std::size_t n = gens.vars.size();
    const std::vector<bool> alive(vecs.size(), true);
    std::vector<std::vector<Monomial>> all_lts;
    for (std::uint32_t c = 0; c < gens.rank; ++c) all_lts.push_back(leading_monomials(vecs, alive, c));
    for (std::uint32_t c = 0; c < gens.rank; ++c) {
      const std::vector<Monomial>& lts = all_lts[c];
      std::vector<unsigned> exps(n, 0);
      // enumerate all exponent vectors of total degree `cutoff`
      std::function<void(std::size_t, unsigned)> rec = [&](std::size_t var, unsigned left) {
        if (var + 1 == n) {
          exps[var] = left;
          Monomial m = Monomial::from_exponents(exps);
          for (const auto& l : lts) {
            if (l.divides(m)) return;
          }
          vecs.push_back(Vec{{Term{m, c, Rational(1)}}});
          return;
        }
        for (unsigned e = 0; e <= left; ++e) {
          exps[var] = e;
          rec(var + 1, left - e);
        }
      };
      rec(0, *cutoff);
    }
  }

  // Keep one element per minimal leading term.
  std::vector<bool> keep(vecs.size(), true);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    const Term& ti = vecs[i].terms.front();
    for (std::size_t j = 0; j < vecs.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      const Term& tj = vecs[j].terms.front();
      if (tj.comp != ti.comp || !tj.mono.divides(ti.mono)) continue;
      if (!(tj.mono == ti.mono) || j < i) keep[i] = false;
    }
  }

  StandardBasis sb;
  sb.vars_ = gens.vars;
  sb.rank_ = gens.rank;
  sb.order_ = order;
  sb.cutoff_ = cutoff;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (!keep[i]) continue;
    sb.staircase_.push_back(StaircaseTerm{vecs[i].terms.front().comp, vecs[i].terms.front().mono});
    sb.elements_.push_back(from_vec(vecs[i], gens.vars, gens.rank));
    sb.internal_.push_back(std::move(vecs[i]));
  }
  return sb;
}

std::optional<std::uint64_t> StandardBasis::quotient_dimension() const {
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < rank_; ++c) {
    std::vector<Monomial> lts;
    for (const auto& s : staircase_) {
      if (s.component == c) lts.push_back(s.monomial);
    }
    auto count = count_standard_monomials(lts, vars_.size());
    if (!count) return std::nullopt;
    total += *count;
  }
  return total;
}

std::vector<Monomial> StandardBasis::standard_monomials(std::size_t component) const {
  std::vector<Monomial> lts;
  for (const auto& s : staircase_) {
    if (s.component == component) lts.push_back(s.monomial);
  }
  return list_standard_monomials(lts, vars_.size());
}

FreeModuleElement normal_form(const FreeModuleElement& e, const StandardBasis& sb, const Limits& limits) {
  if (e.rank() != sb.rank_) fail(ErrorCode::InvalidInput, "element rank differs from module rank");
  if (!(e.variables() == sb.vars_)) fail(ErrorCode::InvalidInput, "variable-set mismatch");
  Order ord(sb.order_, sb.rank_, sb.vars_.size());
  std::vector<Reducer> reducers;
  for (const auto& v : sb.internal_) reducers.push_back(Reducer{&v, ecart(v)});
  Counter counter{limits};
  Vec r = mora_nf(to_vec(e, ord), reducers, ord, sb.cutoff_, counter);
  return from_vec(r, sb.vars_, sb.rank_);
}

bool contains(const StandardBasis& sb, const FreeModuleElement& e, const Limits& limits) {
  return normal_form(e, sb, limits).is_zero();
}

bool is_submodule(const SubmodulePresentation& a, const SubmodulePresentation& b, const Limits& limits) {
  if (a.rank != b.rank) fail(ErrorCode::InvalidInput, "modules differ in rank");
  StandardBasis sb = standard_basis(b, {}, limits);
  for (const auto& g : a.all_generators()) {
    if (!contains(sb, g, limits)) return false;
  }
  return true;
}

}  // namespace germlab::basis
