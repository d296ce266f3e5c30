#include "narrow/unify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace narrow {

namespace {

struct Entry {
  Term term;
  int mult = 0;
  bool is_var = false;  // unfrozen variable
};

struct StopSearch {};

class Solver {
 public:
  Solver(const Theory& th, FreshCounter& fresh, const UnifyOptions& opt)
      : th_(th), fresh_(fresh), opt_(opt) {}

  std::vector<Subst> run(std::vector<std::pair<Term, Term>> eqs) {
    Subst id;
    try {
      solve(std::move(eqs), id);
    } catch (const StopSearch&) {
    }
    return std::move(results_);
  }

 private:
  const Theory& th_;
  FreshCounter& fresh_;
  const UnifyOptions& opt_;
  std::vector<Subst> results_;
  long long steps_ = 0;

  bool frozen(const Term& v) const {
    return opt_.frozen && opt_.frozen->count({v.var_name(), v.var_sort()}) > 0;
  }
  bool bindable(const Term& t) const { return t.is_var() && !frozen(t); }

  void tick() {
    if (++steps_ > opt_.max_steps)
      throw ResourceError("unification step limit exceeded");
  }

  // Extends a triangular idempotent substitution with v -> t.
  static Subst extend(const Theory& th, const Subst& cur, const Var& v, const Term& t) {
    Subst single;
    single.bind(v, t);
    Subst out;
    for (auto& [w, u] : cur) out.bind(w, apply(th, u, single));
    out.bind(v, t);
    return out;
  }

  // All ways to weaken variables of t so its least sort drops to <= s.
  // Returns an empty vector when impossible; the identity when already fits.
  std::vector<Subst> sort_lower(const Term& t, SortId s) {
    if (th_.sorts.leq(least_sort(th_, t), s)) return {Subst{}};
    if (t.is_num()) return {};
    if (t.is_var()) {
      if (frozen(t)) return {};
      SortId g = th_.sorts.glb(t.var_sort(), s);
      if (g == kNoSort || g == t.var_sort()) return {};
      Subst w;
      w.bind({t.var_name(), t.var_sort()}, fresh_var(g, fresh_));
      return {w};
    }
    const Symbol& sym = th_.symbols[t.sym()];
    if (sym.internal) return {};
    std::vector<Subst> out;
    for (const OpDecl& d : sym.decls) {
      if (!th_.sorts.leq(d.result, s)) continue;
      // uniform target sort per argument position; flattened assoc terms
      // use the (S,S)->S shape
      std::vector<SortId> targets;
      if (t.args().size() == d.args.size()) {
        targets = d.args;
      } else if (sym.ax.assoc && d.args[0] == d.args[1]) {
        targets.assign(t.args().size(), d.args[0]);
      } else {
        continue;
      }
      std::vector<Subst> acc{Subst{}};
      for (size_t i = 0; i < t.args().size() && !acc.empty(); ++i) {
        std::vector<Subst> next;
        for (auto& w : acc) {
          Term arg = apply(th_, t.args()[i], w);
          for (auto& w2 : sort_lower(arg, targets[i])) {
            next.push_back(compose(th_, w, w2));
          }
        }
        acc = std::move(next);
      }
      for (auto& w : acc) out.push_back(std::move(w));
    }
    // dedupe
    std::vector<Subst> uniq;
    for (auto& w : out) {
      bool dup = false;
      for (auto& u : uniq) {
        VarSet over = w.domain();
        for (auto& v : u.domain()) over.insert(v);
        if (subst_equal(th_, w, u, over)) dup = true;
      }
      if (!dup) uniq.push_back(w);
    }
    return uniq;
  }

  void emit(const Subst& cur) {
    if (static_cast<long long>(results_.size()) >= opt_.max_candidates)
      throw ResourceError("unifier candidate cap exceeded");
    results_.push_back(cur);
    if (opt_.stop_after > 0 &&
        static_cast<long long>(results_.size()) >= opt_.stop_after)
      throw StopSearch{};
  }

  void bind_and_continue(const Var& v, const Term& value,
                         std::vector<std::pair<Term, Term>> rest, const Subst& cur) {
    if (contains_var(value, v)) return;  // occur failure
    SortId ls = least_sort(th_, value);
    if (th_.sorts.leq(ls, v.sort)) {
      solve(std::move(rest), extend(th_, cur, v, value));
      return;
    }
    if (!th_.sorts.same_kind(th_.sorts.kind_of(ls), th_.sorts.kind_of(v.sort))) return;
    for (auto& w : sort_lower(value, v.sort)) {
      Subst cur2 = cur;
      for (auto& [wv, wt] : w) cur2 = extend(th_, cur2, wv, wt);
      solve(rest, extend(th_, cur2, v, apply(th_, value, w)));
    }
  }

  // --- multiset helpers for AC/ACU ---

  std::vector<Entry> content(SymbolId f, const Term& t) {
    std::vector<Entry> out;
    auto push = [&](const Term& x) {
      if (th_.is_identity_of(f, x)) return;
      for (auto& e : out) {
        if (identical(e.term, x)) {
          e.mult++;
          return;
        }
      }
      out.push_back({x, 1, bindable(x)});
    };
    if (t.is_app() && t.sym() == f) {
      for (auto& a : t.args()) push(a);
    } else {
      push(t);
    }
    return out;
  }

  Term build(SymbolId f, std::vector<Term> parts) {
    if (parts.empty()) return th_.identity_term(f);
    if (parts.size() == 1) return parts[0];
    return th_.app(f, std::move(parts));
  }

  // Largest element sort allowed inside an f-combination bound to sort s.
  SortId element_bound(SymbolId f, SortId s) {
    const Symbol& sym = th_.symbols[f];
    SortId best = kNoSort;
    for (const OpDecl& d : sym.decls) {
      if (!th_.sorts.leq(d.result, s)) continue;
      SortId cand = d.args[0];
      if (best == kNoSort || th_.sorts.leq(best, cand)) best = cand;
    }
    return best;
  }

  // --- Diophantine minimal basis (Contejean-Devie style bounded search) ---

  static std::vector<std::vector<int>> dio_basis(const std::vector<int>& lhs,
                                                 const std::vector<int>& rhs) {
    size_t p = lhs.size(), q = rhs.size(), n = p + q;
    std::vector<int> bound(n);
    int maxl = 1, maxr = 1;
    for (int a : lhs) maxl = std::max(maxl, a);
    for (int b : rhs) maxr = std::max(maxr, b);
    for (size_t i = 0; i < p; ++i) bound[i] = maxr;
    for (size_t j = 0; j < q; ++j) bound[p + j] = maxl;

    auto defect = [&](const std::vector<int>& v) {
      long long d = 0;
      for (size_t i = 0; i < p; ++i) d += static_cast<long long>(lhs[i]) * v[i];
      for (size_t j = 0; j < q; ++j) d -= static_cast<long long>(rhs[j]) * v[p + j];
      return d;
    };
    auto geq = [&](const std::vector<int>& a, const std::vector<int>& b) {
      for (size_t i = 0; i < n; ++i)
        if (a[i] < b[i]) return false;
      return true;
    };

    std::vector<std::vector<int>> minimals;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier;
    for (size_t i = 0; i < n; ++i) {
      std::vector<int> u(n, 0);
      u[i] = 1;
      frontier.push_back(u);
    }
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (auto& v : frontier) {
        if (seen.count(v)) continue;
        seen.insert(v);
        long long d = defect(v);
        if (d == 0) {
          bool covered = false;
          for (auto& m : minimals)
            if (geq(v, m)) covered = true;
          if (!covered) minimals.push_back(v);
          continue;
        }
        for (size_t i = 0; i < n; ++i) {
          bool lhs_side = i < p;
          if ((d < 0) != lhs_side) continue;  // move toward zero defect
          if (v[i] >= bound[i]) continue;
          auto u = v;
          u[i] += 1;
          bool covered = false;
          for (auto& m : minimals)
            if (geq(u, m)) covered = true;
          if (!covered) next.push_back(std::move(u));
        }
      }
      frontier = std::move(next);
    }
    // final minimality filter
    std::vector<std::vector<int>> out;
    for (auto& m : minimals) {
      bool dominated = false;
      for (auto& m2 : minimals)
        if (&m2 != &m && geq(m, m2)) dominated = true;
      if (!dominated) out.push_back(m);
    }
    return out;
  }

  // --- AC / ACU ---

  void solve_ac(SymbolId f, const Term& lt, const Term& rt,
                std::vector<std::pair<Term, Term>> rest, const Subst& cur) {
    const Symbol& sym = th_.symbols[f];
    bool with_id = sym.ax.has_identity;
    std::vector<Entry> L = content(f, lt);
    std::vector<Entry> R = content(f, rt);

    // cancel common arguments (free commutative (monoid|semigroup) is
    // cancellative)
    for (auto& e : L) {
      for (auto& g : R) {
        if (e.mult > 0 && g.mult > 0 && identical(e.term, g.term)) {
          int c = std::min(e.mult, g.mult);
          e.mult -= c;
          g.mult -= c;
        }
      }
    }
    std::erase_if(L, [](const Entry& e) { return e.mult == 0; });
    std::erase_if(R, [](const Entry& e) { return e.mult == 0; });

    if (L.empty() && R.empty()) {
      solve(std::move(rest), cur);
      return;
    }
    if (L.empty() || R.empty()) {
      // remaining side must collapse to the identity
      if (!with_id) return;
      Term e = th_.identity_term(f);
      auto& S = L.empty() ? R : L;
      for (auto& en : S) rest.insert(rest.begin(), {en.term, e});
      solve(std::move(rest), cur);
      return;
    }

    std::vector<int> lcoef, rcoef;
    for (auto& e : L) lcoef.push_back(e.mult);
    for (auto& e : R) rcoef.push_back(e.mult);
    auto basis = dio_basis(lcoef, rcoef);
    size_t p = L.size(), nb = basis.size();

    // With an identity, subsets extended by variable-only vectors subsume the
    // smaller ones (extra atoms collapse to the identity), so those vectors
    // can be selected unconditionally as long as every variable column can
    // hold arbitrarily many elements.
    std::vector<char> forced(nb, 0);
    if (with_id) {
      bool all_multi = true;
      for (auto& en : L)
        if (en.is_var && element_bound(f, en.term.var_sort()) == kNoSort)
          all_multi = false;
      for (auto& en : R)
        if (en.is_var && element_bound(f, en.term.var_sort()) == kNoSort)
          all_multi = false;
      if (all_multi) {
        for (size_t b = 0; b < nb; ++b) {
          bool var_only = true;
          for (size_t c = 0; c < L.size() + R.size(); ++c) {
            const Entry& en = c < p ? L[c] : R[c - p];
            if (basis[b][c] > 0 && !en.is_var) var_only = false;
          }
          forced[b] = var_only;
        }
      }
    }

    // A valid selection covers each non-variable column exactly once and,
    // without an identity, every variable column at least once.
    long long emitted = 0;
    std::vector<char> in(nb, 0);

    std::function<void(size_t)> pick = [&](size_t idx) {
      tick();
      if (idx == nb) {
        // check coverage
        for (size_t c = 0; c < L.size() + R.size(); ++c) {
          const Entry& en = c < p ? L[c] : R[c - p];
          long long total = 0;
          for (size_t b = 0; b < nb; ++b)
            if (in[b]) total += basis[b][c];
          if (!en.is_var) {
            if (total != 1) return;
          } else if (!with_id && total == 0) {
            return;
          }
        }
        if (++emitted > opt_.max_candidates)
          throw ResourceError("AC unifier candidate cap exceeded (" +
                              std::to_string(opt_.max_candidates) + ")");
        assemble(f, L, R, basis, in, rest, cur);
        return;
      }
      // prune: selecting must not push a non-var column above 1
      in[idx] = 1;
      bool feasible = true;
      for (size_t c = 0; c < L.size() + R.size() && feasible; ++c) {
        const Entry& en = c < p ? L[c] : R[c - p];
        if (en.is_var) continue;
        long long total = 0;
        for (size_t b = 0; b <= idx; ++b)
          if (in[b]) total += basis[b][c];
        if (total > 1) feasible = false;
      }
      if (feasible) pick(idx + 1);
      if (!forced[idx]) {
        in[idx] = 0;
        pick(idx + 1);
      } else {
        in[idx] = 1;
      }
    };
    pick(0);
  }

  void assemble(SymbolId f, const std::vector<Entry>& L, const std::vector<Entry>& R,
                const std::vector<std::vector<int>>& basis, const std::vector<char>& in,
                const std::vector<std::pair<Term, Term>>& rest, const Subst& cur) {
    size_t p = L.size();
    size_t ncols = L.size() + R.size();
    auto col = [&](size_t c) -> const Entry& { return c < p ? L[c] : R[c - p]; };

    // one atom per selected basis vector: either a fresh variable or the
    // non-variable column term it is identified with
    std::vector<size_t> sel;
    for (size_t b = 0; b < basis.size(); ++b)
      if (in[b]) sel.push_back(b);
    std::vector<Term> atoms(sel.size());
    std::vector<std::pair<Term, Term>> eqs = rest;

    for (size_t ai = 0; ai < sel.size(); ++ai) {
      const auto& vec = basis[sel[ai]];
      for (size_t c = 0; c < ncols; ++c) {
        if (vec[c] == 0) continue;
        const Entry& en = col(c);
        if (!en.is_var) {
          if (atoms[ai].null()) {
            atoms[ai] = en.term;
          } else {
            eqs.insert(eqs.begin(), {atoms[ai], en.term});
          }
        }
      }
    }
    // sort bounds for fresh atoms from the variable columns they feed
    for (size_t ai = 0; ai < sel.size(); ++ai) {
      if (!atoms[ai].null()) continue;
      const auto& vec = basis[sel[ai]];
      SortId bound = kNoSort;
      for (size_t c = 0; c < ncols; ++c) {
        if (vec[c] == 0) continue;
        const Entry& en = col(c);
        SortId vs = en.term.var_sort();
        // total element count for this variable column under the selection
        long long total = 0;
        for (size_t b2 = 0; b2 < sel.size(); ++b2) total += basis[sel[b2]][c];
        SortId req = total == 1 ? vs : element_bound(f, vs);
        if (req == kNoSort) return;  // no combination can fit this variable
        bound = bound == kNoSort ? req : th_.sorts.glb(bound, req);
        if (bound == kNoSort) return;
      }
      atoms[ai] = fresh_var(bound, fresh_);
    }

    // bind variable columns, branching over sort lowerings where needed
    std::function<void(size_t, Subst)> bind_cols = [&](size_t c, Subst cur2) {
      while (c < ncols && !col(c).is_var) ++c;
      if (c == ncols) {
        solve(eqs, cur2);
        return;
      }
      const Entry& en = col(c);
      std::vector<Term> parts;
      for (size_t ai = 0; ai < sel.size(); ++ai) {
        int cnt = basis[sel[ai]][c];
        for (int k = 0; k < cnt; ++k) parts.push_back(atoms[ai]);
      }
      Term value = apply(th_, build(f, std::move(parts)), cur2);
      Var v{en.term.var_name(), en.term.var_sort()};
      if (const Term* already = cur2.find(v)) {
        eqs.insert(eqs.begin(), {*already, value});
        bind_cols(c + 1, cur2);
        eqs.erase(eqs.begin());
        return;
      }
      if (contains_var(value, v)) return;
      SortId ls = least_sort(th_, value);
      if (th_.sorts.leq(ls, v.sort)) {
        bind_cols(c + 1, extend(th_, cur2, v, value));
        return;
      }
      for (auto& w : sort_lower(value, v.sort)) {
        Subst cur3 = cur2;
        for (auto& [wv, wt] : w) cur3 = extend(th_, cur3, wv, wt);
        bind_cols(c + 1, extend(th_, cur3, v, apply(th_, value, w)));
      }
    };
    bind_cols(0, cur);
  }

  void solve_assoc(SymbolId f, const Term& lt, const Term& rt,
                   std::vector<std::pair<Term, Term>> rest, const Subst& cur) {
    auto list_of = [&](const Term& t) {
      std::vector<Term> out;
      if (t.is_app() && t.sym() == f) {
        out = t.args();
      } else {
        out.push_back(t);
      }
      return out;
    };
    std::vector<Term> A = list_of(lt), B = list_of(rt);

    // segment-capable: an unfrozen variable whose sort admits f-terms
    auto seg_var = [&](const Term& t) {
      if (!bindable(t)) return false;
      return element_bound(f, t.var_sort()) != kNoSort;
    };
    bool a_has = std::any_of(A.begin(), A.end(), seg_var);
    bool b_has = std::any_of(B.begin(), B.end(), seg_var);
    if (b_has && !a_has) {
      std::swap(A, B);  // enumerate compositions against the concrete side
    } else if (b_has && a_has) {
      // both sides carry list variables: not needed by the supported corpus
      throw ResourceError("assoc unification with list variables on both sides");
    }

    // split B into |A| consecutive segments; non-segment entries take one
    std::function<void(size_t, size_t, std::vector<std::pair<Term, Term>>, Subst)> go =
        [&](size_t ai, size_t bi, std::vector<std::pair<Term, Term>> eqs, Subst cur2) {
          tick();
          if (ai == A.size()) {
            if (bi == B.size()) solve(std::move(eqs), std::move(cur2));
            return;
          }
          Term a = apply(th_, A[ai], cur2);
          size_t remaining_a = A.size() - ai - 1;
          if (!seg_var(a)) {
            if (bi >= B.size()) return;
            auto eqs2 = eqs;
            eqs2.insert(eqs2.begin(), {a, B[bi]});
            go(ai + 1, bi + 1, std::move(eqs2), std::move(cur2));
            return;
          }
          size_t max_take = B.size() - bi - remaining_a;
          for (size_t k = 1; k <= max_take; ++k) {
            std::vector<Term> seg(B.begin() + bi, B.begin() + bi + k);
            Term value = b_canonical(th_, k == 1 ? seg[0] : th_.app(f, seg));
            Var v{a.var_name(), a.var_sort()};
            if (contains_var(value, v)) continue;
            SortId ls = least_sort(th_, value);
            if (th_.sorts.leq(ls, v.sort)) {
              go(ai + 1, bi + k, eqs, extend(th_, cur2, v, value));
            } else {
              for (auto& w : sort_lower(value, v.sort)) {
                Subst cur3 = cur2;
                for (auto& [wv, wt] : w) cur3 = extend(th_, cur3, wv, wt);
                go(ai + 1, bi + k, eqs, extend(th_, cur3, v, apply(th_, value, w)));
              }
            }
          }
        };
    go(0, 0, std::move(rest), cur);
  }

  void solve(std::vector<std::pair<Term, Term>> eqs, Subst cur) {
    tick();
    while (!eqs.empty()) {
      auto [l, r] = eqs.front();
      eqs.erase(eqs.begin());
      Term lt = b_canonical(th_, apply(th_, l, cur));
      Term rt = b_canonical(th_, apply(th_, r, cur));
      if (identical(lt, rt)) continue;

      // orient variable cases
      if (bindable(rt) && !bindable(lt)) std::swap(lt, rt);
      if (bindable(lt)) {
        Var v{lt.var_name(), lt.var_sort()};
        if (contains_var(rt, v)) {
          // collapse through an identity: v =? f(..., v, ...) forces the rest
          // of the f-content to the identity
          if (rt.is_app()) {
            const Symbol& sym = th_.symbols[rt.sym()];
            if (sym.ax.has_identity && sym.ax.comm) {
              bool direct = false;
              std::vector<Term> others;
              for (auto& a : rt.args()) {
                if (!direct && a.is_var() && a.var_name() == v.name &&
                    a.var_sort() == v.sort) {
                  direct = true;
                } else {
                  others.push_back(a);
                }
              }
              if (direct) {
                Term e = th_.identity_term(rt.sym());
                for (auto& o : others) eqs.insert(eqs.begin(), {o, e});
                solve(std::move(eqs), cur);
                return;
              }
            }
          }
          return;  // occur failure
        }
        bind_and_continue(v, rt, std::move(eqs), cur);
        return;
      }
      if (lt.is_var() && rt.is_var()) return;  // both frozen, distinct
      if (lt.is_num() || rt.is_num()) {
        if (lt.is_num() && rt.is_num() && lt.num_value() == rt.num_value() &&
            lt.num_is_real() == rt.num_is_real()) {
          continue;
        }
        return;
      }
      if (lt.is_var() || rt.is_var()) {
        // frozen variable against an application: possibly an AC/ACU collapse
        Term app_side = lt.is_var() ? rt : lt;
        Term var_side = lt.is_var() ? lt : rt;
        const Symbol& sym = th_.symbols[app_side.sym()];
        if (sym.ax.assoc && sym.ax.comm) {
          solve_ac(app_side.sym(), app_side, var_side, std::move(eqs), cur);
          return;
        }
        return;
      }

      // both applications
      SymbolId fs = lt.sym(), gs = rt.sym();
      const Symbol& fsym = th_.symbols[fs];
      const Symbol& gsym = th_.symbols[gs];
      if (fs == gs) {
        if (fsym.ax.assoc && fsym.ax.comm) {
          solve_ac(fs, lt, rt, std::move(eqs), cur);
          return;
        }
        if (fsym.ax.assoc) {
          solve_assoc(fs, lt, rt, std::move(eqs), cur);
          return;
        }
        if (fsym.ax.comm) {
          {
            auto eqs2 = eqs;
            eqs2.insert(eqs2.begin(), {lt.args()[0], rt.args()[0]});
            eqs2.insert(eqs2.begin() + 1, {lt.args()[1], rt.args()[1]});
            solve(std::move(eqs2), cur);
          }
          {
            auto eqs2 = eqs;
            eqs2.insert(eqs2.begin(), {lt.args()[0], rt.args()[1]});
            eqs2.insert(eqs2.begin() + 1, {lt.args()[1], rt.args()[0]});
            solve(std::move(eqs2), cur);
          }
          return;
        }
        // free decomposition
        if (lt.args().size() != rt.args().size()) return;
        for (size_t i = lt.args().size(); i-- > 0;)
          eqs.insert(eqs.begin(), {lt.args()[i], rt.args()[i]});
        continue;
      }
      // different symbols: an AC/ACU/A side may absorb the other as content
      if (fsym.ax.assoc && fsym.ax.comm) {
        solve_ac(fs, lt, rt, std::move(eqs), cur);
        return;
      }
      if (gsym.ax.assoc && gsym.ax.comm) {
        solve_ac(gs, rt, lt, std::move(eqs), cur);
        return;
      }
      if (fsym.ax.assoc || gsym.ax.assoc) {
        if (fsym.ax.assoc)
          solve_assoc(fs, lt, rt, std::move(eqs), cur);
        else
          solve_assoc(gs, rt, lt, std::move(eqs), cur);
        return;
      }
      return;  // symbol clash
    }
    emit(cur);
  }
};

}  // namespace

std::vector<Subst> b_unify_eqs(const Theory& th,
                               const std::vector<std::pair<Term, Term>>& eqs,
                               FreshCounter& fresh, const UnifyOptions& opt) {
  Solver s(th, fresh, opt);
  std::vector<Subst> raw = s.run(eqs);

  // restrict to the problem's variables
  VarSet pvars;
  for (auto& [l, r] : eqs) {
    collect_vars(l, pvars);
    collect_vars(r, pvars);
  }
  std::vector<Subst> out;
  for (auto& u : raw) out.push_back(restrict_to(u, pvars));

  // drop exact duplicates
  std::vector<Subst> uniq;
  for (auto& u : out) {
    bool dup = false;
    for (auto& v : uniq)
      if (subst_equal(th, u, v, pvars)) dup = true;
    if (!dup) uniq.push_back(std::move(u));
  }
  if (!opt.minimize) return uniq;

  // pairwise non-subsumption
  std::vector<Subst> kept;
  for (auto& u : uniq) {
    bool covered = false;
    for (auto& k : kept)
      if (subsumes(th, k, u, pvars)) covered = true;
    if (covered) continue;
    std::erase_if(kept, [&](const Subst& k) { return subsumes(th, u, k, pvars); });
    kept.push_back(u);
  }
  return kept;
}

UnifierSet b_unify(const Theory& th, const UnificationProblem& problem,
                   FreshCounter& fresh, const UnifyOptions& opt) {
  UnifierSet out;
  out.unifiers = b_unify_eqs(th, problem.equations, fresh, opt);
  return out;
}

std::vector<Subst> b_match(const Theory& th, const Term& pattern, const Term& subject,
                           const UnifyOptions& opt) {
  UnifyOptions o = opt;
  VarSet frozen = vars_of(subject);
  if (opt.frozen)
    for (auto& v : *opt.frozen) frozen.insert(v);
  o.frozen = &frozen;
  o.minimize = false;
  FreshCounter local;  // matching introduces no fresh variables
  local.next = 1'000'000'000LL;
  return b_unify_eqs(th, {{pattern, subject}}, local, o);
}

bool subsumes(const Theory& th, const Subst& general, const Subst& instance,
              const VarSet& over) {
  std::vector<std::pair<Term, Term>> eqs;
  VarSet frozen;
  for (auto& v : over) {
    const Term* g = general.find(v);
    const Term* i = instance.find(v);
    Term gt = g ? *g : Term::make_var(v.name, v.sort);
    Term it = i ? *i : Term::make_var(v.name, v.sort);
    eqs.push_back({gt, it});
    collect_vars(it, frozen);
  }
  UnifyOptions o;
  o.frozen = &frozen;
  o.minimize = false;
  o.stop_after = 1;  // existence check only
  o.max_candidates = 1000000;
  o.max_steps = 8'000'000;
  FreshCounter local;
  local.next = 2'000'000'000LL;
  try {
    return !b_unify_eqs(th, eqs, local, o).empty();
  } catch (const ResourceError&) {
    return false;
  }
}

}  // namespace narrow
