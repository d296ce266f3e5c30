#include "narrow/variants.hpp"

#include <algorithm>
#include <functional>

namespace narrow {

void prepare_equations(Theory& th) {
  long long k = 0;
  for (Equation& eq : th.equations) {
    VarSet vs = vars_of(eq.lhs);
    collect_vars(eq.rhs, vs);
    Subst ren;
    for (auto& v : vs) {
      if (v.name.size() > 0 && v.name[0] == '%') continue;
      ren.bind(v, Term::make_var("%" + std::to_string(k++), v.sort));
    }
    eq.lhs = apply(th, eq.lhs, ren);
    eq.rhs = apply(th, eq.rhs, ren);
  }
}

// ---------------------------------------------------------------------------
// Normalization (innermost, declaration order, first matcher)

namespace {

UnifyOptions match_once() {
  UnifyOptions o;
  o.minimize = false;
  o.stop_after = 1;
  o.max_candidates = 1000000;
  o.max_steps = 8'000'000;
  return o;
}

Term normalize_rec(const Theory& th, const Term& t, long long& budget) {
  if (!t.is_app()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (auto& a : t.args()) {
    Term na = normalize_rec(th, a, budget);
    changed |= !na.same_node(a);
    args.push_back(std::move(na));
  }
  Term u = changed || !t.canonical() ? th.app(t.sym(), std::move(args)) : t;
  for (;;) {
    bool fired = false;
    for (const Equation& eq : th.equations) {
      auto ms = b_match(th, eq.lhs, u, match_once());
      if (ms.empty()) continue;
      if (--budget < 0)
        throw ResourceError("normalization step cap exceeded (non-convergent theory?)");
      Term next = apply(th, eq.rhs, ms.front());
      u = normalize_rec(th, next, budget);
      fired = true;
      break;
    }
    if (!fired) return u;
  }
}

}  // namespace

Term normalize(const Theory& th, const Term& t, const VariantOptions& opt) {
  long long budget = opt.normalize_cap;
  return normalize_rec(th, b_canonical(th, t), budget);
}

Term normalize(const Theory& th, const Term& t) { return normalize(th, t, VariantOptions{}); }

Subst normalize_subst(const Theory& th, const Subst& s) {
  Subst out;
  for (auto& [v, t] : s) out.bind(v, normalize(th, t));
  return out;
}

bool is_irreducible(const Theory& th, const Term& t) {
  if (!t.is_app()) return true;
  for (auto& a : t.args())
    if (!is_irreducible(th, a)) return false;
  Term u = b_canonical(th, t);
  for (const Equation& eq : th.equations) {
    if (!b_match(th, eq.lhs, u, match_once()).empty()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Folding variant narrowing over term tuples

namespace {

using Path = std::vector<int>;

void collect_positions(const Term& t, Path& cur, std::vector<Path>& out) {
  if (!t.is_app()) return;
  out.push_back(cur);
  for (size_t i = 0; i < t.args().size(); ++i) {
    cur.push_back(static_cast<int>(i));
    collect_positions(t.args()[i], cur, out);
    cur.pop_back();
  }
}

Term subterm_at(const Term& t, const Path& p) {
  Term cur = t;
  for (int i : p) cur = cur.args()[i];
  return cur;
}

Term replace_at(const Theory& th, const Term& t, const Path& p, size_t depth,
                const Term& repl) {
  if (depth == p.size()) return repl;
  std::vector<Term> args = t.args();
  args[p[depth]] = replace_at(th, args[p[depth]], p, depth + 1, repl);
  return th.app(t.sym(), std::move(args));
}

// Cheap structural key modulo renaming of generated variables: fresh names
// are renumbered in order of first occurrence.
std::string rename_key(const Theory& th, const TupleVariant& v, const VarSet& over) {
  std::string raw;
  for (auto& t : v.terms) raw += print_term(th, t) + "|";
  for (auto& var : over) {
    const Term* b = v.subst.find(var);
    raw += var.name + "=" + (b ? print_term(th, *b) : var.name) + ";";
  }
  std::string out;
  std::map<std::string, int> seen;
  for (size_t i = 0; i < raw.size();) {
    if (raw[i] == '$' || raw[i] == '%') {
      size_t j = i + 1;
      while (j < raw.size() && isdigit(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i + 1) {
        std::string name = raw.substr(i, j - i);
        auto it = seen.find(name);
        if (it == seen.end()) it = seen.emplace(name, (int)seen.size()).first;
        out += "#" + std::to_string(it->second);
        i = j;
        continue;
      }
    }
    out += raw[i++];
  }
  return out;
}

// (v, sigma) more general than (u, theta) over `over`: a B-matcher rho with
// v*rho =B u componentwise and sigma*rho =B theta on `over`.
bool tuple_subsumes(const Theory& th, const TupleVariant& gen, const TupleVariant& inst,
                    const VarSet& over) {
  std::vector<std::pair<Term, Term>> eqs;
  VarSet frozen;
  for (size_t i = 0; i < gen.terms.size(); ++i) {
    eqs.push_back({gen.terms[i], inst.terms[i]});
    collect_vars(inst.terms[i], frozen);
  }
  for (auto& v : over) {
    const Term* g = gen.subst.find(v);
    const Term* i = inst.subst.find(v);
    Term gt = g ? *g : Term::make_var(v.name, v.sort);
    Term it = i ? *i : Term::make_var(v.name, v.sort);
    eqs.push_back({gt, it});
    collect_vars(it, frozen);
  }
  UnifyOptions o;
  o.frozen = &frozen;
  o.minimize = false;
  o.stop_after = 1;
  o.max_candidates = 1000000;
  o.max_steps = 8'000'000;
  FreshCounter local;
  local.next = 3'000'000'000LL;
  try {
    return !b_unify_eqs(th, eqs, local, o).empty();
  } catch (const ResourceError&) {
    return false;
  }
}

}  // namespace

std::vector<TupleVariant> variants_tuple(const Theory& th, const std::vector<Term>& terms,
                                         FreshCounter& fresh, const VariantOptions& opt,
                                         bool* complete) {
  VarSet orig_vars;
  for (auto& t : terms) collect_vars(t, orig_vars);

  TupleVariant root;
  for (auto& t : terms) root.terms.push_back(normalize(th, t, opt));
  std::vector<TupleVariant> all{root};
  std::vector<size_t> frontier{0};
  std::set<std::string> keys{rename_key(th, root, orig_vars)};
  bool done = false;

  for (int depth = 0; depth < opt.depth_cap && !frontier.empty(); ++depth) {
    std::vector<size_t> next;
    for (size_t fi = 0; fi < frontier.size(); ++fi) {
      size_t ni = frontier[fi];
      for (size_t comp = 0; comp < all[ni].terms.size(); ++comp) {
        std::vector<Path> positions;
        Path cur;
        collect_positions(all[ni].terms[comp], cur, positions);
        for (const Path& p : positions) {
          Term red = subterm_at(all[ni].terms[comp], p);
          for (const Equation& eq : th.equations) {
            if (!eq.variant) continue;
            Rule tmp{eq.label, eq.lhs, eq.rhs, Term{}, false, false};
            Rule renamed = fresh_rename_rule(th, tmp, fresh);
            UnifyOptions uo = opt.unify;
            uo.minimize = false;
            std::vector<Subst> unifs =
                b_unify_eqs(th, {{red, renamed.lhs}}, fresh, uo);
            for (const Subst& alpha : unifs) {
              // narrowing only needs E,B-irreducible unifiers
              bool normalized = true;
              for (auto& [av, at] : alpha)
                if (!is_irreducible(th, at)) normalized = false;
              if (!normalized) continue;
              const TupleVariant& node = all[ni];
              TupleVariant cand;
              cand.terms.reserve(node.terms.size());
              Term replaced = replace_at(th, node.terms[comp], p, 0, renamed.rhs);
              for (size_t j = 0; j < node.terms.size(); ++j) {
                Term base = j == comp ? replaced : node.terms[j];
                cand.terms.push_back(normalize(th, apply(th, base, alpha), opt));
              }
              cand.subst = normalize_subst(
                  th, restrict_to(compose(th, node.subst, alpha), orig_vars));
              std::string key = rename_key(th, cand, orig_vars);
              if (!keys.insert(key).second) continue;
              bool folded = false;
              for (auto& v : all) {
                if (tuple_subsumes(th, v, cand, orig_vars)) {
                  folded = true;
                  break;
                }
              }
              if (folded) continue;
              if (static_cast<long long>(all.size()) >= opt.max_variants)
                throw ResourceError("variant cap exceeded");
              all.push_back(cand);
              next.push_back(all.size() - 1);
            }
          }
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) done = true;
  }
  if (complete) *complete = done || frontier.empty();
  return all;
}

VariantSet variants(const Theory& th, const Term& t, FreshCounter& fresh,
                    const VariantOptions& opt) {
  VariantSet out;
  bool complete = true;
  auto tv = variants_tuple(th, {t}, fresh, opt, &complete);
  out.complete = complete;
  for (auto& v : tv) out.variants.push_back({v.terms[0], v.subst});
  return out;
}

// ---------------------------------------------------------------------------
// Variant-based unification

namespace {

std::vector<Subst> raw_variant_unifiers(const Theory& th, const Term& t, const Term& u,
                                        FreshCounter& fresh, const VariantOptions& opt,
                                        bool* complete) {
  VarSet orig;
  collect_vars(t, orig);
  collect_vars(u, orig);
  auto pairs = variants_tuple(th, {t, u}, fresh, opt, complete);
  std::vector<Subst> out;
  for (auto& pv : pairs) {
    UnifyOptions uo = opt.unify;
    uo.minimize = false;  // keep the raw B-unifier family per variant pair
    std::vector<Subst> betas = b_unify_eqs(th, {{pv.terms[0], pv.terms[1]}}, fresh, uo);
    for (auto& beta : betas) {
      Subst sigma = normalize_subst(th, restrict_to(compose(th, pv.subst, beta), orig));
      bool dup = false;
      for (auto& prev : out)
        if (subst_equal(th, prev, sigma, orig)) dup = true;
      if (!dup) out.push_back(std::move(sigma));
    }
  }
  return out;
}

std::vector<Subst> minimize_unifiers(const Theory& th, std::vector<Subst> raw,
                                     const VarSet& orig) {
  std::vector<Subst> kept;
  for (auto& s : raw) {
    bool covered = false;
    for (auto& k : kept)
      if (subsumes(th, k, s, orig)) covered = true;
    if (covered) continue;
    std::erase_if(kept, [&](const Subst& k) { return subsumes(th, s, k, orig); });
    kept.push_back(s);
  }
  return kept;
}

}  // namespace

UnifierSet variant_unify(const Theory& th, const Term& t, const Term& u,
                         FreshCounter& fresh, const VariantOptions& opt) {
  UnifierSet out;
  bool complete = true;
  std::vector<Subst> raw = raw_variant_unifiers(th, t, u, fresh, opt, &complete);
  out.complete = complete;
  VarSet orig;
  collect_vars(t, orig);
  collect_vars(u, orig);
  out.unifiers = opt.filter_unifiers ? minimize_unifiers(th, std::move(raw), orig)
                                     : std::move(raw);
  return out;
}

UnifierSet asym_variant_unify(const Theory& th, const Term& t, const Term& u,
                              const std::vector<Term>& irreducible, FreshCounter& fresh,
                              const VariantOptions& opt) {
  UnifierSet out;
  bool complete = true;
  std::vector<Subst> raw = raw_variant_unifiers(th, t, u, fresh, opt, &complete);
  out.complete = complete;
  VarSet orig;
  collect_vars(t, orig);
  collect_vars(u, orig);

  std::vector<Subst> surviving;
  for (auto& s : raw) {
    bool ok = true;
    for (const Term& p : irreducible) {
      if (!is_irreducible(th, apply(th, p, s))) {
        ok = false;
        break;
      }
    }
    if (ok) surviving.push_back(std::move(s));
  }
  out.unifiers = opt.filter_unifiers ? minimize_unifiers(th, std::move(surviving), orig)
                                     : std::move(surviving);
  return out;
}

}  // namespace narrow

