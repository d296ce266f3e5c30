#pragma once

#include "narrow/kernel.hpp"
#include "narrow/unify.hpp"

namespace narrow {

// E,B-normalization, folding variant narrowing and variant-based unification
// with optional irreducibility constraints.

struct VariantOptions {
  int depth_cap = 32;
  long long max_variants = 200000;
  long long normalize_cap = 20000;   // rewrite steps per normalization
  bool filter_unifiers = true;       // unifier-set minimization switch
  UnifyOptions unify;                // options for the B-level sub-solver
  VariantOptions() {
    unify.max_candidates = 200000;
    unify.max_steps = 50'000'000;
  }
};

struct Variant {
  Term term;
  Subst subst;
};

struct VariantSet {
  std::vector<Variant> variants;
  bool complete = true;
};

struct TupleVariant {
  std::vector<Term> terms;
  Subst subst;
};

Term normalize(const Theory& th, const Term& t);
Term normalize(const Theory& th, const Term& t, const VariantOptions& opt);
Subst normalize_subst(const Theory& th, const Subst& s);
bool is_irreducible(const Theory& th, const Term& t);

VariantSet variants(const Theory& th, const Term& t, FreshCounter& fresh,
                    const VariantOptions& opt = {});

std::vector<TupleVariant> variants_tuple(const Theory& th, const std::vector<Term>& terms,
                                         FreshCounter& fresh, const VariantOptions& opt,
                                         bool* complete = nullptr);

UnifierSet variant_unify(const Theory& th, const Term& t, const Term& u,
                         FreshCounter& fresh, const VariantOptions& opt = {});

UnifierSet asym_variant_unify(const Theory& th, const Term& t, const Term& u,
                              const std::vector<Term>& irreducible, FreshCounter& fresh,
                              const VariantOptions& opt = {});

// Equations carry their own variable family so matching never collides with
// user or '$' variables; builders call this once after filling `equations`.
void prepare_equations(Theory& th);

}  // namespace narrow
