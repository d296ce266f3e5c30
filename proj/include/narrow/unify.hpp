#pragma once

#include "narrow/kernel.hpp"

namespace narrow {

// Unification and matching modulo the structural axioms B (free, comm,
// assoc, assoc-comm, identity). Matching is unification with the subject's
// variables frozen.

struct UnifyOptions {
  const VarSet* frozen = nullptr;  // variables treated as constants
  long long max_candidates = 10000;  // cap on assembled AC unifier candidates
  long long max_steps = 4'000'000;   // branch-step safety cap
  bool minimize = true;              // pairwise non-subsumption filter
  long long stop_after = -1;         // stop early after N solutions (-1: all)
};

struct UnificationProblem {
  std::vector<std::pair<Term, Term>> equations;
  VarSet protected_vars;  // W: must not appear in unifier ranges
};

struct UnifierSet {
  std::vector<Subst> unifiers;
  bool complete = true;
};

std::vector<Subst> b_unify_eqs(const Theory& th,
                               const std::vector<std::pair<Term, Term>>& eqs,
                               FreshCounter& fresh, const UnifyOptions& opt = {});

UnifierSet b_unify(const Theory& th, const UnificationProblem& problem,
                   FreshCounter& fresh, const UnifyOptions& opt = {});

std::vector<Subst> b_match(const Theory& th, const Term& pattern, const Term& subject,
                           const UnifyOptions& opt = {});

// True iff some eta maps general's bindings onto instance's over `over`.
bool subsumes(const Theory& th, const Subst& general, const Subst& instance,
              const VarSet& over);

}  // namespace narrow
