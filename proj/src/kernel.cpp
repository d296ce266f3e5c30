#include "narrow/kernel.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace narrow {

// ---------------------------------------------------------------------------
// SortGraph

SortId SortGraph::add_sort(const std::string& name) {
  if (finalized_) throw TheoryError("sort added after finalize: " + name);
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  SortId id = static_cast<SortId>(names_.size());
  names_.push_back(name);
  index_[name] = id;
  return id;
}

void SortGraph::add_subsort(const std::string& lo, const std::string& hi) {
  edges_.emplace_back(add_sort(lo), add_sort(hi));
}

SortId SortGraph::id(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? kNoSort : it->second;
}

void SortGraph::finalize() {
  if (finalized_) return;
  size_t n = names_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (auto& [lo, hi] : edges_) leq_[lo][hi] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (leq_[i][k])
        for (size_t j = 0; j < n; ++j)
          if (leq_[k][j]) leq_[i][j] = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j)
      if (leq_[i][j] && leq_[j][i])
        throw TheoryError("subsort cycle between " + names_[i] + " and " + names_[j]);

  // Connected components over the undirected subsort relation.
  std::vector<SortId> comp(n, -1);
  SortId ncomp = 0;
  for (size_t i = 0; i < n; ++i) {
    if (comp[i] != -1) continue;
    std::vector<size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      for (size_t u = 0; u < n; ++u) {
        if (comp[u] == -1 && (leq_[v][u] || leq_[u][v])) {
          comp[u] = ncomp;
          stack.push_back(u);
        }
      }
    }
    ++ncomp;
  }

  top_of_.assign(n, kNoSort);
  std::vector<SortId> comp_top(ncomp, kNoSort);
  for (SortId c = 0; c < ncomp; ++c) {
    for (size_t i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      bool maximal = true;
      for (size_t j = 0; j < n; ++j)
        if (j != i && leq_[i][j]) maximal = false;
      if (maximal) {
        if (comp_top[c] != kNoSort)
          throw TheoryError("component of " + names_[i] + " has two top sorts: " +
                            names_[comp_top[c]] + " and " + names_[i]);
        comp_top[c] = static_cast<SortId>(i);
      }
    }
  }

  // Append one kind per component, named after its top sort.
  kind_of_.assign(n, kNoSort);
  std::vector<SortId> comp_kind(ncomp, kNoSort);
  for (SortId c = 0; c < ncomp; ++c) {
    std::string kname = "[" + names_[comp_top[c]] + "]";
    SortId kid;
    auto it = index_.find(kname);
    if (it != index_.end()) {
      kid = it->second;  // user wrote the kind name explicitly as a sort
    } else {
      kid = static_cast<SortId>(names_.size());
      names_.push_back(kname);
      index_[kname] = kid;
    }
    comp_kind[c] = kid;
  }
  size_t total = names_.size();
  for (auto& row : leq_) row.resize(total, false);
  leq_.resize(total, std::vector<bool>(total, false));
  kind_of_.resize(total, kNoSort);
  top_of_.resize(total, kNoSort);
  for (size_t i = total - (total - n); i < total; ++i) leq_[i][i] = true;
  for (size_t i = 0; i < n; ++i) {
    SortId k = comp_kind[comp[i]];
    kind_of_[i] = k;
    top_of_[i] = comp_top[comp[i]];
    leq_[i][k] = true;
  }
  for (SortId c = 0; c < ncomp; ++c) {
    SortId k = comp_kind[c];
    kind_of_[k] = k;
    top_of_[k] = comp_top[c];
  }
  finalized_ = true;
}

bool SortGraph::leq(SortId a, SortId b) const {
  if (a == b) return true;
  return leq_.at(a).at(b);
}

SortId SortGraph::glb(SortId a, SortId b) const {
  if (leq(a, b)) return a;
  if (leq(b, a)) return b;
  return kNoSort;
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw TheoryError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  // Var
  std::string var_name;
  SortId var_sort = kNoSort;
  // App
  SymbolId sym = kNoSymbol;
  std::vector<Term> args;
  // Num
  Rational num;
  bool num_real = false;

  SortId least_sort = kNoSort;
  bool canonical = false;
  size_t hash = 0;
};

namespace {
size_t hash_mix(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}
}  // namespace

Term Term::make_var(const std::string& name, SortId sort) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var_name = name;
  n->var_sort = sort;
  n->least_sort = sort;
  n->canonical = true;
  n->hash = hash_mix(std::hash<std::string>{}(name), static_cast<size_t>(sort) + 17);
  return Term(std::move(n));
}

Term Term::make_num(Rational r, bool is_real) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->num = r;
  n->num_real = is_real;
  n->canonical = true;
  n->hash = hash_mix(hash_mix(static_cast<size_t>(r.num), static_cast<size_t>(r.den)),
                     is_real ? 3u : 5u);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::var_name() const { return node_->var_name; }
SortId Term::var_sort() const { return node_->var_sort; }
SymbolId Term::sym() const { return node_->sym; }
const std::vector<Term>& Term::args() const { return node_->args; }
const Rational& Term::num_value() const { return node_->num; }
bool Term::num_is_real() const { return node_->num_real; }
SortId Term::least_sort() const { return node_->least_sort; }
bool Term::canonical() const { return node_->canonical; }
size_t Term::hash() const { return node_->hash; }

namespace {
// Splits a variable name into (family, index) for ordering: trailing digits
// form the index, the prefix the family.
std::pair<std::string, long long> var_family_index(const std::string& name) {
  size_t i = name.size();
  while (i > 0 && isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  long long idx = -1;
  if (i < name.size() && name.size() - i <= 18) idx = std::stoll(name.substr(i));
  return {name.substr(0, i), idx};
}
}  // namespace

int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  auto rank = [](Term::Kind k) {
    switch (k) {
      case Term::Kind::Num: return 0;
      case Term::Kind::Var: return 1;
      case Term::Kind::App: return 2;
    }
    return 3;
  };
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Num: {
      if (a.num_is_real() != b.num_is_real()) return a.num_is_real() ? 1 : -1;
      if (a.num_value() == b.num_value()) return 0;
      return a.num_value() < b.num_value() ? -1 : 1;
    }
    case Term::Kind::Var: {
      auto [fa, ia] = var_family_index(a.var_name());
      auto [fb, ib] = var_family_index(b.var_name());
      if (fa != fb) return fa < fb ? -1 : 1;
      if (ia != ib) return ia < ib ? -1 : 1;
      if (a.var_sort() != b.var_sort()) return a.var_sort() < b.var_sort() ? -1 : 1;
      return 0;
    }
    case Term::Kind::App: {
      if (a.sym() != b.sym()) return a.sym() < b.sym() ? -1 : 1;
      if (a.args().size() != b.args().size())
        return a.args().size() < b.args().size() ? -1 : 1;
      for (size_t i = 0; i < a.args().size(); ++i) {
        int c = compare(a.args()[i], b.args()[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

bool identical(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert({t.var_name(), t.var_sort()});
  } else if (t.is_app()) {
    for (auto& a : t.args()) collect_vars(a, out);
  }
}

VarSet vars_of(const Term& t) {
  VarSet s;
  collect_vars(t, s);
  return s;
}

bool contains_var(const Term& t, const Var& v) {
  if (t.is_var()) return t.var_name() == v.name && t.var_sort() == v.sort;
  if (t.is_app())
    for (auto& a : t.args())
      if (contains_var(a, v)) return true;
  return false;
}

bool is_fresh_family(const std::string& var_name) {
  return !var_name.empty() && var_name[0] == '$';
}

const Term* Subst::find(const Var& v) const {
  auto it = m_.find(v);
  return it == m_.end() ? nullptr : &it->second;
}

VarSet Subst::domain() const {
  VarSet s;
  for (auto& [v, t] : m_) s.insert(v);
  return s;
}

VarSet Subst::range_vars() const {
  VarSet s;
  for (auto& [v, t] : m_) collect_vars(t, s);
  return s;
}

// ---------------------------------------------------------------------------
// Theory: symbols and canonical term construction

SymbolId Theory::add_symbol(const std::string& name, const std::vector<SortId>& args,
                            SortId result, Axioms ax, bool ctor) {
  if (!sorts.finalized()) throw TheoryError("symbols require finalized sort graph");
  std::vector<SortId> kinds;
  kinds.reserve(args.size());
  for (SortId a : args) kinds.push_back(sorts.kind_of(a));
  SortId rkind = sorts.kind_of(result);

  SymbolId found = find_symbol(name, static_cast<int>(args.size()), kinds);
  if (found != kNoSymbol && symbols[found].result_kind == rkind) {
    symbols[found].decls.push_back({args, result});
    if (ax.assoc || ax.comm || ax.has_identity) {
      if (symbols[found].ax.assoc != ax.assoc || symbols[found].ax.comm != ax.comm)
        throw TheoryError("inconsistent axioms across overloads of " + name);
    }
    if (ctor) symbols[found].ctor = true;
    return found;
  }

  Symbol s;
  s.name = name;
  s.arity = static_cast<int>(args.size());
  s.decls.push_back({args, result});
  s.arg_kinds = kinds;
  s.result_kind = rkind;
  s.ax = ax;
  s.ctor = ctor;
  if (ax.assoc && s.arity != 2) throw TheoryError("assoc on non-binary operator " + name);
  if (ax.has_identity && s.arity != 2)
    throw TheoryError("identity on non-binary operator " + name);
  symbols.push_back(std::move(s));
  return static_cast<SymbolId>(symbols.size() - 1);
}

SymbolId Theory::find_symbol(const std::string& name, int arity) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].arity == arity && symbols[i].name == name)
      return static_cast<SymbolId>(i);
  return kNoSymbol;
}

SymbolId Theory::find_symbol(const std::string& name, int arity,
                             const std::vector<SortId>& arg_kinds) const {
  for (size_t i = 0; i < symbols.size(); ++i) {
    const Symbol& s = symbols[i];
    if (s.arity != arity || s.name != name) continue;
    bool ok = true;
    for (int k = 0; k < arity; ++k)
      if (s.arg_kinds[k] != arg_kinds[k]) ok = false;
    if (ok) return static_cast<SymbolId>(i);
  }
  return kNoSymbol;
}

std::vector<SymbolId> Theory::candidates(const std::string& name, int arity) const {
  std::vector<SymbolId> out;
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].arity == arity && symbols[i].name == name)
      out.push_back(static_cast<SymbolId>(i));
  return out;
}

Term Theory::identity_term(SymbolId s) const {
  const Symbol& sym = symbols.at(s);
  if (!sym.ax.has_identity) throw TheoryError("no identity for " + sym.name);
  return constant(sym.ax.identity);
}

bool Theory::is_identity_of(SymbolId s, const Term& t) const {
  const Symbol& sym = symbols.at(s);
  return sym.ax.has_identity && t.is_app() && t.sym() == sym.ax.identity &&
         t.args().empty();
}

SortId Theory::fold_sort(SymbolId s, SortId acc, SortId next) const {
  const Symbol& sym = symbols[s];
  SortId best = kNoSort;
  for (const OpDecl& d : sym.decls) {
    if (sorts.leq(acc, d.args[0]) && sorts.leq(next, d.args[1])) {
      if (best == kNoSort || sorts.leq(d.result, best)) best = d.result;
    }
  }
  return best == kNoSort ? sym.result_kind : best;
}

SortId Theory::app_sort(SymbolId s, const std::vector<Term>& args) const {
  const Symbol& sym = symbols[s];
  if (sym.internal) return sym.result_kind;
  if (sym.ax.assoc && args.size() > 2) {
    SortId acc = args[0].least_sort();
    for (size_t i = 1; i < args.size(); ++i) acc = fold_sort(s, acc, args[i].least_sort());
    return acc;
  }
  SortId best = kNoSort;
  for (const OpDecl& d : sym.decls) {
    bool ok = true;
    for (size_t i = 0; i < args.size(); ++i)
      if (!sorts.leq(args[i].least_sort(), d.args[i])) ok = false;
    if (ok && (best == kNoSort || sorts.leq(d.result, best))) best = d.result;
  }
  if (best != kNoSort) return best;
  // kind-level application: arguments must at least fit the kinds
  for (size_t i = 0; i < args.size(); ++i) {
    if (!sorts.same_kind(sorts.kind_of(args[i].least_sort()), sym.arg_kinds[i]))
      throw SignatureError("argument " + std::to_string(i + 1) + " of " + sym.name +
                           " is in the wrong kind");
  }
  return sym.result_kind;
}

Term Theory::raw_app(SymbolId s, std::vector<Term> args) const {
  const Symbol& sym = symbols.at(s);
  if (static_cast<int>(args.size()) != sym.arity && !(sym.ax.assoc && args.size() > 2))
    throw SignatureError("arity mismatch for " + sym.name);
  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::App;
  n->sym = s;
  n->args = std::move(args);
  n->least_sort = app_sort(s, n->args);
  n->canonical = false;
  size_t h = hash_mix(0xa5a5, static_cast<size_t>(s));
  for (auto& a : n->args) h = hash_mix(h, a.hash());
  n->hash = h;
  return Term(std::move(n));
}

Term Theory::app(SymbolId s, std::vector<Term> args) const {
  const Symbol& sym = symbols.at(s);
  if (static_cast<int>(args.size()) != sym.arity && !(sym.ax.assoc && args.size() > 2))
    throw SignatureError("arity mismatch for " + sym.name);

  if (sym.ax.assoc) {
    std::vector<Term> flat;
    flat.reserve(args.size());
    for (auto& a : args) {
      if (a.is_app() && a.sym() == s) {
        for (auto& b : a.args()) flat.push_back(b);
      } else {
        flat.push_back(a);
      }
    }
    args = std::move(flat);
  }
  if (sym.ax.has_identity) {
    std::vector<Term> kept;
    kept.reserve(args.size());
    for (auto& a : args)
      if (!is_identity_of(s, a)) kept.push_back(a);
    args = std::move(kept);
    if (args.empty()) return identity_term(s);
    if (args.size() == 1 && sym.ax.assoc) return args[0];
  }
  if (sym.ax.comm) {
    std::stable_sort(args.begin(), args.end(),
                     [](const Term& x, const Term& y) { return compare(x, y) < 0; });
  }

  auto n = std::make_shared<Term::Node>();
  n->kind = Term::Kind::App;
  n->sym = s;
  n->args = std::move(args);
  n->least_sort = app_sort(s, n->args);
  n->canonical = true;
  size_t h = hash_mix(0xa5a5, static_cast<size_t>(s));
  for (auto& a : n->args) h = hash_mix(h, a.hash());
  n->hash = h;
  return Term(std::move(n));
}

void Theory::check_preregular() const {
  for (const Symbol& s : symbols) {
    for (const OpDecl& d1 : s.decls) {
      SortId least = kNoSort;
      int applicable = 0;
      for (const OpDecl& d2 : s.decls) {
        bool fits = true;
        for (size_t i = 0; i < d1.args.size(); ++i)
          if (!sorts.leq(d1.args[i], d2.args[i])) fits = false;
        if (!fits) continue;
        ++applicable;
        if (least == kNoSort || sorts.leq(d2.result, least)) least = d2.result;
      }
      for (const OpDecl& d2 : s.decls) {
        bool fits = true;
        for (size_t i = 0; i < d1.args.size(); ++i)
          if (!sorts.leq(d1.args[i], d2.args[i])) fits = false;
        if (fits && !sorts.leq(least, d2.result))
          throw TheoryError("operator " + s.name + " is not preregular");
      }
      (void)applicable;
    }
  }
}

// ---------------------------------------------------------------------------
// Spec-level operations

SortId least_sort(const Theory& th, const Term& t) {
  if (t.is_num()) {
    SortId s = t.num_is_real() ? th.real_sort : th.integer_sort;
    if (s == kNoSort) throw SignatureError("numeric literal without REAL-INTEGER");
    return s;
  }
  return t.least_sort();
}

Term b_canonical(const Theory& th, const Term& t) {
  if (t.null() || !t.is_app()) return t;
  if (t.canonical()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (auto& a : t.args()) args.push_back(b_canonical(th, a));
  return th.app(t.sym(), std::move(args));
}

bool b_equal(const Theory& th, const Term& a, const Term& b) {
  return identical(b_canonical(th, a), b_canonical(th, b));
}

Term apply(const Theory& th, const Term& t, const Subst& s) {
  switch (t.kind()) {
    case Term::Kind::Num: return t;
    case Term::Kind::Var: {
      const Term* bound = s.find({t.var_name(), t.var_sort()});
      return bound ? *bound : t;
    }
    case Term::Kind::App: {
      if (s.empty()) return b_canonical(th, t);
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (auto& a : t.args()) args.push_back(apply(th, a, s));
      return th.app(t.sym(), std::move(args));
    }
  }
  return t;
}

Subst compose(const Theory& th, const Subst& s, const Subst& t) {
  Subst out;
  for (auto& [v, term] : s) {
    Term r = apply(th, term, t);
    if (!(r.is_var() && r.var_name() == v.name && r.var_sort() == v.sort))
      out.bind(v, r);
  }
  for (auto& [v, term] : t) {
    if (!s.find(v)) out.bind(v, term);
  }
  return out;
}

Subst restrict_to(const Subst& s, const VarSet& vars) {
  Subst out;
  for (auto& [v, t] : s)
    if (vars.count(v)) out.bind(v, t);
  return out;
}

bool subst_equal(const Theory& th, const Subst& a, const Subst& b, const VarSet& over) {
  for (auto& v : over) {
    const Term* ta = a.find(v);
    const Term* tb = b.find(v);
    Term va = ta ? *ta : Term::make_var(v.name, v.sort);
    Term vb = tb ? *tb : Term::make_var(v.name, v.sort);
    if (!b_equal(th, va, vb)) return false;
  }
  return true;
}

Term fresh_var(SortId sort, FreshCounter& c) {
  return Term::make_var("$" + std::to_string(c.next++), sort);
}

std::pair<Term, Subst> fresh_rename(const Theory& th, const Term& t, FreshCounter& c) {
  Subst ren;
  VarSet vs = vars_of(t);
  for (auto& v : vs) ren.bind(v, fresh_var(v.sort, c));
  return {apply(th, t, ren), ren};
}

Rule fresh_rename_rule(const Theory& th, const Rule& r, FreshCounter& c) {
  VarSet vs = vars_of(r.lhs);
  collect_vars(r.rhs, vs);
  if (!r.condition.null()) collect_vars(r.condition, vs);
  Subst ren;
  for (auto& v : vs) ren.bind(v, fresh_var(v.sort, c));
  Rule out = r;
  out.lhs = apply(th, r.lhs, ren);
  out.rhs = apply(th, r.rhs, ren);
  if (!r.condition.null()) out.condition = apply(th, r.condition, ren);
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool atomic_for_print(const Term& t) {
  return t.is_var() || t.is_num() || (t.is_app() && t.args().empty());
}

void print_rec(const Theory& th, const Term& t, std::ostream& os, bool parens) {
  if (t.is_num()) {
    const Rational& r = t.num_value();
    os << r.num;
    if (t.num_is_real()) os << "/" << r.den;
    return;
  }
  if (t.is_var()) {
    os << t.var_name() << ":" << th.sorts.name(t.var_sort());
    return;
  }
  const Symbol& sym = th.symbols[t.sym()];
  if (t.args().empty()) {
    os << sym.name;
    return;
  }
  bool mixfix = sym.name.find('_') != std::string::npos;
  if (!mixfix) {
    os << sym.name << "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) os << ",";
      print_rec(th, t.args()[i], os, false);
    }
    os << ")";
    return;
  }
  // Mixfix: interleave name fragments with arguments. Associative symbols may
  // carry more than two flattened arguments; repeat the separator.
  size_t holes = static_cast<size_t>(std::count(sym.name.begin(), sym.name.end(), '_'));
  if (parens) os << "(";
  if (sym.ax.assoc && t.args().size() > holes) {
    std::string sep = sym.name.substr(1, sym.name.size() - 2);  // "_,_" -> ","
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) {
        if (sep.empty())
          os << " ";
        else
          os << (isalnum(static_cast<unsigned char>(sep[0])) ? " " + sep + " " : sep + " ");
      }
      print_rec(th, t.args()[i], os, !atomic_for_print(t.args()[i]));
    }
  } else {
    size_t arg = 0;
    std::string pending;
    for (size_t i = 0; i < sym.name.size(); ++i) {
      char ch = sym.name[i];
      if (ch == '`') continue;
      if (ch == '_') {
        if (!pending.empty()) {
          os << pending << " ";
          pending.clear();
        } else if (arg > 0 && i > 0) {
          os << " ";
        }
        print_rec(th, t.args()[arg], os, !atomic_for_print(t.args()[arg]));
        ++arg;
      } else {
        if (pending.empty() && i > 0 && sym.name[i - 1] == '_') pending = " ";
        pending += ch;
      }
    }
    if (!pending.empty()) os << pending;
  }
  if (parens) os << ")";
}

}  // namespace

std::string print_term(const Theory& th, const Term& t) {
  std::ostringstream os;
  print_rec(th, t, os, false);
  return os.str();
}

std::string print_subst(const Theory& th, const Subst& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [v, t] : s) {
    if (!first) os << ", ";
    first = false;
    os << v.name << ":" << th.sorts.name(v.sort) << " -> " << print_term(th, t);
  }
  os << "}";
  return os.str();
}

}  // namespace narrow
