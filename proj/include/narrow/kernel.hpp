#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace narrow {

using SortId = int32_t;
using SymbolId = int32_t;
constexpr SortId kNoSort = -1;
constexpr SymbolId kNoSymbol = -1;

struct TheoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SignatureError : TheoryError {
  using TheoryError::TheoryError;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Poset of sorts with one top sort per connected component. finalize()
// computes the reflexive-transitive closure and appends one kind sort
// "[Top]" above each component's top.
class SortGraph {
public:
  SortId add_sort(const std::string& name);
  void add_subsort(const std::string& lo, const std::string& hi);
  void finalize();

  SortId id(const std::string& name) const;
  const std::string& name(SortId s) const { return names_.at(s); }
  bool leq(SortId a, SortId b) const;
  SortId glb(SortId a, SortId b) const;  // sorts form a tree: comparable or disjoint
  SortId kind_of(SortId s) const { return kind_of_.at(s); }
  bool is_kind(SortId s) const { return kind_of_.at(s) == s; }
  bool same_kind(SortId a, SortId b) const { return kind_of(a) == kind_of(b); }
  SortId top_of(SortId s) const { return top_of_.at(s); }
  size_t size() const { return names_.size(); }
  bool finalized() const { return finalized_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, SortId> index_;
  std::vector<std::pair<SortId, SortId>> edges_;  // (lower, upper)
  std::vector<std::vector<bool>> leq_;
  std::vector<SortId> kind_of_;
  std::vector<SortId> top_of_;
  bool finalized_ = false;
};

// Small exact rational for numeric literals. The SMT solver uses arbitrary
// precision internally; literals in theory files stay well within range.
struct Rational {
  long long num = 0;
  long long den = 1;
  Rational() = default;
  Rational(long long n, long long d = 1);
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  std::string str() const;
};

struct Axioms {
  bool assoc = false;
  bool comm = false;
  bool has_identity = false;
  SymbolId identity = kNoSymbol;  // identity element is a constant symbol
};

struct OpDecl {
  std::vector<SortId> args;
  SortId result = kNoSort;
};

struct Symbol {
  std::string name;  // mixfix name as declared, e.g. "__", "_*_", "<_>"
  int arity = 0;
  std::vector<OpDecl> decls;  // subsort overloads, same kind signature
  std::vector<SortId> arg_kinds;
  SortId result_kind = kNoSort;
  Axioms ax;
  bool ctor = false;
  bool internal = false;  // engine-internal (pair/tuple); bypasses sort checks
};

class Theory;

class Term {
public:
  enum class Kind : uint8_t { Var, App, Num };

  Term() = default;
  static Term make_var(const std::string& name, SortId sort);
  static Term make_num(Rational r, bool is_real);

  bool null() const { return !node_; }
  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_num() const { return kind() == Kind::Num; }

  const std::string& var_name() const;
  SortId var_sort() const;
  SymbolId sym() const;
  const std::vector<Term>& args() const;
  const Rational& num_value() const;
  bool num_is_real() const;

  SortId least_sort() const;  // memoized at construction
  bool canonical() const;
  size_t hash() const;
  bool same_node(const Term& o) const { return node_ == o.node_; }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class Theory;
};

// Total order used for canonical argument sorting: numbers, then variables
// ordered by (family, index, sort name), then applications by
// (symbol name, arity, args lexicographically).
int compare(const Term& a, const Term& b);
bool identical(const Term& a, const Term& b);

struct Var {
  std::string name;
  SortId sort = kNoSort;
  bool operator<(const Var& o) const {
    return name != o.name ? name < o.name : sort < o.sort;
  }
  bool operator==(const Var& o) const { return name == o.name && sort == o.sort; }
};
using VarSet = std::set<Var>;

void collect_vars(const Term& t, VarSet& out);
VarSet vars_of(const Term& t);
bool contains_var(const Term& t, const Var& v);
bool is_fresh_family(const std::string& var_name);  // reserved '$' family

class Subst {
public:
  Subst() = default;
  void bind(const Var& v, Term t) { m_[v] = std::move(t); }
  const Term* find(const Var& v) const;
  bool empty() const { return m_.empty(); }
  size_t size() const { return m_.size(); }
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }
  void erase(const Var& v) { m_.erase(v); }
  VarSet domain() const;
  VarSet range_vars() const;

private:
  std::map<Var, Term> m_;
};

struct Equation {
  std::string label;
  Term lhs, rhs;
  bool variant = false;
};

struct Rule {
  std::string label;
  Term lhs, rhs;
  Term condition;  // null when unconditional; shape "phi = true" keeps phi here
  bool narrowing = false;
  bool nonexec = false;
};

class Theory {
public:
  SortGraph sorts;
  std::vector<Symbol> symbols;
  std::vector<Equation> equations;
  std::vector<Rule> rules;
  SortId state_sort = kNoSort;

  // Built-in SMT signature handles (kNoSort / kNoSymbol when absent).
  SortId boolean_sort = kNoSort;  // SMT Boolean
  SortId integer_sort = kNoSort;
  SortId real_sort = kNoSort;
  SortId bool_sort = kNoSort;  // TRUTH-VALUE Bool
  SymbolId sym_true = kNoSymbol, sym_false = kNoSymbol;
  SymbolId sym_and = kNoSymbol, sym_or = kNoSymbol, sym_not = kNoSymbol;
  SymbolId sym_guard = kNoSymbol;  // _>>_ added by the rule transformation

  SymbolId add_symbol(const std::string& name, const std::vector<SortId>& args,
                      SortId result, Axioms ax = {}, bool ctor = false);
  SymbolId find_symbol(const std::string& name, int arity) const;
  SymbolId find_symbol(const std::string& name, int arity,
                       const std::vector<SortId>& arg_kinds) const;
  std::vector<SymbolId> candidates(const std::string& name, int arity) const;

  Term constant(SymbolId s) const { return app(s, {}); }
  Term app(SymbolId s, std::vector<Term> args) const;      // canonical form
  Term raw_app(SymbolId s, std::vector<Term> args) const;  // uncanonicalized

  Term identity_term(SymbolId s) const;
  bool is_identity_of(SymbolId s, const Term& t) const;

  void check_preregular() const;

private:
  SortId fold_sort(SymbolId s, SortId acc, SortId next) const;
  SortId app_sort(SymbolId s, const std::vector<Term>& args) const;
  friend SortId least_sort(const Theory&, const Term&);
};

SortId least_sort(const Theory& th, const Term& t);
Term b_canonical(const Theory& th, const Term& t);
bool b_equal(const Theory& th, const Term& a, const Term& b);
Term apply(const Theory& th, const Term& t, const Subst& s);
Subst compose(const Theory& th, const Subst& s, const Subst& t);
Subst restrict_to(const Subst& s, const VarSet& vars);
bool subst_equal(const Theory& th, const Subst& a, const Subst& b, const VarSet& over);

// Fresh '$'-family variable generation; search-local state.
struct FreshCounter {
  long long next = 0;
};
Term fresh_var(SortId sort, FreshCounter& c);
std::pair<Term, Subst> fresh_rename(const Theory& th, const Term& t, FreshCounter& c);
Rule fresh_rename_rule(const Theory& th, const Rule& r, FreshCounter& c);

// Debug/report printing; mixfix-aware (underscores in symbol names).
std::string print_term(const Theory& th, const Term& t);
std::string print_subst(const Theory& th, const Subst& s);

}  // namespace narrow
