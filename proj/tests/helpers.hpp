#pragma once

#include <random>

#include "narrow/kernel.hpp"
#include "narrow/variants.hpp"

// Programmatic corpus theories for unit tests (the parser has its own tests).
namespace testutil {

using namespace narrow;

struct Vending {
  Theory th;
  SymbolId empty, cat, cat_state = kNoSymbol, wrap, dollar, quarter, coffee, apple;
  SortId coin, item, marking, money, state;

  explicit Vending(bool idem) {
    th.sorts.add_sort("Coin");
    th.sorts.add_sort("Item");
    th.sorts.add_sort("Marking");
    th.sorts.add_sort("Money");
    th.sorts.add_sort("State");
    th.sorts.add_subsort("Coin", "Money");
    th.sorts.add_subsort("Money", "Marking");
    th.sorts.add_subsort("Item", "Marking");
    th.sorts.finalize();
    coin = th.sorts.id("Coin");
    item = th.sorts.id("Item");
    marking = th.sorts.id("Marking");
    money = th.sorts.id("Money");
    state = th.sorts.id("State");

    empty = th.add_symbol("empty", {}, money, {}, true);
    Axioms acu;
    acu.assoc = acu.comm = acu.has_identity = true;
    acu.identity = empty;
    cat = th.add_symbol("__", {money, money}, money, acu);
    th.add_symbol("__", {marking, marking}, marking, acu);
    wrap = th.add_symbol("<_>", {marking}, state, {}, true);
    dollar = th.add_symbol("$", {}, coin, {}, true);
    quarter = th.add_symbol("q", {}, coin, {}, true);
    coffee = th.add_symbol("c", {}, item, {}, true);
    apple = th.add_symbol("a", {}, item, {}, true);
    th.state_sort = state;

    auto v = [&](const char* n, SortId s) { return Term::make_var(n, s); };
    Term M = v("M", marking);
    auto mk = [&](std::vector<Term> xs) { return th.app(cat, std::move(xs)); };
    Term d = th.constant(dollar), q = th.constant(quarter);
    Term cc = th.constant(coffee), aa = th.constant(apple);

    th.rules.push_back({"buy-c", th.app(wrap, {mk({M, d})}), th.app(wrap, {mk({M, cc})}),
                        Term{}, true, false});
    th.rules.push_back({"buy-a", th.app(wrap, {mk({M, d})}),
                        th.app(wrap, {mk({M, aa, q})}), Term{}, true, false});
    if (idem) {
      th.equations.push_back({"idem-dollar", mk({d, d, M}), mk({d, M}), true});
      th.equations.push_back({"idem-item-a", mk({aa, aa, M}), mk({aa, M}), true});
      th.equations.push_back({"change", mk({q, q, q, q, M}), mk({d, M}), true});
      th.equations.push_back({"idem-item-c", mk({cc, cc, M}), mk({cc, M}), true});
    } else {
      th.equations.push_back({"change", mk({q, q, q, q, M}), mk({d, M}), true});
    }
    th.check_preregular();
    prepare_equations(th);
  }

  Term dollar_t() const { return th.constant(dollar); }
  Term quarter_t() const { return th.constant(quarter); }
  Term coffee_t() const { return th.constant(coffee); }
  Term apple_t() const { return th.constant(apple); }
  Term marking_of(std::vector<Term> xs) const {
    if (xs.size() == 1) return xs[0];
    if (xs.empty()) return th.constant(empty);
    return th.app(cat, std::move(xs));
  }
  Term state_of(std::vector<Term> xs) const { return th.app(wrap, {marking_of(std::move(xs))}); }
};

struct XorTheory {
  Theory th;
  SymbolId mt, star, n, a, b, c, r1, r2, r3, pk = kNoSymbol;
  SortId xorsort, xorkind, name, nonce, fresh, msg;

  XorTheory() {
    th.sorts.add_sort("XOR");
    th.sorts.add_sort("Name");
    th.sorts.add_sort("Nonce");
    th.sorts.add_sort("Fresh");
    th.sorts.add_sort("Msg");
    th.sorts.add_subsort("Name", "Msg");
    th.sorts.add_subsort("Nonce", "Msg");
    th.sorts.add_subsort("XOR", "Msg");
    th.sorts.add_subsort("Nonce", "XOR");
    th.sorts.finalize();
    xorsort = th.sorts.id("XOR");
    xorkind = th.sorts.kind_of(xorsort);
    name = th.sorts.id("Name");
    nonce = th.sorts.id("Nonce");
    fresh = th.sorts.id("Fresh");
    msg = th.sorts.id("Msg");

    mt = th.add_symbol("mt", {}, xorsort, {}, true);
    Axioms ac;
    ac.assoc = ac.comm = true;
    star = th.add_symbol("_*_", {xorsort, xorsort}, xorsort, ac);
    a = th.add_symbol("a", {}, name, {}, true);
    b = th.add_symbol("b", {}, name, {}, true);
    c = th.add_symbol("c", {}, name, {}, true);
    n = th.add_symbol("n", {name, fresh}, nonce, {}, true);
    pk = th.add_symbol("pk", {name, msg}, msg, {}, true);
    r1 = th.add_symbol("r1", {}, fresh, {}, true);
    r2 = th.add_symbol("r2", {}, fresh, {}, true);
    r3 = th.add_symbol("r3", {}, fresh, {}, true);

    Term X = Term::make_var("X", xorkind);
    Term Z = Term::make_var("Z", xorkind);
    Term mtt = th.constant(mt);
    th.equations.push_back({"idem", th.app(star, {X, X}), mtt, true});
    th.equations.push_back({"idem-Coh", th.app(star, {X, X, Z}), Z, true});
    th.equations.push_back({"id", th.app(star, {X, mtt}), X, true});
    th.check_preregular();
    prepare_equations(th);
  }
};

inline std::mt19937& rng() {
  static std::mt19937 g(20240817u);
  return g;
}

}  // namespace testutil
