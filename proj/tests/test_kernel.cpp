#include "doctest.h"
#include "helpers.hpp"

using namespace narrow;
using testutil::Vending;
using testutil::XorTheory;

TEST_CASE("least sorts over the vending signature") {
  Vending v(false);
  CHECK(least_sort(v.th, v.quarter_t()) == v.coin);
  CHECK(least_sort(v.th, v.marking_of({v.dollar_t(), v.quarter_t()})) == v.money);
  CHECK(least_sort(v.th, v.marking_of({v.apple_t(), v.quarter_t()})) == v.marking);
  CHECK(least_sort(v.th, v.state_of({v.dollar_t()})) == v.state);
}

TEST_CASE("signature errors") {
  Vending v(false);
  CHECK_THROWS_AS(v.th.app(v.wrap, {v.dollar_t(), v.dollar_t()}), SignatureError);
  // state in money position: kind mismatch
  CHECK_THROWS_AS(v.th.app(v.cat, {v.state_of({v.dollar_t()}), v.dollar_t()}),
                  SignatureError);
}

TEST_CASE("b_canonical flattens, strips identities, sorts commutative arguments") {
  Vending v(false);
  Term a = v.apple_t(), c = v.coffee_t(), q = v.quarter_t();
  Term nested = v.th.raw_app(v.cat, {v.th.raw_app(v.cat, {a, q}), c});
  Term flat = b_canonical(v.th, nested);
  CHECK(flat.args().size() == 3);

  Term m = Term::make_var("M", v.money);
  Term with_id = v.th.raw_app(v.cat, {m, v.th.constant(v.empty)});
  CHECK(identical(b_canonical(v.th, with_id), m));

  Term ca = v.marking_of({c, a});
  Term ac = v.marking_of({a, c});
  CHECK(identical(ca, ac));
}

TEST_CASE("b_equal examples") {
  Vending v(false);
  Term d = v.dollar_t(), q = v.quarter_t();
  CHECK(b_equal(v.th, v.marking_of({d, q, q}), v.marking_of({q, d, q})));
  CHECK_FALSE(b_equal(v.th, v.marking_of({d, q}), v.marking_of({d, q, q})));
  // change is an E-equation, not an axiom
  CHECK_FALSE(b_equal(v.th, v.marking_of({q, q, q, q}), d));
}

TEST_CASE("apply examples") {
  Vending v(false);
  Term m1 = Term::make_var("M1", v.money);
  Term m2 = Term::make_var("M2", v.money);
  Subst s;
  s.bind({"M1", v.money}, v.marking_of({v.dollar_t(), m2}));
  Term applied = apply(v.th, v.th.app(v.wrap, {m1}), s);
  CHECK(identical(applied, v.state_of({v.dollar_t(), m2})));

  Term t = v.state_of({v.dollar_t(), m1});
  CHECK(identical(apply(v.th, t, Subst{}), b_canonical(v.th, t)));

  XorTheory x;
  Term na = x.th.app(x.n, {x.th.constant(x.a), x.th.constant(x.r2)});
  Term X = Term::make_var("X", x.xorkind);
  Subst sx;
  sx.bind({"X", x.xorkind}, na);
  Term prod = apply(x.th, x.th.app(x.star, {X, na}), sx);
  // homomorphic application only: no E-simplification here
  CHECK(identical(prod, x.th.app(x.star, {na, na})));
}

TEST_CASE("compose and restrict") {
  Vending v(false);
  Term m2 = Term::make_var("M2", v.money);
  Term m3 = Term::make_var("M3", v.money);
  Subst s1, s2;
  s1.bind({"M1", v.money}, v.marking_of({v.dollar_t(), m2}));
  s2.bind({"M2", v.money}, v.marking_of({v.dollar_t(), m3}));
  Subst c = compose(v.th, s1, s2);
  CHECK(identical(*c.find({"M1", v.money}),
                  v.marking_of({v.dollar_t(), v.dollar_t(), m3})));
  CHECK(identical(*c.find({"M2", v.money}), v.marking_of({v.dollar_t(), m3})));

  Subst ident;
  Subst c2 = compose(v.th, s1, ident);
  CHECK(subst_equal(v.th, c2, s1, s1.domain()));

  VarSet only_m1{{"M1", v.money}};
  Subst r = restrict_to(c, only_m1);
  CHECK(r.size() == 1);
  CHECK(r.find({"M1", v.money}));
}

TEST_CASE("fresh renaming") {
  Vending v(false);
  FreshCounter fc;
  Term m1 = Term::make_var("M1", v.money);
  auto [rt, ren] = fresh_rename(v.th, v.th.app(v.wrap, {m1}), fc);
  CHECK(rt.args()[0].is_var());
  CHECK(is_fresh_family(rt.args()[0].var_name()));
  CHECK(rt.args()[0].var_sort() == v.money);

  // same variable renamed consistently within one call
  Rule r = v.th.rules[0];
  Rule rr = fresh_rename_rule(v.th, r, fc);
  VarSet lv = vars_of(rr.lhs), rv = vars_of(rr.rhs);
  CHECK(lv == rv);
  CHECK(lv.size() == 1);

  // two successive calls never produce the same name
  auto [t1, ren1] = fresh_rename(v.th, m1, fc);
  auto [t2, ren2] = fresh_rename(v.th, m1, fc);
  CHECK_FALSE(identical(t1, t2));
}

namespace {
// random markings over {$ q c a} with optional variables
Term random_marking(const Vending& v, std::mt19937& g, int max_len, bool ground) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> pick(0, ground ? 3 : 4);
  std::vector<Term> parts;
  int n = len(g);
  for (int i = 0; i < n; ++i) {
    switch (pick(g)) {
      case 0: parts.push_back(v.dollar_t()); break;
      case 1: parts.push_back(v.quarter_t()); break;
      case 2: parts.push_back(v.coffee_t()); break;
      case 3: parts.push_back(v.apple_t()); break;
      default:
        parts.push_back(Term::make_var("V" + std::to_string(i % 3), v.marking));
        break;
    }
  }
  return v.marking_of(std::move(parts));
}
}  // namespace

TEST_CASE("b_canonical is idempotent and a congruence; AC equality is multiset equality") {
  Vending v(false);
  auto& g = testutil::rng();
  for (int i = 0; i < 1000; ++i) {
    Term t = random_marking(v, g, 6, false);
    CHECK(identical(b_canonical(v.th, t), t));  // construction is canonical

    // multiset-equality oracle for AC/ACU
    Term u = random_marking(v, g, 6, false);
    std::multiset<std::string> mt, mu;
    auto flatten = [&](const Term& x, std::multiset<std::string>& out) {
      if (x.is_app() && x.sym() == v.cat) {
        for (auto& a : x.args()) out.insert(print_term(v.th, a));
      } else if (!(x.is_app() && x.sym() == v.empty)) {
        out.insert(print_term(v.th, x));
      }
    };
    flatten(t, mt);
    flatten(u, mu);
    CHECK(b_equal(v.th, t, u) == (mt == mu));

    // congruence
    if (b_equal(v.th, t, u)) {
      CHECK(b_equal(v.th, v.th.app(v.wrap, {t}), v.th.app(v.wrap, {u})));
    }
  }
}

TEST_CASE("apply distributes over compose; least_sort monotone under substitution") {
  Vending v(false);
  auto& g = testutil::rng();
  for (int i = 0; i < 500; ++i) {
    Term t = random_marking(v, g, 5, false);
    Subst s1, s2;
    s1.bind({"V0", v.marking}, random_marking(v, g, 3, false));
    s2.bind({"V1", v.marking}, random_marking(v, g, 3, true));
    CHECK(b_equal(v.th, apply(v.th, t, compose(v.th, s1, s2)),
                  apply(v.th, apply(v.th, t, s1), s2)));

    SortId before = least_sort(v.th, t);
    SortId after = least_sort(v.th, apply(v.th, t, compose(v.th, s1, s2)));
    CHECK(v.th.sorts.leq(after, before));
  }
}
