#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "fcs/catalog.hpp"
#include "fcs/dioph.hpp"
#include "fcs/error.hpp"
#include "fcs/membership.hpp"
#include "fcs/parser.hpp"

using namespace fcs;
using namespace fcs::dioph;

namespace {

Term T(const char* s) { return parse_term(s, Signature::L_int); }
Polynomial P(const char* s) { return term_to_polynomial(T(s)); }

bool compiled_member(const TransformReport& rep, const Int& a, const Int& B) {
  return solve_bounded(rep.form(), {a}, rep.bound_map(B), rep.search_form ? &*rep.search_form : nullptr).has_value();
}

bool def_member(const TransformReport& rep, const Int& a, const Int& B) {
  MembershipOptions o;
  if (rep.search_form) o.search_form = &*rep.search_form;
  return membership_bounded(rep.definition(), {a}, rep.bound_map(B), o).member();
}

void expect_chained(const TransformReport& rep, const std::string& input) {
  ASSERT_FALSE(rep.steps.empty());
  EXPECT_EQ(rep.steps.front().before, input);
  for (std::size_t i = 0; i + 1 < rep.steps.size(); ++i) EXPECT_EQ(rep.steps[i].after, rep.steps[i + 1].before);
  EXPECT_EQ(rep.steps.back().after, rep.output_text());
}

}  // namespace

TEST(StrictLt, Shapes) {
  auto b = strict_lt_to_eq(Atom::lt(T("x"), T("y")), Signature::L_int, {"x", "y"});
  EXPECT_EQ(b.zs, (std::vector<std::string>{"z1", "z2", "z3", "z4"}));
  EXPECT_EQ(b.eq, Atom::eq(T("y - x"), T("z1*z1 + z2*z2 + z3*z3 + z4*z4 + 1")));
  auto n = strict_lt_to_eq(Atom::lt(T("x"), T("y")), Signature::Lminus_nat, {"x", "y", "z1"});
  EXPECT_EQ(n.zs[0], "z1'");
  EXPECT_FALSE(n.eq.lhs.uses_minus() || n.eq.rhs.uses_minus());
  EXPECT_THROW(strict_lt_to_eq(Atom::eq(T("x"), T("y")), Signature::L_int, {}), Error);
}

TEST(StrictLt, ClosedExamples) {
  auto sat = [](const char* l, const char* r) {
    auto b = strict_lt_to_eq(Atom::lt(T(l), T(r)), Signature::L_int, {});
    for (int z1 = 0; z1 <= 3; ++z1)
      for (int z2 = 0; z2 <= 3; ++z2)
        for (int z3 = 0; z3 <= 3; ++z3)
          for (int z4 = 0; z4 <= 3; ++z4)
            if (eval_atom(b.eq, {{"z1", z1}, {"z2", z2}, {"z3", z3}, {"z4", z4}})) return true;
    return false;
  };
  EXPECT_TRUE(sat("0", "1"));
  EXPECT_FALSE(sat("5", "3"));
  EXPECT_TRUE(sat("3", "40"));
}

TEST(StrictLt, SemanticsOverBox) {
  // x < y iff the block has a witness within the mapped bound.
  auto b = strict_lt_to_eq(Atom::lt(T("x*x"), T("y")), Signature::L_int, {"x", "y"});
  const int B = 4;
  Int Bz = b.bound_map(B);
  for (int x = -B; x <= B; ++x)
    for (int y = -B; y <= B; ++y) {
      search::Problem p;
      p.vars = b.zs;
      p.fixed = {{"x", x}, {"y", y}};
      p.constraints = atom_constraints({b.eq});
      EXPECT_EQ(search::first_solution(p, Bz).has_value(), x * x < y) << x << " " << y;
    }
}

TEST(Conjunction, Examples) {
  EXPECT_EQ(conjunction_to_single({P("a"), P("b")}), P("a*a + b*b"));
  EXPECT_EQ(conjunction_to_single({P("h")}), P("h*h"));
  Polynomial q = conjunction_to_single({P("x - 1"), P("x + 1")});
  EXPECT_EQ(q, P("2*x*x + 2"));
  for (int x = -10; x <= 10; ++x) EXPECT_NE(q.eval({{"x", x}}), 0);
  EXPECT_THROW(conjunction_to_single({}), Error);
}

TEST(Conjunction, SumOfSquaresLaw) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> val(-3, 3), len(1, 5);
  for (int i = 0; i < 1000; ++i) {
    int n = len(rng);
    Int s = 0;
    bool all_zero = true;
    for (int k = 0; k < n; ++k) {
      int a = i % 3 == 0 ? 0 : val(rng);
      s += a * a;
      all_zero = all_zero && a == 0;
    }
    EXPECT_EQ(s == 0, all_zero);
  }
}

TEST(Compile, EvenGivesSquare) {
  const auto& even = catalog_entry("even").def;
  auto rep = compile_to_diophantine(even);
  const auto& f = rep.form();
  EXPECT_EQ(f.params, std::vector<std::string>{"y1"});
  EXPECT_EQ(f.existentials, std::vector<std::string>{"n"});
  EXPECT_EQ(f.poly, P("(y1 - 2*n)*(y1 - 2*n)"));
  expect_chained(rep, to_string(even));
  for (int y = -20; y <= 20; ++y) EXPECT_EQ(compiled_member(rep, y, 20), y % 2 == 0) << y;
  // Without the search form the literal H gives the same answers.
  for (int y = -6; y <= 6; ++y) EXPECT_EQ(solve_bounded(f, {y}, 6).has_value(), y % 2 == 0);
}

TEST(Compile, FullRelation) {
  auto rep = compile_to_diophantine(parse_definition("def all/1 over L bound x1 out x1"));
  EXPECT_EQ(rep.form().poly, P("(y1 - x1)*(y1 - x1)"));
  for (int y = -5; y <= 5; ++y) EXPECT_TRUE(compiled_member(rep, y, 5));
}

TEST(Compile, StrictLessThan) {
  auto def = parse_definition("def lt/2 over L bound a, b out a, b where a < b");
  auto rep = compile_to_diophantine(def);
  EXPECT_EQ(rep.form().existentials.size(), def.bound_vars.size() + 4);
  const int B = 10;
  for (int a = -B; a <= B; ++a)
    for (int b = -B; b <= B; ++b) {
      auto w = solve_bounded(rep.form(), {a, b}, rep.bound_map(B), &*rep.search_form);
      ASSERT_EQ(w.has_value(), a < b) << a << " " << b;
    }
  EXPECT_THROW(compile_to_diophantine(parse_definition("def bad/1 over L bound x out y")), Error);
}

TEST(Report, TextAndJson) {
  auto rep = compile_to_diophantine(parse_definition("def lt/2 over L bound a, b out a, b where a < b"));
  std::string text = to_text(rep);
  EXPECT_NE(text.find("strict inequality to four squares (subtraction form)"), std::string::npos);
  auto j = nlohmann::json::parse(to_json(rep));
  EXPECT_EQ(j["schema"], "fcs/1");
  EXPECT_EQ(j["steps"].size(), rep.steps.size());
  EXPECT_EQ(j["output"], rep.output_text());
}

TEST(FourSquare, Examples) {
  EXPECT_EQ(four_square_decompose(0), (std::array<Int, 4>{0, 0, 0, 0}));
  EXPECT_EQ(four_square_decompose(7), (std::array<Int, 4>{2, 1, 1, 1}));
  auto q = four_square_decompose(100000);
  EXPECT_EQ(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3], 100000);
  EXPECT_THROW(four_square_decompose(-1), Error);
  Int big("1000000000000000000000000000007");
  auto b = four_square_decompose(big);
  EXPECT_EQ(b[0] * b[0] + b[1] * b[1] + b[2] * b[2] + b[3] * b[3], big);
}

TEST(FourSquare, SmallRangeSortedAndExact) {
  for (int n = 0; n <= 3000; ++n) {
    auto q = four_square_decompose(n);
    ASSERT_EQ(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3], n);
    ASSERT_TRUE(q[0] >= q[1] && q[1] >= q[2] && q[2] >= q[3] && q[3] >= 0);
  }
}

TEST(IntToNat, EvenMatchesParity) {
  const auto& even = catalog_entry("even").def;
  auto rep = int_to_nat(even);
  const auto& d = rep.definition();
  EXPECT_EQ(d.signature, Signature::Lminus_nat);
  EXPECT_TRUE(validate_fcs_shape(d).empty());
  expect_chained(rep, to_string(even));
  for (int a = 0; a <= 50; ++a) EXPECT_EQ(def_member(rep, a, 50), a % 2 == 0) << a;
  // The literal atom without the search form agrees on a smaller range.
  for (int a = 0; a <= 12; ++a) EXPECT_EQ(membership_bounded(d, {a}, rep.bound_map(12)).member(), a % 2 == 0);
}

TEST(IntToNat, NoBoundVariables) {
  auto rep = int_to_nat(parse_definition("def three/1 over L bound out 3"));
  const auto& st = rep.steps[rep.steps.size() - 2];
  EXPECT_EQ(st.notes[0], "2 sign instances over 1 variables");
  for (int a = 0; a <= 6; ++a) EXPECT_EQ(def_member(rep, a, 6), a == 3);
}

TEST(IntToNat, ZeroOnly) {
  auto rep = int_to_nat(parse_definition("def zero/1 over L bound x out x where x = 0"));
  for (int a = 0; a <= 10; ++a) EXPECT_EQ(membership_bounded(rep.definition(), {a}, rep.bound_map(10)).member(), a == 0);
}

TEST(IntToNat, OutputSignOption) {
  // Only -1, -2, ... are in the source; sign-expanding the output variable
  // makes 1 a member of the translation.
  auto def = parse_definition("def neg/1 over L bound x out x where x < 0");
  auto with = int_to_nat(def);
  IntToNatOptions off;
  off.expand_output_sign = false;
  auto without = int_to_nat(def, off);
  EXPECT_TRUE(def_member(with, 1, 3));
  EXPECT_FALSE(def_member(without, 1, 3));
  EXPECT_FALSE(def_member(without, 0, 3));
}

TEST(IntToNat, GuardsSignBlowup) {
  auto def = parse_definition("def big/1 over L bound a, b, c, d, e, f, g, h, i, j, k, l, m out a");
  EXPECT_THROW(int_to_nat(def), Error);
  auto ok = parse_definition("def big/1 over L bound a, b, c, d, e, f, g, h, i, j, k, l out a");
  EXPECT_NO_THROW(int_to_nat(ok));
}

TEST(SignExpansion, LawOnRandomAtoms) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int i = 0; i < 60; ++i) {
    std::vector<std::string> vars = i % 2 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    Polynomial h;
    for (int ex = 0; ex <= 2; ++ex)
      for (int ey = 0; ey + ex <= 2; ++ey) {
        if (ey > 0 && vars.size() == 1) continue;
        Monomial m;
        if (ex) m.push_back({"x", static_cast<unsigned>(ex)});
        if (ey) m.push_back({"y", static_cast<unsigned>(ey)});
        h += Polynomial::monomial(m, coeff(rng));
      }
    auto se = sign_expand(h, vars);
    bool z = false, n = false;
    for (int x = -5; x <= 5; ++x)
      for (int y = -5; y <= 5; ++y) {
        if (vars.size() == 1 && y != 0) continue;
        Valuation v{{"x", x}, {"y", y}};
        z = z || h.eval(v) == 0;
        if (x >= 0 && y >= 0) n = n || se.phi.eval(v) == 0;
      }
    EXPECT_EQ(z, n) << to_string(h);
  }
}

TEST(NatToInt, EvenNat) {
  const auto& even = catalog_entry("even_nat").def;
  auto rep = nat_to_int(even);
  const auto& d = rep.definition();
  EXPECT_EQ(d.out_terms[0], T("2*(n_1*n_1 + n_2*n_2 + n_3*n_3 + n_4*n_4)"));
  EXPECT_EQ(rep.bound_map.expression(), "ceil(sqrt(B))");
  for (int a = 0; a <= 50; ++a) EXPECT_EQ(def_member(rep, a, 50), a % 2 == 0) << a;
  auto none = nat_to_int(parse_definition("def c/1 over Lminus bound out 1 + 1"));
  EXPECT_EQ(none.definition().out_terms, parse_definition("def c/1 over Lminus bound out 1 + 1").out_terms);
  EXPECT_TRUE(none.bound_map.is_identity());
}

TEST(NatToInt, RoundTripsWithIntToNat) {
  const auto& even = catalog_entry("even").def;
  auto first = int_to_nat(even);
  auto second = nat_to_int(first.definition(), &*first.search_form);
  WitnessBoundMap m = first.bound_map.then(second.bound_map);
  for (int a = 0; a <= 30; ++a) {
    MembershipOptions o;
    o.search_form = &*second.search_form;
    EXPECT_EQ(membership_bounded(second.definition(), {a}, m(30), o).member(), a % 2 == 0) << a;
  }
  auto back = int_to_nat(nat_to_int(catalog_entry("even_nat").def).definition());
  for (int a = 0; a <= 30; ++a) EXPECT_EQ(def_member(back, a, 30), a % 2 == 0) << a;
}

TEST(Split, Examples) {
  auto [p1, p2] = split_positive(P("x^2 - 3*x + 2"));
  EXPECT_EQ(p1, P("x^2 + 2"));
  EXPECT_EQ(p2, P("3*x"));
  auto [z1, z2] = split_positive(Polynomial());
  EXPECT_TRUE(z1.is_zero() && z2.is_zero());
  auto [j1, j2] = split_positive(jones_polynomial());
  EXPECT_TRUE(j1.nonnegative_coefficients() && j2.nonnegative_coefficients());
  EXPECT_EQ(j1 - j2, jones_polynomial());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    Valuation v;
    for (const auto& x : jones_variables()) v[x] = std::uniform_int_distribution<int>(0, 20)(rng);
    EXPECT_EQ(jones_value(v), j1.eval(v) - j2.eval(v));
  }
}

TEST(Refute, Examples) {
  auto f = P("x*x + x + 41");
  std::vector<Atom> box{Atom::lt(T("0"), T("x"))};
  auto r = refute_prime_box(f, box);
  EXPECT_EQ(r.kind, Refutation::Kind::CompositeValue);
  EXPECT_EQ(r.point.at("x"), 44);
  EXPECT_EQ(r.value, 2021);
  EXPECT_EQ(r.factor, 43);
  EXPECT_TRUE(r.verify(f, box, search::Domain::Int));

  auto g = P("2*x");
  auto r2 = refute_prime_box(g, box);
  EXPECT_EQ(r2.kind, Refutation::Kind::CompositeValue);
  // d=1, p=2, z=1: the scan lands on x=3, not x=2.
  EXPECT_EQ(r2.point.at("x"), 3);
  EXPECT_EQ(r2.value, 6);
  EXPECT_TRUE(r2.verify(g, box, search::Domain::Int));

  auto h = P("x + y");
  std::vector<Atom> hb{Atom::lt(T("1"), T("y")), Atom::lt(T("y"), T("3"))};
  auto r3 = refute_prime_box(h, hb);
  EXPECT_EQ(r3.point.at("y"), 2);
  EXPECT_TRUE(r3.verify(h, hb, search::Domain::Int));
  EXPECT_EQ(r3.kind, Refutation::Kind::CompositeValue);
}

TEST(Refute, UpperBoundFlipAndErrors) {
  auto f = P("x*x + 1");
  std::vector<Atom> box{Atom::lt(T("x"), T("-3"))};
  auto r = refute_prime_box(f, box);
  EXPECT_TRUE(r.verify(f, box, search::Domain::Int));
  EXPECT_LT(r.point.at("x"), -3);
  EXPECT_THROW(refute_prime_box(P("7"), {}), Error);
  EXPECT_THROW(refute_prime_box(P("x"), {Atom::lt(T("x"), T("0")), Atom::lt(T("0"), T("x"))}), Error);
  EXPECT_THROW(refute_prime_box(P("x"), {Atom::lt(T("x"), T("y"))}), Error);
  RefuteOptions nat;
  nat.domain = search::Domain::Nat;
  auto rn = refute_prime_box(P("x + 2"), {}, nat);
  EXPECT_TRUE(rn.verify(P("x + 2"), {}, search::Domain::Nat));
  RefuteOptions tiny;
  tiny.budget = 1;
  EXPECT_THROW(refute_prime_box(P("x*x + x + 41"), {Atom::lt(T("0"), T("x"))}, tiny), Error);
}

TEST(Refute, CongruenceLaw) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    Polynomial f = P("x*x*y - 3*x + 2*y*y + 5");
    if (i % 2) f = P("2*x*x*x - y + 7");
    Valuation d{{"x", std::uniform_int_distribution<int>(-6, 6)(rng)}, {"y", std::uniform_int_distribution<int>(-6, 6)(rng)}};
    Int p = f.eval(d);
    if (p == 0) continue;
    for (int z = -10; z <= 10; ++z) {
      Valuation q{{"x", d["x"] + p * z}, {"y", d["y"]}};
      EXPECT_EQ(f.eval(q) % p, 0);
    }
  }
}

TEST(Classify, Examples) {
  DiophantineForm h{{"y1"}, {}, P("y1"), Signature::Lminus_nat};
  auto t = zero_pattern_classify(h, 6);
  EXPECT_TRUE(t.consistent);
  EXPECT_EQ(t.patterns[1].in, 1u);  // y1 = 0
  EXPECT_EQ(t.patterns[0].out, 6u);
  EXPECT_NE(t.describe().find("set: {0}"), std::string::npos);

  DiophantineForm zero{{"y1", "y2"}, {"x1"}, Polynomial(), Signature::Lminus_nat};
  auto all = zero_pattern_classify(zero, 3);
  for (const auto& p : all.patterns) EXPECT_EQ(p.out, 0u);

  DiophantineForm mixed{{"y1"}, {"x1"}, P("y1*x1 + x1*x1*y1"), Signature::Lminus_nat};
  EXPECT_TRUE(zero_pattern_classify(mixed, 8).consistent);
  EXPECT_THROW(zero_pattern_classify({{"y1"}, {}, P("y1 - 1"), Signature::Lminus_nat}, 3), Error);
}

TEST(FourSquare, WithinCap) {
  for (int n = 0; n <= 400; ++n)
    for (int cap = 0; cap <= 12; ++cap) {
      bool exists = false;
      for (int a = 0; a <= cap && !exists; ++a)
        for (int b = 0; b <= a && !exists; ++b)
          for (int c = 0; c <= b && !exists; ++c)
            for (int d = 0; d <= c && !exists; ++d) exists = a * a + b * b + c * c + d * d == n;
      auto q = four_square_within(n, cap);
      ASSERT_EQ(q.has_value(), exists) << n << " " << cap;
      if (q) {
        EXPECT_EQ((*q)[0] * (*q)[0] + (*q)[1] * (*q)[1] + (*q)[2] * (*q)[2] + (*q)[3] * (*q)[3], n);
        EXPECT_LE((*q)[0], cap);
      }
    }
  EXPECT_EQ(*four_square_within(16, 4), four_square_decompose(16));
  EXPECT_EQ((*four_square_within(16, 3))[0], 2);
}

TEST(NatToInt, LiftedMembershipMatchesBoxSearch) {
  // Small enough for plain enumeration of the 4n output variables.
  for (const char* text : {"def e/1 over Lminus bound n out n + n", "def s/1 over Lminus bound n out n * n + 1",
                           "def g/1 over Lminus bound n, m out n * m + 1 where m = n + 1"}) {
    auto src = parse_definition(text);
    auto rep = nat_to_int(src);
    ASSERT_TRUE(rep.lifting.has_value());
    for (int B = 0; B <= 2; ++B)
      for (int a = 0; a <= 14; ++a) {
        auto plain = membership_bounded(rep.definition(), {a}, B);
        auto lifted = membership_lifted(rep, {a}, B);
        ASSERT_EQ(plain.member(), lifted.member()) << text << " a=" << a << " B=" << B;
        if (lifted.member()) {
          for (const auto& [v, x] : lifted.witness) EXPECT_LE(abs(x), B);
        }
      }
  }
  auto rep = nat_to_int(parse_definition("def e/1 over Lminus bound n out n + n"));
  rep.output = parse_definition("def e/1 over L bound n_1, n_2, n_3, n_4 out n_1 + n_2");
  EXPECT_THROW(membership_lifted(rep, {2}, 3), Error);
  EXPECT_THROW(membership_lifted(compile_to_diophantine(catalog_entry("even").def), {2}, 3), Error);
}
