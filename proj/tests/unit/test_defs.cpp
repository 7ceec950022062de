#include <gtest/gtest.h>

#include <random>

#include "fcs/bound_map.hpp"
#include "fcs/catalog.hpp"
#include "fcs/error.hpp"
#include "fcs/membership.hpp"
#include "fcs/parser.hpp"

using namespace fcs;

namespace {

// Direct oracles, written independently of the definitions.
bool is_even(int a) { return a % 2 == 0; }
bool is_odd(int a) { return a % 2 != 0; }
bool is_composite(int a) {
  if (a < 4) return false;
  for (int d = 2; d * d <= a; ++d)
    if (a % d == 0) return true;
  return false;
}
bool is_power(int a, int k) {
  for (int x = -200; x <= 200; ++x) {
    long long v = 1;
    for (int i = 0; i < k; ++i) v *= x;
    if (v == a) return true;
  }
  return false;
}
bool is_perfect(int a) {
  if (a <= 0) return false;
  int s = 0;
  for (int d = 1; d < a; ++d)
    if (a % d == 0) s += d;
  return s == a;
}
std::vector<int> sieve_primes(int count) {
  std::vector<int> out;
  for (int n = 2; static_cast<int>(out.size()) < count; ++n) {
    bool p = true;
    for (int d = 2; d * d <= n; ++d) p = p && n % d != 0;
    if (p) out.push_back(n);
  }
  return out;
}

MembershipResult member_of(const std::string& name, const Int& a) {
  const auto& e = catalog_entry(name);
  return membership_bounded(e.instance({a}), {a}, e.sufficient_bound({a}));
}

}  // namespace

TEST(Validate, EvenIsOk) {
  auto d = parse_definition("def even/1 over L bound n out 2*n");
  EXPECT_TRUE(validate_fcs_shape(d).empty());
  EXPECT_EQ(d.out_terms[0], parse_term("2*n", Signature::L_int));
}

TEST(Validate, UnboundVariable) {
  auto d = parse_definition("def bad/1 over L bound n out 2*n where y = n");
  auto v = validate_fcs_shape(d);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, "unbound variable");
}

TEST(Validate, OtherViolations) {
  FcsDefinition d = parse_definition("def e/1 over L bound n, n out n - 1");
  d.arity = 2;
  d.signature = Signature::Lminus_nat;
  std::set<std::string> kinds;
  for (const auto& v : validate_fcs_shape(d)) kinds.insert(v.kind);
  EXPECT_EQ(kinds, (std::set<std::string>{"arity", "bound variable", "signature"}));
}

TEST(Validate, PerfectInstance) {
  auto d = perfect_number_instance(6);
  EXPECT_TRUE(validate_fcs_shape(d).empty());
  EXPECT_EQ(d.bound_vars, (std::vector<std::string>{"n", "s"}));
}

TEST(DefinitionFile, RoundTripAndErrors) {
  for (const auto& d : catalog_definitions()) {
    if (d.name == "jones_prime") continue;
    auto back = parse_definition(to_string(d));
    EXPECT_EQ(to_string(back), to_string(d));
    EXPECT_EQ(back.out_terms, d.out_terms);
    EXPECT_EQ(back.atoms, d.atoms);
  }
  auto two = parse_definition_file("# c\ndef a/1 over L bound x out x\n\ndef b/1 over Lminus bound x out x where 0 < x # c\n");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1].atoms.size(), 1u);
  EXPECT_THROW(parse_definition("def a/x over L bound x out x"), ParseError);
  EXPECT_THROW(parse_definition("def a/1 over Q bound x out x"), Error);
  EXPECT_THROW(parse_definition("def a/1 over Lminus bound x out x - 1"), ParseError);
  EXPECT_THROW(parse_definition("def a/1 over L bound x"), ParseError);
}

TEST(Catalog, ContentsAreValid) {
  std::set<std::string> names;
  for (const auto& e : catalog()) {
    names.insert(e.def.name);
    EXPECT_TRUE(validate_fcs_shape(e.def).empty()) << e.def.name;
  }
  for (const char* n : {"even", "odd", "composite", "perfect_square", "cube", "nth_power_1", "nth_power_5",
                        "perfect_number", "m_ary_3", "jones_prime"})
    EXPECT_TRUE(names.count(n)) << n;
  EXPECT_EQ(catalog_entry("even").def.out_terms[0], parse_term("2*n", Signature::L_int));
  const auto& j = catalog_entry("jones_prime").def;
  EXPECT_EQ(j.bound_vars.size(), 26u);
  EXPECT_EQ(j.bound_vars[0], "k");
  ASSERT_EQ(j.atoms.size(), 1u);
  EXPECT_FALSE(j.atoms[0].lhs.uses_minus() || j.atoms[0].rhs.uses_minus());
}

TEST(Membership, Examples) {
  const auto& even = catalog_entry("even").def;
  auto r = membership_bounded(even, {888}, 500);
  ASSERT_TRUE(r.member());
  EXPECT_EQ(r.witness.at("n"), 444);
  EXPECT_FALSE(membership_bounded(even, {7}, 500).member());
  EXPECT_EQ(membership_bounded(even, {7}, 500).bound, 500);
  EXPECT_FALSE(membership_bounded(even, {888}, 443).member());
  EXPECT_TRUE(membership_bounded(perfect_number_instance(6), {6}, 20).member());
  EXPECT_THROW(membership_bounded(even, {1, 2}, 5), Error);
  EXPECT_THROW(membership_bounded(catalog_entry("even_nat").def, {-2}, 5), Error);
}

TEST(Membership, MaryDigits) {
  const auto& d = catalog_entry("m_ary_3").def;
  auto r = membership_bounded(d, {10, 3}, 10);
  ASSERT_TRUE(r.member());
  EXPECT_EQ(r.witness.at("a0"), 1);
  EXPECT_EQ(r.witness.at("a1"), 0);
  EXPECT_EQ(r.witness.at("a2"), 1);
  EXPECT_FALSE(membership_bounded(d, {27, 3}, 30).member());
}

TEST(Membership, PinnedOutOfBox) {
  const auto& sq = parse_definition("def id/1 over L bound x out x");
  EXPECT_FALSE(membership_bounded(sq, {9}, 8).member());
  EXPECT_TRUE(membership_bounded(sq, {-9}, 9).member());
}

TEST(Membership, OracleAgreement) {
  struct Case {
    const char* name;
    bool (*oracle)(int);
  };
  const Case cases[] = {
      {"even", is_even},
      {"odd", is_odd},
      {"composite", is_composite},
      {"perfect_square", [](int a) { return is_power(a, 2); }},
      {"cube", [](int a) { return is_power(a, 3); }},
      {"perfect_number", is_perfect},
  };
  for (const auto& c : cases)
    for (int a = 0; a <= 200; ++a) ASSERT_EQ(member_of(c.name, a).member(), c.oracle(a)) << c.name << " " << a;
}

TEST(Membership, MonotoneWithSameWitness) {
  std::mt19937_64 rng(5);
  const char* names[] = {"even", "odd", "composite", "perfect_square", "cube", "nth_power_4", "composite_nat"};
  for (int i = 0; i < 150; ++i) {
    const auto& e = catalog_entry(names[i % 7]);
    int a = std::uniform_int_distribution<int>(0, 120)(rng);
    Int B = std::uniform_int_distribution<int>(0, 15)(rng);
    auto r = membership_bounded(e.def, {a}, B);
    if (!r.member()) continue;
    for (Int B2 = B + 1; B2 <= B + 20; B2 += 7) {
      auto r2 = membership_bounded(e.def, {a}, B2);
      ASSERT_TRUE(r2.member());
      EXPECT_EQ(r2.witness, r.witness) << e.def.name << " " << a;
    }
  }
}

TEST(BoundMap, ComposesFormulaAndValue) {
  WitnessBoundMap id;
  EXPECT_EQ(id(7), 7);
  WitnessBoundMap dbl("2*B", [](const Int& b) -> Int { return 2 * b; });
  WitnessBoundMap root("ceil(sqrt(B))", [](const Int& b) { return ceil_sqrt(b); });
  auto m = dbl.then(root);
  EXPECT_EQ(m.expression(), "ceil(sqrt((2*B)))");
  EXPECT_EQ(m(8), 4);
  EXPECT_EQ(id.then(dbl).expression(), "2*B");
}

TEST(PpToFcs, RewritesParameters) {
  Formula f = parse_formula("exists x. a*a + x = 3", Signature::L_int);
  auto d = pp_to_fcs(f, std::vector<std::string>{"a"}, Signature::L_int);
  EXPECT_TRUE(validate_fcs_shape(d).empty());
  EXPECT_EQ(d.bound_vars, (std::vector<std::string>{"x", "a'"}));
  EXPECT_EQ(d.out_terms[0], Term::var("a'"));
  EXPECT_EQ(d.atoms[0], parse_atom("a'*a' + x = 3", Signature::L_int));
}

TEST(PpToFcs, Idempotent) {
  for (const auto& e : catalog()) {
    if (!e.witness_search) continue;
    std::vector<Term> args;
    std::vector<std::string> ps;
    for (std::size_t i = 0; i < e.def.arity; ++i) {
      ps.push_back("p" + std::to_string(i));
      args.push_back(Term::var(ps.back()));
    }
    auto back = pp_to_fcs(definition_formula(e.def, args), ps, e.def.signature, e.def.name);
    bool m_ary = e.def.name == "m_ary_3";  // m occurs twice, so it stays a variable
    if (!m_ary) {
      EXPECT_EQ(to_string(back), to_string(e.def));
    } else {
      EXPECT_EQ(back.out_terms[0], e.def.out_terms[0]);
    }
  }
}

TEST(PpToFcs, RejectsNonPp) {
  auto sig = Signature::L_int;
  EXPECT_THROW(pp_to_fcs(parse_formula("forall d. d < p", sig), 1, sig), Error);
  EXPECT_THROW(pp_to_fcs(parse_formula("~ p = 0", sig), 1, sig), Error);
  EXPECT_THROW(pp_to_fcs(parse_formula("p = 0 | p = 1", sig), 1, sig), Error);
  EXPECT_THROW(pp_to_fcs(parse_formula("p = 0 -> p = 1", sig), 1, sig), Error);
  EXPECT_THROW(pp_to_fcs(parse_formula("D(p)", sig), 1, sig), Error);
}

TEST(PpToFcs, PreservesBoundedSemantics) {
  // Oracle: enumerate the existential prefix of the pp formula directly.
  const char* formulas[] = {"exists x. a = 2*x", "exists x, y. a = x*y & 1 < x & 1 < y",
                            "exists x. a + x = b", "exists x. x*x = a & x < b", "a < b"};
  const int B = 6;
  for (const char* text : formulas) {
    Formula f = parse_formula(text, Signature::L_int);
    auto fv = free_vars(f);
    std::vector<std::string> ps(fv.begin(), fv.end());
    auto d = pp_to_fcs(f, ps.size(), Signature::L_int);
    std::vector<std::string> xs;
    const Formula* g = &f;
    while (g->kind() == Formula::Kind::Exists) {
      xs.push_back(g->var());
      g = &g->body();
    }
    for (int a = -B; a <= B; ++a) {
      for (int b = -B; b <= B; ++b) {
        Valuation v{{ps[0], a}};
        if (ps.size() > 1) v[ps[1]] = b;
        else if (b != 0) continue;
        bool truth = false;
        std::function<void(std::size_t)> go = [&](std::size_t i) {
          if (truth) return;
          if (i == xs.size()) {
            truth = eval_qf(*g, v);
            return;
          }
          for (int x = -2 * B; x <= 2 * B; ++x) {
            v[xs[i]] = x;
            go(i + 1);
          }
        };
        go(0);
        std::vector<Int> tuple{a};
        if (ps.size() > 1) tuple.push_back(b);
        ASSERT_EQ(membership_bounded(d, tuple, 2 * B).member(), truth) << text << " " << a << " " << b;
      }
    }
  }
}

TEST(Jones, ValueProperties) {
  Valuation zero;
  for (const auto& x : jones_variables()) zero[x] = 0;
  EXPECT_LE(jones_value(zero), 0);
  EXPECT_EQ(jones_value(zero), jones_value(zero));
  EXPECT_EQ(jones_value(zero), jones_polynomial().eval(zero));
  Valuation partial = zero;
  partial.erase("q");
  EXPECT_THROW(jones_value(partial), Error);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    Valuation v;
    for (const auto& x : jones_variables()) v[x] = std::uniform_int_distribution<int>(0, 20)(rng);
    Int val = jones_value(v);
    EXPECT_EQ(val, jones_polynomial().eval(v));
    if (val > 0) EXPECT_TRUE(is_prime_trial(v["k"] + 2));
  }
}

TEST(Ruiz, MatchesSieve) {
  auto primes = sieve_primes(25);
  EXPECT_EQ(ruiz_nth_prime(1), 2);
  EXPECT_EQ(ruiz_nth_prime(5), 11);
  EXPECT_EQ(ruiz_nth_prime(25), 97);
  for (unsigned n = 1; n <= 25; ++n) EXPECT_EQ(ruiz_nth_prime(n), primes[n - 1]) << n;
  EXPECT_EQ(ruiz_prime_count(100), 25);
}
