#include <gtest/gtest.h>

#include <random>

#include "fcs/parser.hpp"
#include "fcs/search.hpp"
#include "random_ast.hpp"

using namespace fcs;
using search::Constraint;
using search::Domain;
using search::Problem;

namespace {

// Independent enumeration: odometer over the coordinate order of the domain.
std::vector<Int> coordinate_order(Domain d, int bound) {
  std::vector<Int> out{0};
  for (int k = 1; k <= bound; ++k) {
    out.push_back(k);
    if (d == Domain::Int) out.push_back(-k);
  }
  return out;
}

bool holds(const Problem& p, const Valuation& v) {
  Valuation all = p.fixed;
  for (const auto& [k, x] : v) all[k] = x;
  for (const auto& c : p.constraints) {
    Int e = eval_term(c.expr, all);
    if (c.kind == Constraint::Kind::EqZero ? e != 0 : e <= 0) return false;
  }
  return true;
}

// All solutions in lexicographic order.
std::vector<Valuation> all_solutions(const Problem& p, int bound) {
  auto order = coordinate_order(p.domain, bound);
  std::vector<std::size_t> idx(p.vars.size(), 0);
  std::vector<Valuation> out;
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < idx.size(); ++i) v[p.vars[i]] = order[idx[i]];
    if (holds(p, v)) out.push_back(v);
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] + 1 == order.size()) idx[--k] = 0;
    if (k == 0) break;
    ++idx[k - 1];
  }
  return out;
}

Int shell(const Valuation& v) {
  Int s = 0;
  for (const auto& [k, x] : v) s = std::max<Int>(s, abs(x));
  return s;
}

Problem random_problem(std::mt19937_64& rng, Domain d) {
  std::vector<std::string> vars = {"x", "y", "z"};
  Problem p;
  p.domain = d;
  int nv = std::uniform_int_distribution<int>(1, 3)(rng);
  p.vars.assign(vars.begin(), vars.begin() + nv);
  p.fixed["c"] = std::uniform_int_distribution<int>(-6, 12)(rng);
  std::vector<std::string> names(p.vars);
  names.push_back("c");
  int nc = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int i = 0; i < nc; ++i) {
    Term t = Term::sub(gen::random_term(rng, 3, true, names), gen::random_term(rng, 2, true, names));
    p.constraints.push_back({t, std::uniform_int_distribution<int>(0, 3)(rng) ? Constraint::Kind::EqZero
                                                                              : Constraint::Kind::Positive});
  }
  return p;
}

}  // namespace

TEST(Search, MatchesEnumerationOracle) {
  std::mt19937_64 rng(11);
  int found = 0;
  for (int i = 0; i < 400; ++i) {
    Domain d = i % 3 == 0 ? Domain::Nat : Domain::Int;
    Problem p = random_problem(rng, d);
    int bound = std::uniform_int_distribution<int>(0, 6)(rng);
    auto sols = all_solutions(p, bound);
    auto got = search::first_solution(p, bound);
    auto brute = search::brute_force(p, bound);
    if (sols.empty()) {
      EXPECT_FALSE(got.has_value());
      EXPECT_FALSE(brute.has_value());
      continue;
    }
    ++found;
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, sols.front());
    ASSERT_TRUE(brute.has_value());
    EXPECT_EQ(*brute, sols.front());
    EXPECT_TRUE(search::satisfies(p, *got));

    // Shell order: least max-norm, then lexicographic.
    const Valuation* best = &sols.front();
    for (const auto& s : sols)
      if (shell(s) < shell(*best)) best = &s;
    auto graded = search::first_solution_graded(p, bound);
    ASSERT_TRUE(graded.has_value());
    EXPECT_EQ(*graded, *best);
    for (int b2 = bound; b2 <= bound + 3; ++b2) EXPECT_EQ(search::first_solution_graded(p, b2), graded);
  }
  EXPECT_GT(found, 50);
}

TEST(Search, LargeBoundPrunes) {
  // x*y = 1000003 * 1000033 with |x|,|y| <= 2*10^6 over the naturals.
  Problem p;
  p.domain = Domain::Nat;
  p.vars = {"x", "y"};
  p.constraints.push_back(
      {parse_term("x*y - 1000036000099", Signature::L_int), Constraint::Kind::EqZero});
  p.constraints.push_back({parse_term("x - 1", Signature::L_int), Constraint::Kind::Positive});
  p.constraints.push_back({parse_term("y - 1", Signature::L_int), Constraint::Kind::Positive});
  search::Stats st;
  auto got = search::first_solution(p, 2000000, &st);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ((*got)["x"], 1000003);
  EXPECT_EQ((*got)["y"], 1000033);
}

TEST(Search, NoVariables) {
  Problem p;
  p.constraints.push_back({parse_term("1 - 1", Signature::L_int), Constraint::Kind::EqZero});
  EXPECT_TRUE(search::first_solution(p, 5).has_value());
  p.constraints.push_back({Term::zero(), Constraint::Kind::Positive});
  EXPECT_FALSE(search::first_solution(p, 5).has_value());
}

TEST(Search, OverflowingProductsStayExact) {
  // Products far beyond 128 bits; pruning must stay sound and still effective.
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    Problem p;
    p.domain = i % 2 ? Domain::Nat : Domain::Int;
    p.vars = {"x", "y"};
    int a = std::uniform_int_distribution<int>(-7, 7)(rng), b = std::uniform_int_distribution<int>(-7, 7)(rng);
    // (x - a)^2 + (y - b)^2 + 1 raised to the 16th, times (x + y - a - b), must vanish.
    Term base = parse_term("(x - " + std::to_string(a) + ")*(x - " + std::to_string(a) + ") + (y - " +
                               std::to_string(b) + ")*(y - " + std::to_string(b) + ") + 1",
                           Signature::L_int);
    Term big = base;
    for (int k = 0; k < 4; ++k) big = Term::mul(big, big);
    big = Term::mul(Term::mul(big, big), parse_term("x + y - " + std::to_string(a + b), Signature::L_int));
    p.constraints.push_back({big, Constraint::Kind::EqZero});
    if (i % 3 == 0) p.constraints.push_back({Term::neg(big), Constraint::Kind::Positive});
    int bound = std::uniform_int_distribution<int>(0, 7)(rng);
    auto sols = all_solutions(p, bound);
    auto got = search::first_solution(p, bound);
    ASSERT_EQ(got.has_value(), !sols.empty());
    if (got) EXPECT_EQ(*got, sols.front());
  }
  Problem far;
  far.domain = Domain::Nat;
  far.vars = {"x"};
  Term t = parse_term("x*x + 1", Signature::L_int);
  for (int k = 0; k < 6; ++k) t = Term::mul(t, t);
  far.constraints.push_back({Term::sub(t, Term::one()), Constraint::Kind::EqZero});
  search::Stats st;
  auto z = search::first_solution(far, 1000000, &st);
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ((*z)["x"], 0);
  far.constraints.push_back({parse_term("x - 5", Signature::L_int), Constraint::Kind::Positive});
  EXPECT_FALSE(search::first_solution(far, 1000000, &st).has_value());
  EXPECT_LT(st.nodes, 10000u);
}

TEST(Search, AcceptFilterKeepsOrder) {
  Problem p;
  p.domain = Domain::Int;
  p.vars = {"x", "y"};
  p.fixed["c"] = 2;
  p.constraints.push_back({parse_term("x + y - c", Signature::L_int), Constraint::Kind::EqZero});
  p.accept = [](const Valuation& v) { return v.at("c") == 2 && v.at("x") < -1; };
  auto sols = all_solutions(p, 5);
  std::vector<Valuation> kept;
  for (const auto& s : sols)
    if (s.at("x") < -1) kept.push_back(s);
  auto got = search::first_solution(p, 5);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, kept.front());
  EXPECT_EQ(search::brute_force(p, 5), got);
  EXPECT_FALSE(search::satisfies(p, {{"x", 1}, {"y", 1}}));
  p.accept = [](const Valuation&) { return false; };
  EXPECT_FALSE(search::first_solution(p, 5).has_value());
  Problem none;
  none.accept = [](const Valuation&) { return false; };
  EXPECT_FALSE(search::first_solution(none, 3).has_value());
}
