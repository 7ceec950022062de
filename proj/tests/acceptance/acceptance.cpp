// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fcs/catalog.hpp"
#include "fcs/dioph.hpp"
#include "fcs/error.hpp"
#include "fcs/membership.hpp"
#include "fcs/parser.hpp"
#include "fcs/sequent.hpp"
#include "proof_mutation.hpp"

using namespace fcs;
using namespace fcs::dioph;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string note;
};

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FCS_DATA_DIR) + "/proofs/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool trial_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Independent membership oracles over the integers.
bool oracle(const std::string& name, long long a) {
  auto root = [](long long v, int k) {
    for (long long x = -300; x <= 300; ++x) {
      long long p = 1;
      for (int i = 0; i < k; ++i) p *= x;
      if (p == v) return true;
    }
    return false;
  };
  if (name == "even") return a % 2 == 0;
  if (name == "odd") return a % 2 != 0;
  if (name == "composite") return a >= 4 && !trial_prime(a);
  if (name == "perfect_square") return root(a, 2);
  if (name == "cube") return root(a, 3);
  if (name == "perfect_number") {
    if (a <= 0) return false;
    long long s = 0;
    for (long long d = 1; d < a; ++d)
      if (a % d == 0) s += d;
    return s == a;
  }
  throw Error("no oracle for " + name);
}

Polynomial random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned max_deg, int max_coeff,
                       bool nonneg) {
  std::uniform_int_distribution<int> coeff(nonneg ? 0 : -max_coeff, max_coeff);
  for (;;) {
    Polynomial p;
    for (unsigned ex = 0; ex <= max_deg; ++ex)
      for (unsigned ey = 0; ex + ey <= max_deg; ++ey) {
        if (ey > 0 && vars.size() < 2) continue;
        Monomial m;
        if (ex) m.push_back({vars[0], ex});
        if (ey) m.push_back({vars[1], ey});
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
        p += Polynomial::monomial(m, coeff(rng));
      }
    if (!p.is_constant()) return p;
  }
}

Verdict even_sum() {
  using namespace fcs::sequent;
  ProofFile f = parse_proof_file(slurp("even_sum.fcs.proof.json"));
  auto r = check_proof(f.proof, f.rules, f.theory);
  if (!r) return {false, "golden fails at " + r.path + ": " + r.reason};
  ProofNode s = simulate_fcs(f.proof, f.rules, f.theory);
  auto r2 = check_proof(s, f.rules.with(Calculus::LKe), f.theory);
  if (!r2) return {false, "simulation fails at " + r2.path + ": " + r2.reason};
  if (!alpha_equal(s.conclusion, unfold(f.proof.conclusion, f.rules))) return {false, "wrong conclusion"};
  return {true, to_string(s.conclusion) + ", " + std::to_string(size(s)) + " nodes"};
}

Verdict catalog_agreement() {
  const char* names[] = {"even", "odd", "composite", "perfect_square", "cube", "perfect_number"};
  std::size_t checks = 0, mismatches = 0;
  std::string first;
  auto note = [&](const std::string& what, const std::string& name, int a) {
    ++mismatches;
    if (first.empty()) first = what + " " + name + " " + std::to_string(a);
  };
  for (const char* name : names) {
    const auto& e = catalog_entry(name);
    // Families with one definition for every tuple are transformed once.
    std::optional<TransformReport> comp, nat, back;
    auto prepare = [&](const FcsDefinition& d) {
      comp = compile_to_diophantine(d);
      nat = int_to_nat(d);
      back = nat_to_int(nat->definition(), nat->search_form ? &*nat->search_form : nullptr);
    };
    bool per_instance = e.def.atoms.size() != e.instance({Int(0)}).atoms.size() ||
                        to_string(e.def) != to_string(e.instance({Int(0)}));
    if (!per_instance) prepare(e.def);
    for (int a = 0; a <= 200; ++a) {
      FcsDefinition d = e.instance({Int(a)});
      if (per_instance) prepare(d);
      Int B = e.sufficient_bound({Int(a)});
      bool want = oracle(name, a);

      if (membership_bounded(d, {a}, B).member() != want) note("direct", name, a);

      const auto* cs = comp->search_form ? &*comp->search_form : nullptr;
      if (solve_bounded(comp->form(), {a}, comp->bound_map(B), cs).has_value() != want) note("compiled", name, a);

      MembershipOptions on;
      if (nat->search_form) on.search_form = &*nat->search_form;
      if (membership_bounded(nat->definition(), {a}, nat->bound_map(B), on).member() != want) note("int_to_nat", name, a);

      // Same box [-B', B']^(4n), decided through the four-square groups.
      WitnessBoundMap m = nat->bound_map.then(back->bound_map);
      if (membership_lifted(*back, {a}, m(B)).member() != want) note("nat_to_int", name, a);
      checks += 4;
    }
  }
  if (mismatches) return {false, std::to_string(mismatches) + " mismatches, first: " + first};
  return {true, std::to_string(checks) + " membership checks"};
}

Verdict four_square() {
  for (long n = 0; n <= 100000; ++n) {
    auto q = four_square_decompose(Int(n));
    Int s = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    if (s != n) return {false, "n=" + std::to_string(n)};
  }
  return {true, "100001 values"};
}

Verdict sign_expansion() {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> vars = i % 3 == 0 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    Polynomial h = random_poly(rng, vars, 2, 3, false);
    auto se = sign_expand(h, vars);
    bool z = false, n = false;
    const int ylim = vars.size() == 2 ? 5 : 0;
    for (int x = -5; x <= 5; ++x)
      for (int y = -ylim; y <= ylim; ++y) {
        Valuation v{{"x", x}, {"y", y}};
        z = z || h.eval(v) == 0;
        if (x >= 0 && y >= 0) n = n || se.phi.eval(v) == 0;
      }
    if (z != n) return {false, "atom " + to_string(h) + " = 0"};
  }
  return {true, "100 atoms"};
}

Verdict congruence() {
  std::mt19937_64 rng(77);
  std::size_t evaluations = 0;
  for (int i = 0; i < 200; ++i) {
    Polynomial f = random_poly(rng, {"x", "y"}, 3, 5, false);
    Valuation d;
    Int p;
    do {
      d = {{"x", std::uniform_int_distribution<int>(-8, 8)(rng)}, {"y", std::uniform_int_distribution<int>(-8, 8)(rng)}};
      p = f.eval(d);
    } while (p == 0);
    for (int zx = -10; zx <= 10; ++zx)
      for (int zy = -10; zy <= 10; ++zy) {
        Valuation q{{"x", p * zx + d["x"]}, {"y", p * zy + d["y"]}};
        ++evaluations;
        if (f.eval(q) % p != 0) return {false, to_string(f) + " at base point with p=" + p.get_str()};
      }
  }
  return {true, std::to_string(evaluations) + " shifted evaluations"};
}

Verdict refute() {
  std::mt19937_64 rng(99);
  const std::vector<std::string> vars{"x", "y"};
  int done = 0;
  double worst = 0;
  std::uint64_t most = 0;
  // Prime-rich quadratics first, then random samples.
  const std::vector<std::pair<const char*, const char*>> fixed{
      {"x*x + x + 41", "0 < x"}, {"x*x - x + 41", "0 < x"}, {"x*x + x + 17", "-1 < x"},
      {"2*x*x + 29", "-1 < x"},  {"x*x + y*y + 1", "0 < x; 0 < y"}};
  for (int i = 0; i < 25; ++i) {
    Polynomial f = i < static_cast<int>(fixed.size())
                       ? term_to_polynomial(parse_term(fixed[i].first, Signature::L_int))
                       : random_poly(rng, vars, 1 + i % 3, 6, false);
    std::vector<Atom> box;
    if (i < static_cast<int>(fixed.size())) {
      std::string spec = fixed[i].second;
      for (std::size_t at = 0; at != std::string::npos;) {
        std::size_t semi = spec.find(';', at);
        Formula g = parse_formula(spec.substr(at, semi == std::string::npos ? semi : semi - at), Signature::L_int);
        box.push_back(g.as_atom());
        at = semi == std::string::npos ? semi : semi + 1;
      }
    }
    for (const auto& v : vars) {
      if (i < static_cast<int>(fixed.size())) break;
      int c = std::uniform_int_distribution<int>(-5, 5)(rng);
      Term tv = Term::var(v), tc = Term::numeral(c);
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: box.push_back(Atom::lt(tc, tv)); break;
        case 1: box.push_back(Atom::lt(tv, tc)); break;
        default: break;
      }
    }
    RefuteOptions opts;
    opts.budget = 1000000;
    auto t0 = Clock::now();
    Refutation r;
    try {
      r = refute_prime_box(f, box, opts);
    } catch (const Error& e) {
      return {false, to_string(f) + ": " + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!r.verify(f, box, opts.domain)) return {false, to_string(f) + ": refutation does not verify"};
    if (secs > 5.0 || r.evaluations > 1000000) return {false, to_string(f) + ": over budget"};
    worst = std::max(worst, secs);
    most = std::max(most, r.evaluations);
    ++done;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d refutations, slowest %.3f s, most evaluations %llu", done, worst,
                static_cast<unsigned long long>(most));
  return {done >= 20, buf};
}

Verdict jones_fuzz() {
  std::mt19937_64 rng(26);
  std::uniform_int_distribution<int> val(0, 20);
  std::size_t positive = 0;
  for (int i = 0; i < 10000; ++i) {
    Valuation v;
    for (const auto& x : jones_variables()) v[x] = val(rng);
    Int j = jones_value(v);
    if (j > 0) {
      ++positive;
      if (!trial_prime(v["k"].get_si() + 2)) return {false, "positive value with k+2 composite"};
    }
  }
  return {true, std::to_string(positive) + " positive cases in 10000"};
}

Verdict zero_patterns() {
  std::mt19937_64 rng(808);
  for (int i = 0; i < 50; ++i) {
    std::size_t r = 1 + i % 3, w = i % 4;
    DiophantineForm f;
    f.signature = Signature::Lminus_nat;
    for (std::size_t k = 1; k <= r; ++k) f.params.push_back("y" + std::to_string(k));
    for (std::size_t k = 1; k <= w; ++k) f.existentials.push_back("x" + std::to_string(k));
    std::vector<std::string> all = f.params;
    all.insert(all.end(), f.existentials.begin(), f.existentials.end());
    int terms = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      for (const auto& v : all) {
        unsigned e = std::uniform_int_distribution<unsigned>(0, 2)(rng) == 0 ? 1 : 0;
        if (e) m.push_back({v, e});
      }
      f.poly += Polynomial::monomial(m, std::uniform_int_distribution<int>(1, 3)(rng));
    }
    auto a = zero_pattern_classify(f, 8), b = zero_pattern_classify(f, 16);
    if (!a.consistent || !b.consistent) return {false, to_string(f) + " is not zero-pattern uniform"};
    for (std::size_t k = 0; k < a.patterns.size(); ++k)
      if ((a.patterns[k].in > 0) != (b.patterns[k].in > 0)) return {false, to_string(f) + " changes between bounds"};
  }
  return {true, "50 forms at B=8 and B=16"};
}

Verdict mutations() {
  using namespace fcs::sequent;
  std::vector<ProofFile> files;
  for (const char* name : {"even_sum.fcs.proof.json", "even_sum.simulated.proof.json", "even_sum.d.proof.json"})
    files.push_back(parse_proof_file(slurp(name)));
  for (const auto& f : files)
    if (!check_proof(f.proof, f.rules, f.theory)) return {false, "a golden proof does not check"};
  std::mt19937_64 rng(50);
  const char* kinds[] = {"term", "eigenvariable", "rule"};
  for (int i = 0; i < 50; ++i) {
    const ProofFile& f = files[static_cast<std::size_t>(i) % files.size()];
    auto m = gen::mutate(f.proof, kinds[i % 3], rng);
    if (!m) return {false, std::string("no ") + kinds[i % 3] + " mutation site"};
    auto r = check_proof(m->proof, f.rules, f.theory);
    if (r) return {false, m->kind + " mutation at " + m->node + " accepted"};
    if (r.path != m->expected) return {false, m->kind + " mutation at " + m->node + " reported at " + r.path};
  }
  return {true, "50 mutations rejected at the expected node"};
}

Verdict ruiz() {
  std::vector<long> primes;
  for (long n = 2; primes.size() < 25; ++n)
    if (trial_prime(n)) primes.push_back(n);
  for (unsigned n = 1; n <= 25; ++n)
    if (ruiz_nth_prime(n) != primes[n - 1])
      return {false, "n=" + std::to_string(n) + ": " + ruiz_nth_prime(n).get_str() + " vs " + std::to_string(primes[n - 1])};
  return {true, "exact agreement for n <= 25"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 = none
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "even-sum end to end", 1, even_sum},
      {2, "catalog oracle agreement 0..200", 60, catalog_agreement},
      {3, "four-square 0..100000", 30, four_square},
      {4, "sign-expansion equivalence", 0, sign_expansion},
      {5, "congruence law", 0, congruence},
      {6, "prime-box refutations", 0, refute},
      {7, "Jones safety fuzz", 0, jones_fuzz},
      {8, "zero-pattern consistency", 0, zero_patterns},
      {9, "proof mutation suite", 0, mutations},
      {10, "closed prime formula vs sieve", 0, ruiz},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) {
      v.ok = false;
      v.note += " (over the time limit)";
    }
    std::printf("%s %2d %s [%.2f s] %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs, v.note.c_str());
    std::fflush(stdout);
    failed += v.ok ? 0 : 1;
  }
  return failed ? 1 : 0;
}
