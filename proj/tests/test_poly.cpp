#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pfzeta/poly.hpp"

using namespace pfz;
using namespace pfz::polyring;

namespace {

Poly random_poly(std::mt19937& rng, const VarList& vars, int max_terms,
                 int max_exp, long long coeff_bound) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expd(0, max_exp);
  std::uniform_int_distribution<long long> coeffd(-coeff_bound, coeff_bound);
  Poly f(vars);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Poly::Exps e(vars.size());
    for (auto& x : e) x = expd(rng);
    f.add_term(e, Int(coeffd(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("poly basic arithmetic") {
  VarList v = pt_vars();
  Poly p = Poly::variable(v, 0);
  Poly t = Poly::variable(v, 1);
  Poly f = p * p + t * Int(3);
  CHECK(f.term_count() == 2);
  CHECK(f.degree(0) == 2);
  CHECK((f - f).is_zero());
  CHECK(f * Poly::constant(v, 0) == Poly(v));
  CHECK((p + t) * (p - t) == p * p - t * t);
}

TEST_CASE("ring axioms hold on random triples") {
  std::mt19937 rng(12345);
  VarList v = pt_vars();
  for (int iter = 0; iter < 1000; ++iter) {
    Poly a = random_poly(rng, v, 4, 5, 1'000'000);
    Poly b = random_poly(rng, v, 4, 5, 1'000'000);
    Poly c = random_poly(rng, v, 4, 5, 1'000'000);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("laurent exponents and inversion") {
  VarList v = pt_vars();
  Poly f = Poly::monomial(v, {-2, 3}, 5);
  CHECK(f.low_degree(0) == -2);
  Poly g = f.invert_var(0);
  CHECK(g.terms().begin()->first == Poly::Exps{2, 3});
  CHECK(g.invert_var(0) == f);
}

TEST_CASE("exact division") {
  VarList v = pt_vars();
  Poly p = Poly::variable(v, 0);
  Poly t = Poly::variable(v, 1);
  Poly one = Poly::constant(v, 1);
  Poly f = (one - p * t) * (one + p * t + p * p * t * t);
  auto q = f.divided_exact(one - p * t);
  REQUIRE(q.has_value());
  CHECK(*q == one + p * t + p * p * t * t);
  CHECK_FALSE(f.divided_exact(one - t).has_value());

  // laurent divisor
  Poly lf = Poly::monomial(v, {-3, 1}, 1) * f;
  auto lq = lf.divided_exact(one - p * t);
  REQUIRE(lq.has_value());
  CHECK(*lq == Poly::monomial(v, {-3, 1}, 1) * (one + p * t + p * p * t * t));
}

TEST_CASE("evaluation, including laurent points") {
  VarList v = pt_vars();
  Poly f = Poly::monomial(v, {-1, 1}, 4) + Poly::constant(v, 1);
  auto val = f.eval({Int(2), Int(3)});
  REQUIRE(val.has_value());
  CHECK(*val == 7);  // 4*3/2 + 1
  Poly g = Poly::monomial(v, {-1, 0}, 1);
  CHECK_FALSE(g.eval({Int(2), Int(5)}).has_value());
}

TEST_CASE("substitution of a polynomial for a variable") {
  VarList v{"p", "n1"};
  Poly f = Poly::variable(v, 1).pow(2) + Poly::variable(v, 0);
  Poly val = Poly::variable(v, 0) + Poly::constant(v, 1);  // n1 := p + 1
  Poly g = f.substituted(1, val);
  Poly p = Poly::variable(v, 0);
  CHECK(g == (p + Poly::constant(v, 1)).pow(2) + p);
}

TEST_CASE("printing and parsing round-trip") {
  VarList v = pt_vars();
  std::mt19937 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    Poly f = random_poly(rng, v, 6, 7, 99);
    Poly g = parse_poly(f.str(), v);
    REQUIRE(f == g);
  }
  Poly f = parse_poly("1 + p^4*t^4 - 2*p^5*t^3", v);
  CHECK(f.term_count() == 3);
  CHECK(parse_poly(f.str(Poly::TermOrder::last_var_major), v) == f);
}

TEST_CASE("lift to a larger ring") {
  Poly f = Poly::variable(p_var(), 0) + Poly::constant(p_var(), 1);
  Poly g = f.lifted(pt_vars());
  CHECK(g.vars() == pt_vars());
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 0);
}
