#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pfzeta/fpgeom.hpp"

using namespace pfz;
using namespace pfz::fpgeom;
using presentation::GroupPresentation;
using presentation::load_preset;
using polyring::Poly;

TEST_CASE("subspace enumeration matches gaussian binomial counts") {
  for (int dprime = 1; dprime <= 5; ++dprime)
    for (int k = 1; k <= dprime; ++k)
      for (long long p : {2, 3}) {
        std::uint64_t n = 0;
        for_each_subspace(k, dprime, p, [&](const PlaneRep&) { ++n; });
        CHECK(n == subspace_count(k, dprime, p));
      }
  std::uint64_t n = 0;
  for_each_subspace(1, 2, 2, [&](const PlaneRep&) { ++n; });
  CHECK(n == 3);
}

TEST_CASE("segre point and line counts") {
  auto segre = load_preset("segre");
  Poly pf = segre.pfaffian();
  for (long long p : {2, 3, 5, 7}) {
    CHECK(count_hypersurface_points(pf, p) ==
          static_cast<std::uint64_t>((p + 1) * (p + 1)));
    CHECK(count_fano(2, pf, p) == static_cast<std::uint64_t>(2 * (p + 1)));
    CHECK(count_fano(3, pf, p) == 0);
  }
  // F_0 is the point set
  CHECK(count_fano(1, pf, 2) == 9);
}

TEST_CASE("hyperplane point count") {
  Poly pf = polyring::parse_poly("y1", polyring::y_vars(4));
  for (long long p : {2, 3, 5}) {
    CHECK(count_hypersurface_points(pf, p) ==
          static_cast<std::uint64_t>(1 + p + p * p));
  }
}

TEST_CASE("plane containment checks") {
  auto segre = load_preset("segre");
  CompiledPoly pf = CompiledPoly::compile(segre.pfaffian(), 3);
  PlaneRep line_on;  // y1 = y2 = 0: span of e3, e4
  line_on.p = 3;
  line_on.k = 2;
  line_on.rows = {{0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(plane_on_hypersurface(line_on, pf));

  PlaneRep line_off;  // span of e1, e4 hits y1 y4 = 1
  line_off.p = 3;
  line_off.k = 2;
  line_off.rows = {{1, 0, 0, 0}, {0, 0, 0, 1}};
  CHECK_FALSE(plane_on_hypersurface(line_off, pf));
}

TEST_CASE("coranks of planes on the segre surface") {
  auto segre = load_preset("segre");
  PlaneRep pt;  // smooth point e1
  pt.p = 5;
  pt.k = 1;
  pt.rows = {{1, 0, 0, 0}};
  CHECK(corank_of_plane(segre, pt) == 2);

  PlaneRep line;  // line on the surface
  line.p = 5;
  line.k = 2;
  line.rows = {{0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(corank_of_plane(segre, line) == 1);

  PlaneRep off;  // contains a unit-determinant point
  off.p = 5;
  off.k = 2;
  off.rows = {{1, 0, 0, 0}, {0, 0, 0, 1}};
  CHECK(corank_of_plane(segre, off) == 0);
}

TEST_CASE("corank is invariant under change of plane basis") {
  auto segre = load_preset("segre");
  std::mt19937 rng(31337);
  const std::int64_t p = 3;
  for (int iter = 0; iter < 40; ++iter) {
    PlaneRep pl;
    pl.p = p;
    pl.k = 2;
    pl.rows = {{1, 0, static_cast<std::int64_t>(rng() % p),
                static_cast<std::int64_t>(rng() % p)},
               {0, 1, static_cast<std::int64_t>(rng() % p),
                static_cast<std::int64_t>(rng() % p)}};
    int base = corank_of_plane(segre, pl);
    // random invertible 2x2 change of basis
    std::int64_t a, b, c, d;
    do {
      a = rng() % p;
      b = rng() % p;
      c = rng() % p;
      d = rng() % p;
    } while (((a * d - b * c) % p + p) % p == 0);
    PlaneRep pl2 = pl;
    for (int col = 0; col < 4; ++col) {
      auto r0 = pl.rows[0][static_cast<std::size_t>(col)];
      auto r1 = pl.rows[1][static_cast<std::size_t>(col)];
      pl2.rows[0][static_cast<std::size_t>(col)] = (a * r0 + b * r1) % p;
      pl2.rows[1][static_cast<std::size_t>(col)] = (c * r0 + d * r1) % p;
    }
    REQUIRE(corank_of_plane(segre, pl2) == base);
  }
}

TEST_CASE("expected fano dimensions") {
  CHECK(expected_fano_dimension(6, 10, 1) == 8);   // d'-2
  CHECK(expected_fano_dimension(6, 10, 2) == 12);  // 16 - C(4,1)
  CHECK(expected_fano_dimension(6, 5, 3) == -4);   // empty
  CHECK_FALSE(expected_fano_dimension(4, 4, 2).has_value());  // quadric
}

TEST_CASE("fit integer polynomial infers degrees honestly") {
  // 2(p+1) through p = 2,3,5 with a holdout
  std::map<std::int64_t, Int> lines{{2, 6}, {3, 8}, {5, 12}};
  auto f = fit_integer_polynomial(lines);
  REQUIRE(f.has_value());
  CHECK(f->degree(0) == 1);
  CHECK(*f->eval({Int(7)}) == 16);

  std::map<std::int64_t, Int> points{{2, 9}, {3, 16}, {5, 36}, {7, 64}};
  auto g = fit_integer_polynomial(points);
  REQUIRE(g.has_value());
  CHECK(g->degree(0) == 2);

  // inconsistent data refuses to fit
  std::map<std::int64_t, Int> junk{{2, 9}, {3, 16}, {5, 37}};
  CHECK_FALSE(fit_integer_polynomial(junk).has_value());
}

TEST_CASE("classify segre fano levels") {
  auto segre = load_preset("segre");
  std::vector<std::int64_t> primes{2, 3, 5};

  auto level1 = classify_fano(segre, 1, primes);
  REQUIRE(level1.size() == 1);
  CHECK(level1[0].corank == 2);
  CHECK(level1[0].dimension == 2);
  CHECK(level1[0].codimension == 1);
  CHECK(level1[0].delta);
  CHECK(level1[0].counts[2] == 9);
  CHECK(level1[0].counts[3] == 16);
  CHECK(level1[0].counts[5] == 36);
  REQUIRE(level1[0].count_poly.has_value());
  CHECK(level1[0].count_poly->degree(0) == 2);

  auto level2 = classify_fano(segre, 2, primes);
  REQUIRE(level2.size() == 1);
  CHECK(level2[0].corank == 1);
  CHECK(level2[0].dimension == 1);
  CHECK(level2[0].codimension == 3);
  CHECK(level2[0].counts[3] == 8);

  auto level3 = classify_fano(segre, 3, primes);
  CHECK(level3.empty());
}

TEST_CASE("classify with supplied component data") {
  auto segre = load_preset("segre");
  ClassifyOptions opt;
  opt.supplied.push_back(SuppliedComponent{
      2, 1, 1, {{2, Int(3)}, {3, Int(4)}, {5, Int(6)}}});
  auto cls = classify_fano(segre, 2, {2, 3, 5}, opt);
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].counts[2] == 3);
  CHECK(cls[0].dimension == 1);
}

TEST_CASE("hb-cubic plane fano variety has p+2 points") {
  auto hb = load_preset("hb-cubic");
  Poly pf = hb.pfaffian();
  for (long long p : {2, 3, 5}) {
    CHECK(count_fano(3, pf, p) == static_cast<std::uint64_t>(p + 2));
  }
}

TEST_CASE("fano points nest inside fano lines") {
  auto segre = load_preset("segre");
  const std::int64_t p = 3;
  CompiledPoly pf = CompiledPoly::compile(segre.pfaffian(), p);
  for_each_subspace(2, 4, p, [&](const PlaneRep& pl) {
    if (!plane_on_hypersurface(pl, pf)) return;
    // every point of an on-surface line is an on-surface point
    for (std::int64_t c = 0; c <= p; ++c) {
      PlaneRep ptp;
      ptp.p = p;
      ptp.k = 1;
      ptp.rows = {{0, 0, 0, 0}};
      for (int col = 0; col < 4; ++col) {
        std::int64_t v = c == p ? pl.rows[1][static_cast<std::size_t>(col)]
                                : (pl.rows[0][static_cast<std::size_t>(col)] +
                                   c * pl.rows[1][static_cast<std::size_t>(col)]) %
                                      p;
        ptp.rows[0][static_cast<std::size_t>(col)] = v;
      }
      REQUIRE(plane_on_hypersurface(ptp, pf));
    }
  });
}

TEST_CASE("enumeration guard trips without force") {
  CHECK_THROWS_AS(for_each_subspace(4, 8, 31, [](const PlaneRep&) {}),
                  resource_error);
}
