#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pfzeta/parallel.hpp"
#include "pfzeta/presentation.hpp"
#include "pfzeta/qfunctions.hpp"

namespace pfz::fpgeom {

using polyring::Poly;
using presentation::GroupPresentation;

// A k-dimensional subspace of F_p^{d'} as the row space of its unique
// reduced row-echelon form.
struct PlaneRep {
  std::int64_t p = 2;
  int k = 1;
  std::vector<std::vector<std::int64_t>> rows;  // k x d', values in [0,p)
};

// Compiled form of a polynomial in y_1..y_{d'} for fast mod-p evaluation.
struct CompiledPoly {
  struct Term {
    std::vector<int> exps;
    std::int64_t coeff;
  };
  int nvars = 0;
  std::vector<Term> terms;

  static CompiledPoly compile(const Poly& f, std::int64_t p) {
    CompiledPoly c;
    c.nvars = static_cast<int>(f.vars().size());
    for (const auto& [e, coef] : f.terms()) {
      Int r = coef % p;
      std::int64_t cr = r.convert_to<std::int64_t>();
      cr = ((cr % p) + p) % p;
      if (cr == 0) continue;
      c.terms.push_back({e, cr});
    }
    return c;
  }

  std::int64_t eval(const std::vector<std::int64_t>& pt, std::int64_t p) const {
    std::int64_t acc = 0;
    for (const auto& t : terms) {
      std::int64_t v = t.coeff;
      for (int i = 0; i < nvars; ++i)
        for (int e = 0; e < t.exps[static_cast<std::size_t>(i)]; ++e)
          v = v * pt[static_cast<std::size_t>(i)] % p;
      acc = (acc + v) % p;
    }
    return acc;
  }
};

namespace detail {

// Visit every k-subspace with a fixed pivot-column pattern.
template <typename Fn>
void visit_pivot_pattern(int k, int dprime, std::int64_t p,
                         const std::vector<int>& pivots, Fn&& fn) {
  std::vector<std::pair<int, int>> free_pos;  // (row, col) free entries
  std::vector<bool> is_pivot(static_cast<std::size_t>(dprime), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (int r = 0; r < k; ++r)
    for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < dprime; ++c)
      if (!is_pivot[static_cast<std::size_t>(c)]) free_pos.push_back({r, c});

  PlaneRep plane;
  plane.p = p;
  plane.k = k;
  plane.rows.assign(static_cast<std::size_t>(k),
                    std::vector<std::int64_t>(static_cast<std::size_t>(dprime),
                                              0));
  for (int r = 0; r < k; ++r)
    plane.rows[static_cast<std::size_t>(r)]
              [static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] =
        1;

  std::vector<std::int64_t> digits(free_pos.size(), 0);
  while (true) {
    fn(plane);
    std::size_t i = 0;
    for (; i < digits.size(); ++i) {
      auto [r, c] = free_pos[i];
      if (++digits[i] < p) {
        plane.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            digits[i];
        break;
      }
      digits[i] = 0;
      plane.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 0;
    }
    if (i == digits.size()) break;
  }
}

inline void pivot_patterns_rec(int k, int dprime, int start,
                               std::vector<int>& cur,
                               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int c = start; c < dprime; ++c) {
    cur.push_back(c);
    pivot_patterns_rec(k, dprime, c + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> pivot_patterns(int k, int dprime) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  pivot_patterns_rec(k, dprime, 0, cur, out);
  return out;
}

}  // namespace detail

inline std::uint64_t subspace_count(int k, int dprime, std::int64_t p) {
  Poly g = polyring::gaussian_binomial(dprime, k);
  auto v = g.eval({Int(p)});
  if (*v > Int(UINT64_MAX)) return UINT64_MAX;
  return v->convert_to<std::uint64_t>();
}

// Sequential visit of every k-subspace of F_p^{d'}, each exactly once.
template <typename Fn>
void for_each_subspace(int k, int dprime, std::int64_t p, Fn&& fn,
                       bool force = false) {
  if (k < 1 || k > dprime) throw validation_error("subspace dimension range");
  check_enum_guard(subspace_count(k, dprime, p), "subspace enumeration",
                   force);
  for (const auto& piv : detail::pivot_patterns(k, dprime))
    detail::visit_pivot_pattern(k, dprime, p, piv, fn);
}

// Parallel classify: per-subspace integer label -> count, merged in a fixed
// pattern order.  Labels must not depend on visiting order.
template <typename Fn>
std::map<int, std::uint64_t> classify_subspaces(int k, int dprime,
                                                std::int64_t p, Fn fn,
                                                bool force = false) {
  if (k < 1 || k > dprime) throw validation_error("subspace dimension range");
  check_enum_guard(subspace_count(k, dprime, p), "subspace enumeration",
                   force);
  auto patterns = detail::pivot_patterns(k, dprime);
  auto results = parallel_map(patterns, [&](const std::vector<int>& piv) {
    std::map<int, std::uint64_t> local;
    detail::visit_pivot_pattern(k, dprime, p, piv,
                                [&](const PlaneRep& pl) { ++local[fn(pl)]; });
    return local;
  });
  std::map<int, std::uint64_t> merged;
  for (const auto& r : results)
    for (const auto& [label, c] : r) merged[label] += c;
  return merged;
}

// True iff the polynomial vanishes at every projective point of the plane.
// Checked pointwise: over small F_p a nonzero polynomial can vanish on all
// rational points, and the rational semantics is what the counts need.
inline bool plane_on_hypersurface(const PlaneRep& plane,
                                  const CompiledPoly& pf) {
  const std::int64_t p = plane.p;
  const int k = plane.k;
  const int n = pf.nvars;
  std::vector<std::int64_t> coef(static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> pt(static_cast<std::size_t>(n), 0);
  // projective points: first nonzero coefficient normalized to 1
  for (int lead = 0; lead < k; ++lead) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(k - lead - 1), 0);
    while (true) {
      std::fill(coef.begin(), coef.end(), 0);
      coef[static_cast<std::size_t>(lead)] = 1;
      for (int i = 0; i < k - lead - 1; ++i)
        coef[static_cast<std::size_t>(lead + 1 + i)] =
            digits[static_cast<std::size_t>(i)];
      for (int c = 0; c < n; ++c) {
        std::int64_t v = 0;
        for (int r = 0; r < k; ++r)
          v += coef[static_cast<std::size_t>(r)] *
               plane.rows[static_cast<std::size_t>(r)]
                         [static_cast<std::size_t>(c)];
        pt[static_cast<std::size_t>(c)] = v % p;
      }
      if (pf.eval(pt, p) != 0) return false;
      std::size_t i = 0;
      for (; i < digits.size(); ++i) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
      if (i == digits.size()) break;
    }
  }
  return true;
}

// Number of projective F_p-points of the hypersurface pf = 0 in P^{d'-1}.
inline std::uint64_t count_hypersurface_points(const Poly& pf, std::int64_t p,
                                               bool force = false) {
  if (!force) {
    if (!is_prime(p)) throw validation_error("p must be prime");
    if (p > 31 || pf.vars().size() > 6)
      throw resource_error(
          "point count guarded to p <= 31, d' <= 6 (use --force)");
  }
  CompiledPoly cp = CompiledPoly::compile(pf, p);
  int dprime = static_cast<int>(pf.vars().size());
  std::uint64_t count = 0;
  for_each_subspace(1, dprime, p, [&](const PlaneRep& pl) {
    if (plane_on_hypersurface(pl, cp)) ++count;
  });
  return count;
}

// Rank over F_p of the augmented relation matrix (M(v_1)|...|M(v_k)); the
// corank d - rank decides which exceptional factor a Fano class carries.
inline int corank_of_plane(const GroupPresentation& pres,
                           const PlaneRep& plane) {
  const std::int64_t p = plane.p;
  const int d = pres.d();
  const int k = plane.k;
  std::vector<std::vector<std::int64_t>> mat(
      static_cast<std::size_t>(d),
      std::vector<std::int64_t>(static_cast<std::size_t>(k) * d, 0));
  for (int t = 0; t < k; ++t) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        mat[static_cast<std::size_t>(i)]
           [static_cast<std::size_t>(t) * d + static_cast<std::size_t>(j)] =
            pres.entry(i, j).eval(plane.rows[static_cast<std::size_t>(t)], p);
  }
  // Gaussian elimination mod p
  int rank = 0;
  std::size_t cols = static_cast<std::size_t>(k) * d;
  for (std::size_t c = 0; c < cols && rank < d; ++c) {
    int pivot = -1;
    for (int r = rank; r < d; ++r)
      if (mat[static_cast<std::size_t>(r)][c] % p != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(mat[static_cast<std::size_t>(rank)],
              mat[static_cast<std::size_t>(pivot)]);
    std::int64_t inv = 1, a = mat[static_cast<std::size_t>(rank)][c] % p;
    for (std::int64_t x = 1; x < p; ++x)
      if (a * x % p == 1) {
        inv = x;
        break;
      }
    for (std::size_t cc = 0; cc < cols; ++cc)
      mat[static_cast<std::size_t>(rank)][cc] =
          mat[static_cast<std::size_t>(rank)][cc] * inv % p;
    for (int r = 0; r < d; ++r) {
      if (r == rank) continue;
      std::int64_t f = mat[static_cast<std::size_t>(r)][c] % p;
      if (f == 0) continue;
      for (std::size_t cc = 0; cc < cols; ++cc) {
        auto& x = mat[static_cast<std::size_t>(r)][cc];
        x = ((x - f * mat[static_cast<std::size_t>(rank)][cc]) % p + p) % p;
      }
    }
    ++rank;
  }
  return d - rank;
}

// Number of (k-1)-planes (projective) contained in the hypersurface.
inline std::uint64_t count_fano(int k, const Poly& pf, std::int64_t p,
                                bool force = false) {
  CompiledPoly cp = CompiledPoly::compile(pf, p);
  int dprime = static_cast<int>(pf.vars().size());
  if (k > dprime) return 0;
  auto classes = classify_subspaces(
      k, dprime, p,
      [&](const PlaneRep& pl) { return plane_on_hypersurface(pl, cp) ? 1 : 0; },
      force);
  auto it = classes.find(1);
  return it == classes.end() ? 0 : it->second;
}

// Generic Fano dimension i(d'-i) - C(d/2 + i - 1, i - 1); only meaningful
// for d/2 >= 3 (quadrics are handled by classification instead).  Negative
// values signal an empty Fano variety.
inline std::optional<long long> expected_fano_dimension(int d, int dprime,
                                                        int i) {
  if (i < 1) throw validation_error("expected_fano_dimension needs i >= 1");
  if (d / 2 < 3) return std::nullopt;
  Int b = binomial(d / 2 + i - 1, i - 1);
  Int v = Int(i) * (dprime - i) - b;
  return v.convert_to<long long>();
}

// Summary of one Fano class at plane-level i: same-corank components merged,
// since the main formula is linear in the point counts.
struct FanoClassSummary {
  int level = 1;        // i: (i-1)-planes
  int corank = 0;       // 0, 1 or 2
  long long dimension = -1;
  long long codimension = -1;  // i(d'-i) - dimension
  std::map<std::int64_t, Int> counts;  // prime -> point count
  bool delta = false;   // contributes an exceptional factor iff corank > 0
  std::optional<Poly> count_poly;  // in p, when counts fit one polynomial
  bool dimension_inferred = false;
};

struct SuppliedComponent {
  int level = 0;
  int corank = 1;
  long long dimension = 0;
  std::map<std::int64_t, Int> counts;
};

// Least-degree integer polynomial through all (p, value) points.  With
// require_holdout, at least one held-out point must confirm the degree;
// callers that already know the dimension may relax that.  This is the
// dimension inference and the symbolic-substitution test in one mechanism.
inline std::optional<Poly> fit_integer_polynomial(
    const std::map<std::int64_t, Int>& pts, bool require_holdout = true) {
  if (pts.size() < 2) return std::nullopt;
  std::vector<std::pair<Int, Int>> xy(pts.begin(), pts.end());
  std::size_t n = xy.size();
  for (std::size_t deg = 0; deg + 1 <= n; ++deg) {
    if (require_holdout && deg + 2 > n) break;
    // Newton interpolation through the first deg+1 points, exactness checked
    // on the remainder.  Divided differences must stay integral.
    std::vector<Int> xs, coef;
    std::vector<Int> col;
    bool ok = true;
    for (std::size_t i = 0; i <= deg && ok; ++i) {
      xs.push_back(xy[i].first);
      Int v = xy[i].second;
      for (std::size_t j = 0; j < i; ++j) {
        Int dx = xs[i] - xs[j];
        Int numn = v - col[j];
        if (numn % dx != 0) {
          ok = false;
          break;
        }
        v = numn / dx;
      }
      if (!ok) break;
      col.push_back(v);
    }
    if (!ok) continue;
    // build the polynomial
    Poly f(polyring::p_var());
    Poly acc = Poly::constant(polyring::p_var(), 1);
    for (std::size_t i = 0; i <= deg; ++i) {
      f += acc * col[i];
      Poly lin = Poly::variable(polyring::p_var(), 0) -
                 Poly::constant(polyring::p_var(), xs[i]);
      acc *= lin;
    }
    bool fits = true;
    for (std::size_t i = deg + 1; i < n; ++i) {
      auto v = f.eval({xy[i].first});
      if (!v || *v != xy[i].second) {
        fits = false;
        break;
      }
    }
    if (fits && f.degree(0) == static_cast<int>(deg)) return f;
    if (fits && deg > 0) return std::nullopt;  // degenerate fit, distrust
    if (fits) return f;
  }
  return std::nullopt;
}

struct ClassifyOptions {
  bool force = false;
  std::vector<SuppliedComponent> supplied;
};

// Partition the (i-1)-planes on the Pfaffian by corank and attach dimension
// data: supplied components win, then the generic-dimension formula, then a
// polynomial fit across primes.  Refuses to guess when inference fails.
inline std::vector<FanoClassSummary> classify_fano(
    const GroupPresentation& pres, int level,
    const std::vector<std::int64_t>& primes, const ClassifyOptions& opt = {}) {
  if (level < 1 || level > pres.dprime())
    throw validation_error("fano level out of range");
  for (std::size_t a = 0; a < primes.size(); ++a)
    for (std::size_t b = a + 1; b < primes.size(); ++b)
      if (primes[a] == primes[b])
        throw validation_error("primes must be pairwise distinct");

  // user-supplied components take precedence
  std::vector<FanoClassSummary> out;
  bool any_supplied = false;
  for (const auto& s : opt.supplied)
    if (s.level == level) {
      any_supplied = true;
      FanoClassSummary cls;
      cls.level = level;
      cls.corank = s.corank;
      cls.dimension = s.dimension;
      cls.codimension = static_cast<long long>(level) *
                            (pres.dprime() - level) - s.dimension;
      cls.counts = s.counts;
      cls.delta = s.corank > 0;
      cls.count_poly = fit_integer_polynomial(s.counts, false);
      out.push_back(std::move(cls));
    }
  if (any_supplied) return out;

  Poly pf = pres.pfaffian();
  std::map<int, std::map<std::int64_t, Int>> by_corank;  // corank -> p -> n
  for (std::int64_t p : primes) {
    if (!is_prime(p)) throw validation_error("fano primes must be prime");
    CompiledPoly cp = CompiledPoly::compile(pf, p);
    auto classes = classify_subspaces(
        level, pres.dprime(), p,
        [&](const PlaneRep& pl) {
          if (!plane_on_hypersurface(pl, cp)) return -1;
          return corank_of_plane(pres, pl);
        },
        opt.force);
    for (const auto& [label, count] : classes) {
      if (label < 0) continue;
      by_corank[label][p] += count;
    }
  }

  for (auto& [corank, counts] : by_corank) {
    FanoClassSummary cls;
    cls.level = level;
    cls.corank = corank;
    for (std::int64_t p : primes)
      cls.counts[p] = counts.count(p) ? counts[p] : 0;
    cls.delta = corank > 0;
    long long n_i = static_cast<long long>(level) * (pres.dprime() - level);
    if (corank == 2 && level == 1) {
      // point case: the class is the hypersurface itself
      cls.dimension = pres.dprime() - 2;
      cls.count_poly = fit_integer_polynomial(cls.counts, false);
    } else {
      auto expected = expected_fano_dimension(pres.d(), pres.dprime(), level);
      if (expected) {
        cls.dimension = *expected;
        cls.count_poly = fit_integer_polynomial(cls.counts, false);
      } else {
        // inference path: the fit must survive a held-out prime
        cls.count_poly = fit_integer_polynomial(cls.counts, true);
        if (!cls.count_poly)
          throw missing_data_error(
              "cannot infer Fano dimension at level " + std::to_string(level) +
              " (corank " + std::to_string(corank) +
              "): needs supplied component data");
        cls.dimension = cls.count_poly->degree(0);
        cls.dimension_inferred = true;
      }
    }
    cls.codimension = n_i - cls.dimension;
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace pfz::fpgeom
