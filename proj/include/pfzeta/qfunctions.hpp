#pragma once

#include <vector>

#include "pfzeta/rational.hpp"

namespace pfz::polyring {

// Number of k-dimensional subspaces of F_p^n, as a polynomial in p.
inline Poly gaussian_binomial(int n, int k) {
  if (k < 0 || k > n || n < 0)
    throw validation_error("gaussian_binomial out of range");
  // C(n,k)_p = C(n-1,k-1)_p + p^k C(n-1,k)_p
  std::vector<Poly> row(static_cast<std::size_t>(k) + 1, Poly(p_var()));
  row[0] = Poly::constant(p_var(), 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      Poly t = row[static_cast<std::size_t>(j)].shift(0, j);
      row[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j) - 1] + t;
    }
  }
  return row[static_cast<std::size_t>(k)];
}

// Number of flags of type I in F_p^n:  b_I = C(n, i_l) C(i_l, i_{l-1}) ...
inline Poly flag_count(const std::vector<int>& I, int n) {
  for (std::size_t j = 0; j < I.size(); ++j) {
    if (I[j] < 1 || I[j] > n) throw validation_error("flag index out of range");
    if (j > 0 && I[j] <= I[j - 1])
      throw validation_error("flag index set must be strictly increasing");
  }
  Poly r = Poly::constant(p_var(), 1);
  int upper = n;
  for (std::size_t j = I.size(); j-- > 0;) {
    r *= gaussian_binomial(upper, I[j]);
    upper = I[j];
  }
  return r;
}

// Dimension of the flag variety of type I in n-space: sum of block-size
// products over the blocks cut out by I together with the top block.
inline long long flag_dimension(const std::vector<int>& I, int n) {
  std::vector<int> sizes;
  int prev = 0;
  for (int i : I) {
    sizes.push_back(i - prev);
    prev = i;
  }
  if (n > prev) sizes.push_back(n - prev);
  long long dim = 0;
  for (std::size_t a = 0; a < sizes.size(); ++a)
    for (std::size_t b = a + 1; b < sizes.size(); ++b)
      dim += static_cast<long long>(sizes[a]) * sizes[b];
  return dim;
}

// The Igusa factor I_n(U) = sum over I subset {1..n} of
// b_I(p^{-1}) prod_{i in I} U_i / (1 - U_i), with U_i = p^{a_i} t^{b_i}.
// I_0 (and anything lower) is the constant 0, the convention the main
// formula uses for boundary terms; assembly handles empty products itself.
inline RationalFn igusa_factor(const std::vector<GeomFactor>& U) {
  const int n = static_cast<int>(U.size());
  if (n <= 0) return RationalFn::zero();
  for (const auto& u : U)
    if (u.texp < 1) throw validation_error("Igusa data needs t-exponent >= 1");
  RationalFn total = RationalFn::zero();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) I.push_back(i + 1);
    Poly b = flag_count(I, n + 1).invert_var(0).lifted(pt_vars());
    RationalFn term(std::move(b));
    for (int i : I) term = term * RationalFn::geometric_term(
                               U[static_cast<std::size_t>(i - 1)].pexp,
                               U[static_cast<std::size_t>(i - 1)].texp);
    total = total + term;
  }
  return total;
}

// Exceptional factor (p^{-d_iota} Y - p^{-n_i} X) / ((1-X)(1-Y)) carrying a
// Fano component's numerical data.
inline RationalFn exceptional_factor(GeomFactor X, GeomFactor Y,
                                     long long grassmann_dim,
                                     long long fano_dim) {
  if (fano_dim < 0 || grassmann_dim < fano_dim)
    throw validation_error("exceptional factor needs n_i >= d_iota >= 0");
  Poly num = Poly::monomial(
      pt_vars(),
      {static_cast<int>(Y.pexp - fano_dim), static_cast<int>(Y.texp)}, 1);
  num.add_term(
      {static_cast<int>(X.pexp - grassmann_dim), static_cast<int>(X.texp)},
      -1);
  return RationalFn(std::move(num), {X, Y});
}

}  // namespace pfz::polyring
