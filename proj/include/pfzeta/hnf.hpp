#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pfzeta/common.hpp"

namespace pfz::oracle {

// Row-style Hermite normal form basis of a finite-index sublattice of Z^n:
// row i is p^{e_i} * unit_i plus entries in columns j > i reduced modulo
// p^{e_j}.  Every sublattice of p-power index appears exactly once.
struct SublatticeHNF {
  int n = 0;
  std::int64_t p = 2;
  std::vector<int> diag_exp;                        // e_i
  std::vector<std::vector<std::int64_t>> rows;      // n x n
  long long index_exp = 0;                          // sum of e_i

  bool contained_in_pZn() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] %
                p !=
            0)
          return false;
    return true;
  }
  bool maximal() const { return !contained_in_pZn(); }
};

namespace detail {

template <typename Fn>
void compositions(int total, int parts, std::vector<int>& cur, Fn&& fn) {
  if (parts == 1) {
    cur.push_back(total);
    fn(cur);
    cur.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, fn);
    cur.pop_back();
  }
}

}  // namespace detail

// Visit every sublattice of Z^n of index p^w.
template <typename Fn>
void for_each_sublattice(int n, std::int64_t p, int w, Fn&& fn) {
  std::vector<int> cur;
  detail::compositions(w, n, cur, [&](const std::vector<int>& e) {
    SublatticeHNF L;
    L.n = n;
    L.p = p;
    L.diag_exp = e;
    L.index_exp = w;
    L.rows.assign(static_cast<std::size_t>(n),
                  std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    std::vector<std::int64_t> colmod(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      colmod[static_cast<std::size_t>(i)] =
          ll_pow(p, static_cast<unsigned>(e[static_cast<std::size_t>(i)]));
      L.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
          colmod[static_cast<std::size_t>(i)];
    }
    // odometer over the above-diagonal entries
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (colmod[static_cast<std::size_t>(j)] > 1) free_pos.push_back({i, j});
    std::vector<std::int64_t> digits(free_pos.size(), 0);
    while (true) {
      fn(L);
      std::size_t k = 0;
      for (; k < free_pos.size(); ++k) {
        auto [i, j] = free_pos[k];
        if (++digits[k] < colmod[static_cast<std::size_t>(j)]) {
          L.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              digits[k];
          break;
        }
        digits[k] = 0;
        L.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
      }
      if (k == free_pos.size()) break;
    }
  });
}

inline std::uint64_t sublattice_count(int n, std::int64_t p, int w) {
  // h_w(1, p, ..., p^{n-1}) via the HNF cell sizes
  std::uint64_t total = 0;
  std::vector<int> cur;
  detail::compositions(w, n, cur, [&](const std::vector<int>& e) {
    Int cell = 1;
    for (int j = 0; j < n; ++j)
      cell *= int_pow(Int(p),
                      static_cast<unsigned long long>(
                          e[static_cast<std::size_t>(j)]) *
                          static_cast<unsigned long long>(j));
    Int t = Int(total) + cell;
    total = t > Int(UINT64_MAX) ? UINT64_MAX : t.convert_to<std::uint64_t>();
  });
  return total;
}

// Adjugate of an upper-triangular basis matrix: adj = det * B^{-1}, exact.
// x is in the row space of B  iff  x * adj == 0 mod det.
inline std::vector<std::vector<std::int64_t>> adjugate_upper(
    const SublatticeHNF& L) {
  const int n = L.n;
  std::int64_t det = 1;
  for (int i = 0; i < n; ++i)
    det *= L.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  std::vector<std::vector<std::int64_t>> inv(
      static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  // back substitution, scaled by det: solve B^T ... we need adj with
  // x*adj = det * (coefficients of x in the basis), i.e. adj = det B^{-1}.
  for (int col = 0; col < n; ++col) {
    // solve y B = det * e_col  for row vector y: y_j determined from j = col
    // downward since B is upper triangular
    std::vector<std::int64_t> y(static_cast<std::size_t>(n), 0);
    for (int j = col; j >= 0; --j) {
      std::int64_t acc = (j == col) ? det : 0;
      for (int k = j + 1; k <= col; ++k)
        acc -= y[static_cast<std::size_t>(k)] *
               L.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      y[static_cast<std::size_t>(j)] =
          acc /
          L.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < n; ++j)
      inv[static_cast<std::size_t>(j)][static_cast<std::size_t>(col)] =
          y[static_cast<std::size_t>(j)];
  }
  return inv;
}

// p-adic Smith valuations of an integer matrix taken mod p^N: returns the
// pivot valuations (each < N); entries that vanish mod p^N contribute none.
// Row and column operations over Z/p^N preserve the row-module size, which
// is all the index computations need.
inline std::vector<int> snf_valuations_mod(
    std::vector<std::vector<std::int64_t>> m, std::int64_t p, int N) {
  const std::int64_t mod = ll_pow(p, static_cast<unsigned>(N));
  const std::size_t R = m.size();
  if (R == 0) return {};
  const std::size_t C = m[0].size();
  for (auto& row : m)
    for (auto& x : row) x = ((x % mod) + mod) % mod;

  auto val = [&](std::int64_t x) {
    if (x == 0) return N;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  auto inv_unit = [&](std::int64_t u) {
    // modular inverse of a unit mod p^N by extended Euclid
    std::int64_t a = u % mod, b = mod, x0 = 1, x1 = 0;
    while (b) {
      std::int64_t q = a / b;
      a -= q * b;
      std::swap(a, b);
      x0 -= q * x1;
      std::swap(x0, x1);
    }
    return ((x0 % mod) + mod) % mod;
  };

  std::vector<int> pivots;
  std::size_t top = 0;
  std::vector<bool> col_done(C, false);
  while (top < R) {
    int best_v = N;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = top; i < R; ++i)
      for (std::size_t j = 0; j < C; ++j) {
        if (col_done[j] || m[i][j] == 0) continue;
        int v = val(m[i][j]);
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
        }
      }
    if (best_v >= N) break;
    std::swap(m[top], m[bi]);
    std::int64_t piv = m[top][bj];
    std::int64_t unit = piv / ll_pow(p, static_cast<unsigned>(best_v));
    std::int64_t uinv = inv_unit(unit);
    for (std::size_t i = top + 1; i < R; ++i) {
      if (m[i][bj] == 0) continue;
      // m[i] -= (m[i][bj]/piv) * m[top]; the ratio is integral mod p^N since
      // the pivot has minimal valuation
      std::int64_t ratio =
          static_cast<std::int64_t>((__int128)(m[i][bj] /
                                               ll_pow(p, static_cast<unsigned>(
                                                             best_v))) *
                                    uinv % mod);
      for (std::size_t j = 0; j < C; ++j) {
        __int128 t = (__int128)m[i][j] - (__int128)ratio * m[top][j];
        m[i][j] = static_cast<std::int64_t>(((t % mod) + mod) % mod);
      }
    }
    col_done[bj] = true;
    pivots.push_back(best_v);
    ++top;
  }
  return pivots;
}

// Exact Smith normal form p-exponents of an HNF basis (det = p^w, so all
// valuations are <= w and computing mod p^{w+1} is exact).
inline std::vector<int> smith_exponents(const SublatticeHNF& L) {
  int N = static_cast<int>(L.index_exp) + 1;
  auto piv =
      snf_valuations_mod(L.rows, L.p, N);
  std::vector<int> out = piv;
  while (static_cast<int>(out.size()) < L.n) out.push_back(0);
  std::sort(out.begin(), out.end(), std::greater<int>());
  return out;
}

// Elementary divisor type (I, r_I): I lists the block boundaries where the
// sorted Smith exponents drop; r the successive differences.  The index d'
// itself appears when the lattice is not maximal in its homothety class.
struct TypeData {
  std::vector<int> levels;       // subset of {1..n}
  std::vector<int> exponents;    // r value per level, same length
};

inline TypeData elementary_divisor_type(const SublatticeHNF& L) {
  std::vector<int> f = smith_exponents(L);  // descending, length n
  TypeData t;
  for (int i = 0; i < L.n; ++i) {
    int next = (i + 1 < L.n) ? f[static_cast<std::size_t>(i + 1)] : 0;
    int drop = f[static_cast<std::size_t>(i)] - next;
    if (drop > 0) {
      t.levels.push_back(i + 1);
      t.exponents.push_back(drop);
    }
  }
  return t;
}

}  // namespace pfz::oracle
