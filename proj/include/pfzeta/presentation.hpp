#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfzeta/poly.hpp"

namespace pfz::presentation {

using polyring::Poly;
using polyring::VarList;

// A linear form in y_1..y_{d'}: the entries of the relation matrix.
struct LinearForm {
  std::vector<std::int64_t> coeffs;

  LinearForm() = default;
  explicit LinearForm(int dprime) : coeffs(static_cast<std::size_t>(dprime), 0) {}

  bool is_zero() const {
    for (auto c : coeffs)
      if (c != 0) return false;
    return true;
  }
  LinearForm negated() const {
    LinearForm r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
  }
  std::int64_t eval(const std::vector<std::int64_t>& point,
                    std::int64_t modulus) const {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      v += ((coeffs[i] % modulus) + modulus) % modulus * (point[i] % modulus);
      v %= modulus;
    }
    return v;
  }
};

struct Violation {
  int i = 0;
  int j = 0;
  std::string what;
};

// Class-two presentation data: d generators x_i, d' centre generators y_l,
// m free abelian directions, and the antisymmetric relation matrix
// [x_i, x_j] = M(y)_{ij}.
class GroupPresentation {
 public:
  GroupPresentation(int d, int dprime, int m)
      : d_(d), dprime_(dprime), m_(m),
        entries_(static_cast<std::size_t>(d) * d, LinearForm(dprime)) {
    if (d < 1 || dprime < 1 || m < 0)
      throw validation_error("presentation dimensions out of range");
  }

  int d() const { return d_; }
  int dprime() const { return dprime_; }
  int m() const { return m_; }
  long long hirsch_length() const { return d_ + dprime_ + m_; }

  const LinearForm& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * d_ + j];
  }

  // Set M_{ij} for i < j and fill M_{ji} = -M_{ij}.
  void set_upper(int i, int j, LinearForm f) {
    if (i < 0 || j < 0 || i >= d_ || j >= d_ || i >= j)
      throw validation_error("set_upper needs 0 <= i < j < d");
    entries_[static_cast<std::size_t>(j) * d_ + i] = f.negated();
    entries_[static_cast<std::size_t>(i) * d_ + j] = std::move(f);
  }

  // Raw entry assignment used by the file parser; may break antisymmetry,
  // which validate() then reports.
  void set_raw(int i, int j, LinearForm f) {
    entries_.at(static_cast<std::size_t>(i) * d_ + j) = std::move(f);
  }

  std::vector<Violation> validate() const {
    std::vector<Violation> out;
    if (d_ % 2 != 0) out.push_back({0, 0, "d must be even"});
    for (int i = 0; i < d_; ++i) {
      if (!entry(i, i).is_zero())
        out.push_back({i + 1, i + 1, "diagonal entry must vanish"});
      for (int j = i + 1; j < d_; ++j)
        if (entry(i, j).coeffs != entry(j, i).negated().coeffs)
          out.push_back({i + 1, j + 1, "antisymmetry fails"});
    }
    if (out.empty() && pfaffian().is_zero())
      out.push_back({0, 0, "Pfaffian is identically zero"});
    return out;
  }

  void validate_or_throw() const {
    auto v = validate();
    if (v.empty()) return;
    std::string msg = "invalid presentation:";
    for (const auto& x : v) {
      msg += " [" + std::to_string(x.i) + "," + std::to_string(x.j) + "] " +
             x.what + ";";
    }
    throw validation_error(msg);
  }

  Poly entry_poly(int i, int j) const {
    VarList ys = polyring::y_vars(dprime_);
    Poly r(ys);
    const LinearForm& f = entry(i, j);
    for (int l = 0; l < dprime_; ++l) {
      if (f.coeffs[static_cast<std::size_t>(l)] == 0) continue;
      Poly::Exps e(static_cast<std::size_t>(dprime_), 0);
      e[static_cast<std::size_t>(l)] = 1;
      r.add_term(e, Int(f.coeffs[static_cast<std::size_t>(l)]));
    }
    return r;
  }

  // Pfaffian by first-row expansion, sign-normalized so the lex-leading
  // monomial is positive.  pfaffian^2 = det M as an exact identity.
  Poly pfaffian() const {
    if (d_ % 2 != 0) return Poly(polyring::y_vars(dprime_));
    std::vector<int> idx(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) idx[static_cast<std::size_t>(i)] = i;
    Poly pf = pfaffian_rec(idx);
    if (!pf.is_zero() && pf.terms().rbegin()->second < 0) pf = -pf;
    return pf;
  }

  Poly determinant() const {
    std::vector<int> rows, cols;
    for (int i = 0; i < d_; ++i) {
      rows.push_back(i);
      cols.push_back(i);
    }
    return det_rec(rows, cols);
  }

  // Substitute a point into every linear form, mod p^N.
  std::vector<std::vector<std::int64_t>> evaluate_relation_matrix(
      const std::vector<std::int64_t>& point, std::int64_t modulus) const {
    if (modulus < 2) throw validation_error("modulus must be >= 2");
    if (static_cast<int>(point.size()) != dprime_)
      throw validation_error("point length must equal d'");
    std::vector<std::vector<std::int64_t>> M(
        static_cast<std::size_t>(d_),
        std::vector<std::int64_t>(static_cast<std::size_t>(d_), 0));
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j)
        M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            entry(i, j).eval(point, modulus);
    return M;
  }

  // Bracket coefficient tensor: c[i][j][l] is the y_l coefficient of
  // [x_i, x_j].  Used by the congruence solvers and the oracles.
  std::int64_t bracket_coeff(int i, int j, int l) const {
    return entry(i, j).coeffs[static_cast<std::size_t>(l)];
  }

  std::string describe() const {
    std::ostringstream os;
    os << "d=" << d_ << " d'=" << dprime_ << " m=" << m_;
    return os.str();
  }

 private:
  Poly pfaffian_rec(const std::vector<int>& idx) const {
    VarList ys = polyring::y_vars(dprime_);
    if (idx.empty()) return Poly::constant(ys, 1);
    Poly r(ys);
    for (std::size_t j = 1; j < idx.size(); ++j) {
      Poly e = entry_poly(idx[0], idx[j]);
      if (e.is_zero()) continue;
      std::vector<int> rest;
      for (std::size_t k = 1; k < idx.size(); ++k)
        if (k != j) rest.push_back(idx[k]);
      Poly sub = pfaffian_rec(rest);
      if (j % 2 == 1)
        r += e * sub;
      else
        r -= e * sub;
    }
    return r;
  }

  Poly det_rec(const std::vector<int>& rows, const std::vector<int>& cols) const {
    VarList ys = polyring::y_vars(dprime_);
    if (rows.empty()) return Poly::constant(ys, 1);
    Poly r(ys);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Poly e = entry_poly(rows[0], cols[j]);
      if (e.is_zero()) continue;
      std::vector<int> subrows(rows.begin() + 1, rows.end());
      std::vector<int> subcols;
      for (std::size_t k = 0; k < cols.size(); ++k)
        if (k != j) subcols.push_back(cols[k]);
      Poly sub = det_rec(subrows, subcols);
      if (j % 2 == 0)
        r += e * sub;
      else
        r -= e * sub;
    }
    return r;
  }

  int d_;
  int dprime_;
  int m_;
  std::vector<LinearForm> entries_;
};

inline LinearForm unit_form(int dprime, int l) {
  LinearForm f(dprime);
  f.coeffs[static_cast<std::size_t>(l - 1)] = 1;
  return f;
}

// Presets: the worked quadric-surface example, the Heisenberg group, the
// U3 filiform-type group with an ordinary double point, the cubic-surface
// group of Browning and Heath-Brown, and the degenerate abelian family
// znm(n) (zero relation matrix; rejected by validation).
inline GroupPresentation load_preset(const std::string& name) {
  if (name == "segre") {
    GroupPresentation g(4, 4, 0);
    g.set_upper(0, 2, unit_form(4, 1));
    g.set_upper(0, 3, unit_form(4, 2));
    g.set_upper(1, 2, unit_form(4, 3));
    g.set_upper(1, 3, unit_form(4, 4));
    return g;
  }
  if (name == "heisenberg") {
    GroupPresentation g(2, 1, 0);
    g.set_upper(0, 1, unit_form(1, 1));
    return g;
  }
  if (name == "u3") {
    GroupPresentation g(4, 3, 0);
    g.set_upper(0, 1, unit_form(3, 1));
    g.set_upper(1, 2, unit_form(3, 2));
    g.set_upper(2, 3, unit_form(3, 3));
    return g;
  }
  if (name == "hb-cubic") {
    GroupPresentation g(6, 5, 0);
    g.set_upper(0, 3, unit_form(5, 1));
    g.set_upper(0, 4, unit_form(5, 2));
    g.set_upper(1, 3, unit_form(5, 5));
    g.set_upper(1, 4, unit_form(5, 3));
    g.set_upper(1, 5, unit_form(5, 4));
    g.set_upper(2, 4, unit_form(5, 1));
    g.set_upper(2, 5, unit_form(5, 2));
    return g;
  }
  if (name.rfind("znm(", 0) == 0 && name.back() == ')') {
    int n = std::stoi(name.substr(4, name.size() - 5));
    if (n < 4) throw validation_error("znm(n) needs n >= 4");
    return GroupPresentation(2, 1, n - 3);
  }
  throw validation_error("unknown preset '" + name + "'");
}

// File format: header "d d' m", then lines "i j : c_1 ... c_{d'}" giving the
// coefficients of M_{ij}; '#' starts a comment.  Lines with i < j fill the
// lower triangle by antisymmetry; explicit lower-triangle or diagonal lines
// are kept verbatim so validate() can report inconsistencies.
inline GroupPresentation parse_presentation(std::istream& in) {
  std::string line;
  int d = -1, dprime = -1, m = -1;
  GroupPresentation* gp = nullptr;
  std::optional<GroupPresentation> g;
  std::vector<std::vector<bool>> has_raw;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    if (d < 0) {
      if (!(ls >> d)) {
        d = -1;
        continue;  // blank line before header
      }
      if (!(ls >> dprime >> m))
        throw validation_error("presentation header must be: d d' m");
      g.emplace(d, dprime, m);
      gp = &*g;
      has_raw.assign(static_cast<std::size_t>(d),
                     std::vector<bool>(static_cast<std::size_t>(d), false));
      continue;
    }
    int i, j;
    if (!(ls >> i >> j)) continue;
    std::string colon;
    ls >> colon;
    if (colon != ":")
      throw validation_error("expected ':' in relation line");
    LinearForm f(dprime);
    for (int l = 0; l < dprime; ++l)
      if (!(ls >> f.coeffs[static_cast<std::size_t>(l)]))
        throw validation_error("relation line needs d' coefficients");
    if (i < 1 || j < 1 || i > d || j > d)
      throw validation_error("relation indices out of range");
    has_raw[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
        true;
    gp->set_raw(i - 1, j - 1, std::move(f));
  }
  if (!g) throw validation_error("empty presentation file");
  // fill unspecified lower-triangle entries from the upper triangle
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!has_raw[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        gp->set_raw(j, i, gp->entry(i, j).negated());
  return *g;
}

inline GroupPresentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open presentation file " + path);
  return parse_presentation(in);
}

}  // namespace pfz::presentation
