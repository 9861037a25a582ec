#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfzeta/common.hpp"

namespace pfz::polyring {

using VarList = std::vector<std::string>;

// Sparse multivariate polynomial over Z with integer (possibly negative)
// exponents.  Negative exponents carry the p^{-1} data that flag counts
// b_I(p^{-1}) and variable inversions introduce.  No zero coefficients are
// stored; exponent vectors always match the variable list length.
class Poly {
 public:
  using Exps = std::vector<int>;

  Poly() = default;
  explicit Poly(VarList vars) : vars_(std::move(vars)) {}

  static Poly constant(VarList vars, Int c) {
    Poly r(std::move(vars));
    if (c != 0) r.terms_[Exps(r.vars_.size(), 0)] = std::move(c);
    return r;
  }

  static Poly monomial(VarList vars, Exps e, Int c) {
    Poly r(std::move(vars));
    if (e.size() != r.vars_.size())
      throw validation_error("monomial exponent arity mismatch");
    if (c != 0) r.terms_[std::move(e)] = std::move(c);
    return r;
  }

  static Poly variable(VarList vars, std::size_t idx, int power = 1) {
    Exps e(vars.size(), 0);
    e.at(idx) = power;
    return monomial(std::move(vars), std::move(e), 1);
  }

  const VarList& vars() const { return vars_; }
  const std::map<Exps, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Exps& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  }

  Int constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw validation_error("poly is not constant");
    return terms_.begin()->second;
  }

  void add_term(const Exps& e, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  Poly operator-() const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_ring(b);
    Poly r(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exps e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(Poly a, const Int& k) {
    if (k == 0) return Poly(a.vars_);
    for (auto& [e, c] : a.terms_) c *= k;
    return a;
  }
  friend Poly operator*(const Int& k, Poly a) { return std::move(a) * k; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(vars_, 1);
    Poly b = *this;
    while (e) {
      if (e & 1) r *= b;
      if (e >>= 1) b *= b;
    }
    return r;
  }

  int degree(std::size_t var) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[var] > d) d = e[var];
      first = false;
    }
    return d;
  }

  int low_degree(std::size_t var) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[var] < d) d = e[var];
      first = false;
    }
    return d;
  }

  // p -> p^{-1} style substitution: negate every exponent of one variable.
  Poly invert_var(std::size_t var) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exps f = e;
      f[var] = -f[var];
      r.terms_[std::move(f)] = c;
    }
    return r;
  }

  Poly shift(std::size_t var, int by) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exps f = e;
      f[var] += by;
      r.terms_[std::move(f)] = c;
    }
    return r;
  }

  // Substitute a polynomial for one variable.  Exponents of that variable
  // must be non-negative.
  Poly substituted(std::size_t var, const Poly& value) const {
    value.check_same_ring(Poly(vars_));
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] < 0)
        throw validation_error("cannot substitute into a negative exponent");
      Exps f = e;
      f[var] = 0;
      r += monomial(vars_, f, c) * value.pow(static_cast<unsigned>(e[var]));
    }
    return r;
  }

  // Exact evaluation of a one-or-more variable Laurent polynomial at integer
  // points.  Returns nullopt when a negative exponent does not divide out.
  std::optional<Int> eval(const std::vector<Int>& point) const {
    if (point.size() != vars_.size())
      throw validation_error("eval arity mismatch");
    Int num = 0;     // accumulated value scaled by prod point[i]^{shift[i]}
    std::vector<int> shift(vars_.size(), 0);
    for (std::size_t v = 0; v < vars_.size(); ++v)
      shift[v] = std::max(0, -low_degree(v));
    for (const auto& [e, c] : terms_) {
      Int t = c;
      for (std::size_t v = 0; v < vars_.size(); ++v)
        t *= int_pow(point[v], static_cast<unsigned long long>(e[v] + shift[v]));
      num += t;
    }
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      Int scale = int_pow(point[v], static_cast<unsigned long long>(shift[v]));
      if (scale == 0) return std::nullopt;
      if (num % scale != 0) return std::nullopt;
      num /= scale;
    }
    return num;
  }

  // Collect coefficients of one variable: result[k] = coefficient of var^k as
  // a polynomial in the remaining ring (variable kept with exponent 0).
  std::map<int, Poly> coefficients_of(std::size_t var) const {
    std::map<int, Poly> out;
    for (const auto& [e, c] : terms_) {
      Exps f = e;
      int k = f[var];
      f[var] = 0;
      auto it = out.find(k);
      if (it == out.end()) it = out.emplace(k, Poly(vars_)).first;
      it->second.add_term(f, c);
    }
    return out;
  }

  // Exact division; nullopt if the divisor does not divide.  Laurent content
  // is factored out first so ordinary lex division applies.
  std::optional<Poly> divided_exact(const Poly& divisor) const {
    check_same_ring(divisor);
    if (divisor.is_zero()) throw validation_error("division by zero poly");
    if (is_zero()) return Poly(vars_);
    const std::size_t nv = vars_.size();
    Exps sa(nv), sb(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      sa[v] = low_degree(v);
      sb[v] = divisor.low_degree(v);
    }
    Poly a(vars_), b(vars_);
    for (const auto& [e, c] : terms_) {
      Exps f(nv);
      for (std::size_t v = 0; v < nv; ++v) f[v] = e[v] - sa[v];
      a.terms_[std::move(f)] = c;
    }
    for (const auto& [e, c] : divisor.terms_) {
      Exps f(nv);
      for (std::size_t v = 0; v < nv; ++v) f[v] = e[v] - sb[v];
      b.terms_[std::move(f)] = c;
    }
    // lex-leading term of b
    const auto& ltb = *b.terms_.rbegin();
    Poly q(vars_);
    Poly r = a;
    while (!r.is_zero()) {
      const auto& ltr = *r.terms_.rbegin();
      Exps qe(nv);
      for (std::size_t v = 0; v < nv; ++v) {
        qe[v] = ltr.first[v] - ltb.first[v];
        if (qe[v] < 0) return std::nullopt;
      }
      if (ltr.second % ltb.second != 0) return std::nullopt;
      Poly m = monomial(vars_, qe, ltr.second / ltb.second);
      q += m;
      r -= m * b;
    }
    Exps qs(nv);
    for (std::size_t v = 0; v < nv; ++v) qs[v] = sa[v] - sb[v];
    Poly out(vars_);
    for (const auto& [e, c] : q.terms_) {
      Exps f(nv);
      for (std::size_t v = 0; v < nv; ++v) f[v] = e[v] + qs[v];
      out.terms_[std::move(f)] = c;
    }
    return out;
  }

  // Re-embed into a ring with more variables, matching by name.
  Poly lifted(const VarList& target) const {
    std::vector<std::size_t> pos(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      auto it = std::find(target.begin(), target.end(), vars_[v]);
      if (it == target.end())
        throw validation_error("lift target lacks variable " + vars_[v]);
      pos[v] = static_cast<std::size_t>(it - target.begin());
    }
    Poly r(target);
    for (const auto& [e, c] : terms_) {
      Exps f(target.size(), 0);
      for (std::size_t v = 0; v < vars_.size(); ++v) f[pos[v]] = e[v];
      r.terms_[std::move(f)] = c;
    }
    return r;
  }

  enum class TermOrder { lex_desc, last_var_major };

  std::string str(TermOrder order = TermOrder::lex_desc) const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Exps, Int>*> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(&t);
    if (order == TermOrder::lex_desc) {
      std::reverse(ts.begin(), ts.end());
    } else {
      std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
        const Exps &ea = a->first, &eb = b->first;
        for (std::size_t i = ea.size(); i-- > 0;)
          if (ea[i] != eb[i]) return ea[i] < eb[i];
        return false;
      });
    }
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
      Int c = t->second;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      std::string mono = monomial_str(t->first);
      if (mono.empty()) {
        os << c.str();
      } else {
        if (c != 1) os << c.str() << "*";
        os << mono;
      }
    }
    return os.str();
  }

 private:
  void check_same_ring(const Poly& o) const {
    if (vars_ != o.vars_)
      throw validation_error("polynomial rings differ");
  }

  std::string monomial_str(const Exps& e) const {
    std::string s;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!s.empty()) s += "*";
      s += vars_[v];
      if (e[v] != 1) s += "^" + std::to_string(e[v]);
    }
    return s;
  }

  VarList vars_;
  std::map<Exps, Int> terms_;
};

inline const VarList& pt_vars() {
  static const VarList v{"p", "t"};
  return v;
}

inline const VarList& p_var() {
  static const VarList v{"p"};
  return v;
}

inline VarList y_vars(int dprime) {
  VarList v;
  v.reserve(dprime);
  for (int i = 1; i <= dprime; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

// --- a small recursive-descent parser for the plain-text grammar ---------

namespace detail {

struct PolyParser {
  const std::string& s;
  std::size_t i = 0;
  const VarList& vars;

  explicit PolyParser(const std::string& str, const VarList& v)
      : s(str), vars(v) {}

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }

  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw validation_error("parse error at position " + std::to_string(i) +
                           ": " + why);
  }

  Int parse_int() {
    skip_ws();
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    std::size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) fail("expected integer");
    Int v(s.substr(i, k - i));
    i = k;
    return v;
  }

  // longest-match lookup so y1 does not swallow the front of y12
  std::optional<std::size_t> try_var() {
    skip_ws();
    std::optional<std::size_t> best;
    std::size_t best_len = 0;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const std::string& name = vars[v];
      if (name.size() > best_len && s.compare(i, name.size(), name) == 0) {
        best = v;
        best_len = name.size();
      }
    }
    if (best) i += best_len;
    return best;
  }

  // term := [int ['*']] (var ['^' int] ['*'])*
  Poly parse_term() {
    skip_ws();
    Int coef = 1;
    bool any = false;
    Poly::Exps e(vars.size(), 0);
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = parse_int();
      any = true;
      eat('*');
    }
    while (true) {
      auto v = try_var();
      if (!v) break;
      any = true;
      int power = 1;
      if (eat('^')) {
        Int p = parse_int();
        power = static_cast<int>(p.convert_to<long long>());
      }
      e[*v] += power;
      eat('*');
    }
    if (!any) fail("expected term");
    return Poly::monomial(vars, e, coef);
  }

  Poly parse_poly() {
    Poly r(vars);
    bool neg = false;
    skip_ws();
    if (eat('-'))
      neg = true;
    else
      eat('+');
    while (true) {
      Poly t = parse_term();
      r += neg ? -t : t;
      skip_ws();
      if (eat('-'))
        neg = true;
      else if (eat('+'))
        neg = false;
      else
        break;
    }
    return r;
  }
};

}  // namespace detail

inline Poly parse_poly(const std::string& text, const VarList& vars) {
  detail::PolyParser pp(text, vars);
  Poly r = pp.parse_poly();
  pp.skip_ws();
  if (pp.i != text.size()) pp.fail("trailing input");
  return r;
}

}  // namespace pfz::polyring
