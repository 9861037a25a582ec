#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfzeta/poly.hpp"

namespace pfz::polyring {

// One denominator factor (1 - p^pexp t^texp); texp >= 1 so the t-adic
// expansion always exists.
struct GeomFactor {
  long long pexp = 0;
  long long texp = 1;

  friend bool operator==(const GeomFactor& a, const GeomFactor& b) {
    return a.pexp == b.pexp && a.texp == b.texp;
  }
  friend bool operator<(const GeomFactor& a, const GeomFactor& b) {
    if (a.texp != b.texp) return a.texp < b.texp;
    return a.pexp < b.pexp;
  }

  Poly as_poly() const {
    Poly r = Poly::constant(pt_vars(), 1);
    r.add_term({static_cast<int>(pexp), static_cast<int>(texp)}, -1);
    return r;
  }
};

struct Proportionality {
  int sign = 1;       // +1 or -1
  long long pexp = 0; // proportionality monomial p^pexp t^texp
  long long texp = 0;
};

// Rational function in (p, t) with the denominator kept as a factored
// multiset of (1 - p^a t^b).  Canonical form cancels every factor that
// divides the numerator exactly; equality is by cross-multiplication.
class RationalFn {
 public:
  RationalFn() : num_(Poly::constant(pt_vars(), 0)) {}

  explicit RationalFn(Poly num, std::vector<GeomFactor> den = {})
      : num_(std::move(num)), den_(std::move(den)) {
    if (num_.vars() != pt_vars())
      throw validation_error("RationalFn numerator must live in Z[p,t]");
    for (const auto& f : den_)
      if (f.texp < 1)
        throw validation_error("geometric factor needs t-exponent >= 1");
    canonicalize();
  }

  static RationalFn zero() { return RationalFn(); }
  static RationalFn one() {
    return RationalFn(Poly::constant(pt_vars(), 1));
  }
  static RationalFn from_int(Int c) {
    return RationalFn(Poly::constant(pt_vars(), std::move(c)));
  }
  static RationalFn monomial(long long pe, long long te, Int c = 1) {
    return RationalFn(Poly::monomial(
        pt_vars(), {static_cast<int>(pe), static_cast<int>(te)}, std::move(c)));
  }
  // p^pe t^te / (1 - p^pe t^te)
  static RationalFn geometric_term(long long pe, long long te) {
    return RationalFn(
        Poly::monomial(pt_vars(), {static_cast<int>(pe), static_cast<int>(te)},
                       1),
        {GeomFactor{pe, te}});
  }
  // 1 / (1 - p^pe t^te), the local factor zeta_p(te*s - pe).
  static RationalFn zeta_factor(long long pe, long long te) {
    return RationalFn(Poly::constant(pt_vars(), 1), {GeomFactor{pe, te}});
  }

  const Poly& num() const { return num_; }
  const std::vector<GeomFactor>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    std::vector<GeomFactor> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return RationalFn(a.num_ * b.num_, std::move(den));
  }
  friend RationalFn operator*(const RationalFn& a, const Poly& q) {
    return RationalFn(a.num_ * q, a.den_);
  }
  friend RationalFn operator*(const RationalFn& a, const Int& k) {
    return RationalFn(a.num_ * k, a.den_);
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    std::vector<GeomFactor> target = merge_lcm(a.den_, b.den_);
    Poly na = a.num_ * product(missing(target, a.den_));
    Poly nb = b.num_ * product(missing(target, b.den_));
    return RationalFn(na + nb, std::move(target));
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return a + (b * Int(-1));
  }

  bool equals(const RationalFn& o) const {
    return num_ * product(o.den_) == o.num_ * product(den_);
  }

  // t-adic expansion: coefficients of t^0..t^K as Laurent polynomials in p.
  std::vector<Poly> series(int K) const {
    if (K < 0) throw validation_error("series order must be >= 0");
    if (!num_.is_zero() && num_.low_degree(1) < 0)
      throw validation_error("negative t-powers have no t-adic expansion");
    std::vector<Poly> s(static_cast<std::size_t>(K) + 1,
                        Poly(p_var()));
    for (const auto& [e, c] : num_.terms()) {
      if (e[1] <= K) s[static_cast<std::size_t>(e[1])].add_term({e[0]}, c);
    }
    for (const auto& f : den_) {
      // multiply by 1/(1 - p^a t^b): s[k] += p^a s[k-b], ascending in k
      for (int k = static_cast<int>(f.texp); k <= K; ++k)
        s[static_cast<std::size_t>(k)] +=
            s[static_cast<std::size_t>(k - f.texp)].shift(
                0, static_cast<int>(f.pexp));
    }
    return s;
  }

  // Expansion with p fixed; exact integers, errors if a coefficient is not
  // integral (cannot happen for honestly assembled zeta functions).
  std::vector<Int> series_at(int K, long long p) const {
    std::vector<Poly> s = series(K);
    std::vector<Int> out;
    out.reserve(s.size());
    for (const auto& c : s) {
      auto v = c.eval({Int(p)});
      if (!v)
        throw validation_error("series coefficient is not integral at p=" +
                               std::to_string(p));
      out.push_back(*v);
    }
    return out;
  }

  // Simultaneous p -> p^{-1}, t -> t^{-1}, renormalized so the denominator is
  // again a product of (1 - p^a t^b).
  RationalFn inverted() const {
    Poly n(pt_vars());
    for (const auto& [e, c] : num_.terms()) n.add_term({-e[0], -e[1]}, c);
    long long pa = 0, tb = 0;
    for (const auto& f : den_) {
      pa += f.pexp;
      tb += f.texp;
    }
    Poly mono = Poly::monomial(pt_vars(),
                               {static_cast<int>(pa), static_cast<int>(tb)},
                               (den_.size() % 2 == 0) ? 1 : -1);
    return RationalFn(n * mono, den_);
  }

  // Whether *this == sign * p^a t^b * o, exactly.
  std::optional<Proportionality> proportional_to(const RationalFn& o) const {
    if (is_zero() || o.is_zero()) return std::nullopt;
    Poly lhs = num_ * product(o.den_);
    Poly rhs = o.num_ * product(den_);
    const auto& lt = *lhs.terms().rbegin();
    const auto& rt = *rhs.terms().rbegin();
    Int q = lt.second, r = rt.second;
    if (q != r && q != -r) return std::nullopt;
    Proportionality prop;
    prop.sign = (q == r) ? 1 : -1;
    prop.pexp = lt.first[0] - rt.first[0];
    prop.texp = lt.first[1] - rt.first[1];
    Poly shifted(pt_vars());
    for (const auto& [e, c] : rhs.terms())
      shifted.add_term({e[0] + static_cast<int>(prop.pexp),
                        e[1] + static_cast<int>(prop.texp)},
                       prop.sign > 0 ? c : -c);
    if (shifted == lhs) return prop;
    return std::nullopt;
  }

  std::string str() const {
    std::string n = num_.str(Poly::TermOrder::last_var_major);
    if (den_.empty()) return n;
    std::string d = den_str();
    if (num_.term_count() > 1) return "(" + n + ") / " + d;
    return n + " / " + d;
  }

  std::string latex() const {
    std::ostringstream os;
    std::string n = poly_latex(num_);
    if (den_.empty()) return n;
    os << "\\frac{" << n << "}{";
    for (std::size_t i = 0; i < den_.size(); ++i) {
      const auto& f = den_[i];
      os << "(1 - " << latex_mono(f.pexp, f.texp) << ")";
    }
    os << "}";
    return os.str();
  }

  static RationalFn parse(const std::string& text);

  static Poly product(const std::vector<GeomFactor>& fs) {
    Poly r = Poly::constant(pt_vars(), 1);
    for (const auto& f : fs) r *= f.as_poly();
    return r;
  }

 private:
  void canonicalize() {
    std::sort(den_.begin(), den_.end());
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < den_.size(); ++i) {
        auto q = num_.divided_exact(den_[i].as_poly());
        if (q) {
          num_ = *q;
          den_.erase(den_.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }

  static std::vector<GeomFactor> merge_lcm(const std::vector<GeomFactor>& a,
                                           const std::vector<GeomFactor>& b) {
    // multiset max-multiplicity merge; both inputs sorted
    std::vector<GeomFactor> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j] < a[i]) {
        out.push_back(b[j++]);
      } else {
        out.push_back(a[i]);
        ++i;
        ++j;
      }
    }
    return out;
  }

  static std::vector<GeomFactor> missing(const std::vector<GeomFactor>& target,
                                         const std::vector<GeomFactor>& have) {
    std::vector<GeomFactor> out;
    std::size_t j = 0;
    for (const auto& f : target) {
      if (j < have.size() && have[j] == f)
        ++j;
      else
        out.push_back(f);
    }
    return out;
  }

  std::string den_str() const {
    std::string d;
    for (const auto& f : den_) {
      d += "(1 - " + mono_str(f.pexp, f.texp) + ")";
    }
    return d;
  }

  static std::string mono_str(long long pe, long long te) {
    std::string s;
    if (pe != 0) {
      s += "p";
      if (pe != 1) s += "^" + std::to_string(pe);
    }
    if (!s.empty()) s += " ";
    s += "t";
    if (te != 1) s += "^" + std::to_string(te);
    return s;
  }

  static std::string latex_mono(long long pe, long long te) {
    std::string s;
    if (pe != 0) s += "p^{" + std::to_string(pe) + "}";
    s += "t";
    if (te != 1) s += "^{" + std::to_string(te) + "}";
    return s;
  }

  static std::string poly_latex(const Poly& q) {
    // reuse the plain printer, then dress exponents
    std::string s = q.str(Poly::TermOrder::last_var_major);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '*') continue;
      if (s[i] == '^') {
        out += "^{";
        ++i;
        while (i < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-'))
          out += s[i++];
        --i;
        out += "}";
        continue;
      }
      out += s[i];
    }
    return out;
  }

  Poly num_;
  std::vector<GeomFactor> den_;
};

inline RationalFn RationalFn::parse(const std::string& text) {
  // grammar:  poly | poly '/' ('(' 1 - mono ')')+   with optional parens
  std::size_t slash = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      slash = i;
      break;
    }
  }
  std::string npart = slash == std::string::npos ? text : text.substr(0, slash);
  // strip one layer of enclosing parens
  auto strip = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    s = s.substr(a, b - a + 1);
    if (!s.empty() && s.front() == '(' && s.back() == ')') {
      int d = 0;
      bool wraps = true;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == '(') ++d;
        if (s[i] == ')') --d;
        if (d == 0) {
          wraps = false;
          break;
        }
      }
      if (wraps) s = s.substr(1, s.size() - 2);
    }
    return s;
  };
  Poly num = parse_poly(strip(npart), pt_vars());
  std::vector<GeomFactor> den;
  if (slash != std::string::npos) {
    std::string dpart = text.substr(slash + 1);
    std::size_t i = 0;
    while (i < dpart.size()) {
      while (i < dpart.size() &&
             (dpart[i] == ' ' || dpart[i] == '\t' || dpart[i] == '*'))
        ++i;
      if (i >= dpart.size()) break;
      if (dpart[i] != '(')
        throw validation_error("expected '(' in denominator");
      std::size_t close = dpart.find(')', i);
      if (close == std::string::npos)
        throw validation_error("unbalanced denominator factor");
      Poly f = parse_poly(dpart.substr(i + 1, close - i - 1), pt_vars());
      // must be 1 - p^a t^b
      Poly one = Poly::constant(pt_vars(), 1);
      Poly rest = one - f;
      if (rest.term_count() != 1)
        throw validation_error("denominator factor is not 1 - p^a t^b");
      const auto& [e, c] = *rest.terms().begin();
      if (c != 1 || e[1] < 1)
        throw validation_error("denominator factor is not 1 - p^a t^b");
      den.push_back(GeomFactor{e[0], e[1]});
      i = close + 1;
    }
  }
  return RationalFn(std::move(num), std::move(den));
}

}  // namespace pfz::polyring
