#pragma once

// Sparse multivariate polynomials with exact coefficients.
//
// MultiPolyT<C> works over any exact field-like coefficient type C for which
// CoeffOps<C> is specialised. The library instantiates it for Rational (the
// working type of every algorithm) and for TowerElem (elements of a simple
// extension tower over Q, used for residue fields).

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "valmono/error.hpp"
#include "valmono/values.hpp"

namespace valmono {

using Exponent = std::vector<std::int64_t>;

/// Graded-lex order on exponent vectors; storage order only.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    std::int64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Rational> {
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static bool is_one(const Rational& c) { return c == 1; }
  static Rational one_like(const Rational&) { return Rational(1); }
  static Rational zero_like(const Rational&) { return Rational(0); }
  static std::string str(const Rational& c) { return format_rational(c); }
};

template <class C>
class MultiPolyT {
 public:
  using Terms = std::map<Exponent, C, GrlexLess>;

  MultiPolyT() = default;
  explicit MultiPolyT(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPolyT constant(std::vector<std::string> vars, const C& c) {
    MultiPolyT p(std::move(vars));
    if (!CoeffOps<C>::is_zero(c)) p.terms_.emplace(Exponent(p.vars_.size(), 0), c);
    return p;
  }
  static MultiPolyT monomial(std::vector<std::string> vars, Exponent e, const C& c) {
    MultiPolyT p(std::move(vars));
    if (e.size() != p.vars_.size()) throw AlgebraError("exponent length mismatch");
    for (auto x : e)
      if (x < 0) throw AlgebraError("negative exponent in polynomial");
    if (!CoeffOps<C>::is_zero(c)) p.terms_.emplace(std::move(e), c);
    return p;
  }
  static MultiPolyT variable(std::vector<std::string> vars, std::size_t i, const C& one) {
    Exponent e(vars.size(), 0);
    e.at(i) = 1;
    return monomial(std::move(vars), std::move(e), one);
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw AlgebraError("unknown variable '" + name + "'");
  }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (auto e : terms_.begin()->first)
      if (e != 0) return false;
    return true;
  }

  C constant_term() const {
    auto it = terms_.find(Exponent(vars_.size(), 0));
    if (it == terms_.end()) return zero_coeff();
    return it->second;
  }

  /// Adds c * u^e (e must have the right length).
  void add_term(const Exponent& e, const C& c) {
    if (e.size() != vars_.size()) throw AlgebraError("exponent length mismatch");
    if (CoeffOps<C>::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
  }

  std::int64_t degree_in(std::size_t i) const {
    std::int64_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  std::int64_t total_degree() const {
    std::int64_t d = -1;
    for (const auto& [e, c] : terms_) {
      std::int64_t s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  /// Coefficient of x_i^k, as a polynomial in the same variables (x_i absent).
  MultiPolyT coeff_in(std::size_t i, std::int64_t k) const {
    MultiPolyT out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] != k) continue;
      Exponent f = e;
      f[i] = 0;
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  MultiPolyT operator-() const {
    MultiPolyT out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  MultiPolyT& operator+=(const MultiPolyT& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPolyT& operator-=(const MultiPolyT& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPolyT operator+(MultiPolyT a, const MultiPolyT& b) { return a += b; }
  friend MultiPolyT operator-(MultiPolyT a, const MultiPolyT& b) { return a -= b; }

  friend MultiPolyT operator*(const MultiPolyT& a, const MultiPolyT& b) {
    a.check_vars(b);
    MultiPolyT out(a.vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  MultiPolyT& operator*=(const MultiPolyT& o) { return *this = *this * o; }

  MultiPolyT scaled(const C& k) const {
    MultiPolyT out(vars_);
    if (CoeffOps<C>::is_zero(k)) return out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * k);
    return out;
  }

  /// Multiplies by the monomial u^e.
  MultiPolyT shifted(const Exponent& shift) const {
    MultiPolyT out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] += shift[i];
        if (f[i] < 0) throw AlgebraError("negative exponent in polynomial");
      }
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  MultiPolyT pow(std::int64_t k) const {
    if (k < 0) throw AlgebraError("negative power");
    MultiPolyT result = constant(vars_, one_coeff());
    MultiPolyT base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return result;
  }

  bool operator==(const MultiPolyT& o) const {
    if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
      if (e != it->first || !CoeffOps<C>::is_zero(c - it->second)) return false;
      ++it;
    }
    return true;
  }

  /// Same polynomial over a different ordered variable list; every variable
  /// in the support must exist in `new_vars`.
  MultiPolyT with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      where[i] = new_vars.size();
      for (std::size_t k = 0; k < new_vars.size(); ++k)
        if (new_vars[k] == vars_[i]) where[i] = k;
    }
    MultiPolyT out(new_vars);
    for (const auto& [e, c] : terms_) {
      Exponent f(new_vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (where[i] == new_vars.size())
          throw AlgebraError("variable '" + vars_[i] + "' missing from target ring");
        f[where[i]] += e[i];
      }
      out.add_term(f, c);
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) s += " + ";
      first = false;
      s += "(" + CoeffOps<C>::str(it->second) + ")";
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (it->first[i] == 0) continue;
        s += "*" + vars_[i];
        if (it->first[i] != 1) s += "^" + std::to_string(it->first[i]);
      }
    }
    return s;
  }

  C one_coeff() const {
    if (!terms_.empty()) return CoeffOps<C>::one_like(terms_.begin()->second);
    return CoeffOps<C>::one_like(prototype_);
  }
  C zero_coeff() const {
    if (!terms_.empty()) return CoeffOps<C>::zero_like(terms_.begin()->second);
    return CoeffOps<C>::zero_like(prototype_);
  }
  /// Coefficient used to build zero/one when the polynomial has no terms
  /// (tower elements need to know their tower).
  void set_prototype(const C& c) { prototype_ = c; }

  void check_vars(const MultiPolyT& o) const {
    if (vars_ != o.vars_) throw AlgebraError("variable mismatch");
  }

 private:
  std::vector<std::string> vars_;
  Terms terms_;
  C prototype_{};
};

using MultiPoly = MultiPolyT<Rational>;

// ---------------------------------------------------------------------------
// Euclidean machinery (generic).

template <class C>
bool is_monic_in(const MultiPolyT<C>& g, std::size_t x) {
  const auto d = g.degree_in(x);
  if (d < 0) return false;
  const auto lead = g.coeff_in(x, d);
  return lead.is_constant() && CoeffOps<C>::is_one(lead.constant_term());
}

template <class C>
struct DivResult {
  MultiPolyT<C> quotient;
  MultiPolyT<C> remainder;
};

/// f = q*g + r with deg_x(r) < deg_x(g); g must be monic in x.
template <class C>
DivResult<C> euclid_divide(const MultiPolyT<C>& f, const MultiPolyT<C>& g, std::size_t x) {
  f.check_vars(g);
  if (!is_monic_in(g, x)) throw AlgebraError("non-monic divisor");
  const auto dg = g.degree_in(x);
  MultiPolyT<C> q(f.vars());
  MultiPolyT<C> r = f;
  Exponent shift(f.nvars(), 0);
  for (auto dr = r.degree_in(x); dr >= dg; dr = r.degree_in(x)) {
    shift.assign(f.nvars(), 0);
    shift[x] = dr - dg;
    const auto lead = r.coeff_in(x, dr).shifted(shift);
    q += lead;
    r -= lead * g;
  }
  return {std::move(q), std::move(r)};
}

template <class C>
DivResult<C> euclid_divide(const MultiPolyT<C>& f, const MultiPolyT<C>& g, const std::string& x) {
  return euclid_divide(f, g, f.var_index(x));
}

/// (a_0, ..., a_s) with f = sum a_i Q^i and deg_x(a_i) < deg_x(Q).
template <class C>
std::vector<MultiPolyT<C>> q_adic_expansion(const MultiPolyT<C>& f, const MultiPolyT<C>& Q,
                                            std::size_t x) {
  if (Q.degree_in(x) < 1) throw AlgebraError("non-monic divisor");
  std::vector<MultiPolyT<C>> out;
  MultiPolyT<C> rest = f;
  do {
    auto [q, r] = euclid_divide(rest, Q, x);
    out.push_back(std::move(r));
    rest = std::move(q);
  } while (!rest.is_zero());
  return out;
}

template <class C>
std::vector<MultiPolyT<C>> q_adic_expansion(const MultiPolyT<C>& f, const MultiPolyT<C>& Q,
                                            const std::string& x) {
  return q_adic_expansion(f, Q, f.var_index(x));
}

/// Exact composition f(x := g).
template <class C>
MultiPolyT<C> substitute_variable(const MultiPolyT<C>& f, std::size_t x, const MultiPolyT<C>& g) {
  f.check_vars(g);
  const auto d = f.degree_in(x);
  MultiPolyT<C> out(f.vars());
  if (d < 0) return out;
  for (auto k = d; k >= 0; --k) {
    out = out * g;
    out += f.coeff_in(x, k);
  }
  return out;
}

template <class C>
MultiPolyT<C> substitute_variable(const MultiPolyT<C>& f, const std::string& x,
                                  const MultiPolyT<C>& g) {
  return substitute_variable(f, f.var_index(x), g);
}

// ---------------------------------------------------------------------------
// Monomial maps.

using IntMatrix = std::vector<std::vector<std::int64_t>>;  // row-major

IntMatrix identity_matrix(std::size_t n);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
Exponent matvec(const IntMatrix& a, std::span<const std::int64_t> v);
Integer determinant(const IntMatrix& a);

/// Column q holds the exponent vector of the image of variable q, so a term
/// c*u^alpha maps to c*u'^(matrix*alpha).
struct LaurentMonomialMap {
  IntMatrix matrix;
  std::vector<std::string> target_vars;  // empty: same labels as the source
};

/// Throws AlgebraError("Laurent escape") if an image exponent is negative.
MultiPoly apply_monomial_map(const MultiPoly& f, const LaurentMonomialMap& map);

// ---------------------------------------------------------------------------
// Simple extension towers over Q.

class FieldTower;

/// Element of a FieldTower: a polynomial in the tower symbols in canonical
/// (fully reduced) form.
class TowerElem {
 public:
  TowerElem() = default;
  TowerElem(std::shared_ptr<const FieldTower> tower, MultiPoly rep);
  static TowerElem from_rational(std::shared_ptr<const FieldTower> tower, const Rational& q);
  /// The k-th adjoined symbol (0-based).
  static TowerElem symbol(std::shared_ptr<const FieldTower> tower, std::size_t k);

  const MultiPoly& rep() const { return rep_; }
  const std::shared_ptr<const FieldTower>& tower() const { return tower_; }
  bool is_zero() const { return rep_.is_zero(); }

  TowerElem operator+(const TowerElem& o) const;
  TowerElem operator-(const TowerElem& o) const;
  TowerElem operator-() const;
  TowerElem operator*(const TowerElem& o) const;
  bool operator==(const TowerElem& o) const { return rep_ == o.rep_; }

  /// Throws AlgebraError("reducible definer ...") when the inversion exposes
  /// a factor of a defining polynomial, and "division by zero" for 0.
  TowerElem inverse() const;

  std::string to_string() const { return rep_.to_string(); }

 private:
  std::shared_ptr<const FieldTower> tower_;
  MultiPoly rep_;
};

class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  struct Extension {
    std::string symbol;
    MultiPoly minpoly;  // over the symbols of this level and below
  };

  /// Builds a tower. Each definer must be monic of degree >= 1 in its own
  /// symbol and only involve earlier symbols otherwise.
  static std::shared_ptr<const FieldTower> make(std::vector<Extension> extensions);
  static std::shared_ptr<const FieldTower> rationals() { return make({}); }

  const std::vector<Extension>& extensions() const { return extensions_; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  /// Reduces a polynomial in the tower symbols to canonical form.
  MultiPoly reduce(const MultiPoly& p) const;

 private:
  FieldTower() = default;
  std::vector<Extension> extensions_;
  std::vector<std::string> symbols_;
};

template <>
struct CoeffOps<TowerElem> {
  static bool is_zero(const TowerElem& c) { return c.is_zero(); }
  static bool is_one(const TowerElem& c) {
    return c.rep().is_constant() && c.rep().constant_term() == 1;
  }
  static TowerElem one_like(const TowerElem& c) { return TowerElem::from_rational(c.tower(), 1); }
  static TowerElem zero_like(const TowerElem& c) { return TowerElem::from_rational(c.tower(), 0); }
  static std::string str(const TowerElem& c) { return c.to_string(); }
};

using TowerPoly = MultiPolyT<TowerElem>;

}  // namespace valmono
