#include "valmono/polyalg.hpp"

#include <algorithm>

namespace valmono {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  IntMatrix out(n, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw AlgebraError("matrix shape mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

Exponent matvec(const IntMatrix& a, std::span<const std::int64_t> v) {
  Exponent out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw AlgebraError("matrix shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw AlgebraError("matrix shape mismatch");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Integer(static_cast<long>(a[i][j]));
  }
  // Bareiss fraction-free elimination.
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

MultiPoly apply_monomial_map(const MultiPoly& f, const LaurentMonomialMap& map) {
  const auto n = f.nvars();
  if (map.matrix.size() != n) throw AlgebraError("matrix shape mismatch");
  std::vector<std::string> target = map.target_vars.empty() ? f.vars() : map.target_vars;
  if (target.size() != n) throw AlgebraError("matrix shape mismatch");
  MultiPoly out(target);
  for (const auto& [e, c] : f.terms()) {
    Exponent img = matvec(map.matrix, e);
    for (auto x : img)
      if (x < 0) throw AlgebraError("Laurent escape");
    out.add_term(img, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Reduces p modulo the definers of levels [0, upto), top level first.
MultiPoly reduce_levels(const FieldTower& tower, const MultiPoly& p, std::size_t upto) {
  MultiPoly r = p;
  for (std::size_t k = upto; k-- > 0;) {
    const auto& def = tower.extensions()[k].minpoly;
    if (r.degree_in(k) >= def.degree_in(k)) r = euclid_divide(r, def, k).remainder;
  }
  return r;
}

MultiPoly inverse_at_level(const FieldTower& tower, const MultiPoly& p, std::size_t level);

// Division of univariate (in symbol `x`) polynomials over the field of the
// levels below `x`.
MultiPoly lower_mul(const FieldTower& tower, const MultiPoly& a, const MultiPoly& b,
                    std::size_t x) {
  return reduce_levels(tower, a * b, x);
}

DivResult<Rational> divide_over_level(const FieldTower& tower, const MultiPoly& f,
                                      const MultiPoly& g, std::size_t x) {
  const auto dg = g.degree_in(x);
  const auto lead_inv = inverse_at_level(tower, g.coeff_in(x, dg), x);
  MultiPoly q(f.vars()), r = f;
  Exponent shift(f.nvars(), 0);
  for (auto dr = r.degree_in(x); dr >= dg && !r.is_zero(); dr = r.degree_in(x)) {
    shift.assign(f.nvars(), 0);
    shift[x] = dr - dg;
    const auto factor = lower_mul(tower, r.coeff_in(x, dr), lead_inv, x).shifted(shift);
    q += factor;
    r = reduce_levels(tower, r - factor * g, x);
  }
  return {q, r};
}

MultiPoly inverse_at_level(const FieldTower& tower, const MultiPoly& p, std::size_t level) {
  if (p.is_zero()) throw AlgebraError("division by zero");
  if (level == 0) {
    if (!p.is_constant()) throw AlgebraError("internal: non-constant base element");
    return MultiPoly::constant(p.vars(), 1 / p.constant_term());
  }
  const std::size_t x = level - 1;
  if (p.degree_in(x) == 0) return inverse_at_level(tower, p, x);

  // Extended Euclid: s_i * p == r_i modulo the definer of x.
  MultiPoly r0 = tower.extensions()[x].minpoly, r1 = p;
  MultiPoly s0(p.vars()), s1 = MultiPoly::constant(p.vars(), 1);
  while (!r1.is_zero()) {
    auto [q, r] = divide_over_level(tower, r0, r1, x);
    MultiPoly s = reduce_levels(tower, s0 - q * s1, x + 1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree_in(x) > 0) {
    const auto lead_inv = inverse_at_level(tower, r0.coeff_in(x, r0.degree_in(x)), x);
    const auto factor = lower_mul(tower, r0, lead_inv, x);
    throw AlgebraError("reducible definer for '" + tower.symbols()[x] +
                       "': factor " + factor.to_string());
  }
  return lower_mul(tower, s0, inverse_at_level(tower, r0, x), x + 1);
}

}  // namespace

std::shared_ptr<const FieldTower> FieldTower::make(std::vector<Extension> extensions) {
  std::shared_ptr<FieldTower> t(new FieldTower());
  for (const auto& ext : extensions) {
    if (std::find(t->symbols_.begin(), t->symbols_.end(), ext.symbol) != t->symbols_.end())
      throw SchemaError("duplicate tower symbol '" + ext.symbol + "'");
    t->symbols_.push_back(ext.symbol);
  }
  for (std::size_t k = 0; k < extensions.size(); ++k) {
    MultiPoly def;
    try {
      def = extensions[k].minpoly.with_vars(t->symbols_);
    } catch (const AlgebraError&) {
      throw AlgebraError("definer of '" + extensions[k].symbol + "' uses unknown symbols");
    }
    for (std::size_t later = k + 1; later < t->symbols_.size(); ++later)
      if (def.degree_in(later) > 0)
        throw AlgebraError("definer of '" + extensions[k].symbol + "' uses a later symbol");
    if (def.degree_in(k) < 1 || !is_monic_in(def, k))
      throw AlgebraError("definer of '" + extensions[k].symbol + "' must be monic of degree >= 1");
    def = reduce_levels(*t, def, k);
    t->extensions_.push_back({extensions[k].symbol, std::move(def)});
  }
  return t;
}

MultiPoly FieldTower::reduce(const MultiPoly& p) const {
  return reduce_levels(*this, p.with_vars(symbols_), symbols_.size());
}

TowerElem::TowerElem(std::shared_ptr<const FieldTower> tower, MultiPoly rep)
    : tower_(std::move(tower)), rep_(tower_->reduce(rep)) {}

TowerElem TowerElem::from_rational(std::shared_ptr<const FieldTower> tower, const Rational& q) {
  auto vars = tower->symbols();
  return TowerElem(std::move(tower), MultiPoly::constant(std::move(vars), q));
}

TowerElem TowerElem::symbol(std::shared_ptr<const FieldTower> tower, std::size_t k) {
  auto vars = tower->symbols();
  return TowerElem(std::move(tower), MultiPoly::variable(std::move(vars), k, Rational(1)));
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
  if (!tower_) return o;
  if (!o.tower_) return *this;
  TowerElem out = *this;
  out.rep_ += o.rep_;
  return out;
}

TowerElem TowerElem::operator-(const TowerElem& o) const { return *this + (-o); }

TowerElem TowerElem::operator-() const {
  TowerElem out = *this;
  out.rep_ = -rep_;
  return out;
}

TowerElem TowerElem::operator*(const TowerElem& o) const {
  if (!tower_ || !o.tower_) throw AlgebraError("tower element without tower");
  return TowerElem(tower_, rep_ * o.rep_);
}

TowerElem TowerElem::inverse() const {
  if (!tower_) throw AlgebraError("tower element without tower");
  return TowerElem(tower_, inverse_at_level(*tower_, rep_, tower_->symbols().size()));
}

}  // namespace valmono
