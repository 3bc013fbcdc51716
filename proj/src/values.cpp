#include "valmono/values.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "valmono/error.hpp"

namespace valmono {

namespace {

constexpr unsigned long kInitialPrecisionBits = 64;

std::vector<unsigned long> first_primes(int count) {
  std::vector<unsigned long> primes;
  for (unsigned long c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

// Real value of generator i as an enclosing interval [lo, hi] with width
// at most 2^-bits.
void generator_interval(int i, unsigned long bits, const std::vector<unsigned long>& primes,
                        Rational& lo, Rational& hi) {
  if (i == 0) {
    lo = 1;
    hi = 1;
    return;
  }
  Integer scaled = primes[i - 1];
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer denom = 1;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
  lo = Rational(root, denom);
  lo.canonicalize();
  hi = Rational(root + 1, denom);
  hi.canonicalize();
}

Cmp sign_of_sqrt_combination(const std::vector<Rational>& d) {
  if (std::all_of(d.begin(), d.end(), [](const Rational& q) { return sgn(q) == 0; }))
    return Cmp::Equal;
  const auto primes = first_primes(static_cast<int>(d.size()));
  for (unsigned long bits = kInitialPrecisionBits;; bits *= 2) {
    Rational lo_sum = 0, hi_sum = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (sgn(d[i]) == 0) continue;
      Rational lo, hi;
      generator_interval(static_cast<int>(i), bits, primes, lo, hi);
      if (sgn(d[i]) > 0) {
        lo_sum += d[i] * lo;
        hi_sum += d[i] * hi;
      } else {
        lo_sum += d[i] * hi;
        hi_sum += d[i] * lo;
      }
    }
    if (sgn(lo_sum) > 0) return Cmp::Greater;
    if (sgn(hi_sum) < 0) return Cmp::Less;
  }
}

Integer lcm_of_denominators(const std::vector<Rational>& qs) {
  Integer l = 1;
  for (const auto& q : qs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

// Row echelon form in place over Q; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<std::vector<Rational>>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || sgn(rows[k][c]) == 0) continue;
      const Rational f = rows[k][c];
      for (std::size_t cc = 0; cc < rows[k].size(); ++cc) rows[k][cc] -= f * rows[r][cc];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

ValueGroup::ValueGroup(int rank, GroupOrdering ordering, std::vector<std::string> labels)
    : rank_(rank), ordering_(ordering), labels_(std::move(labels)) {
  if (rank_ < 1) throw AlgebraError("value group rank must be positive");
  if (static_cast<int>(labels_.size()) != rank_)
    throw AlgebraError("value group needs one label per generator");
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw AlgebraError("value group labels must be distinct");
}

std::shared_ptr<const ValueGroup> ValueGroup::make(int rank, GroupOrdering ordering) {
  std::vector<std::string> labels;
  for (int i = 0; i < rank; ++i) labels.push_back("g" + std::to_string(i + 1));
  return std::make_shared<const ValueGroup>(rank, ordering, std::move(labels));
}

bool ValueGroup::operator==(const ValueGroup& other) const {
  return rank_ == other.rank_ && ordering_ == other.ordering_ && labels_ == other.labels_;
}

Value::Value(GroupPtr group, std::vector<Rational> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
  if (!group_) throw AlgebraError("value without group");
  if (static_cast<int>(coords_.size()) != group_->rank())
    throw AlgebraError("value has wrong number of coordinates");
  for (auto& c : coords_) c.canonicalize();
}

Value Value::zero(GroupPtr group) {
  const int r = group->rank();
  return Value(std::move(group), std::vector<Rational>(r, Rational(0)));
}

Value Value::generator(GroupPtr group, int i) {
  Value v = zero(std::move(group));
  v.coords_.at(i) = 1;
  return v;
}

bool Value::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

void Value::check_same_group(const Value& o) const {
  if (!group_ || !o.group_) throw AlgebraError("group mismatch");
  if (group_ != o.group_ && !(*group_ == *o.group_)) throw AlgebraError("group mismatch");
}

Value Value::operator+(const Value& o) const {
  Value r = *this;
  r += o;
  return r;
}

Value Value::operator-(const Value& o) const {
  Value r = *this;
  r -= o;
  return r;
}

Value Value::operator-() const { return scaled(-1); }

Value& Value::operator+=(const Value& o) {
  check_same_group(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Value& Value::operator-=(const Value& o) {
  check_same_group(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Value Value::scaled(const Rational& q) const {
  Value r = *this;
  for (auto& c : r.coords_) c *= q;
  return r;
}

bool Value::operator==(const Value& o) const {
  check_same_group(o);
  return coords_ == o.coords_;
}

std::string Value::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ",";
    os << format_rational(coords_[i]);
  }
  os << ")";
  return os.str();
}

Cmp compare(const Value& a, const Value& b) {
  const Value d = a - b;  // checks the group
  if (a.group()->ordering() == GroupOrdering::Lex) {
    for (const auto& c : d.coords()) {
      if (sgn(c) > 0) return Cmp::Greater;
      if (sgn(c) < 0) return Cmp::Less;
    }
    return Cmp::Equal;
  }
  return sign_of_sqrt_combination(d.coords());
}

Cmp sign(const Value& a) { return compare(a, Value::zero(a.group())); }

Value value_of_exponent(std::span<const std::int64_t> alpha, std::span<const Value> weights) {
  if (weights.empty()) {
    if (!alpha.empty()) throw AlgebraError("length mismatch");
    throw AlgebraError("value_of_exponent needs a group for empty input");
  }
  return value_of_exponent(alpha, weights, weights.front().group());
}

Value value_of_exponent(std::span<const std::int64_t> alpha, std::span<const Value> weights,
                        const GroupPtr& group) {
  if (alpha.size() != weights.size()) throw AlgebraError("length mismatch");
  std::vector<Rational> coords(group->rank(), Rational(0));
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!(*weights[i].group() == *group)) throw AlgebraError("group mismatch");
    const Rational k(static_cast<long>(alpha[i]));
    for (std::size_t c = 0; c < coords.size(); ++c) coords[c] += k * weights[i].coords()[c];
  }
  return Value(group, std::move(coords));
}

std::vector<Rational> solve_in_basis(const Value& target, std::span<const Value> basis) {
  const std::size_t r = basis.size();
  if (r == 0) {
    if (target.is_zero()) return {};
    throw AlgebraError("not in divisible hull");
  }
  const std::size_t dim = target.coords().size();
  // Augmented system: rows = group coordinates, columns = basis entries | target.
  std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(r + 1));
  for (std::size_t c = 0; c < r; ++c) {
    if (!(*basis[c].group() == *target.group())) throw AlgebraError("group mismatch");
    for (std::size_t i = 0; i < dim; ++i) rows[i][c] = basis[c].coords()[i];
  }
  for (std::size_t i = 0; i < dim; ++i) rows[i][r] = target.coords()[i];
  const auto pivots = echelon(rows, r + 1);
  std::size_t basis_pivots = std::count_if(pivots.begin(), pivots.end(),
                                           [r](std::size_t c) { return c < r; });
  if (basis_pivots < r) throw AlgebraError("degenerate basis");
  if (pivots.size() > r) throw AlgebraError("not in divisible hull");
  std::vector<Rational> q(r);
  for (std::size_t k = 0; k < r; ++k) q[pivots[k]] = rows[k][r];
  return q;
}

LatticeMultiple min_integer_multiple_in_lattice(const Value& target, std::span<const Value> basis) {
  const auto q = solve_in_basis(target, basis);
  const Integer m = lcm_of_denominators(q);
  if (!m.fits_slong_p()) throw AlgebraError("lattice multiple overflows");
  LatticeMultiple out;
  out.m_bar = m.get_si();
  for (const auto& qi : q) {
    Rational s = qi * Rational(m);
    out.coeffs.push_back(s.get_num());
  }
  return out;
}

int rational_rank(std::span<const Value> values) {
  if (values.empty()) return 0;
  const std::size_t dim = values.front().coords().size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : values) rows.push_back(v.coords());
  return static_cast<int>(echelon(rows, dim).size());
}

std::vector<Value> lattice_basis(std::span<const Value> generators) {
  if (generators.empty()) return {};
  const GroupPtr group = generators.front().group();
  const std::size_t dim = group->rank();
  Integer den = 1;
  for (const auto& g : generators) {
    const Integer l = lcm_of_denominators(g.coords());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
  }
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : generators) {
    std::vector<Integer> row(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      Rational s = g.coords()[i] * Rational(den);
      row[i] = s.get_num();
    }
    rows.push_back(std::move(row));
  }
  // Integer row reduction column by column (Euclid on pivot entries).
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k) {
        if (sgn(rows[k][c]) == 0) continue;
        if (best == rows.size() || abs(rows[k][c]) < abs(rows[best][c])) best = k;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool reduced = true;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (sgn(rows[k][c]) == 0) continue;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), rows[k][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t cc = 0; cc < dim; ++cc) rows[k][cc] -= f * rows[r][cc];
        if (sgn(rows[k][c]) != 0) reduced = false;
      }
      if (reduced) {
        ++r;
        break;
      }
    }
  }
  std::vector<Value> out;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Rational> coords(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      coords[i] = Rational(rows[k][i], den);
      coords[i].canonicalize();
    }
    out.emplace_back(group, std::move(coords));
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  const std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) throw SchemaError("bad rational literal '" + text + "'");
  if (i < text.size()) {
    if (text[i] != '/') throw SchemaError("bad rational literal '" + text + "'");
    ++i;
    const std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) throw SchemaError("bad rational literal '" + text + "'");
  }
  Rational q(text, 10);
  if (sgn(q.get_den()) == 0) throw SchemaError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(10); }

}  // namespace valmono
