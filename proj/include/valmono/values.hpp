#pragma once

// Value groups of finite rational rank.
//
// A Value is a vector of rational coordinates over fixed group generators.
// In the sqrt-primes ordering generator 0 is the real number 1 and generator
// i >= 1 is sqrt(p_i) with p_i the i-th prime (2, 3, 5, ...). These are
// linearly independent over Q, so equality of values is equality of
// coordinates and the order is decided by exact interval refinement.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace valmono {

using Rational = mpq_class;
using Integer = mpz_class;

enum class GroupOrdering { SqrtPrimes, Lex };

enum class Cmp { Less, Equal, Greater };

class ValueGroup {
 public:
  ValueGroup(int rank, GroupOrdering ordering, std::vector<std::string> labels);

  /// Default labels g1..gr.
  static std::shared_ptr<const ValueGroup> make(int rank,
                                                GroupOrdering ordering = GroupOrdering::SqrtPrimes);

  int rank() const { return rank_; }
  GroupOrdering ordering() const { return ordering_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const ValueGroup& other) const;

 private:
  int rank_;
  GroupOrdering ordering_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const ValueGroup>;

class Value {
 public:
  Value() = default;
  Value(GroupPtr group, std::vector<Rational> coords);

  static Value zero(GroupPtr group);
  /// The i-th generator (0-based).
  static Value generator(GroupPtr group, int i);

  const GroupPtr& group() const { return group_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;

  Value operator+(const Value& o) const;
  Value operator-(const Value& o) const;
  Value operator-() const;
  Value& operator+=(const Value& o);
  Value& operator-=(const Value& o);
  Value scaled(const Rational& q) const;

  /// Coordinate equality; the group order is not consulted.
  bool operator==(const Value& o) const;

  std::string to_string() const;

 private:
  void check_same_group(const Value& o) const;

  GroupPtr group_;
  std::vector<Rational> coords_;
};

/// Total order on a value group. Throws AlgebraError("group mismatch").
Cmp compare(const Value& a, const Value& b);

inline bool operator<(const Value& a, const Value& b) { return compare(a, b) == Cmp::Less; }
inline bool operator<=(const Value& a, const Value& b) { return compare(a, b) != Cmp::Greater; }
inline bool operator>(const Value& a, const Value& b) { return compare(a, b) == Cmp::Greater; }
inline bool operator>=(const Value& a, const Value& b) { return compare(a, b) != Cmp::Less; }

/// Sign of a value relative to zero.
Cmp sign(const Value& a);

/// Sum of alpha_i * weights_i. With empty alpha the group of `group` is used.
Value value_of_exponent(std::span<const std::int64_t> alpha, std::span<const Value> weights);
Value value_of_exponent(std::span<const std::int64_t> alpha, std::span<const Value> weights,
                        const GroupPtr& group);

struct LatticeMultiple {
  std::int64_t m_bar = 1;
  std::vector<Integer> coeffs;
};

/// Smallest m >= 1 with m * target in the Z-span of `basis`, together with the
/// integer coordinates of m * target in that basis.
LatticeMultiple min_integer_multiple_in_lattice(const Value& target, std::span<const Value> basis);

/// Rational coordinates of `target` in a Q-independent `basis`.
std::vector<Rational> solve_in_basis(const Value& target, std::span<const Value> basis);

/// Rank over Q of the coordinate vectors.
int rational_rank(std::span<const Value> values);

/// A Z-basis of the subgroup generated by `generators` (Hermite reduction on
/// the coordinate matrix scaled to integers).
std::vector<Value> lattice_basis(std::span<const Value> generators);

/// Parses "p/q", "p" or "-p/q"; throws SchemaError on anything else.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

}  // namespace valmono
