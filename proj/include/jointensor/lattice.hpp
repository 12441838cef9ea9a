#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jointensor {

/// A semilattice element, identified by its canonical key.
///
/// Built-in lattices use the integer itself as the key. Elements of an explicit
/// poset use their position in the display-sorted universe, so that ascending
/// key order is the display order used for tie-breaking.
struct Element {
  mpz_class key;

  Element() = default;
  explicit Element(mpz_class k) : key(std::move(k)) {}
  explicit Element(long k) : key(k) {}

  friend bool operator==(const Element& a, const Element& b) { return cmp(a.key, b.key) == 0; }
  friend bool operator<(const Element& a, const Element& b) { return cmp(a.key, b.key) < 0; }
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

template <class V>
using ElementMap = std::unordered_map<Element, V, ElementHash>;

/// A finite poset given by a generating relation. The reflexive-transitive
/// closure is computed on construction and joins (least upper bounds) are
/// tabulated; pairs without a unique least upper bound are left undefined.
class ExplicitPoset {
 public:
  using Relation = std::vector<std::pair<std::string, std::string>>;
  using JoinTriples = std::vector<std::tuple<std::string, std::string, std::string>>;

  /// Throws Error(not_a_partial_order) when the relation has a cycle.
  static ExplicitPoset from_relation(std::vector<std::string> names, const Relation& leq);

  /// Replaces the derived joins by an explicit table (x, y, x∨y). Pairs missing
  /// from the table become undefined. Intended for validating user-supplied
  /// operation tables; nothing here checks that the table is a true join.
  ExplicitPoset with_join_table(const JoinTriples& table) const;

  /// The order-dual poset; its joins are the meets of this one.
  ExplicitPoset dual() const;

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b] != 0; }
  std::optional<std::size_t> join(std::size_t a, std::size_t b) const;
  bool has_custom_joins() const noexcept { return custom_joins_; }

  /// Least upper bound computed from the order alone, ignoring any custom table.
  std::optional<std::size_t> least_upper_bound(std::size_t a, std::size_t b) const;

 private:
  ExplicitPoset() = default;
  void derive_joins();

  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::int64_t> join_;  // -1: undefined
  bool custom_joins_ = false;
};

/// Orders display names: numerically when both parse as integers, else lexically.
bool display_less(std::string_view a, std::string_view b);

enum class LatticeKind { divisor, max_chain, explicit_poset };

/// A join semilattice context: order predicate, join, and element naming.
/// Cheap to copy; explicit posets are shared immutably.
class Lattice {
 public:
  static Lattice divisor();
  static Lattice max_chain();
  /// With strict = true a poset with any undefined join is rejected with
  /// Error(not_a_semilattice) at construction.
  static Lattice from_poset(ExplicitPoset poset, bool strict = true);

  LatticeKind kind() const noexcept { return kind_; }
  const ExplicitPoset* poset() const noexcept { return poset_.get(); }

  bool leq(const Element& x, const Element& y) const;
  Element join(const Element& x, const Element& y) const;
  std::optional<Element> try_join(const Element& x, const Element& y) const;

  /// Element from its display token: a positive integer for the built-in
  /// lattices, a name for explicit posets.
  Element element(std::string_view token) const;
  Element element(long value) const;
  std::string display(const Element& x) const;
  std::optional<mpz_class> numeric_value(const Element& x) const;

  /// All elements of an explicit poset in key order (empty for built-ins).
  std::vector<Element> universe() const;

  /// True when x ⪯ y implies key(x) <= key(y), making sort-by-key a linear extension.
  bool keys_extend_order() const noexcept { return kind_ != LatticeKind::explicit_poset; }

  std::string describe() const;
  bool same_context(const Lattice& other) const noexcept {
    return kind_ == other.kind_ && poset_ == other.poset_;
  }

  void check(const Element& x) const;

 private:
  Lattice(LatticeKind kind, std::shared_ptr<const ExplicitPoset> poset)
      : kind_(kind), poset_(std::move(poset)) {}
  std::size_t index(const Element& x) const;

  LatticeKind kind_;
  std::shared_ptr<const ExplicitPoset> poset_;
};

/// S = {x_1, ..., x_n} listed so that x_i ⪯ x_j only if i <= j, without duplicates.
class OrderedSubset {
 public:
  /// Validates the linear-extension property and uniqueness (Error(bad_value)).
  OrderedSubset(Lattice lattice, std::vector<Element> elements);

  const Lattice& lattice() const noexcept { return lattice_; }
  std::span<const Element> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }

  /// Renumbering τ: element -> position.
  std::optional<std::size_t> position(const Element& x) const;

  std::vector<std::string> display() const;

 private:
  struct Trusted {};
  OrderedSubset(Trusted, Lattice lattice, std::vector<Element> elements);
  friend OrderedSubset linear_extension(const Lattice&, std::vector<Element>);
  friend class JoinClosure;

  Lattice lattice_;
  std::vector<Element> elements_;
  ElementMap<std::size_t> position_;
};

/// Topological order of the restriction of ⪯ to `elements`, ties between
/// incomparable elements broken by ascending key.
OrderedSubset linear_extension(const Lattice& lattice, std::vector<Element> elements);

/// {1, ..., n} for the built-in lattices; the first n elements of the
/// universe's linear extension for explicit posets.
OrderedSubset range_subset(const Lattice& lattice, std::size_t n);

/// The chain of join closures S^{∨1} ⊆ S^{∨2} ⊆ ... ⊆ S^{∨k}.
///
/// Level j+1 is built from level j as { y ∨ x_i }, deduplicated by key and
/// linearly extended; the join of every (y, x_i) pair is kept as the step table,
/// which is exactly the selector structure of the boolean TT-cores. Iteration
/// stops at the first fixpoint; higher levels alias it.
class JoinClosure {
 public:
  JoinClosure(const OrderedSubset& base, std::size_t order);

  const OrderedSubset& base() const noexcept { return levels_.front(); }
  std::size_t order() const noexcept { return order_; }
  /// First level equal to its successor, or 0 if none was reached below order().
  std::size_t fixpoint() const noexcept { return fixpoint_; }

  /// The top level S^{∨order()}.
  const OrderedSubset& elements() const { return level(order_); }
  std::optional<std::size_t> position(const Element& x) const { return elements().position(x); }

  /// Level j in 1..order().
  const OrderedSubset& level(std::size_t j) const;
  std::size_t size(std::size_t j) const { return level(j).size(); }

  /// For j in 2..order(): entry [a * n + i] is the position in level j of
  /// level(j-1)[a] ∨ x_i.
  std::span<const std::uint32_t> step(std::size_t j) const;

 private:
  std::size_t stored_index(std::size_t j) const;

  std::size_t order_;
  std::size_t fixpoint_ = 0;
  std::vector<OrderedSubset> levels_;
  std::vector<std::vector<std::uint32_t>> steps_;  // steps_[j-1] maps level j-1 -> j; steps_[0] unused
};

JoinClosure join_closure(const OrderedSubset& base, std::size_t order);

/// Boolean matrix with entry (i, j) = [rows_i ⪯ cols_j].
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  IncidenceMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  std::size_t nnz() const noexcept;

  IncidenceMatrix with_columns(std::span<const std::size_t> order) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

IncidenceMatrix zeta_matrix(const OrderedSubset& rows, const OrderedSubset& cols);

/// Möbius function of a finite, linearly extended poset Y, stored by rows.
class MoebiusTable {
 public:
  explicit MoebiusTable(const OrderedSubset& poset);

  std::size_t size() const noexcept { return rows_.size(); }
  mpz_class operator()(std::size_t i, std::size_t j) const;
  /// Nonzero entries of row i as (column, value), columns ascending.
  const std::vector<std::pair<std::size_t, mpz_class>>& row(std::size_t i) const { return rows_.at(i); }

 private:
  std::vector<std::vector<std::pair<std::size_t, mpz_class>>> rows_;
};

MoebiusTable moebius(const OrderedSubset& poset);

enum class ViolationKind {
  join_undefined,
  not_commutative,
  not_associative,
  not_idempotent,
  not_upper_bound,
  not_least,
};

const char* violation_name(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t elements_checked = 0;
  bool exhaustive = false;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const noexcept;
};

/// Checks the semilattice axioms on the join closure of `elements`.
/// Triples are checked exhaustively up to 12 closure elements and sampled
/// (seeded) above that. Explicit posets are additionally checked for the
/// upper-bound and minimality halves of the least-upper-bound property.
ValidationReport validate_semilattice(const Lattice& lattice, std::span<const Element> elements,
                                      std::uint64_t seed = 0x5eed);

}  // namespace jointensor
