#include "jointensor/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <queue>
#include <random>
#include <sstream>

#include "jointensor/error.hpp"

namespace jointensor {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  mpz_srcptr z = e.key.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(z->_mp_size) * 0x9e3779b97f4a7c15ULL;
  const int limbs = std::abs(z->_mp_size);
  for (int i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(z->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + start, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

bool display_less(std::string_view a, std::string_view b) {
  if (is_integer_token(a) && is_integer_token(b)) {
    mpz_class x{std::string(a)}, y{std::string(b)};
    if (int c = cmp(x, y); c != 0) return c < 0;
  }
  return a < b;
}

// ---------------------------------------------------------------------------
// ExplicitPoset

ExplicitPoset ExplicitPoset::from_relation(std::vector<std::string> names, const Relation& leq) {
  std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) { return display_less(a, b); });
  if (auto dup = std::adjacent_find(names.begin(), names.end()); dup != names.end())
    throw Error(Errc::bad_value, "duplicate poset element '" + *dup + "'");
  if (names.empty()) throw Error(Errc::bad_value, "explicit poset must be nonempty");

  ExplicitPoset p;
  p.names_ = std::move(names);
  const std::size_t m = p.size();
  p.leq_.assign(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) p.leq_[i * m + i] = 1;
  for (const auto& [a, b] : leq) {
    auto ia = p.index_of(a), ib = p.index_of(b);
    if (!ia) throw Error(Errc::unknown_element, "relation mentions unknown element '" + a + "'");
    if (!ib) throw Error(Errc::unknown_element, "relation mentions unknown element '" + b + "'");
    p.leq_[*ia * m + *ib] = 1;
  }
  // Warshall transitive closure
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (p.leq_[i * m + k])
        for (std::size_t j = 0; j < m; ++j)
          if (p.leq_[k * m + j]) p.leq_[i * m + j] = 1;

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (p.leq_[i * m + j] && p.leq_[j * m + i])
        throw Error(Errc::not_a_partial_order,
                    "order relation has a cycle through '" + p.names_[i] + "' and '" + p.names_[j] + "'");

  p.derive_joins();
  return p;
}

std::optional<std::size_t> ExplicitPoset::least_upper_bound(std::size_t a, std::size_t b) const {
  const std::size_t m = size();
  std::vector<std::size_t> upper;
  for (std::size_t z = 0; z < m; ++z)
    if (leq(a, z) && leq(b, z)) upper.push_back(z);
  for (std::size_t z : upper) {
    if (std::all_of(upper.begin(), upper.end(), [&](std::size_t u) { return leq(z, u); })) return z;
  }
  return std::nullopt;
}

void ExplicitPoset::derive_joins() {
  const std::size_t m = size();
  join_.assign(m * m, -1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      auto j = least_upper_bound(a, b);
      const std::int64_t v = j ? static_cast<std::int64_t>(*j) : -1;
      join_[a * m + b] = v;
      join_[b * m + a] = v;
    }
  custom_joins_ = false;
}

ExplicitPoset ExplicitPoset::with_join_table(const JoinTriples& table) const {
  ExplicitPoset p = *this;
  const std::size_t m = size();
  p.join_.assign(m * m, -1);
  for (const auto& [a, b, c] : table) {
    auto ia = index_of(a), ib = index_of(b), ic = index_of(c);
    if (!ia || !ib || !ic)
      throw Error(Errc::unknown_element, "join table mentions unknown element in (" + a + ", " + b + ", " + c + ")");
    p.join_[*ia * m + *ib] = static_cast<std::int64_t>(*ic);
  }
  p.custom_joins_ = true;
  return p;
}

ExplicitPoset ExplicitPoset::dual() const {
  ExplicitPoset p = *this;
  const std::size_t m = size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) p.leq_[i * m + j] = leq_[j * m + i];
  p.derive_joins();
  return p;
}

std::optional<std::size_t> ExplicitPoset::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return display_less(a, b); });
  if (it != names_.end() && *it == name) return static_cast<std::size_t>(it - names_.begin());
  // display_less is not a strict total order on strings like "01" vs "1"; fall back to a scan.
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> ExplicitPoset::join(std::size_t a, std::size_t b) const {
  const std::int64_t v = join_[a * size() + b];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

// ---------------------------------------------------------------------------
// Lattice

Lattice Lattice::divisor() { return Lattice(LatticeKind::divisor, nullptr); }
Lattice Lattice::max_chain() { return Lattice(LatticeKind::max_chain, nullptr); }

Lattice Lattice::from_poset(ExplicitPoset poset, bool strict) {
  if (strict) {
    const std::size_t m = poset.size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (!poset.join(a, b))
          throw Error(Errc::not_a_semilattice,
                      "'" + poset.name(a) + "' and '" + poset.name(b) + "' have no unique least upper bound");
  }
  return Lattice(LatticeKind::explicit_poset, std::make_shared<const ExplicitPoset>(std::move(poset)));
}

void Lattice::check(const Element& x) const {
  if (kind_ == LatticeKind::explicit_poset) {
    if (sgn(x.key) < 0 || cmp(x.key, static_cast<unsigned long>(poset_->size())) >= 0)
      throw Error(Errc::unknown_element, "element key " + x.key.get_str() + " is not in the explicit poset");
  } else if (sgn(x.key) <= 0) {
    throw Error(Errc::unknown_element, "element " + x.key.get_str() + " is not a positive integer");
  }
}

std::size_t Lattice::index(const Element& x) const {
  check(x);
  return static_cast<std::size_t>(x.key.get_ui());
}

bool Lattice::leq(const Element& x, const Element& y) const {
  switch (kind_) {
    case LatticeKind::divisor:
      check(x);
      check(y);
      return mpz_divisible_p(y.key.get_mpz_t(), x.key.get_mpz_t()) != 0;
    case LatticeKind::max_chain:
      check(x);
      check(y);
      return cmp(x.key, y.key) <= 0;
    case LatticeKind::explicit_poset:
      return poset_->leq(index(x), index(y));
  }
  return false;
}

std::optional<Element> Lattice::try_join(const Element& x, const Element& y) const {
  switch (kind_) {
    case LatticeKind::divisor: {
      check(x);
      check(y);
      Element out;
      mpz_lcm(out.key.get_mpz_t(), x.key.get_mpz_t(), y.key.get_mpz_t());
      return out;
    }
    case LatticeKind::max_chain:
      check(x);
      check(y);
      return cmp(x.key, y.key) >= 0 ? x : y;
    case LatticeKind::explicit_poset: {
      auto j = poset_->join(index(x), index(y));
      if (!j) return std::nullopt;
      return Element(static_cast<long>(*j));
    }
  }
  return std::nullopt;
}

Element Lattice::join(const Element& x, const Element& y) const {
  auto j = try_join(x, y);
  if (!j) throw Error(Errc::not_a_semilattice, "'" + display(x) + "' and '" + display(y) + "' have no join");
  return *std::move(j);
}

Element Lattice::element(std::string_view token) const {
  if (kind_ == LatticeKind::explicit_poset) {
    auto i = poset_->index_of(token);
    if (!i) throw Error(Errc::unknown_element, "unknown element '" + std::string(token) + "'");
    return Element(static_cast<long>(*i));
  }
  if (!is_integer_token(token)) throw Error(Errc::unknown_element, "'" + std::string(token) + "' is not an integer");
  Element e{mpz_class(std::string(token[0] == '+' ? token.substr(1) : token))};
  check(e);
  return e;
}

Element Lattice::element(long value) const {
  if (kind_ == LatticeKind::explicit_poset) return element(std::to_string(value));
  Element e(value);
  check(e);
  return e;
}

std::string Lattice::display(const Element& x) const {
  if (kind_ == LatticeKind::explicit_poset) return poset_->name(index(x));
  return x.key.get_str();
}

std::optional<mpz_class> Lattice::numeric_value(const Element& x) const {
  if (kind_ != LatticeKind::explicit_poset) return x.key;
  const std::string& name = poset_->name(index(x));
  if (!is_integer_token(name)) return std::nullopt;
  return mpz_class(name[0] == '+' ? name.substr(1) : name);
}

std::vector<Element> Lattice::universe() const {
  std::vector<Element> out;
  if (kind_ != LatticeKind::explicit_poset) return out;
  for (std::size_t i = 0; i < poset_->size(); ++i) out.emplace_back(static_cast<long>(i));
  return out;
}

std::string Lattice::describe() const {
  switch (kind_) {
    case LatticeKind::divisor: return "divisor";
    case LatticeKind::max_chain: return "max";
    case LatticeKind::explicit_poset: return "explicit(" + std::to_string(poset_->size()) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// OrderedSubset

OrderedSubset::OrderedSubset(Trusted, Lattice lattice, std::vector<Element> elements)
    : lattice_(std::move(lattice)), elements_(std::move(elements)) {
  position_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) position_.emplace(elements_[i], i);
}

OrderedSubset::OrderedSubset(Lattice lattice, std::vector<Element> elements)
    : OrderedSubset(Trusted{}, std::move(lattice), std::move(elements)) {
  if (position_.size() != elements_.size()) throw Error(Errc::bad_value, "ordered subset contains duplicate elements");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    lattice_.check(elements_[i]);
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (lattice_.leq(elements_[j], elements_[i]))
        throw Error(Errc::bad_value, "ordering violates the linear extension property: " +
                                         lattice_.display(elements_[j]) + " precedes-or-equals " +
                                         lattice_.display(elements_[i]) + " but is listed later");
  }
}

std::optional<std::size_t> OrderedSubset::position(const Element& x) const {
  auto it = position_.find(x);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> OrderedSubset::display() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& e : elements_) out.push_back(lattice_.display(e));
  return out;
}

OrderedSubset linear_extension(const Lattice& lattice, std::vector<Element> elements) {
  for (const auto& e : elements) lattice.check(e);
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error(Errc::bad_value, "linear_extension: elements must be pairwise distinct");
  if (lattice.keys_extend_order()) return OrderedSubset(OrderedSubset::Trusted{}, lattice, std::move(elements));

  // Kahn's algorithm; the ready set is a min-heap on position, i.e. on key.
  const std::size_t m = elements.size();
  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<std::size_t> indegree(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b && lattice.leq(elements[a], elements[b])) {
        succ[a].push_back(b);
        ++indegree[b];
      }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t a = 0; a < m; ++a)
    if (indegree[a] == 0) ready.push(a);
  std::vector<Element> order;
  order.reserve(m);
  while (!ready.empty()) {
    const std::size_t a = ready.top();
    ready.pop();
    order.push_back(elements[a]);
    for (std::size_t b : succ[a])
      if (--indegree[b] == 0) ready.push(b);
  }
  if (order.size() != m) throw Error(Errc::not_a_partial_order, "order restricted to the elements has a cycle");
  return OrderedSubset(OrderedSubset::Trusted{}, lattice, std::move(order));
}

OrderedSubset range_subset(const Lattice& lattice, std::size_t n) {
  if (lattice.kind() == LatticeKind::explicit_poset) {
    auto all = linear_extension(lattice, lattice.universe());
    if (n > all.size())
      throw Error(Errc::bad_value, "range " + std::to_string(n) + " exceeds the poset size " + std::to_string(all.size()));
    std::vector<Element> head(all.elements().begin(), all.elements().begin() + static_cast<std::ptrdiff_t>(n));
    return linear_extension(lattice, std::move(head));
  }
  std::vector<Element> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.emplace_back(static_cast<long>(i));
  return linear_extension(lattice, std::move(out));
}

// ---------------------------------------------------------------------------
// JoinClosure

JoinClosure::JoinClosure(const OrderedSubset& base, std::size_t order) : order_(order) {
  if (order == 0) throw Error(Errc::bad_order, "join closure order must be positive");
  if (base.size() > UINT32_MAX) throw Error(Errc::too_large, "base set too large");
  const Lattice& lat = base.lattice();
  const std::size_t n = base.size();
  levels_.push_back(base);
  steps_.emplace_back();

  for (std::size_t j = 2; j <= order; ++j) {
    const OrderedSubset& prev = levels_.back();
    std::vector<Element> joined;
    joined.reserve(prev.size() * n);
    ElementMap<std::size_t> seen;
    std::vector<Element> fresh;
    for (std::size_t a = 0; a < prev.size(); ++a)
      for (std::size_t i = 0; i < n; ++i) {
        Element e = lat.join(prev[a], base[i]);
        if (seen.emplace(e, fresh.size()).second) fresh.push_back(e);
        joined.push_back(std::move(e));
      }

    if (fresh.size() == prev.size()) {
      // prev ⊆ next by idempotence, so equal sizes mean a fixpoint.
      std::vector<std::uint32_t> step(joined.size());
      for (std::size_t t = 0; t < joined.size(); ++t) step[t] = static_cast<std::uint32_t>(*prev.position(joined[t]));
      steps_.push_back(std::move(step));
      fixpoint_ = j - 1;
      return;
    }

    OrderedSubset next = linear_extension(lat, std::move(fresh));
    std::vector<std::uint32_t> step(joined.size());
    for (std::size_t t = 0; t < joined.size(); ++t) step[t] = static_cast<std::uint32_t>(*next.position(joined[t]));
    levels_.push_back(std::move(next));
    steps_.push_back(std::move(step));
  }
}

std::size_t JoinClosure::stored_index(std::size_t j) const {
  if (j == 0 || j > order_) throw Error(Errc::bad_order, "closure level " + std::to_string(j) + " outside 1.." + std::to_string(order_));
  return std::min(j, levels_.size()) - 1;
}

const OrderedSubset& JoinClosure::level(std::size_t j) const { return levels_[stored_index(j)]; }

std::span<const std::uint32_t> JoinClosure::step(std::size_t j) const {
  if (j < 2 || j > order_) throw Error(Errc::bad_order, "closure step " + std::to_string(j) + " outside 2.." + std::to_string(order_));
  return steps_[std::min(j, steps_.size()) - 1];
}

JoinClosure join_closure(const OrderedSubset& base, std::size_t order) { return JoinClosure(base, order); }

// ---------------------------------------------------------------------------
// Incidence matrices and Möbius functions

IncidenceMatrix::IncidenceMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
    : rows_(rows), cols_(cols), bits_(std::move(bits)) {
  if (bits_.size() != rows_ * cols_) throw Error(Errc::bad_shape, "incidence matrix size mismatch");
}

std::size_t IncidenceMatrix::nnz() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

IncidenceMatrix IncidenceMatrix::with_columns(std::span<const std::size_t> order) const {
  if (order.size() != cols_) throw Error(Errc::bad_shape, "column order has wrong length");
  std::vector<std::uint8_t> bits(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) bits[i * cols_ + j] = bits_[i * cols_ + order[j]];
  return IncidenceMatrix(rows_, cols_, std::move(bits));
}

IncidenceMatrix zeta_matrix(const OrderedSubset& rows, const OrderedSubset& cols) {
  if (!rows.lattice().same_context(cols.lattice()))
    throw Error(Errc::bad_value, "zeta_matrix: row and column sets belong to different semilattices");
  const Lattice& lat = rows.lattice();
  std::vector<std::uint8_t> bits(rows.size() * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) bits[i * cols.size() + j] = lat.leq(rows[i], cols[j]) ? 1 : 0;
  return IncidenceMatrix(rows.size(), cols.size(), std::move(bits));
}

MoebiusTable::MoebiusTable(const OrderedSubset& poset) {
  const std::size_t r = poset.size();
  const Lattice& lat = poset.lattice();
  // strict upper part of ζ, column-wise: below[j] = { k < j : y_k ⪯ y_j }
  std::vector<std::vector<std::size_t>> below(r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < j; ++k)
      if (lat.leq(poset[k], poset[j])) below[j].push_back(k);

  rows_.resize(r);
  std::vector<mpz_class> mu(r);
  for (std::size_t i = 0; i < r; ++i) {
    // Row i of ζ^{-1} by substitution in μζ = I.
    for (auto& v : mu) v = 0;
    mu[i] = 1;
    for (std::size_t j = i + 1; j < r; ++j) {
      mpz_class s = 0;
      for (std::size_t k : below[j])
        if (k >= i) s += mu[k];
      mu[j] = -s;
    }
    for (std::size_t j = i; j < r; ++j)
      if (sgn(mu[j]) != 0) rows_[i].emplace_back(j, mu[j]);
  }
}

mpz_class MoebiusTable::operator()(std::size_t i, std::size_t j) const {
  const auto& row = rows_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != row.end() && it->first == j) return it->second;
  return 0;
}

MoebiusTable moebius(const OrderedSubset& poset) { return MoebiusTable(poset); }

// ---------------------------------------------------------------------------
// Validation

const char* violation_name(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::join_undefined: return "not_a_semilattice";
    case ViolationKind::not_commutative: return "not_commutative";
    case ViolationKind::not_associative: return "not_associative";
    case ViolationKind::not_idempotent: return "not_idempotent";
    case ViolationKind::not_upper_bound: return "not_upper_bound";
    case ViolationKind::not_least: return "not_least_upper_bound";
  }
  return "?";
}

bool ValidationReport::has(ViolationKind kind) const noexcept {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_semilattice(const Lattice& lattice, std::span<const Element> elements, std::uint64_t seed) {
  ValidationReport report;
  auto show = [&](const Element& e) { return lattice.display(e); };

  // Closure under the (possibly partial) join, recording undefined pairs.
  std::vector<Element> closure;
  ElementMap<std::size_t> seen;
  for (const auto& e : elements) {
    lattice.check(e);
    if (seen.emplace(e, closure.size()).second) closure.push_back(e);
  }
  std::vector<std::pair<std::size_t, std::size_t>> undefined;
  for (std::size_t a = 0; a < closure.size(); ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      bool missing = false;
      for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
        auto j = lattice.try_join(closure[p], closure[q]);
        if (!j) {
          missing = true;
          continue;
        }
        if (seen.emplace(*j, closure.size()).second) closure.push_back(*j);
      }
      if (missing) undefined.emplace_back(b, a);
    }
    if (closure.size() > 4096) throw Error(Errc::too_large, "validation closure exceeds 4096 elements");
  }
  for (auto [p, q] : undefined)
    report.violations.push_back({ViolationKind::join_undefined,
                                 "no join for (" + show(closure[p]) + ", " + show(closure[q]) + ")"});

  const std::size_t m = closure.size();
  report.elements_checked = m;
  auto join = [&](std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    auto j = lattice.try_join(closure[a], closure[b]);
    if (!j) return std::nullopt;
    return seen.at(*j);
  };

  for (std::size_t a = 0; a < m; ++a) {
    if (auto aa = join(a, a); aa && *aa != a)
      report.violations.push_back({ViolationKind::not_idempotent, show(closure[a]) + " ∨ itself is " + show(closure[*aa])});
    for (std::size_t b = a + 1; b < m; ++b) {
      auto ab = join(a, b), ba = join(b, a);
      if (ab && ba && *ab != *ba)
        report.violations.push_back({ViolationKind::not_commutative, show(closure[a]) + " ∨ " + show(closure[b]) +
                                                                         " differs from " + show(closure[b]) + " ∨ " +
                                                                         show(closure[a])});
    }
  }

  auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    auto ab = join(a, b), bc = join(b, c);
    if (!ab || !bc) return;
    auto left = join(*ab, c), right = join(a, *bc);
    if (left && right && *left != *right)
      report.violations.push_back({ViolationKind::not_associative, "(" + show(closure[a]) + " ∨ " + show(closure[b]) +
                                                                       ") ∨ " + show(closure[c]) + " differs from " +
                                                                       show(closure[a]) + " ∨ (" + show(closure[b]) +
                                                                       " ∨ " + show(closure[c]) + ")"});
  };
  report.exhaustive = m <= 12;
  if (report.exhaustive) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (int t = 0; t < 4096; ++t) check_triple(pick(rng), pick(rng), pick(rng));
  }

  // Least-upper-bound halves, checked against the whole explicit universe.
  if (lattice.kind() == LatticeKind::explicit_poset) {
    const ExplicitPoset& p = *lattice.poset();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        auto j = lattice.try_join(closure[a], closure[b]);
        if (!j) continue;
        const std::size_t ia = closure[a].key.get_ui(), ib = closure[b].key.get_ui(), ij = j->key.get_ui();
        if (!p.leq(ia, ij) || !p.leq(ib, ij)) {
          report.violations.push_back({ViolationKind::not_upper_bound, show(*j) + " is not above both " +
                                                                           show(closure[a]) + " and " + show(closure[b])});
          continue;
        }
        for (std::size_t z = 0; z < p.size(); ++z)
          if (p.leq(ia, z) && p.leq(ib, z) && !p.leq(ij, z)) {
            report.violations.push_back({ViolationKind::not_least, show(*j) + " is not below the upper bound " +
                                                                       p.name(z) + " of " + show(closure[a]) + " and " +
                                                                       show(closure[b])});
            break;
          }
      }
  }
  return report;
}

}  // namespace jointensor
