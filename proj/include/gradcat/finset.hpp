#pragma once

// Finite sets with structured labels, explicit function tables, and the
// elementary limit/colimit constructions of Set.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gradcat {

// An element label: an integer, a string, or a tuple of labels.
// Ordered integers < strings < tuples, tuples lexicographically.
class Label {
public:
  using Tuple = std::vector<Label>;

  Label() : value_(std::int64_t{0}) {}
  Label(int v) : value_(std::int64_t{v}) {}
  Label(std::int64_t v) : value_(v) {}
  Label(std::size_t v) : value_(static_cast<std::int64_t>(v)) {}
  Label(const char* s) : value_(std::string(s)) {}
  Label(std::string s) : value_(std::move(s)) {}
  Label(Tuple t) : value_(std::move(t)) {}

  static Label tuple(std::initializer_list<Label> items) { return Label(Tuple(items)); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_string() const { return std::holds_alternative<std::string>(value_); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(value_); }

  std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  const Tuple& as_tuple() const { return std::get<Tuple>(value_); }

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Label& a, const Label& b);
  friend bool operator==(const Label& a, const Label& b) { return (a <=> b) == 0; }

private:
  std::variant<std::int64_t, std::string, Tuple> value_;
};

// A finite set: sorted, duplicate-free labels. Copies share storage.
class FinSet {
public:
  FinSet();
  // Sorts the labels; duplicates are a contract violation.
  explicit FinSet(std::vector<Label> elements);
  FinSet(std::initializer_list<Label> elements);

  // {0, 1, ..., n-1}
  static FinSet range(std::size_t n);

  std::size_t size() const { return elems_->size(); }
  bool empty() const { return elems_->empty(); }
  const Label& operator[](std::size_t i) const { return (*elems_)[i]; }
  const std::vector<Label>& elements() const { return *elems_; }
  auto begin() const { return elems_->begin(); }
  auto end() const { return elems_->end(); }

  std::optional<std::size_t> find(const Label& l) const;
  bool contains(const Label& l) const { return find(l).has_value(); }
  // Index of a member; throws ContractViolation for non-members.
  std::size_t index_of(const Label& l) const;

  std::string to_string() const;

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.elems_ == b.elems_ || *a.elems_ == *b.elems_;
  }
  friend bool operator<(const FinSet& a, const FinSet& b) { return *a.elems_ < *b.elems_; }

private:
  std::shared_ptr<const std::vector<Label>> elems_;
};

// A function between finite sets stored as an index table.
class FinMap {
public:
  FinMap() = default;
  FinMap(FinSet dom, FinSet cod, std::vector<std::size_t> table);

  static FinMap identity(const FinSet& x);
  // Build from a label-level rule.
  static FinMap from_fn(const FinSet& dom, const FinSet& cod,
                        const std::function<Label(const Label&)>& fn);
  // Inclusion of a subset; every element of sub must lie in sup.
  static FinMap inclusion(const FinSet& sub, const FinSet& sup);
  static FinMap constant(const FinSet& dom, const FinSet& cod, std::size_t value);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<std::size_t>& table() const { return table_; }

  std::size_t at(std::size_t i) const { return table_[i]; }
  const Label& operator()(const Label& x) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }
  // Sorted indices of the image in cod.
  std::vector<std::size_t> image_indices() const;
  FinSet image() const;
  // Inverse of a bijection.
  FinMap inverse() const;

  std::string to_string() const;

  friend bool operator==(const FinMap& a, const FinMap& b) {
    return a.table_ == b.table_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

private:
  FinSet dom_;
  FinSet cod_;
  std::vector<std::size_t> table_;
};

// g after f.
FinMap compose(const FinMap& g, const FinMap& f);

struct Factorization {
  FinMap epi;
  FinMap mono;
};

struct Cone {
  FinSet apex;
  std::vector<FinMap> legs;
};

struct Equalizer {
  FinSet object;
  FinMap inclusion;
};

struct Pullback {
  FinSet object;
  FinMap left;   // to dom of f
  FinMap right;  // to dom of g
};

// Cartesian product with tuple labels and projections. The empty list gives
// the terminal set {()}.
Cone product(const std::vector<FinSet>& xs);
// Disjoint union, labels (tag, x); the result's legs are the injections.
Cone coproduct(const std::vector<FinSet>& xs);
Equalizer equalizer(const FinMap& f, const FinMap& g);
Pullback pullback(const FinMap& f, const FinMap& g);
Factorization factorize(const FinMap& f);

// Enumeration helpers.
std::uint64_t count_maps(std::size_t dom_size, std::size_t cod_size);
// Calls fn with every table dom -> cod in lexicographic order; stops early
// when fn returns false.
void for_each_table(std::size_t dom_size, std::size_t cod_size,
                    const std::function<bool(const std::vector<std::size_t>&)>& fn);
std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod);
// All subsets, ordered by size then lexicographically by index.
std::vector<FinSet> subsets(const FinSet& x);
// All set partitions as block-index tables (restricted growth strings).
std::vector<std::vector<std::size_t>> partitions(std::size_t n);
// Quotient by a block table; classes are labelled by their least member.
FinMap quotient_map(const FinSet& x, const std::vector<std::size_t>& blocks);

FinSet set_intersection(const FinSet& a, const FinSet& b);
FinSet set_union(const FinSet& a, const FinSet& b);
bool is_subset(const FinSet& a, const FinSet& b);

}  // namespace gradcat
