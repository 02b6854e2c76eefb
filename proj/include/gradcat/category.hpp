#pragma once

// The seven concrete graduated categories, all at finite scale:
// Set, pointed sets, posets, boolean algebras, GF(p)-vector spaces,
// M-sets for a finite monoid M, and relational structures of a signature.
//
// Objects carry a finite carrier plus per-instance structure. Morphisms carry
// the carrier-level function; Vec morphisms additionally carry their matrix
// and Bool morphisms the (contravariant) function on atoms.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gradcat/finset.hpp"
#include "gradcat/linalg.hpp"

namespace gradcat {

enum class CatKind { Set, SetP, Pos, Bool, Vec, MSet, OmegaRel };

std::string to_string(CatKind k);

// A finite monoid given by its multiplication table over element indices.
struct Monoid {
  FinSet elements;
  std::size_t unit = 0;
  std::vector<std::vector<std::size_t>> table;  // table[a][b] = a * b

  // Validates closure, associativity and the unit laws.
  static Monoid make(FinSet elements, std::size_t unit, std::vector<std::vector<std::size_t>> table);
  static Monoid cyclic(std::size_t n);    // Z/n
  static Monoid idempotent();             // {1, z}, z*z = z

  friend bool operator==(const Monoid&, const Monoid&) = default;
};

class CatId {
public:
  static CatId set();
  static CatId pointed();
  static CatId pos();
  static CatId boolean();
  static CatId vec(int p = 2);
  static CatId mset(Monoid m);
  static CatId omega_rel(std::vector<int> arities);

  CatKind kind() const { return kind_; }
  int prime() const { return prime_; }
  const Monoid& monoid() const { return *monoid_; }
  const std::vector<int>& arities() const { return arities_; }
  std::string name() const;

  friend bool operator==(const CatId& a, const CatId& b);

private:
  CatKind kind_ = CatKind::Set;
  int prime_ = 2;
  std::shared_ptr<const Monoid> monoid_;
  std::vector<int> arities_;
};

struct Grade {
  std::uint64_t value = 0;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

// Per-instance structure payloads.
struct PlainData {
  friend bool operator==(const PlainData&, const PlainData&) = default;
};
struct PointedData {
  std::size_t base = 0;
  friend bool operator==(const PointedData&, const PointedData&) = default;
};
struct OrderData {
  std::size_t n = 0;
  std::vector<char> leq;  // n*n, reflexive-transitive-antisymmetric
  bool le(std::size_t i, std::size_t j) const { return leq[i * n + j] != 0; }
  friend bool operator==(const OrderData&, const OrderData&) = default;
};
struct BoolData {
  FinSet atoms;  // carrier = all subsets of atoms
  friend bool operator==(const BoolData&, const BoolData&) = default;
};
struct VecData {
  std::size_t dim = 0;  // carrier = GF(p)^dim
  friend bool operator==(const VecData&, const VecData&) = default;
};
struct ActionData {
  std::vector<std::vector<std::size_t>> act;  // act[m][x] = m . x
  friend bool operator==(const ActionData&, const ActionData&) = default;
};
struct RelData {
  std::vector<std::vector<std::vector<std::size_t>>> rels;  // per symbol, sorted tuples
  friend bool operator==(const RelData&, const RelData&) = default;
};

using Structure = std::variant<PlainData, PointedData, OrderData, BoolData, VecData, ActionData, RelData>;

class CatObject {
public:
  CatObject() = default;

  static CatObject set(FinSet carrier);
  static CatObject pointed(FinSet carrier, const Label& base);
  // order: pairs (a, b) meaning a <= b; closed reflexively and transitively.
  static CatObject poset(FinSet carrier, const std::vector<std::pair<Label, Label>>& order);
  static CatObject poset_from_matrix(FinSet carrier, std::vector<char> leq);
  static CatObject boolean(FinSet atoms);
  static CatObject vec(int p, std::size_t dim);
  static CatObject mset(const CatId& cat, FinSet carrier, std::vector<std::vector<std::size_t>> act);
  static CatObject relational(const CatId& cat, FinSet carrier,
                              std::vector<std::vector<std::vector<std::size_t>>> rels);

  const CatId& cat() const { return cat_; }
  const FinSet& carrier() const { return carrier_; }
  const Structure& structure() const { return structure_; }

  std::size_t base() const { return std::get<PointedData>(structure_).base; }
  const OrderData& order() const { return std::get<OrderData>(structure_); }
  const FinSet& atoms() const { return std::get<BoolData>(structure_).atoms; }
  std::size_t dim() const { return std::get<VecData>(structure_).dim; }
  const std::vector<std::vector<std::size_t>>& action() const { return std::get<ActionData>(structure_).act; }
  const std::vector<std::vector<std::vector<std::size_t>>>& relations() const {
    return std::get<RelData>(structure_).rels;
  }

  std::string to_string() const;

  friend bool operator==(const CatObject& a, const CatObject& b);

private:
  CatObject(CatId cat, FinSet carrier, Structure s);

  CatId cat_;
  FinSet carrier_;
  Structure structure_;
};

class CatMorphism {
public:
  CatMorphism() = default;

  // Validates that the carrier map preserves structure.
  static CatMorphism from_map(const CatObject& src, const CatObject& dst, const FinMap& map);
  // Vec: dst.dim x src.dim matrix.
  static CatMorphism from_matrix(const CatObject& src, const CatObject& dst, const Matrix& m);
  // Bool: a function dst.atoms -> src.atoms inducing 2^src -> 2^dst by preimage.
  static CatMorphism from_atom_map(const CatObject& src, const CatObject& dst, const FinMap& g);
  static CatMorphism identity(const CatObject& a);

  const CatId& cat() const { return src_.cat(); }
  const CatObject& src() const { return src_; }
  const CatObject& dst() const { return dst_; }
  const FinMap& map() const { return map_; }
  const Matrix& matrix() const { return *matrix_; }
  const FinMap& atom_map() const { return *atom_map_; }

  std::string to_string() const;

  friend bool operator==(const CatMorphism& a, const CatMorphism& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.map_ == b.map_;
  }

private:
  CatObject src_;
  CatObject dst_;
  FinMap map_;
  std::optional<Matrix> matrix_;
  std::optional<FinMap> atom_map_;
};

// g after f.
CatMorphism compose(const CatMorphism& g, const CatMorphism& f);

Grade grade(const CatObject& a);

// Structure preservation of a carrier-level map, decided from the carrier
// labels alone (linearity for Vec, boolean operations for Bool).
bool is_homomorphism(const CatObject& a, const CatObject& b, const FinMap& f);

// Every morphism a -> b as a carrier table, in canonical order.
void for_each_hom(const CatObject& a, const CatObject& b,
                  const std::function<bool(const FinMap&)>& fn);
std::vector<CatMorphism> hom_set(const CatObject& a, const CatObject& b);

struct MorphismFlags {
  bool mono = false;
  bool strong_epi = false;
  bool iso = false;
};

MorphismFlags classify(const CatObject& a, const CatObject& b, const FinMap& f);
MorphismFlags classify_morphism(const CatMorphism& f);

struct CatFactorization {
  CatMorphism epi;
  CatMorphism mono;
};

// (strong epi, mono) factorization through the image.
CatFactorization factorize_in_cat(const CatMorphism& f);

// One representative mono per subobject, exhaustive.
std::vector<CatMorphism> subobjects(const CatObject& a);
// One representative strong epi per strong quotient, exhaustive.
std::vector<CatMorphism> strong_quotients(const CatObject& a);

// Whether two monos into the same object represent the same subobject.
bool same_subobject(const CatMorphism& m1, const CatMorphism& m2);
// m1 factors through m2.
bool subobject_leq(const CatMorphism& m1, const CatMorphism& m2);

struct MonoPullback {
  CatObject object;
  CatMorphism left;   // to m.src
  CatMorphism right;  // to m'.src
};

// Intersection of two monos with a common codomain.
MonoPullback pullback_of_monos(const CatMorphism& m, const CatMorphism& mp);

struct GradeAxiomReport {
  bool pass = true;
  std::size_t subobjects_checked = 0;
  std::size_t quotients_checked = 0;
  std::string failure;                     // empty on pass
  std::optional<CatMorphism> counterexample;
};

GradeAxiomReport verify_grade_axioms(const CatObject& a);

// All objects of the instance up to a size bound: carrier size for the
// set-based instances, number of atoms for Bool, dimension for Vec.
std::vector<CatObject> enumerate_objects(const CatId& cat, std::size_t max_size);

// Vector label helpers for the Vec instance.
Label vector_label(const std::vector<int>& v);
std::vector<int> label_vector(const Label& l);

}  // namespace gradcat
