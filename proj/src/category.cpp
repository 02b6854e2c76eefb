#include "gradcat/category.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gradcat/error.hpp"

namespace gradcat {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Index of a GF(p)^n vector in the canonical (lexicographic) carrier.
std::size_t vec_index(const std::vector<int>& v, int p) {
  std::size_t idx = 0;
  for (int c : v) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(c);
  return idx;
}

std::vector<int> index_vec(std::size_t idx, std::size_t n, int p) {
  std::vector<int> v(n);
  for (std::size_t k = n; k-- > 0;) {
    v[k] = static_cast<int>(idx % static_cast<std::size_t>(p));
    idx /= static_cast<std::size_t>(p);
  }
  return v;
}

// Reflexive-transitive closure over n points (Warshall).
std::vector<char> closure(std::size_t n, std::vector<char> r) {
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k * n + j]) r[i * n + j] = 1;
  return r;
}

bool antisymmetric(std::size_t n, const std::vector<char>& r) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (r[i * n + j] && r[j * n + i]) return false;
  return true;
}

bool transitive(std::size_t n, const std::vector<char>& r) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i * n + j])
        for (std::size_t k = 0; k < n; ++k)
          if (r[j * n + k] && !r[i * n + k]) return false;
  return true;
}

// Bool carriers: subset labels <-> bitmasks over the atom indices.
std::size_t subset_mask(const FinSet& atoms, const Label& subset) {
  std::size_t mask = 0;
  for (const auto& a : subset.as_tuple()) mask |= std::size_t{1} << atoms.index_of(a);
  return mask;
}

Label mask_subset(const FinSet& atoms, std::size_t mask) {
  Label::Tuple t;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (mask >> i & 1U) t.push_back(atoms[i]);
  return Label(std::move(t));
}

// mask -> carrier index and carrier index -> mask.
struct BoolIndex {
  std::vector<std::size_t> of_mask;
  std::vector<std::size_t> mask_of;
  explicit BoolIndex(const CatObject& a) {
    const auto& atoms = a.atoms();
    of_mask.resize(std::size_t{1} << atoms.size());
    mask_of.resize(a.carrier().size());
    for (std::size_t i = 0; i < a.carrier().size(); ++i) {
      auto m = subset_mask(atoms, a.carrier()[i]);
      mask_of[i] = m;
      of_mask[m] = i;
    }
  }
};

void require_same_cat(const CatObject& a, const CatObject& b, const char* where) {
  if (!(a.cat() == b.cat()))
    throw ContractViolation(std::string(where) + ": objects live in different instances (" +
                            a.cat().name() + " vs " + b.cat().name() + ")");
}

std::vector<std::vector<std::size_t>> sorted_unique(std::vector<std::vector<std::size_t>> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Structure induced on the image (or quotient) of a carrier-level map
// f: a -> carrier `img`, where every element of img is hit.
CatObject image_object(const CatObject& a, const FinSet& img, const std::vector<std::size_t>& f,
                       const CatObject* target, const std::vector<std::size_t>* img_in_target) {
  const auto& cat = a.cat();
  switch (cat.kind()) {
    case CatKind::Set:
      return CatObject::set(img);
    case CatKind::SetP:
      return CatObject::pointed(img, img[f[a.base()]]);
    case CatKind::Pos: {
      const std::size_t n = img.size();
      std::vector<char> r(n * n, 0);
      const auto& ord = a.order();
      for (std::size_t i = 0; i < ord.n; ++i)
        for (std::size_t j = 0; j < ord.n; ++j)
          if (ord.le(i, j)) r[f[i] * n + f[j]] = 1;
      r = closure(n, std::move(r));
      if (!antisymmetric(n, r)) throw ContractViolation("image order is not antisymmetric");
      return CatObject::poset_from_matrix(img, std::move(r));
    }
    case CatKind::MSet: {
      // Image of an equivariant map: act inherited from the target, or from
      // the source when f is a congruence quotient.
      const auto& mon = cat.monoid();
      std::vector<std::vector<std::size_t>> act(mon.elements.size(), std::vector<std::size_t>(img.size()));
      if (target) {
        std::vector<std::size_t> back(target->carrier().size(), SIZE_MAX);
        for (std::size_t i = 0; i < img_in_target->size(); ++i) back[(*img_in_target)[i]] = i;
        for (std::size_t m = 0; m < act.size(); ++m)
          for (std::size_t i = 0; i < img.size(); ++i) {
            auto t = back[target->action()[m][(*img_in_target)[i]]];
            if (t == SIZE_MAX) throw ContractViolation("image is not closed under the action");
            act[m][i] = t;
          }
      } else {
        for (std::size_t m = 0; m < act.size(); ++m)
          for (std::size_t x = 0; x < f.size(); ++x) act[m][f[x]] = f[a.action()[m][x]];
      }
      return CatObject::mset(cat, img, std::move(act));
    }
    case CatKind::OmegaRel: {
      std::vector<std::vector<std::vector<std::size_t>>> rels(a.relations().size());
      for (std::size_t s = 0; s < rels.size(); ++s) {
        for (const auto& t : a.relations()[s]) {
          std::vector<std::size_t> u(t.size());
          for (std::size_t k = 0; k < t.size(); ++k) u[k] = f[t[k]];
          rels[s].push_back(std::move(u));
        }
      }
      return CatObject::relational(cat, img, std::move(rels));
    }
    default:
      throw ContractViolation("image_object: not a carrier-based instance");
  }
}

}  // namespace

std::string to_string(CatKind k) {
  switch (k) {
    case CatKind::Set: return "Set";
    case CatKind::SetP: return "SetP";
    case CatKind::Pos: return "Pos";
    case CatKind::Bool: return "Bool";
    case CatKind::Vec: return "Vec";
    case CatKind::MSet: return "MSet";
    case CatKind::OmegaRel: return "OmegaRel";
  }
  return "?";
}

Label vector_label(const std::vector<int>& v) {
  Label::Tuple t;
  for (int c : v) t.emplace_back(c);
  return Label(std::move(t));
}

std::vector<int> label_vector(const Label& l) {
  std::vector<int> v;
  for (const auto& c : l.as_tuple()) v.push_back(static_cast<int>(c.as_int()));
  return v;
}

// ---------------------------------------------------------------- Monoid

Monoid Monoid::make(FinSet elements, std::size_t unit, std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = elements.size();
  if (n == 0) throw ContractViolation("monoid: no elements");
  if (unit >= n) throw ContractViolation("monoid: unit out of range");
  if (table.size() != n) throw ContractViolation("monoid: table has wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n) throw ContractViolation("monoid: table row has wrong length");
    for (auto v : row)
      if (v >= n) throw ContractViolation("monoid: product out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[unit][a] != a || table[a][unit] != a) throw ContractViolation("monoid: unit law fails");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw ContractViolation("monoid: multiplication is not associative");
  return Monoid{std::move(elements), unit, std::move(table)};
}

Monoid Monoid::cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make(FinSet::range(n), 0, std::move(t));
}

Monoid Monoid::idempotent() {
  return make(FinSet::range(2), 0, {{0, 1}, {1, 1}});
}

// ---------------------------------------------------------------- CatId

CatId CatId::set() { return CatId{}; }

CatId CatId::pointed() {
  CatId c;
  c.kind_ = CatKind::SetP;
  return c;
}

CatId CatId::pos() {
  CatId c;
  c.kind_ = CatKind::Pos;
  return c;
}

CatId CatId::boolean() {
  CatId c;
  c.kind_ = CatKind::Bool;
  return c;
}

CatId CatId::vec(int p) {
  if (!is_prime(p)) throw ContractViolation("Vec: " + std::to_string(p) + " is not prime");
  CatId c;
  c.kind_ = CatKind::Vec;
  c.prime_ = p;
  return c;
}

CatId CatId::mset(Monoid m) {
  CatId c;
  c.kind_ = CatKind::MSet;
  c.monoid_ = std::make_shared<const Monoid>(Monoid::make(m.elements, m.unit, m.table));
  return c;
}

CatId CatId::omega_rel(std::vector<int> arities) {
  for (int a : arities)
    if (a < 0) throw ContractViolation("OmegaRel: negative arity");
  CatId c;
  c.kind_ = CatKind::OmegaRel;
  c.arities_ = std::move(arities);
  return c;
}

std::string CatId::name() const {
  switch (kind_) {
    case CatKind::Vec:
      return "Vec(GF(" + std::to_string(prime_) + "))";
    case CatKind::MSet:
      return "MSet(|M|=" + std::to_string(monoid_->elements.size()) + ")";
    case CatKind::OmegaRel: {
      std::string s = "OmegaRel(";
      for (std::size_t i = 0; i < arities_.size(); ++i) s += (i ? "," : "") + std::to_string(arities_[i]);
      return s + ")";
    }
    default:
      return gradcat::to_string(kind_);
  }
}

bool operator==(const CatId& a, const CatId& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case CatKind::Vec: return a.prime_ == b.prime_;
    case CatKind::MSet: return a.monoid_ == b.monoid_ || *a.monoid_ == *b.monoid_;
    case CatKind::OmegaRel: return a.arities_ == b.arities_;
    default: return true;
  }
}

// ---------------------------------------------------------------- CatObject

CatObject::CatObject(CatId cat, FinSet carrier, Structure s)
    : cat_(std::move(cat)), carrier_(std::move(carrier)), structure_(std::move(s)) {}

CatObject CatObject::set(FinSet carrier) { return CatObject(CatId::set(), std::move(carrier), PlainData{}); }

CatObject CatObject::pointed(FinSet carrier, const Label& base) {
  auto b = carrier.index_of(base);
  return CatObject(CatId::pointed(), std::move(carrier), PointedData{b});
}

CatObject CatObject::poset(FinSet carrier, const std::vector<std::pair<Label, Label>>& order) {
  const std::size_t n = carrier.size();
  std::vector<char> r(n * n, 0);
  for (const auto& [a, b] : order) r[carrier.index_of(a) * n + carrier.index_of(b)] = 1;
  r = closure(n, std::move(r));
  if (!antisymmetric(n, r)) throw ContractViolation("poset: relation is not antisymmetric");
  return CatObject(CatId::pos(), std::move(carrier), OrderData{n, std::move(r)});
}

CatObject CatObject::poset_from_matrix(FinSet carrier, std::vector<char> leq) {
  const std::size_t n = carrier.size();
  if (leq.size() != n * n) throw ContractViolation("poset: order matrix has wrong size");
  for (auto& v : leq) v = v ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!leq[i * n + i]) throw ContractViolation("poset: order is not reflexive");
  if (!antisymmetric(n, leq)) throw ContractViolation("poset: order is not antisymmetric");
  if (!transitive(n, leq)) throw ContractViolation("poset: order is not transitive");
  return CatObject(CatId::pos(), std::move(carrier), OrderData{n, std::move(leq)});
}

CatObject CatObject::boolean(FinSet atoms) {
  if (atoms.size() > 20) throw ContractViolation("Bool: too many atoms");
  std::vector<Label> subsets;
  for (std::size_t m = 0; m < (std::size_t{1} << atoms.size()); ++m) subsets.push_back(mask_subset(atoms, m));
  return CatObject(CatId::boolean(), FinSet(std::move(subsets)), BoolData{std::move(atoms)});
}

CatObject CatObject::vec(int p, std::size_t dim) {
  auto cat = CatId::vec(p);
  const std::size_t n = ipow(static_cast<std::size_t>(p), dim);
  if (n > (std::size_t{1} << 20)) throw ContractViolation("Vec: carrier too large to materialize");
  std::vector<Label> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(vector_label(index_vec(i, dim, p)));
  return CatObject(cat, FinSet(std::move(v)), VecData{dim});
}

CatObject CatObject::mset(const CatId& cat, FinSet carrier, std::vector<std::vector<std::size_t>> act) {
  if (cat.kind() != CatKind::MSet) throw ContractViolation("mset: not an MSet instance");
  const auto& mon = cat.monoid();
  const std::size_t n = carrier.size();
  if (act.size() != mon.elements.size()) throw ContractViolation("mset: action needs one row per monoid element");
  for (const auto& row : act) {
    if (row.size() != n) throw ContractViolation("mset: action row has wrong length");
    for (auto v : row)
      if (v >= n) throw ContractViolation("mset: action leaves the carrier");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (act[mon.unit][x] != x) throw ContractViolation("mset: unit does not act as identity");
    for (std::size_t a = 0; a < act.size(); ++a)
      for (std::size_t b = 0; b < act.size(); ++b)
        if (act[mon.table[a][b]][x] != act[a][act[b][x]])
          throw ContractViolation("mset: action is not compatible with multiplication");
  }
  return CatObject(cat, std::move(carrier), ActionData{std::move(act)});
}

CatObject CatObject::relational(const CatId& cat, FinSet carrier,
                                std::vector<std::vector<std::vector<std::size_t>>> rels) {
  if (cat.kind() != CatKind::OmegaRel) throw ContractViolation("relational: not an OmegaRel instance");
  if (rels.size() != cat.arities().size()) throw ContractViolation("relational: one relation per symbol required");
  for (std::size_t s = 0; s < rels.size(); ++s) {
    for (const auto& t : rels[s]) {
      if (t.size() != static_cast<std::size_t>(cat.arities()[s]))
        throw ContractViolation("relational: tuple length differs from arity");
      for (auto v : t)
        if (v >= carrier.size()) throw ContractViolation("relational: tuple entry outside carrier");
    }
    rels[s] = sorted_unique(std::move(rels[s]));
  }
  return CatObject(cat, std::move(carrier), RelData{std::move(rels)});
}

bool operator==(const CatObject& a, const CatObject& b) {
  return a.cat_ == b.cat_ && a.carrier_ == b.carrier_ && a.structure_ == b.structure_;
}

std::string CatObject::to_string() const {
  std::string s = cat_.name() + " ";
  switch (cat_.kind()) {
    case CatKind::Bool:
      return s + "2^" + atoms().to_string();
    case CatKind::Vec:
      return s + "GF(" + std::to_string(cat_.prime()) + ")^" + std::to_string(dim());
    case CatKind::SetP:
      return s + carrier_.to_string() + " base " + carrier_[base()].to_string();
    case CatKind::Pos: {
      s += carrier_.to_string() + " with";
      bool any = false;
      for (std::size_t i = 0; i < carrier_.size(); ++i)
        for (std::size_t j = 0; j < carrier_.size(); ++j)
          if (i != j && order().le(i, j)) {
            s += " " + carrier_[i].to_string() + "<" + carrier_[j].to_string();
            any = true;
          }
      return any ? s : s + " discrete order";
    }
    case CatKind::OmegaRel: {
      s += carrier_.to_string();
      for (std::size_t k = 0; k < relations().size(); ++k) {
        s += " w" + std::to_string(k) + "={";
        bool first = true;
        for (const auto& t : relations()[k]) {
          s += first ? "(" : ",(";
          first = false;
          for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + carrier_[t[i]].to_string();
          s += ")";
        }
        s += "}";
      }
      return s;
    }
    default:
      return s + carrier_.to_string();
  }
}

Grade grade(const CatObject& a) {
  switch (a.cat().kind()) {
    case CatKind::Pos: {
      std::uint64_t pairs = 0;
      for (auto v : a.order().leq) pairs += v ? 1 : 0;
      return {pairs};
    }
    case CatKind::Vec:
      return {a.dim()};
    case CatKind::OmegaRel: {
      std::uint64_t g = a.carrier().size();
      for (const auto& r : a.relations()) g += r.size();
      return {g};
    }
    default:
      // Set, SetP, Bool (2^atoms), MSet
      return {a.carrier().size()};
  }
}

// ---------------------------------------------------------------- homomorphisms

bool is_homomorphism(const CatObject& a, const CatObject& b, const FinMap& f) {
  if (!(a.cat() == b.cat())) return false;
  if (!(f.dom() == a.carrier()) || !(f.cod() == b.carrier())) return false;
  const auto& t = f.table();
  switch (a.cat().kind()) {
    case CatKind::Set:
      return true;
    case CatKind::SetP:
      return t[a.base()] == b.base();
    case CatKind::Pos: {
      const auto& oa = a.order();
      const auto& ob = b.order();
      for (std::size_t i = 0; i < oa.n; ++i)
        for (std::size_t j = 0; j < oa.n; ++j)
          if (oa.le(i, j) && !ob.le(t[i], t[j])) return false;
      return true;
    }
    case CatKind::Bool: {
      BoolIndex ia(a), ib(b);
      const std::size_t fa = (std::size_t{1} << a.atoms().size()) - 1;
      const std::size_t fb = (std::size_t{1} << b.atoms().size()) - 1;
      if (ib.mask_of[t[ia.of_mask[0]]] != 0) return false;
      if (ib.mask_of[t[ia.of_mask[fa]]] != fb) return false;
      for (std::size_t x = 0; x <= fa; ++x) {
        auto fx = ib.mask_of[t[ia.of_mask[x]]];
        if (ib.mask_of[t[ia.of_mask[fa & ~x]]] != (fb & ~fx)) return false;
        for (std::size_t y = x + 1; y <= fa; ++y) {
          auto fy = ib.mask_of[t[ia.of_mask[y]]];
          if (ib.mask_of[t[ia.of_mask[x | y]]] != (fx | fy)) return false;
        }
      }
      return true;
    }
    case CatKind::Vec: {
      const int p = a.cat().prime();
      const std::size_t n = a.carrier().size();
      std::vector<std::vector<int>> va(n), vb(b.carrier().size());
      for (std::size_t i = 0; i < n; ++i) va[i] = label_vector(a.carrier()[i]);
      for (std::size_t i = 0; i < vb.size(); ++i) vb[i] = label_vector(b.carrier()[i]);
      auto add = [p](std::vector<int> x, const std::vector<int>& y) {
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = (x[k] + y[k]) % p;
        return x;
      };
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < p; ++c) {
          std::vector<int> cx = va[i];
          for (auto& v : cx) v = v * c % p;
          std::vector<int> cfx = vb[t[i]];
          for (auto& v : cfx) v = v * c % p;
          if (vb[t[vec_index(cx, p)]] != cfx) return false;
        }
        for (std::size_t j = i; j < n; ++j)
          if (vb[t[vec_index(add(va[i], va[j]), p)]] != add(vb[t[i]], vb[t[j]])) return false;
      }
      return true;
    }
    case CatKind::MSet: {
      const auto& aa = a.action();
      const auto& ab = b.action();
      for (std::size_t m = 0; m < aa.size(); ++m)
        for (std::size_t x = 0; x < t.size(); ++x)
          if (t[aa[m][x]] != ab[m][t[x]]) return false;
      return true;
    }
    case CatKind::OmegaRel: {
      for (std::size_t s = 0; s < a.relations().size(); ++s) {
        const auto& rb = b.relations()[s];
        for (const auto& tup : a.relations()[s]) {
          std::vector<std::size_t> img(tup.size());
          for (std::size_t k = 0; k < tup.size(); ++k) img[k] = t[tup[k]];
          if (!std::binary_search(rb.begin(), rb.end(), img)) return false;
        }
      }
      return true;
    }
  }
  return false;
}

namespace {

FinMap matrix_carrier_map(const CatObject& src, const CatObject& dst, const Matrix& m) {
  const int p = src.cat().prime();
  std::vector<std::size_t> t(src.carrier().size());
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = vec_index(m.apply(index_vec(i, src.dim(), p)), p);
  return FinMap(src.carrier(), dst.carrier(), std::move(t));
}

FinMap atom_carrier_map(const CatObject& src, const CatObject& dst, const FinMap& g) {
  // X subset of src atoms  |->  g^{-1}(X) subset of dst atoms
  BoolIndex is(src), id(dst);
  const auto& gt = g.table();
  std::vector<std::size_t> t(src.carrier().size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t x = is.mask_of[i], y = 0;
    for (std::size_t k = 0; k < gt.size(); ++k)
      if (x >> gt[k] & 1U) y |= std::size_t{1} << k;
    t[i] = id.of_mask[y];
  }
  return FinMap(src.carrier(), dst.carrier(), std::move(t));
}

}  // namespace

CatMorphism CatMorphism::from_map(const CatObject& src, const CatObject& dst, const FinMap& map) {
  require_same_cat(src, dst, "morphism");
  if (!is_homomorphism(src, dst, map))
    throw ContractViolation("map " + map.to_string() + " is not a morphism of " + src.cat().name());
  CatMorphism m;
  m.src_ = src;
  m.dst_ = dst;
  m.map_ = map;
  if (src.cat().kind() == CatKind::Vec) {
    const int p = src.cat().prime();
    Matrix mat(dst.dim(), src.dim(), p);
    for (std::size_t j = 0; j < src.dim(); ++j) {
      std::vector<int> e(src.dim(), 0);
      e[j] = 1;
      auto img = label_vector(map(vector_label(e)));
      for (std::size_t r = 0; r < dst.dim(); ++r) mat.set(r, j, img[r]);
    }
    m.matrix_ = mat;
  } else if (src.cat().kind() == CatKind::Bool) {
    // dst atom t lies in exactly one image f({s}).
    std::vector<std::size_t> g(dst.atoms().size(), SIZE_MAX);
    for (std::size_t s = 0; s < src.atoms().size(); ++s) {
      auto img = map(mask_subset(src.atoms(), std::size_t{1} << s));
      for (const auto& t : img.as_tuple()) g[dst.atoms().index_of(t)] = s;
    }
    m.atom_map_ = FinMap(dst.atoms(), src.atoms(), std::move(g));
  }
  return m;
}

CatMorphism CatMorphism::from_matrix(const CatObject& src, const CatObject& dst, const Matrix& mat) {
  require_same_cat(src, dst, "morphism");
  if (src.cat().kind() != CatKind::Vec) throw ContractViolation("from_matrix: not a Vec instance");
  if (mat.rows() != dst.dim() || mat.cols() != src.dim() || mat.prime() != src.cat().prime())
    throw ContractViolation("from_matrix: matrix shape " + std::to_string(mat.rows()) + "x" +
                            std::to_string(mat.cols()) + " does not fit");
  CatMorphism m;
  m.src_ = src;
  m.dst_ = dst;
  m.map_ = matrix_carrier_map(src, dst, mat);
  m.matrix_ = mat;
  return m;
}

CatMorphism CatMorphism::from_atom_map(const CatObject& src, const CatObject& dst, const FinMap& g) {
  require_same_cat(src, dst, "morphism");
  if (src.cat().kind() != CatKind::Bool) throw ContractViolation("from_atom_map: not a Bool instance");
  if (!(g.dom() == dst.atoms()) || !(g.cod() == src.atoms()))
    throw ContractViolation("from_atom_map: atom map must go from dst atoms to src atoms");
  CatMorphism m;
  m.src_ = src;
  m.dst_ = dst;
  m.map_ = atom_carrier_map(src, dst, g);
  m.atom_map_ = g;
  return m;
}

CatMorphism CatMorphism::identity(const CatObject& a) {
  switch (a.cat().kind()) {
    case CatKind::Vec:
      return from_matrix(a, a, Matrix::identity(a.dim(), a.cat().prime()));
    case CatKind::Bool:
      return from_atom_map(a, a, FinMap::identity(a.atoms()));
    default:
      return from_map(a, a, FinMap::identity(a.carrier()));
  }
}

std::string CatMorphism::to_string() const {
  if (matrix_) return "matrix " + matrix_->to_string();
  if (atom_map_) return "atoms " + atom_map_->to_string();
  return map_.to_string();
}

CatMorphism compose(const CatMorphism& g, const CatMorphism& f) {
  if (!(f.dst() == g.src())) throw ContractViolation("compose: morphisms are not composable");
  switch (f.cat().kind()) {
    case CatKind::Vec:
      return CatMorphism::from_matrix(f.src(), g.dst(), g.matrix() * f.matrix());
    case CatKind::Bool:
      return CatMorphism::from_atom_map(f.src(), g.dst(), compose(f.atom_map(), g.atom_map()));
    default:
      return CatMorphism::from_map(f.src(), g.dst(), compose(g.map(), f.map()));
  }
}

void for_each_hom(const CatObject& a, const CatObject& b, const std::function<bool(const FinMap&)>& fn) {
  require_same_cat(a, b, "hom_set");
  switch (a.cat().kind()) {
    case CatKind::Vec: {
      const int p = a.cat().prime();
      const std::size_t cells = a.dim() * b.dim();
      for_each_table(cells, static_cast<std::size_t>(p), [&](const std::vector<std::size_t>& t) {
        std::vector<int> data(t.begin(), t.end());
        return fn(matrix_carrier_map(a, b, Matrix(b.dim(), a.dim(), p, std::move(data))));
      });
      return;
    }
    case CatKind::Bool: {
      for_each_table(b.atoms().size(), a.atoms().size(), [&](const std::vector<std::size_t>& t) {
        return fn(atom_carrier_map(a, b, FinMap(b.atoms(), a.atoms(), t)));
      });
      return;
    }
    default:
      for_each_table(a.carrier().size(), b.carrier().size(), [&](const std::vector<std::size_t>& t) {
        FinMap f(a.carrier(), b.carrier(), t);
        if (!is_homomorphism(a, b, f)) return true;
        return fn(f);
      });
  }
}

std::vector<CatMorphism> hom_set(const CatObject& a, const CatObject& b) {
  std::vector<CatMorphism> out;
  for_each_hom(a, b, [&](const FinMap& f) {
    out.push_back(CatMorphism::from_map(a, b, f));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------- classification

MorphismFlags classify(const CatObject& a, const CatObject& b, const FinMap& f) {
  MorphismFlags flags;
  flags.mono = f.is_injective();
  bool surj = f.is_surjective();
  switch (a.cat().kind()) {
    case CatKind::Pos: {
      if (surj) {
        const auto& oa = a.order();
        const std::size_t n = b.carrier().size();
        std::vector<char> r(n * n, 0);
        for (std::size_t i = 0; i < oa.n; ++i)
          for (std::size_t j = 0; j < oa.n; ++j)
            if (oa.le(i, j)) r[f.at(i) * n + f.at(j)] = 1;
        flags.strong_epi = closure(n, std::move(r)) == b.order().leq;
      }
      break;
    }
    case CatKind::OmegaRel: {
      if (surj) {
        flags.strong_epi = true;
        for (std::size_t s = 0; s < a.relations().size(); ++s) {
          std::vector<std::vector<std::size_t>> img;
          for (const auto& t : a.relations()[s]) {
            std::vector<std::size_t> u(t.size());
            for (std::size_t k = 0; k < t.size(); ++k) u[k] = f.at(t[k]);
            img.push_back(std::move(u));
          }
          if (sorted_unique(std::move(img)) != b.relations()[s]) flags.strong_epi = false;
        }
      }
      break;
    }
    default:
      flags.strong_epi = surj;
  }
  flags.iso = f.is_bijective() && is_homomorphism(b, a, f.inverse());
  return flags;
}

MorphismFlags classify_morphism(const CatMorphism& f) { return classify(f.src(), f.dst(), f.map()); }

// ---------------------------------------------------------------- factorization

CatFactorization factorize_in_cat(const CatMorphism& f) {
  const auto& a = f.src();
  const auto& b = f.dst();
  switch (a.cat().kind()) {
    case CatKind::Vec: {
      const int p = a.cat().prime();
      auto [red, pivots] = rref(f.matrix());
      const std::size_t r = pivots.size();
      CatObject mid = CatObject::vec(p, r);
      Matrix mono(b.dim(), r, p), epi(r, a.dim(), p);
      for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < b.dim(); ++i) mono.set(i, k, f.matrix()(i, pivots[k]));
        for (std::size_t j = 0; j < a.dim(); ++j) epi.set(k, j, red(k, j));
      }
      return {CatMorphism::from_matrix(a, mid, epi), CatMorphism::from_matrix(mid, b, mono)};
    }
    case CatKind::Bool: {
      // f is induced by g: T -> S; factor g as T ->> g(T) >-> S.
      const auto& g = f.atom_map();
      FinSet used = g.image();
      CatObject mid = CatObject::boolean(used);
      auto epi = CatMorphism::from_atom_map(a, mid, FinMap::inclusion(used, a.atoms()));
      std::vector<std::size_t> onto(g.dom().size());
      for (std::size_t k = 0; k < onto.size(); ++k) onto[k] = used.index_of(g.cod()[g.at(k)]);
      auto mono = CatMorphism::from_atom_map(mid, b, FinMap(b.atoms(), used, std::move(onto)));
      return {epi, mono};
    }
    default: {
      auto imgidx = f.map().image_indices();
      FinSet img = f.map().image();
      std::vector<std::size_t> t(a.carrier().size());
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = static_cast<std::size_t>(std::lower_bound(imgidx.begin(), imgidx.end(), f.map().at(i)) -
                                        imgidx.begin());
      CatObject mid = image_object(a, img, t, &b, &imgidx);
      if (a.cat().kind() == CatKind::OmegaRel || a.cat().kind() == CatKind::SetP ||
          a.cat().kind() == CatKind::Pos || a.cat().kind() == CatKind::Set) {
        // structure was pushed forward from a
      }
      return {CatMorphism::from_map(a, mid, FinMap(a.carrier(), img, std::move(t))),
              CatMorphism::from_map(mid, b, FinMap::inclusion(img, b.carrier()))};
    }
  }
}

// ---------------------------------------------------------------- subobjects

namespace {

std::vector<std::size_t> mask_indices(std::size_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1U) out.push_back(i);
  return out;
}

FinSet pick(const FinSet& x, const std::vector<std::size_t>& idx) {
  std::vector<Label> v;
  for (auto i : idx) v.push_back(x[i]);
  return FinSet(std::move(v));
}

// Subsets in canonical order: by size, then lexicographic on indices.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) out.push_back(mask_indices(m, n));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

constexpr std::size_t kEnumerationGuard = std::size_t{1} << 20;

}  // namespace

std::vector<CatMorphism> subobjects(const CatObject& a) {
  std::vector<CatMorphism> out;
  const auto& cat = a.cat();
  const FinSet& x = a.carrier();
  const std::size_t n = x.size();
  switch (cat.kind()) {
    case CatKind::Vec: {
      const int p = cat.prime();
      for (const auto& r : all_rref_subspaces(a.dim(), p)) {
        Matrix basis(a.dim(), r.rows(), p);
        for (std::size_t i = 0; i < r.rows(); ++i)
          for (std::size_t j = 0; j < a.dim(); ++j) basis.set(j, i, r(i, j));
        out.push_back(CatMorphism::from_matrix(CatObject::vec(p, r.rows()), a, basis));
      }
      return out;
    }
    case CatKind::Bool: {
      for (const auto& blocks : partitions(a.atoms().size())) {
        FinMap q = quotient_map(a.atoms(), blocks);
        out.push_back(CatMorphism::from_atom_map(CatObject::boolean(q.cod()), a, q));
      }
      return out;
    }
    default:
      break;
  }
  for (const auto& idx : index_subsets(n)) {
    FinSet y = pick(x, idx);
    auto incl = FinMap::inclusion(y, x);
    switch (cat.kind()) {
      case CatKind::Set:
        out.push_back(CatMorphism::from_map(CatObject::set(y), a, incl));
        break;
      case CatKind::SetP:
        if (std::find(idx.begin(), idx.end(), a.base()) != idx.end())
          out.push_back(CatMorphism::from_map(CatObject::pointed(y, x[a.base()]), a, incl));
        break;
      case CatKind::Pos: {
        const std::size_t k = idx.size();
        std::vector<std::pair<std::size_t, std::size_t>> strict;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            if (i != j && a.order().le(idx[i], idx[j])) strict.emplace_back(i, j);
        for (std::size_t m = 0; m < (std::size_t{1} << strict.size()); ++m) {
          std::vector<char> r(k * k, 0);
          for (std::size_t i = 0; i < k; ++i) r[i * k + i] = 1;
          for (std::size_t s = 0; s < strict.size(); ++s)
            if (m >> s & 1U) r[strict[s].first * k + strict[s].second] = 1;
          if (!transitive(k, r)) continue;
          out.push_back(CatMorphism::from_map(CatObject::poset_from_matrix(y, std::move(r)), a, incl));
        }
        break;
      }
      case CatKind::MSet: {
        std::vector<char> in(n, 0);
        for (auto i : idx) in[i] = 1;
        bool closed = true;
        for (const auto& row : a.action())
          for (auto i : idx)
            if (!in[row[i]]) closed = false;
        if (!closed) break;
        std::vector<std::vector<std::size_t>> act(a.action().size(), std::vector<std::size_t>(idx.size()));
        for (std::size_t m = 0; m < act.size(); ++m)
          for (std::size_t i = 0; i < idx.size(); ++i)
            act[m][i] = static_cast<std::size_t>(
                std::lower_bound(idx.begin(), idx.end(), a.action()[m][idx[i]]) - idx.begin());
        out.push_back(CatMorphism::from_map(CatObject::mset(cat, y, std::move(act)), a, incl));
        break;
      }
      case CatKind::OmegaRel: {
        // Every family of sub-relations of the restricted relations.
        std::vector<std::size_t> pos_of(n, SIZE_MAX);
        for (std::size_t i = 0; i < idx.size(); ++i) pos_of[idx[i]] = i;
        std::vector<std::vector<std::vector<std::size_t>>> avail(a.relations().size());
        std::size_t bits = 0;
        for (std::size_t s = 0; s < avail.size(); ++s) {
          for (const auto& t : a.relations()[s]) {
            std::vector<std::size_t> u;
            for (auto v : t) u.push_back(pos_of[v]);
            if (std::find(u.begin(), u.end(), SIZE_MAX) == u.end()) avail[s].push_back(std::move(u));
          }
          bits += avail[s].size();
        }
        if ((std::size_t{1} << bits) > kEnumerationGuard)
          throw ResourceError("subobjects: too many relational sub-structures", kEnumerationGuard);
        for (std::size_t m = 0; m < (std::size_t{1} << bits); ++m) {
          std::vector<std::vector<std::vector<std::size_t>>> rels(avail.size());
          std::size_t bit = 0;
          for (std::size_t s = 0; s < avail.size(); ++s)
            for (const auto& t : avail[s])
              if (m >> bit++ & 1U) rels[s].push_back(t);
          out.push_back(CatMorphism::from_map(CatObject::relational(cat, y, std::move(rels)), a, incl));
        }
        break;
      }
      default:
        break;
    }
  }
  return out;
}

std::vector<CatMorphism> strong_quotients(const CatObject& a) {
  std::vector<CatMorphism> out;
  const auto& cat = a.cat();
  switch (cat.kind()) {
    case CatKind::Vec: {
      const int p = cat.prime();
      for (const auto& kernel : all_rref_subspaces(a.dim(), p)) {
        // Rows spanning the annihilator of the kernel give a surjection with that kernel.
        auto ann = null_space(kernel.rows() ? kernel : Matrix(0, a.dim(), p));
        Matrix q(ann.size(), a.dim(), p);
        for (std::size_t i = 0; i < ann.size(); ++i)
          for (std::size_t j = 0; j < a.dim(); ++j) q.set(i, j, ann[i][j]);
        out.push_back(CatMorphism::from_matrix(a, CatObject::vec(p, ann.size()), q));
      }
      return out;
    }
    case CatKind::Bool: {
      for (const auto& t : subsets(a.atoms()))
        out.push_back(CatMorphism::from_atom_map(a, CatObject::boolean(t), FinMap::inclusion(t, a.atoms())));
      return out;
    }
    default:
      break;
  }
  for (const auto& blocks : partitions(a.carrier().size())) {
    FinMap q = quotient_map(a.carrier(), blocks);
    if (cat.kind() == CatKind::MSet) {
      bool congruence = true;
      for (const auto& row : a.action())
        for (std::size_t x = 0; x < blocks.size() && congruence; ++x)
          for (std::size_t y = x + 1; y < blocks.size(); ++y)
            if (blocks[x] == blocks[y] && blocks[row[x]] != blocks[row[y]]) {
              congruence = false;
              break;
            }
      if (!congruence) continue;
    }
    if (cat.kind() == CatKind::Pos) {
      const std::size_t n = q.cod().size();
      std::vector<char> r(n * n, 0);
      const auto& ord = a.order();
      for (std::size_t i = 0; i < ord.n; ++i)
        for (std::size_t j = 0; j < ord.n; ++j)
          if (ord.le(i, j)) r[q.at(i) * n + q.at(j)] = 1;
      if (!antisymmetric(n, closure(n, std::move(r)))) continue;
    }
    CatObject b = image_object(a, q.cod(), q.table(), nullptr, nullptr);
    out.push_back(CatMorphism::from_map(a, b, q));
  }
  return out;
}

bool subobject_leq(const CatMorphism& m1, const CatMorphism& m2) {
  if (!(m1.dst() == m2.dst())) throw ContractViolation("subobject_leq: different codomains");
  // The factorization through the mono m2 is unique on carriers.
  const auto& t2 = m2.map().table();
  std::vector<std::size_t> back(m2.dst().carrier().size(), SIZE_MAX);
  for (std::size_t i = 0; i < t2.size(); ++i) back[t2[i]] = i;
  std::vector<std::size_t> u(m1.src().carrier().size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = back[m1.map().at(i)];
    if (u[i] == SIZE_MAX) return false;
  }
  return is_homomorphism(m1.src(), m2.src(), FinMap(m1.src().carrier(), m2.src().carrier(), std::move(u)));
}

bool same_subobject(const CatMorphism& m1, const CatMorphism& m2) {
  return subobject_leq(m1, m2) && subobject_leq(m2, m1);
}

// ---------------------------------------------------------------- pullbacks of monos

MonoPullback pullback_of_monos(const CatMorphism& m, const CatMorphism& mp) {
  if (!(m.dst() == mp.dst())) throw ContractViolation("pullback_of_monos: different codomains");
  if (!classify_morphism(m).mono || !classify_morphism(mp).mono)
    throw ContractViolation("pullback_of_monos: arguments must be monos");
  const auto& cat = m.cat();
  const CatObject& b = m.src();
  const CatObject& bp = mp.src();
  switch (cat.kind()) {
    case CatKind::Vec: {
      const int p = cat.prime();
      auto basis = intersect_column_spaces(m.matrix(), mp.matrix());
      CatObject c = CatObject::vec(p, basis.size());
      Matrix i(b.dim(), basis.size(), p), ip(bp.dim(), basis.size(), p);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        auto x = solve(m.matrix(), basis[k]);
        auto y = solve(mp.matrix(), basis[k]);
        if (!x || !y) throw TheoremViolation("intersection vector outside a subspace");
        for (std::size_t r = 0; r < b.dim(); ++r) i.set(r, k, (*x)[r]);
        for (std::size_t r = 0; r < bp.dim(); ++r) ip.set(r, k, (*y)[r]);
      }
      return {c, CatMorphism::from_matrix(c, b, i), CatMorphism::from_matrix(c, bp, ip)};
    }
    case CatKind::Bool: {
      // Monos 2^P >-> 2^S are surjections S ->> P; intersect by joining partitions of S.
      const auto& q = m.atom_map();
      const auto& qp = mp.atom_map();
      const std::size_t n = q.dom().size();
      std::vector<std::size_t> parent(n);
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        return parent[v] == v ? v : parent[v] = find(parent[v]);
      };
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
          if (q.at(s) == q.at(t) || qp.at(s) == qp.at(t)) parent[find(t)] = find(s);
      std::vector<std::size_t> blocks(n);
      std::map<std::size_t, std::size_t> block_of_root;
      for (std::size_t s = 0; s < n; ++s) {
        auto r = find(s);
        auto it = block_of_root.try_emplace(r, block_of_root.size()).first;
        blocks[s] = it->second;
      }
      FinMap join = quotient_map(q.dom(), blocks);
      CatObject c = CatObject::boolean(join.cod());
      auto through = [&](const FinMap& part) {
        std::vector<std::size_t> t(part.cod().size(), SIZE_MAX);
        for (std::size_t s = 0; s < n; ++s) t[part.at(s)] = join.at(s);
        return FinMap(part.cod(), join.cod(), std::move(t));
      };
      return {c, CatMorphism::from_atom_map(c, b, through(q)), CatMorphism::from_atom_map(c, bp, through(qp))};
    }
    default:
      break;
  }
  Pullback pb = pullback(m.map(), mp.map());
  const FinSet& pc = pb.object;
  const std::size_t n = pc.size();
  CatObject c;
  switch (cat.kind()) {
    case CatKind::Set:
      c = CatObject::set(pc);
      break;
    case CatKind::SetP:
      c = CatObject::pointed(pc, Label::tuple({b.carrier()[b.base()], bp.carrier()[bp.base()]}));
      break;
    case CatKind::Pos: {
      std::vector<char> r(n * n, 0);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          r[x * n + y] = b.order().le(pb.left.at(x), pb.left.at(y)) && bp.order().le(pb.right.at(x), pb.right.at(y));
      c = CatObject::poset_from_matrix(pc, std::move(r));
      break;
    }
    case CatKind::MSet: {
      std::vector<std::vector<std::size_t>> act(b.action().size(), std::vector<std::size_t>(n));
      for (std::size_t mm = 0; mm < act.size(); ++mm)
        for (std::size_t x = 0; x < n; ++x)
          act[mm][x] = pc.index_of(Label::tuple({b.carrier()[b.action()[mm][pb.left.at(x)]],
                                                 bp.carrier()[bp.action()[mm][pb.right.at(x)]]}));
      c = CatObject::mset(cat, pc, std::move(act));
      break;
    }
    case CatKind::OmegaRel: {
      std::vector<std::vector<std::vector<std::size_t>>> rels(cat.arities().size());
      for (std::size_t s = 0; s < rels.size(); ++s) {
        const std::size_t ar = static_cast<std::size_t>(cat.arities()[s]);
        for_each_table(ar, n, [&](const std::vector<std::size_t>& t) {
          std::vector<std::size_t> l(ar), r(ar);
          for (std::size_t k = 0; k < ar; ++k) {
            l[k] = pb.left.at(t[k]);
            r[k] = pb.right.at(t[k]);
          }
          if (std::binary_search(b.relations()[s].begin(), b.relations()[s].end(), l) &&
              std::binary_search(bp.relations()[s].begin(), bp.relations()[s].end(), r))
            rels[s].push_back(t);
          return true;
        });
      }
      c = CatObject::relational(cat, pc, std::move(rels));
      break;
    }
    default:
      throw ContractViolation("pullback_of_monos: unsupported instance");
  }
  return {c, CatMorphism::from_map(c, b, pb.left), CatMorphism::from_map(c, bp, pb.right)};
}

// ---------------------------------------------------------------- grade axioms

GradeAxiomReport verify_grade_axioms(const CatObject& a) {
  GradeAxiomReport rep;
  const Grade ga = grade(a);
  auto fail = [&](const std::string& why, const CatMorphism& m) {
    if (!rep.pass) return;
    rep.pass = false;
    rep.failure = why;
    rep.counterexample = m;
  };
  for (const auto& m : subobjects(a)) {
    ++rep.subobjects_checked;
    auto flags = classify_morphism(m);
    const Grade gb = grade(m.src());
    if (!flags.mono) fail("enumerated subobject is not a mono", m);
    else if (gb > ga) fail("subobject has larger grade", m);
    else if (!flags.iso && !(gb < ga)) fail("proper subobject does not have smaller grade", m);
  }
  for (const auto& e : strong_quotients(a)) {
    ++rep.quotients_checked;
    auto flags = classify_morphism(e);
    const Grade gb = grade(e.dst());
    if (!flags.strong_epi) fail("enumerated quotient is not a strong epi", e);
    else if (gb > ga) fail("strong quotient has larger grade", e);
    else if (!flags.iso && !(gb < ga)) fail("proper strong quotient does not have smaller grade", e);
  }
  return rep;
}

// ---------------------------------------------------------------- enumeration

std::vector<CatObject> enumerate_objects(const CatId& cat, std::size_t max_size) {
  std::vector<CatObject> out;
  for (std::size_t k = 0; k <= max_size; ++k) {
    const FinSet x = FinSet::range(k);
    switch (cat.kind()) {
      case CatKind::Set:
        out.push_back(CatObject::set(x));
        break;
      case CatKind::SetP:
        if (k > 0) out.push_back(CatObject::pointed(x, Label(0)));
        break;
      case CatKind::Pos: {
        std::vector<std::pair<std::size_t, std::size_t>> strict;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            if (i != j) strict.emplace_back(i, j);
        for (std::size_t m = 0; m < (std::size_t{1} << strict.size()); ++m) {
          std::vector<char> r(k * k, 0);
          for (std::size_t i = 0; i < k; ++i) r[i * k + i] = 1;
          for (std::size_t s = 0; s < strict.size(); ++s)
            if (m >> s & 1U) r[strict[s].first * k + strict[s].second] = 1;
          if (antisymmetric(k, r) && transitive(k, r)) out.push_back(CatObject::poset_from_matrix(x, std::move(r)));
        }
        break;
      }
      case CatKind::Bool:
        out.push_back(CatObject::boolean(x));
        break;
      case CatKind::Vec:
        out.push_back(CatObject::vec(cat.prime(), k));
        break;
      case CatKind::MSet: {
        const auto& mon = cat.monoid();
        const std::size_t nm = mon.elements.size();
        const std::uint64_t total = count_maps(k * (nm - 1), k);
        if (total > kEnumerationGuard) throw ResourceError("enumerate_objects: too many actions", kEnumerationGuard);
        for_each_table(k * (nm - 1), k, [&](const std::vector<std::size_t>& t) {
          std::vector<std::vector<std::size_t>> act(nm, std::vector<std::size_t>(k));
          std::size_t pos = 0;
          for (std::size_t mm = 0; mm < nm; ++mm)
            for (std::size_t v = 0; v < k; ++v) act[mm][v] = mm == mon.unit ? v : t[pos++];
          bool ok = true;
          for (std::size_t v = 0; v < k && ok; ++v)
            for (std::size_t a = 0; a < nm && ok; ++a)
              for (std::size_t b = 0; b < nm && ok; ++b)
                ok = act[mon.table[a][b]][v] == act[a][act[b][v]];
          if (ok) out.push_back(CatObject::mset(cat, x, std::move(act)));
          return true;
        });
        break;
      }
      case CatKind::OmegaRel: {
        std::vector<std::vector<std::vector<std::size_t>>> tuples(cat.arities().size());
        std::size_t bits = 0;
        for (std::size_t s = 0; s < tuples.size(); ++s) {
          for_each_table(static_cast<std::size_t>(cat.arities()[s]), k, [&](const std::vector<std::size_t>& t) {
            tuples[s].push_back(t);
            return true;
          });
          bits += tuples[s].size();
        }
        if (bits >= 20) throw ResourceError("enumerate_objects: too many relational structures", kEnumerationGuard);
        for (std::size_t m = 0; m < (std::size_t{1} << bits); ++m) {
          std::vector<std::vector<std::vector<std::size_t>>> rels(tuples.size());
          std::size_t bit = 0;
          for (std::size_t s = 0; s < tuples.size(); ++s)
            for (const auto& t : tuples[s])
              if (m >> bit++ & 1U) rels[s].push_back(t);
          out.push_back(CatObject::relational(cat, x, std::move(rels)));
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace gradcat
