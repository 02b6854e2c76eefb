#include "gradcat/finset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gradcat/error.hpp"

namespace gradcat {

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
  switch (a.value_.index()) {
    case 0:
      return a.as_int() <=> b.as_int();
    case 1: {
      int c = a.as_string().compare(b.as_string());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    default: {
      const auto& x = a.as_tuple();
      const auto& y = b.as_tuple();
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        auto c = x[i] <=> y[i];
        if (c != 0) return c;
      }
      return x.size() <=> y.size();
    }
  }
}

std::string Label::to_string() const {
  if (is_int()) return std::to_string(as_int());
  if (is_string()) return as_string();
  std::string out = "(";
  const auto& t = as_tuple();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += t[i].to_string();
  }
  return out + ")";
}

FinSet::FinSet() : elems_(std::make_shared<const std::vector<Label>>()) {}

FinSet::FinSet(std::vector<Label> elements) {
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw ContractViolation("FinSet: duplicate label");
  elems_ = std::make_shared<const std::vector<Label>>(std::move(elements));
}

FinSet::FinSet(std::initializer_list<Label> elements) : FinSet(std::vector<Label>(elements)) {}

FinSet FinSet::range(std::size_t n) {
  std::vector<Label> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(i);
  return FinSet(std::move(v));
}

std::optional<std::size_t> FinSet::find(const Label& l) const {
  auto it = std::lower_bound(elems_->begin(), elems_->end(), l);
  if (it == elems_->end() || !(*it == l)) return std::nullopt;
  return static_cast<std::size_t>(it - elems_->begin());
}

std::size_t FinSet::index_of(const Label& l) const {
  auto i = find(l);
  if (!i) throw ContractViolation("label " + l.to_string() + " is not in " + to_string());
  return *i;
}

std::string FinSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ",";
    out += (*elems_)[i].to_string();
  }
  return out + "}";
}

FinMap::FinMap(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
  if (table_.size() != dom_.size()) throw ContractViolation("FinMap: table is not total on dom");
  for (auto v : table_)
    if (v >= cod_.size()) throw ContractViolation("FinMap: image outside cod");
}

FinMap FinMap::identity(const FinSet& x) {
  std::vector<std::size_t> t(x.size());
  std::iota(t.begin(), t.end(), std::size_t{0});
  return FinMap(x, x, std::move(t));
}

FinMap FinMap::from_fn(const FinSet& dom, const FinSet& cod,
                       const std::function<Label(const Label&)>& fn) {
  std::vector<std::size_t> t;
  t.reserve(dom.size());
  for (const auto& x : dom) t.push_back(cod.index_of(fn(x)));
  return FinMap(dom, cod, std::move(t));
}

FinMap FinMap::inclusion(const FinSet& sub, const FinSet& sup) {
  return from_fn(sub, sup, [](const Label& l) { return l; });
}

FinMap FinMap::constant(const FinSet& dom, const FinSet& cod, std::size_t value) {
  return FinMap(dom, cod, std::vector<std::size_t>(dom.size(), value));
}

const Label& FinMap::operator()(const Label& x) const { return cod_[table_[dom_.index_of(x)]]; }

bool FinMap::is_injective() const {
  std::vector<char> hit(cod_.size(), 0);
  for (auto v : table_) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool FinMap::is_surjective() const { return image_indices().size() == cod_.size(); }

std::vector<std::size_t> FinMap::image_indices() const {
  std::vector<char> hit(cod_.size(), 0);
  for (auto v : table_) hit[v] = 1;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) out.push_back(i);
  return out;
}

FinSet FinMap::image() const {
  std::vector<Label> v;
  for (auto i : image_indices()) v.push_back(cod_[i]);
  return FinSet(std::move(v));
}

FinMap FinMap::inverse() const {
  if (!is_bijective()) throw ContractViolation("FinMap::inverse of a non-bijection");
  std::vector<std::size_t> t(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) t[table_[i]] = i;
  return FinMap(cod_, dom_, std::move(t));
}

std::string FinMap::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ", ";
    out += dom_[i].to_string() + "->" + cod_[table_[i]].to_string();
  }
  return out + "]";
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (!(f.cod() == g.dom())) throw ContractViolation("compose: maps are not composable");
  std::vector<std::size_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.at(f.at(i));
  return FinMap(f.dom(), g.cod(), std::move(t));
}

Cone product(const std::vector<FinSet>& xs) {
  std::size_t total = 1;
  for (const auto& x : xs) total *= x.size();
  // Odometer over index tuples; lexicographic index order equals label order.
  std::vector<Label> labels;
  std::vector<std::vector<std::size_t>> tuples;
  labels.reserve(total);
  tuples.reserve(total);
  std::vector<std::size_t> idx(xs.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Label::Tuple t;
    t.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) t.push_back(xs[k][idx[k]]);
    labels.emplace_back(std::move(t));
    tuples.push_back(idx);
    for (std::size_t k = xs.size(); k-- > 0;) {
      if (++idx[k] < xs[k].size()) break;
      idx[k] = 0;
    }
  }
  FinSet apex(labels);
  std::vector<FinMap> legs;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    std::vector<std::size_t> t(total);
    for (std::size_t n = 0; n < total; ++n) t[apex.index_of(labels[n])] = tuples[n][k];
    legs.emplace_back(apex, xs[k], std::move(t));
  }
  return {apex, std::move(legs)};
}

Cone coproduct(const std::vector<FinSet>& xs) {
  std::vector<Label> labels;
  for (std::size_t k = 0; k < xs.size(); ++k)
    for (const auto& x : xs[k]) labels.push_back(Label::tuple({Label(k), x}));
  FinSet apex(labels);
  std::vector<FinMap> legs;
  for (std::size_t k = 0; k < xs.size(); ++k)
    legs.push_back(FinMap::from_fn(xs[k], apex, [k](const Label& x) {
      return Label::tuple({Label(k), x});
    }));
  return {apex, std::move(legs)};
}

Equalizer equalizer(const FinMap& f, const FinMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
    throw ContractViolation("equalizer: maps are not parallel");
  std::vector<Label> keep;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    if (f.at(i) == g.at(i)) keep.push_back(f.dom()[i]);
  FinSet e(std::move(keep));
  return {e, FinMap::inclusion(e, f.dom())};
}

Pullback pullback(const FinMap& f, const FinMap& g) {
  if (!(f.cod() == g.cod())) throw ContractViolation("pullback: maps do not share a codomain");
  std::vector<Label> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < g.dom().size(); ++j)
      if (f.at(i) == g.at(j)) {
        labels.push_back(Label::tuple({f.dom()[i], g.dom()[j]}));
        pairs.emplace_back(i, j);
      }
  // Pairs were generated in lexicographic index order, which is label order.
  FinSet p(labels);
  std::vector<std::size_t> l, r;
  for (auto [i, j] : pairs) {
    l.push_back(i);
    r.push_back(j);
  }
  return {p, FinMap(p, f.dom(), std::move(l)), FinMap(p, g.dom(), std::move(r))};
}

Factorization factorize(const FinMap& f) {
  FinSet img = f.image();
  FinMap mono = FinMap::inclusion(img, f.cod());
  std::vector<std::size_t> t(f.dom().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = img.index_of(f.cod()[f.at(i)]);
  return {FinMap(f.dom(), img, std::move(t)), std::move(mono)};
}

std::uint64_t count_maps(std::size_t dom_size, std::size_t cod_size) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < dom_size; ++i) {
    if (cod_size != 0 && n > UINT64_MAX / cod_size) return UINT64_MAX;
    n *= cod_size;
  }
  return n;
}

void for_each_table(std::size_t dom_size, std::size_t cod_size,
                    const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (dom_size > 0 && cod_size == 0) return;
  std::vector<std::size_t> t(dom_size, 0);
  while (true) {
    if (!fn(t)) return;
    std::size_t k = dom_size;
    while (k > 0) {
      --k;
      if (++t[k] < cod_size) break;
      t[k] = 0;
      if (k == 0) return;
    }
    if (dom_size == 0) return;
  }
}

std::vector<FinMap> all_maps(const FinSet& dom, const FinSet& cod) {
  std::vector<FinMap> out;
  for_each_table(dom.size(), cod.size(), [&](const std::vector<std::size_t>& t) {
    out.emplace_back(dom, cod, t);
    return true;
  });
  return out;
}

std::vector<FinSet> subsets(const FinSet& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<std::size_t>> masks;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1U) idx.push_back(i);
    masks.push_back(std::move(idx));
  }
  std::sort(masks.begin(), masks.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<FinSet> out;
  out.reserve(masks.size());
  for (const auto& idx : masks) {
    std::vector<Label> v;
    for (auto i : idx) v.push_back(x[i]);
    out.emplace_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

FinMap quotient_map(const FinSet& x, const std::vector<std::size_t>& blocks) {
  if (blocks.size() != x.size()) throw ContractViolation("quotient_map: block table size");
  std::size_t nb = 0;
  for (auto b : blocks) nb = std::max(nb, b + 1);
  std::vector<std::optional<Label>> rep(nb);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!rep[blocks[i]]) rep[blocks[i]] = x[i];  // x is sorted, first hit is least
  std::vector<Label> labels;
  for (auto& r : rep) {
    if (!r) throw ContractViolation("quotient_map: empty block");
    labels.push_back(*r);
  }
  FinSet q(labels);
  std::vector<std::size_t> t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) t[i] = q.index_of(*rep[blocks[i]]);
  return FinMap(x, q, std::move(t));
}

FinSet set_intersection(const FinSet& a, const FinSet& b) {
  std::vector<Label> v;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  return FinSet(std::move(v));
}

FinSet set_union(const FinSet& a, const FinSet& b) {
  std::vector<Label> v;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  return FinSet(std::move(v));
}

bool is_subset(const FinSet& a, const FinSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace gradcat
