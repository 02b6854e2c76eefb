#pragma once

// Brute-force reference implementations used only by the tests. They avoid
// the library's fast paths: no union-find, no bitmasks, no rref shortcuts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gradcat/category.hpp"
#include "gradcat/functor.hpp"

namespace oracle {

using gradcat::CatKind;
using gradcat::CatObject;
using gradcat::FinMap;
using gradcat::FinSet;
using gradcat::Label;

inline bool injective(const std::vector<std::size_t>& t) {
  std::set<std::size_t> s(t.begin(), t.end());
  return s.size() == t.size();
}

inline bool surjective(const std::vector<std::size_t>& t, std::size_t cod) {
  std::set<std::size_t> s(t.begin(), t.end());
  return s.size() == cod;
}

// Every function dom -> cod as a table, by plain recursion.
inline void all_tables(std::size_t dom, std::size_t cod, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == dom) {
    out.push_back(cur);
    return;
  }
  for (std::size_t v = 0; v < cod; ++v) {
    cur.push_back(v);
    all_tables(dom, cod, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> all_tables(std::size_t dom, std::size_t cod) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  all_tables(dom, cod, cur, out);
  return out;
}

// ---- structure preservation from labels alone

inline std::set<Label> as_set(const Label& subset) {
  const auto& t = subset.as_tuple();
  return {t.begin(), t.end()};
}

inline Label from_set(const std::set<Label>& s) { return Label(Label::Tuple(s.begin(), s.end())); }

inline bool homomorphism(const CatObject& a, const CatObject& b, const std::vector<std::size_t>& t) {
  const auto& xa = a.carrier();
  const auto& xb = b.carrier();
  auto img = [&](const Label& l) { return xb[t[xa.index_of(l)]]; };
  switch (a.cat().kind()) {
    case CatKind::Set:
      return true;
    case CatKind::SetP:
      return t[a.base()] == b.base();
    case CatKind::Pos:
      for (std::size_t i = 0; i < xa.size(); ++i)
        for (std::size_t j = 0; j < xa.size(); ++j)
          if (a.order().le(i, j) && !b.order().le(t[i], t[j])) return false;
      return true;
    case CatKind::Bool: {
      std::set<Label> top_a(a.atoms().begin(), a.atoms().end()), top_b(b.atoms().begin(), b.atoms().end());
      if (!(img(from_set({})) == from_set({}))) return false;
      for (const auto& x : xa) {
        std::set<Label> sx = as_set(x), comp;
        std::set_difference(top_a.begin(), top_a.end(), sx.begin(), sx.end(), std::inserter(comp, comp.end()));
        std::set<Label> fx = as_set(img(x)), fcomp;
        std::set_difference(top_b.begin(), top_b.end(), fx.begin(), fx.end(), std::inserter(fcomp, fcomp.end()));
        if (!(img(from_set(comp)) == from_set(fcomp))) return false;
        for (const auto& y : xa) {
          std::set<Label> u = sx, sy = as_set(y);
          u.insert(sy.begin(), sy.end());
          std::set<Label> fu = fx, fy = as_set(img(y));
          fu.insert(fy.begin(), fy.end());
          if (!(img(from_set(u)) == from_set(fu))) return false;
        }
      }
      return true;
    }
    case CatKind::Vec: {
      const int p = a.cat().prime();
      auto vec = [](const Label& l) { return gradcat::label_vector(l); };
      auto lab = [](const std::vector<int>& v) { return gradcat::vector_label(v); };
      for (const auto& x : xa)
        for (const auto& y : xa)
          for (int c = 0; c < p; ++c) {
            auto vx = vec(x), vy = vec(y);
            std::vector<int> s(vx.size());
            for (std::size_t k = 0; k < s.size(); ++k) s[k] = (c * vx[k] + vy[k]) % p;
            auto fx = vec(img(x)), fy = vec(img(y));
            std::vector<int> fs(fx.size());
            for (std::size_t k = 0; k < fs.size(); ++k) fs[k] = (c * fx[k] + fy[k]) % p;
            if (!(img(lab(s)) == lab(fs))) return false;
          }
      return true;
    }
    case CatKind::MSet:
      for (std::size_t m = 0; m < a.action().size(); ++m)
        for (std::size_t x = 0; x < xa.size(); ++x)
          if (t[a.action()[m][x]] != b.action()[m][t[x]]) return false;
      return true;
    case CatKind::OmegaRel:
      for (std::size_t s = 0; s < a.relations().size(); ++s)
        for (const auto& tup : a.relations()[s]) {
          std::vector<std::size_t> im;
          for (auto v : tup) im.push_back(t[v]);
          const auto& rb = b.relations()[s];
          if (std::find(rb.begin(), rb.end(), im) == rb.end()) return false;
        }
      return true;
  }
  return false;
}

inline std::size_t hom_count(const CatObject& a, const CatObject& b) {
  std::size_t n = 0;
  for (const auto& t : all_tables(a.carrier().size(), b.carrier().size()))
    if (homomorphism(a, b, t)) ++n;
  return n;
}

// Distinct subobjects of a: images of injective homomorphisms from every
// enumerated object, keyed by the image together with the transported structure.
inline std::size_t subobject_count(const CatObject& a, const std::vector<CatObject>& candidates) {
  std::set<std::vector<std::int64_t>> keys;
  for (const auto& b : candidates) {
    if (b.carrier().size() > a.carrier().size()) continue;
    for (const auto& t : all_tables(b.carrier().size(), a.carrier().size())) {
      if (!injective(t) || !homomorphism(b, a, t)) continue;
      std::vector<std::int64_t> key;
      std::vector<std::size_t> sorted = t;
      std::sort(sorted.begin(), sorted.end());
      for (auto v : sorted) key.push_back(static_cast<std::int64_t>(v));
      key.push_back(-1);
      switch (a.cat().kind()) {
        case CatKind::Pos:
          for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j)
              if (b.order().le(i, j)) key.push_back(static_cast<std::int64_t>(t[i] * 64 + t[j]));
          std::sort(key.begin() + static_cast<long>(sorted.size() + 1), key.end());
          break;
        case CatKind::OmegaRel: {
          for (std::size_t s = 0; s < b.relations().size(); ++s) {
            std::set<std::vector<std::size_t>> rel;
            for (const auto& tup : b.relations()[s]) {
              std::vector<std::size_t> im;
              for (auto v : tup) im.push_back(t[v]);
              rel.insert(im);
            }
            for (const auto& r : rel) {
              for (auto v : r) key.push_back(static_cast<std::int64_t>(v));
              key.push_back(-2);
            }
            key.push_back(-3);
          }
          break;
        }
        default:
          break;  // Set, SetP, MSet: the image determines the subobject
      }
      keys.insert(key);
    }
  }
  return keys.size();
}

// Number of k-dimensional subspaces of GF(p)^n (Gaussian binomial).
inline std::uint64_t gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t pn = 1, pk = 1;
    for (std::uint64_t j = 0; j < n - i; ++j) pn *= p;
    for (std::uint64_t j = 0; j < i + 1; ++j) pk *= p;
    num *= pn - 1;
    den *= pk - 1;
  }
  return num / den;
}

inline std::uint64_t bell(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  t[0][0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    t[i][0] = t[i - 1][i - 1];
    for (std::size_t j = 1; j <= i; ++j) t[i][j] = t[i][j - 1] + t[i - 1][j - 1];
  }
  return t[n][0];
}

// ---- GF(p) rank by plain elimination on a copy

inline std::size_t rank(std::vector<std::vector<int>> rows, int p) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    int inv = 1;
    while ((rows[r][c] * inv) % p != 1) ++inv;
    for (auto& v : rows[r]) v = (v * inv) % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      int f = rows[i][c] % p;
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = ((rows[i][k] - f * rows[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// ---- presented functors by fixpoint iteration, without union-find

struct Classes {
  std::vector<Label> instances;             // all term instances
  std::vector<Label> rep;                   // least member of each instance's class
  std::set<Label> reps;
};

inline Classes fixpoint_classes(const gradcat::FunctorPresentation& p, const FinSet& x) {
  Classes c;
  std::map<Label, std::size_t> idx;
  for (const auto& op : p.ops)
    for (const auto& t : all_tables(op.arity, x.size())) {
      std::vector<Label> args;
      for (auto v : t) args.push_back(x[v]);
      idx[gradcat::term_label(op.sym, args)] = 0;
    }
  for (auto& [l, i] : idx) {
    i = c.instances.size();
    c.instances.push_back(l);
  }
  const std::size_t n = c.instances.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = 1;
  for (const auto& eq : p.eqs) {
    const std::size_t vars = p.variable_count(eq);
    for (const auto& val : all_tables(vars, x.size())) {
      std::vector<Label> la, ra;
      for (auto v : eq.lhs.args) la.push_back(x[val[v]]);
      for (auto v : eq.rhs.args) ra.push_back(x[val[v]]);
      auto i = idx.at(gradcat::term_label(eq.lhs.op, la));
      auto j = idx.at(gradcat::term_label(eq.rhs.op, ra));
      rel[i][j] = rel[j][i] = 1;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][j])
          for (std::size_t k = 0; k < n; ++k)
            if (rel[j][k] && !rel[i][k]) {
              rel[i][k] = rel[k][i] = 1;
              changed = true;
            }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t least = i;
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i][j] && c.instances[j] < c.instances[least]) least = j;
    c.rep.push_back(c.instances[least]);
    c.reps.insert(c.instances[least]);
  }
  return c;
}

// Literal distinguishedness: Hf(x) = Hg(x) for every parallel pair into every
// Y with |Y| <= max_y.
inline bool distinguished_literal(const gradcat::SetFunctor& h, const FinSet& x, const Label& value, std::size_t max_y) {
  for (std::size_t k = 0; k <= max_y; ++k) {
    FinSet y = FinSet::range(k);
    auto tables = all_tables(x.size(), k);
    std::vector<Label> images;
    for (const auto& t : tables) images.push_back(h.mor(FinMap(x, y, t))(value));
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j)
        if (!(images[i] == images[j])) return false;
  }
  return true;
}

// Least subset of k through which x factors, by scanning every subset.
inline std::optional<FinSet> least_subset(const gradcat::SetFunctor& h, const FinSet& k, const Label& x) {
  std::vector<FinSet> witnesses;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k.size()); ++mask) {
    std::vector<Label> el;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (mask >> i & 1U) el.push_back(k[i]);
    FinSet s(el);
    FinMap hi = h.mor(FinMap::inclusion(s, k));
    for (std::size_t e = 0; e < hi.dom().size(); ++e)
      if (hi(hi.dom()[e]) == x) {
        witnesses.push_back(s);
        break;
      }
  }
  for (const auto& w : witnesses) {
    bool least = true;
    for (const auto& o : witnesses)
      for (const auto& l : w)
        if (!o.contains(l)) least = false;
    if (least) return w;
  }
  return std::nullopt;
}

}  // namespace oracle
