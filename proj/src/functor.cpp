#include "gradcat/functor.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <set>

#include "gradcat/error.hpp"

namespace gradcat {

namespace {

// Saturating power, enough to compare against guard limits.
std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  // The smaller index becomes the root, so roots are least members.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

private:
  std::vector<std::size_t> parent_;
};

std::string set_text(const FinSet& s) { return s.to_string(); }

}  // namespace

// ---------------------------------------------------------------- presentations

void FunctorPresentation::validate() const {
  std::set<std::string> seen;
  for (const auto& op : ops) {
    if (op.sym.empty()) throw ContractViolation("presentation: empty operation symbol");
    if (!seen.insert(op.sym).second) throw ContractViolation("presentation: duplicate symbol '" + op.sym + "'");
  }
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (const FlatTerm* t : {&eqs[i].lhs, &eqs[i].rhs}) {
      auto k = op_index(t->op);
      if (!k) throw ContractViolation("presentation: equation " + std::to_string(i) + " uses undeclared symbol '" + t->op + "'");
      if (ops[*k].arity != t->args.size())
        throw ContractViolation("presentation: equation " + std::to_string(i) + " applies '" + t->op + "' to " +
                                std::to_string(t->args.size()) + " arguments, arity is " +
                                std::to_string(ops[*k].arity));
    }
  }
}

std::size_t FunctorPresentation::variable_count(const Equation& e) const {
  std::size_t v = 0;
  for (auto a : e.lhs.args) v = std::max(v, a + 1);
  for (auto a : e.rhs.args) v = std::max(v, a + 1);
  return v;
}

std::optional<std::size_t> FunctorPresentation::op_index(const std::string& sym) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].sym == sym) return i;
  return std::nullopt;
}

Label term_label(const std::string& sym, std::vector<Label> args) {
  return Label::tuple({Label(sym), Label(std::move(args))});
}

std::uint64_t default_guard() {
  if (const char* env = std::getenv("GRADCAT_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

PresentedFunctor::PresentedFunctor(FunctorPresentation p, std::uint64_t guard) : pres_(std::move(p)), guard_(guard) {
  pres_.validate();
  // Symbol order fixes instance numbering; sorting makes index order agree
  // with label order, so the least index of a class is its least label.
  std::sort(pres_.ops.begin(), pres_.ops.end(), [](const Operation& a, const Operation& b) {
    return Label(a.sym) < Label(b.sym);
  });
}

std::size_t PresentedFunctor::instance_count(std::size_t n) const {
  std::uint64_t total = 0;
  for (const auto& op : pres_.ops) total = sat_add(total, sat_pow(n, op.arity));
  return static_cast<std::size_t>(total);
}

std::size_t PresentedFunctor::instance_index(const Evaluation& ev, std::size_t n, std::size_t op,
                                             const std::vector<std::size_t>& args) const {
  std::size_t idx = 0;
  for (auto a : args) idx = idx * n + a;
  return ev.offsets[op] + idx;
}

std::shared_ptr<const PresentedFunctor::Evaluation> PresentedFunctor::evaluate(const FinSet& x) const {
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(x.elements());
    if (it != cache_.end()) return it->second;
  }
  const std::size_t n = x.size();
  std::uint64_t work = 0;
  for (const auto& op : pres_.ops) work = sat_add(work, sat_pow(n, op.arity));
  for (const auto& eq : pres_.eqs) work = sat_add(work, sat_pow(n, pres_.variable_count(eq)));
  if (work > guard_)
    throw ResourceError("functor '" + pres_.name + "' on a carrier of size " + std::to_string(n) +
                            " needs " + (work == UINT64_MAX ? std::string("overflowing") : std::to_string(work)) +
                            " term and equation instances",
                        guard_);

  auto ev = std::make_shared<Evaluation>();
  std::size_t total = 0;
  for (const auto& op : pres_.ops) {
    ev->offsets.push_back(total);
    total += static_cast<std::size_t>(sat_pow(n, op.arity));
  }
  UnionFind uf(total);
  for (const auto& eq : pres_.eqs) {
    const std::size_t l = *pres_.op_index(eq.lhs.op), r = *pres_.op_index(eq.rhs.op);
    std::vector<std::size_t> la(eq.lhs.args.size()), ra(eq.rhs.args.size());
    for_each_table(pres_.variable_count(eq), n, [&](const std::vector<std::size_t>& val) {
      for (std::size_t k = 0; k < la.size(); ++k) la[k] = val[eq.lhs.args[k]];
      for (std::size_t k = 0; k < ra.size(); ++k) ra[k] = val[eq.rhs.args[k]];
      uf.unite(instance_index(*ev, n, l, la), instance_index(*ev, n, r, ra));
      return true;
    });
  }
  std::vector<std::size_t> root_class(total, SIZE_MAX);
  std::vector<Label> reps;
  ev->class_of.resize(total);
  std::size_t op = 0;
  for (std::size_t i = 0; i < total; ++i) {
    auto root = uf.find(i);
    if (root_class[root] == SIZE_MAX) {
      // root == i here: roots are least members.
      while (op + 1 < ev->offsets.size() && ev->offsets[op + 1] <= i) ++op;
      std::vector<Label> args(pres_.ops[op].arity);
      std::size_t rem = i - ev->offsets[op];
      for (std::size_t k = args.size(); k-- > 0;) {
        args[k] = x[rem % n];
        rem /= n;
      }
      root_class[root] = reps.size();
      reps.push_back(term_label(pres_.ops[op].sym, std::move(args)));
    }
    ev->class_of[i] = root_class[root];
  }
  ev->classes = FinSet(std::move(reps));

  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.try_emplace(x.elements(), ev);
  return it->second;
}

FinSet PresentedFunctor::obj(const FinSet& x) const { return evaluate(x)->classes; }

Label PresentedFunctor::class_of(const FinSet& x, const std::string& sym, const std::vector<Label>& args) const {
  auto ev = evaluate(x);
  auto op = std::find_if(pres_.ops.begin(), pres_.ops.end(), [&](const Operation& o) { return o.sym == sym; });
  if (op == pres_.ops.end()) throw ContractViolation("class_of: unknown symbol '" + sym + "'");
  if (op->arity != args.size()) throw ContractViolation("class_of: arity mismatch for '" + sym + "'");
  std::vector<std::size_t> idx;
  for (const auto& a : args) idx.push_back(x.index_of(a));
  auto k = static_cast<std::size_t>(op - pres_.ops.begin());
  return ev->classes[ev->class_of[instance_index(*ev, x.size(), k, idx)]];
}

FinMap PresentedFunctor::mor(const FinMap& f) const {
  auto src = evaluate(f.dom());
  auto dst = evaluate(f.cod());
  const std::size_t n = f.dom().size(), m = f.cod().size();
  std::vector<std::size_t> table(src->classes.size(), SIZE_MAX);
  // Map every instance, which also checks that the assignment is constant on classes.
  std::size_t i = 0;
  for (std::size_t op = 0; op < pres_.ops.size(); ++op) {
    const std::size_t a = pres_.ops[op].arity;
    for_each_table(a, n, [&](const std::vector<std::size_t>& args) {
      std::vector<std::size_t> img(a);
      for (std::size_t k = 0; k < a; ++k) img[k] = f.at(args[k]);
      auto target = dst->class_of[instance_index(*dst, m, op, img)];
      auto& slot = table[src->class_of[i]];
      if (slot == SIZE_MAX) slot = target;
      else if (slot != target)
        throw TheoremViolation("functor '" + pres_.name + "': image of a class is not well defined");
      ++i;
      return true;
    });
  }
  return FinMap(src->classes, dst->classes, std::move(table));
}

// ---------------------------------------------------------------- EvSeq

Label ev_label(const std::vector<Label>& prefix, const Label& tail) {
  std::size_t len = prefix.size();
  while (len > 0 && prefix[len - 1] == tail) --len;
  return Label::tuple({Label(Label::Tuple(prefix.begin(), prefix.begin() + static_cast<long>(len))), tail});
}

FinSet ev_eval(const FinSet& x, std::size_t depth) {
  std::vector<Label> out;
  for_each_table(depth + 1, x.size(), [&](const std::vector<std::size_t>& t) {
    std::vector<Label> prefix;
    for (std::size_t i = 0; i < depth; ++i) prefix.push_back(x[t[i]]);
    out.push_back(ev_label(prefix, x[t[depth]]));
    return true;
  });
  return FinSet(std::move(out));
}

FinSet EvSeqFunctor::obj(const FinSet& x) const { return ev_eval(x, depth_); }

FinMap EvSeqFunctor::mor(const FinMap& f) const {
  FinSet src = obj(f.dom()), dst = obj(f.cod());
  return FinMap::from_fn(src, dst, [&](const Label& s) {
    const auto& parts = s.as_tuple();
    std::vector<Label> prefix;
    for (const auto& a : parts[0].as_tuple()) prefix.push_back(f(a));
    return ev_label(prefix, f(parts[1]));
  });
}

std::size_t ev_countable_witness(std::size_t depth, std::size_t n_max) {
  if (n_max <= depth) throw ContractViolation("ev_countable_witness: n_max must exceed the depth");
  for (std::size_t n = 0; n <= n_max; ++n) {
    // The only sequence over the product A_0 x ... x A_n projecting onto
    // every s_m has m-th coordinate min(i, m) at position i.
    std::vector<Label> prefix;
    for (std::size_t i = 0; i < n; ++i) {
      Label::Tuple entry;
      for (std::size_t m = 0; m <= n; ++m) entry.emplace_back(std::min(i, m));
      prefix.emplace_back(std::move(entry));
    }
    Label::Tuple tail;
    for (std::size_t m = 0; m <= n; ++m) tail.emplace_back(m);
    Label seq = ev_label(prefix, Label(tail));
    const auto& norm = seq.as_tuple()[0].as_tuple();
    // Replay the projections as a consistency check.
    for (std::size_t m = 0; m <= n; ++m) {
      std::vector<Label> proj;
      for (const auto& e : norm) proj.push_back(e.as_tuple()[m]);
      std::vector<Label> s_m;
      for (std::size_t i = 0; i < m; ++i) s_m.emplace_back(i);
      if (!(ev_label(proj, Label(m)) == ev_label(s_m, Label(m))))
        throw TheoremViolation("ev_countable_witness: projection does not recover s_" + std::to_string(m));
    }
    if (norm.size() > depth) return n;
  }
  throw TheoremViolation("ev_countable_witness: every s_n up to n_max was representable");
}

// ---------------------------------------------------------------- built-ins

FunctorPresentation identity_presentation() { return {"id", {{"v", 1}}, {}}; }

FunctorPresentation c01_presentation() { return {"c01", {{"u", 1}}, {{{"u", {0}}, {"u", {1}}}}}; }

FunctorPresentation constant_one_presentation() { return {"const1", {{"c", 0}}, {}}; }

FunctorPresentation square_presentation() { return {"square", {{"p", 2}}, {}}; }

FunctorPresentation x_plus_x_presentation() { return {"x-plus-x", {{"l", 1}, {"r", 1}}, {}}; }

FunctorPresentation hom_presentation(std::size_t w) {
  return {"hom:" + std::to_string(w), {{"h", w}}, {}};
}

namespace {

std::optional<std::size_t> numeric_suffix(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
  std::size_t v = 0;
  for (std::size_t i = prefix.size(); i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(name[i] - '0');
    if (v > 64) return std::nullopt;
  }
  return v;
}

}  // namespace

bool is_builtin_name(const std::string& name) {
  return name == "c01" || name == "id" || name == "const1" || name == "square" || name == "x-plus-x" ||
         numeric_suffix(name, "hom:") || numeric_suffix(name, "evconst:");
}

FunctorPtr make_builtin(const std::string& name, std::uint64_t guard) {
  if (name == "c01") return std::make_shared<PresentedFunctor>(c01_presentation(), guard);
  if (name == "id") return std::make_shared<PresentedFunctor>(identity_presentation(), guard);
  if (name == "const1") return std::make_shared<PresentedFunctor>(constant_one_presentation(), guard);
  if (name == "square") return std::make_shared<PresentedFunctor>(square_presentation(), guard);
  if (name == "x-plus-x") return std::make_shared<PresentedFunctor>(x_plus_x_presentation(), guard);
  if (auto w = numeric_suffix(name, "hom:")) return std::make_shared<PresentedFunctor>(hom_presentation(*w), guard);
  if (auto d = numeric_suffix(name, "evconst:")) return std::make_shared<EvSeqFunctor>(*d);
  throw ContractViolation("unknown builtin functor '" + name + "'");
}

// ---------------------------------------------------------------- verdicts

DistinguishedTest is_distinguished(const SetFunctor& h, const FinSet& x, const Label& value) {
  Cone cop = coproduct({x, x});
  FinMap hl = h.mor(cop.legs[0]);
  FinMap hr = h.mor(cop.legs[1]);
  DistinguishedTest t;
  t.left = hl(value);
  t.right = hr(value);
  t.distinguished = t.left == t.right;
  return t;
}

std::vector<Label> distinguished_elements(const SetFunctor& h, const FinSet& x) {
  Cone cop = coproduct({x, x});
  FinMap hl = h.mor(cop.legs[0]);
  FinMap hr = h.mor(cop.legs[1]);
  std::vector<Label> out;
  for (std::size_t i = 0; i < hl.dom().size(); ++i)
    if (hl.at(i) == hr.at(i)) out.push_back(hl.dom()[i]);
  return out;
}

PreservationVerdict check_product(const SetFunctor& h, const FinSet& x, const FinSet& y) {
  PreservationVerdict v;
  v.checks = 1;
  Cone p = product({x, y});
  FinMap h1 = h.mor(p.legs[0]), h2 = h.mor(p.legs[1]);
  const std::size_t nx = h1.cod().size(), ny = h2.cod().size();
  const std::string where = "|X|=" + std::to_string(x.size()) + " |Y|=" + std::to_string(y.size()) + ": ";
  std::vector<std::size_t> hit(nx * ny, SIZE_MAX);
  for (std::size_t z = 0; z < h1.dom().size(); ++z) {
    auto key = h1.at(z) * ny + h2.at(z);
    if (hit[key] != SIZE_MAX) {
      v.preserved = false;
      v.witness = where + "H(XxY) elements " + h1.dom()[hit[key]].to_string() + " and " + h1.dom()[z].to_string() +
                  " have the same projections";
      return v;
    }
    hit[key] = z;
  }
  if (h1.dom().size() != nx * ny) {
    v.preserved = false;
    v.witness = where + "|H(XxY)| = " + std::to_string(h1.dom().size()) + " but |HX x HY| = " + std::to_string(nx * ny);
  }
  return v;
}

PreservationVerdict preserves_products_upto(const SetFunctor& h, std::size_t n) {
  PreservationVerdict v;
  FinSet one = product({}).apex;
  FinSet h1 = h.obj(one);
  ++v.checks;
  if (h1.size() != 1) {
    v.preserved = false;
    v.witness = "H1 has " + std::to_string(h1.size()) + " elements, terminal object not preserved";
    return v;
  }
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b) {
      auto r = check_product(h, FinSet::range(a), FinSet::range(b));
      v.checks += r.checks;
      if (!r.preserved) {
        v.preserved = false;
        v.witness = r.witness;
        return v;
      }
    }
  return v;
}

PreservationVerdict check_intersection(const SetFunctor& h, const FinSet& b, const FinSet& s, const FinSet& t) {
  PreservationVerdict v;
  v.checks = 1;
  FinSet c = set_intersection(s, t);
  FinMap hs = h.mor(FinMap::inclusion(s, b)), ht = h.mor(FinMap::inclusion(t, b));
  FinMap hcs = h.mor(FinMap::inclusion(c, s)), hct = h.mor(FinMap::inclusion(c, t));
  const std::string where = "B=" + set_text(b) + " S=" + set_text(s) + " T=" + set_text(t) + ": ";
  // Pullback of HS -> HB <- HT, and the comparison from HC.
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < hs.dom().size(); ++i)
    for (std::size_t j = 0; j < ht.dom().size(); ++j)
      if (hs.at(i) == ht.at(j)) ++pairs;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t z = 0; z < hcs.dom().size(); ++z) {
    if (!seen.insert({hcs.at(z), hct.at(z)}).second) {
      v.preserved = false;
      v.witness = where + "HC element " + hcs.dom()[z].to_string() + " collides in the pullback";
      return v;
    }
  }
  if (seen.size() != pairs) {
    v.preserved = false;
    for (std::size_t i = 0; i < hs.dom().size() && v.witness.empty(); ++i)
      for (std::size_t j = 0; j < ht.dom().size(); ++j)
        if (hs.at(i) == ht.at(j) && !seen.count({i, j})) {
          v.witness = where + "pair (" + hs.dom()[i].to_string() + ", " + ht.dom()[j].to_string() +
                      ") in the pullback of HS -> HB <- HT is not in the image of HC (|HC| = " +
                      std::to_string(hcs.dom().size()) + ", pullback size " + std::to_string(pairs) + ")";
          break;
        }
  }
  return v;
}

PreservationVerdict preserves_pullbacks_upto(const SetFunctor& h, std::size_t n, bool nonempty_only) {
  PreservationVerdict v;
  v.checks = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    FinSet b = FinSet::range(k);
    auto subs = subsets(b);
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = i; j < subs.size(); ++j) {
        if (nonempty_only && set_intersection(subs[i], subs[j]).empty()) continue;
        auto r = check_intersection(h, b, subs[i], subs[j]);
        ++v.checks;
        if (!r.preserved) {
          v.preserved = false;
          v.witness = r.witness;
          return v;
        }
      }
  }
  return v;
}

PreservationVerdict preserves_equalizers_upto(const SetFunctor& h, std::size_t n) {
  PreservationVerdict v;
  v.checks = 0;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b) {
      FinSet x = FinSet::range(a), y = FinSet::range(b);
      auto maps = all_maps(x, y);
      std::vector<FinMap> images;
      for (const auto& f : maps) images.push_back(h.mor(f));
      for (std::size_t i = 0; i < maps.size(); ++i)
        for (std::size_t j = i; j < maps.size(); ++j) {
          ++v.checks;
          Equalizer e = equalizer(maps[i], maps[j]);
          FinMap he = h.mor(e.inclusion);
          std::vector<char> hit(he.cod().size(), 0);
          for (std::size_t z = 0; z < he.dom().size(); ++z) {
            if (hit[he.at(z)]) {
              v.preserved = false;
              v.witness = "equalizer of " + maps[i].to_string() + " and " + maps[j].to_string() +
                          ": H(incl) is not injective";
              return v;
            }
            hit[he.at(z)] = 1;
          }
          for (std::size_t w = 0; w < he.cod().size(); ++w) {
            bool agree = images[i].at(w) == images[j].at(w);
            if (agree != static_cast<bool>(hit[w])) {
              v.preserved = false;
              v.witness = "equalizer of " + maps[i].to_string() + " and " + maps[j].to_string() + ": element " +
                          he.cod()[w].to_string() + (agree ? " is equalized but not in H(E)" : " is in H(E) but not equalized");
              return v;
            }
          }
        }
    }
  return v;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::NotProductPreserving: return "NotProductPreserving";
    case Classification::ConstantOne: return "ConstantOne";
    case Classification::C01Exception: return "C01Exception";
    case Classification::RightAdjoint: return "RightAdjoint";
  }
  return "?";
}

ClassifyResult classify_functor(const SetFunctor& h, std::size_t n) {
  if (n < 2) throw ContractViolation("classify_functor: bound must be at least 2");
  ClassifyResult res;
  res.bound = n;
  auto prod = preserves_products_upto(h, n);
  if (!prod.preserved) {
    res.verdict = Classification::NotProductPreserving;
    res.witness = prod.witness;
    return res;
  }
  res.confirmations.push_back("finite products preserved up to size " + std::to_string(n) + " (" +
                              std::to_string(prod.checks) + " checks)");
  const std::string who = "functor '" + h.name() + "'";

  if (!h.obj(FinSet()).empty()) {
    res.verdict = Classification::ConstantOne;
    for (std::size_t k = 0; k <= n; ++k) {
      auto sz = h.obj(FinSet::range(k)).size();
      if (sz != 1)
        throw TheoremViolation(who + " preserves products with H(empty) nonempty, yet |H" + std::to_string(k) +
                               "| = " + std::to_string(sz));
    }
    res.confirmations.push_back("|HX| = 1 for all |X| <= " + std::to_string(n));
    return res;
  }

  FinSet one = FinSet::range(1);
  FinSet h1 = h.obj(one);
  if (h1.size() != 1) throw TheoremViolation(who + ": H1 is not a singleton although products are preserved");
  auto dist = is_distinguished(h, one, h1[0]);
  if (dist.distinguished) {
    res.verdict = Classification::C01Exception;
    for (std::size_t k = 1; k <= n; ++k) {
      auto sz = h.obj(FinSet::range(k)).size();
      if (sz != 1)
        throw TheoremViolation(who + " has a distinguished element in H1, yet |H" + std::to_string(k) +
                               "| = " + std::to_string(sz));
    }
    res.confirmations.push_back("H(empty) = empty and |HX| = 1 for 1 <= |X| <= " + std::to_string(n));
    auto sq = check_intersection(h, FinSet::range(2), FinSet{Label(0)}, FinSet{Label(1)});
    if (sq.preserved) throw TheoremViolation(who + " preserves the intersection of the coproduct injections of 1+1");
    res.confirmations.push_back("intersection of the injections 1 -> 1+1 not preserved: " + sq.witness);
    return res;
  }

  res.verdict = Classification::RightAdjoint;
  auto pb = preserves_pullbacks_upto(h, n, false);
  if (!pb.preserved) throw TheoremViolation(who + " classified as a right adjoint but fails intersections: " + pb.witness);
  res.confirmations.push_back("finite intersections preserved up to size " + std::to_string(n) + " (" +
                              std::to_string(pb.checks) + " squares)");
  auto eq = preserves_equalizers_upto(h, n);
  if (!eq.preserved) throw TheoremViolation(who + " classified as a right adjoint but fails equalizers: " + eq.witness);
  res.confirmations.push_back("equalizers preserved up to size " + std::to_string(n) + " (" +
                              std::to_string(eq.checks) + " pairs)");
  return res;
}

ExponentForm recover_right_adjoint_form(const SetFunctor& h, std::size_t n) {
  const std::size_t h2 = h.obj(FinSet::range(2)).size();
  if (h2 == 0 || (h2 & (h2 - 1)) != 0)
    throw NotExponential("functor '" + h.name() + "': |H2| = " + std::to_string(h2) + " is not a power of two");
  std::size_t a = 0;
  while ((std::size_t{1} << a) < h2) ++a;
  const FinSet exps = FinSet::range(a);

  // phi_X(g) = Hg(u) for g: A -> X.
  auto phi = [&](const Label& u, const FinSet& x) {
    std::vector<Label> out;
    for (const auto& g : all_maps(exps, x)) out.push_back(h.mor(g)(u));
    return out;
  };
  for (const auto& u : h.obj(exps)) {
    bool ok = true;
    for (std::size_t k = 0; k <= n && ok; ++k) {
      FinSet x = FinSet::range(k);
      auto img = phi(u, x);
      std::set<Label> distinct(img.begin(), img.end());
      ok = distinct.size() == img.size() && img.size() == h.obj(x).size();
    }
    if (!ok) continue;
    ExponentForm form;
    form.exponent = a;
    form.generic = u;
    form.sizes_checked = n + 1;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        FinSet x = FinSet::range(i), y = FinSet::range(j);
        auto gs = all_maps(exps, x);
        for (const auto& f : all_maps(x, y)) {
          FinMap hf = h.mor(f);
          for (const auto& g : gs) {
            ++form.naturality_checks;
            if (!(hf(h.mor(g)(u)) == h.mor(compose(f, g))(u)))
              throw TheoremViolation("functor '" + h.name() + "': comparison with X^A is not natural");
          }
        }
      }
    return form;
  }
  throw NotExponential("functor '" + h.name() + "': no element of H" + std::to_string(a) +
                       " induces a bijection H X = X^" + std::to_string(a) + " for all |X| <= " + std::to_string(n));
}

}  // namespace gradcat
