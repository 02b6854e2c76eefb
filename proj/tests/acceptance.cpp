// Acceptance run: one PASS/FAIL line per criterion, each with a pinned
// wall-clock limit. Library answers are compared against the brute-force
// references in oracles.hpp wherever one exists.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gradcat/adjoint.hpp"
#include "gradcat/category.hpp"
#include "gradcat/chain.hpp"
#include "gradcat/error.hpp"
#include "gradcat/functor.hpp"
#include "gradcat/io.hpp"
#include "oracles.hpp"

using namespace gradcat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure; later ones only bump the counter.
class Tally {
public:
  void expect(bool cond, const std::function<std::string()>& what) {
    ++checks_;
    if (cond) return;
    ++failures_;
    if (first_.empty()) first_ = what();
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures_) + " failure(s), first: " + first_};
  }

private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::vector<CatId> seven_instances() {
  return {CatId::set(),  CatId::pointed(), CatId::pos(),
          CatId::boolean(), CatId::vec(2),  CatId::mset(Monoid::cyclic(2)),
          CatId::mset(Monoid::idempotent()), CatId::omega_rel({2})};
}

std::size_t object_bound(const CatId& c) { return c.kind() == CatKind::Vec ? 2 : 3; }

// Grade from carrier data alone.
std::uint64_t reference_grade(const CatObject& a) {
  switch (a.cat().kind()) {
    case CatKind::Pos: {
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < a.carrier().size(); ++i)
        for (std::size_t j = 0; j < a.carrier().size(); ++j) n += a.order().le(i, j) ? 1 : 0;
      return n;
    }
    case CatKind::Vec: {
      std::uint64_t d = 0;
      for (std::size_t s = a.carrier().size(); s > 1; s /= static_cast<std::size_t>(a.cat().prime())) ++d;
      return d;
    }
    case CatKind::OmegaRel: {
      std::uint64_t n = a.carrier().size();
      for (const auto& r : a.relations()) n += r.size();
      return n;
    }
    default:
      return a.carrier().size();
  }
}

std::vector<std::size_t> inverse_table(const std::vector<std::size_t>& t) {
  std::vector<std::size_t> inv(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) inv[t[i]] = i;
  return inv;
}

bool reference_iso(const CatObject& a, const CatObject& b, const std::vector<std::size_t>& t) {
  if (a.carrier().size() != b.carrier().size()) return false;
  if (!oracle::injective(t)) return false;
  return oracle::homomorphism(b, a, inverse_table(t));
}

std::vector<std::size_t> then(const std::vector<std::size_t>& f, const std::vector<std::size_t>& g) {
  std::vector<std::size_t> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

std::vector<std::size_t> identity_table(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return t;
}

std::string show(const FinSet& s) { return s.to_string(); }

// H preserves the intersection of s and t inside b: H(s ∩ t) maps bijectively
// onto the pullback of H(s) -> H(b) <- H(t), computed pair by pair.
bool reference_intersection(const SetFunctor& h, const FinSet& b, const FinSet& s, const FinSet& t) {
  FinSet st = set_intersection(s, t);
  FinMap hs = h.mor(FinMap::inclusion(s, b));
  FinMap ht = h.mor(FinMap::inclusion(t, b));
  std::set<std::pair<Label, Label>> pairs;
  for (const auto& x : hs.dom())
    for (const auto& y : ht.dom())
      if (hs(x) == ht(y)) pairs.insert({x, y});
  FinMap to_s = h.mor(FinMap::inclusion(st, s));
  FinMap to_t = h.mor(FinMap::inclusion(st, t));
  std::set<std::pair<Label, Label>> hit;
  for (const auto& c : to_s.dom()) {
    auto p = std::make_pair(to_s(c), to_t(c));
    if (!pairs.count(p) || !hit.insert(p).second) return false;
  }
  return hit.size() == pairs.size();
}

bool preserves_intersections(const SetFunctor& h, std::size_t n, bool nonempty_only = false) {
  for (std::size_t k = 0; k <= n; ++k) {
    FinSet b = FinSet::range(k);
    auto subs = subsets(b);
    for (const auto& s : subs)
      for (const auto& t : subs) {
        if (nonempty_only && set_intersection(s, t).empty()) continue;
        if (!reference_intersection(h, b, s, t)) return false;
      }
  }
  return true;
}

// H(X x Y) -> HX x HY is a bijection, by explicit pairing.
bool reference_product(const SetFunctor& h, const FinSet& x, const FinSet& y) {
  std::vector<Label> cells;
  for (const auto& a : x)
    for (const auto& b : y) cells.push_back(Label::tuple({a, b}));
  FinSet prod(cells);
  auto p1 = FinMap::from_fn(prod, x, [](const Label& l) { return l.as_tuple()[0]; });
  auto p2 = FinMap::from_fn(prod, y, [](const Label& l) { return l.as_tuple()[1]; });
  FinMap h1 = h.mor(p1), h2 = h.mor(p2);
  std::set<std::pair<Label, Label>> seen;
  for (const auto& e : h1.dom())
    if (!seen.insert({h1(e), h2(e)}).second) return false;
  return seen.size() == h1.cod().size() * h2.cod().size();
}

bool reference_products_upto(const SetFunctor& h, std::size_t n) {
  if (h.obj(FinSet::range(1)).size() != 1) return false;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b)
      if (!reference_product(h, FinSet::range(a), FinSet::range(b))) return false;
  return true;
}

std::vector<CorpusEntry> corpus() { return load_corpus(GRADCAT_CORPUS_DIR); }

std::string stem(const std::string& file) { return file.substr(0, file.rfind('.')); }

// ---------------------------------------------------------------- 1, 2

Outcome grade_axioms() {
  Tally t;
  std::size_t objects = 0, subs = 0, quots = 0;
  for (const auto& cat : seven_instances()) {
    for (const auto& a : enumerate_objects(cat, object_bound(cat))) {
      ++objects;
      const auto ga = reference_grade(a);
      t.expect(grade(a).value == ga, [&] { return "grade of " + a.to_string(); });
      auto rep = verify_grade_axioms(a);
      t.expect(rep.pass, [&] { return rep.failure; });
      for (const auto& m : subobjects(a)) {
        ++subs;
        const auto& tab = m.map().table();
        t.expect(oracle::injective(tab) && oracle::homomorphism(m.src(), a, tab),
                 [&] { return "not a mono: " + m.to_string(); });
        const auto gs = reference_grade(m.src());
        const bool proper = !reference_iso(m.src(), a, tab);
        t.expect(proper ? gs < ga : gs <= ga, [&] { return "subobject " + m.to_string(); });
      }
      for (const auto& q : strong_quotients(a)) {
        ++quots;
        const auto& tab = q.map().table();
        t.expect(oracle::surjective(tab, q.dst().carrier().size()) && oracle::homomorphism(a, q.dst(), tab),
                 [&] { return "not a surjective morphism: " + q.to_string(); });
        const auto gq = reference_grade(q.dst());
        const bool proper = !reference_iso(a, q.dst(), tab);
        t.expect(proper ? gq < ga : gq <= ga, [&] { return "quotient " + q.to_string(); });
      }
    }
  }
  return t.outcome(std::to_string(objects) + " objects, " + std::to_string(subs) + " subobjects, " +
                   std::to_string(quots) + " strong quotients");
}

Outcome equal_grade_invertibility() {
  Tally t;
  std::size_t pairs = 0, morphisms = 0, mono_or_epi = 0;
  for (const auto& cat : seven_instances()) {
    auto objs = enumerate_objects(cat, object_bound(cat));
    std::map<std::uint64_t, std::vector<std::size_t>> by_grade;
    for (std::size_t i = 0; i < objs.size(); ++i) by_grade[reference_grade(objs[i])].push_back(i);
    for (const auto& [g, group] : by_grade)
      for (auto i : group)
        for (auto j : group) {
          ++pairs;
          const auto& a = objs[i];
          const auto& b = objs[j];
          for_each_hom(a, b, [&](const FinMap& f) {
            ++morphisms;
            const auto& tab = f.table();
            t.expect(oracle::homomorphism(a, b, tab), [&] { return "enumerated non-morphism " + f.to_string(); });
            auto flags = classify(a, b, f);
            if (flags.mono || flags.strong_epi || oracle::injective(tab)) {
              ++mono_or_epi;
              t.expect(reference_iso(a, b, tab), [&] {
                return a.to_string() + " -> " + b.to_string() + " via " + f.to_string() + " at grade " +
                       std::to_string(g);
              });
            }
            return true;
          });
        }
  }
  return t.outcome(std::to_string(pairs) + " equal-grade pairs, " + std::to_string(morphisms) + " morphisms, " +
                   std::to_string(mono_or_epi) + " monos/strong epis all invertible");
}

// ---------------------------------------------------------------- 3, 4

Outcome counterexample_chains() {
  Tally t;
  for (auto chain : {BuiltinChain::CyclicGroups, BuiltinChain::UnaryCycles}) {
    auto rep = verify_counterexample_chain(chain, 20);
    const std::string name = to_string(chain);
    t.expect(rep.connecting_homomorphisms, [&] { return name + ": connecting map " + rep.failure; });
    t.expect(rep.legs_compatible, [&] { return name + ": legs " + rep.failure; });
    t.expect(rep.monic_legs == 0, [&] { return name + ": monic leg"; });
    t.expect(rep.witnesses.size() == 20, [&] { return name + ": " + std::to_string(rep.witnesses.size()) + " witnesses"; });
    for (std::size_t k = 0; k < rep.witnesses.size(); ++k) {
      const auto& w = rep.witnesses[k];
      const std::int64_t mod = std::int64_t{1} << w.level;
      t.expect(w.level == k + 1 && w.first == 0 && w.second == mod && w.first % mod == w.image &&
                   w.second % mod == w.image,
               [&] { return name + ": witness at level " + std::to_string(w.level); });
    }
  }
  return t.outcome("ab-mod2k and un-cycles at depth 20, " + std::to_string(t.checks()) + " checks");
}

struct RandomChain {
  ChainSegment chain;
  ConeFamily cone;
  std::vector<std::vector<int>> vectors;
};

RandomChain random_chain(std::mt19937& rng) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto bits = [&](std::size_t r, std::size_t c) {
    Matrix m(r, c, 2);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<int>(rng() & 1U));
    return m;
  };
  const std::size_t n = 1 + pick(5), depth = 1 + pick(8);
  std::vector<CatObject> objs;
  for (std::size_t k = 0; k <= depth; ++k) objs.push_back(CatObject::vec(2, pick(6)));
  std::vector<CatMorphism> conn(depth);
  for (std::size_t k = 0; k < depth; ++k)
    conn[k] = CatMorphism::from_matrix(objs[k + 1], objs[k], bits(objs[k].dim(), objs[k + 1].dim()));
  auto apex = CatObject::vec(2, n);
  std::vector<CatMorphism> legs(depth + 1);
  legs[depth] = CatMorphism::from_matrix(apex, objs[depth], bits(objs[depth].dim(), n));
  for (std::size_t k = depth; k-- > 0;) legs[k] = compose(conn[k], legs[k + 1]);

  std::vector<std::vector<int>> vecs;
  const std::size_t want = 1 + pick(n);
  while (vecs.size() < want) {
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(rng() & 1U);
    auto trial = vecs;
    trial.push_back(v);
    if (oracle::rank(trial, 2) == trial.size()) vecs = trial;
  }
  return {ChainSegment::make(objs, conn), ConeFamily{apex, legs}, vecs};
}

Outcome independence_index() {
  Tally t;
  std::mt19937 rng(20240611);
  std::size_t found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto rc = random_chain(rng);
    auto full_rank_at = [&](std::size_t k) {
      std::vector<std::vector<int>> rows;
      for (const auto& v : rc.vectors) rows.push_back(rc.cone.legs[k].matrix().apply(v));
      return oracle::rank(rows, 2) == rc.vectors.size();
    };
    std::optional<std::size_t> expected;
    for (std::size_t k = 0; k <= rc.chain.depth() && !expected; ++k)
      if (full_rank_at(k)) expected = k;
    auto r = find_independence_index(rc.chain, rc.vectors, rc.cone);
    if (r.index) ++found;
    t.expect(r.index == expected, [&] {
      auto s = [](const std::optional<std::size_t>& o) { return o ? std::to_string(*o) : std::string("none"); };
      return "trial " + std::to_string(trial) + ": got " + s(r.index) + ", rescan " + s(expected);
    });
  }
  return t.outcome("100 chains, " + std::to_string(found) + " with an index, all minimal by rescan");
}

// ---------------------------------------------------------------- 5

Outcome subobject_colimits() {
  Tally t;
  std::size_t diagrams = 0, cocones = 0;
  for (const auto& cat : {CatId::set(), CatId::pos()}) {
    auto tests = enumerate_objects(cat, 3);
    for (const auto& k : tests) {
      ++diagrams;
      auto d = canonical_subobject_diagram(k);
      t.expect(d.nodes.size() == oracle::subobject_count(k, enumerate_objects(cat, k.carrier().size())),
               [&] { return "node count for " + k.to_string(); });
      t.expect(d.directed, [&] { return "not directed: " + k.to_string(); });
      for (const auto& m : d.nodes)
        t.expect(oracle::injective(m.map().table()) && oracle::homomorphism(m.src(), k, m.map().table()),
                 [&] { return "node is not a mono: " + m.to_string(); });
      auto rep = verify_subobject_colimit(d, tests);
      cocones += rep.cocones;
      t.expect(rep.pass, [&] { return k.to_string() + ": " + rep.failure; });
    }
  }
  return t.outcome(std::to_string(diagrams) + " objects K in Set and Pos, " + std::to_string(cocones) +
                   " cocones with apex size <= 3");
}

// ---------------------------------------------------------------- 6

Outcome least_subobjects() {
  Tally t;
  std::size_t functors = 0, elements = 0, literal_misses = 0, tight_ok = 0;
  std::string literal_example;
  for (const auto& e : corpus()) {
    auto h = e.spec.instantiate();
    if (!preserves_intersections(*h, 4)) continue;
    ++functors;
    for (std::size_t n = 0; n <= 4; ++n) {
      FinSet k = FinSet::range(n);
      for (const auto& x : h->obj(k)) {
        ++elements;
        auto expected = oracle::least_subset(*h, k, x);
        auto ctx = [&] { return stem(e.file) + ": " + x.to_string() + " in H" + show(k); };
        t.expect(expected.has_value(), [&] { return ctx() + ": no least subset"; });
        for (auto order : {WitnessOrder::Canonical, WitnessOrder::LargestFirst}) {
          auto r = least_fp_subobject(*h, k, x, LeastMethod::GradeDescent, order);
          t.expect(expected && r.subset == *expected, [&] { return ctx() + ": descent gave " + show(r.subset); });
          FinSet prev = k;
          for (const auto& m : r.trace) {
            t.expect(is_subset(m, prev) && m.size() < prev.size(), [&] { return ctx() + ": trace not decreasing"; });
            prev = m;
          }
          t.expect(prev == r.subset, [&] { return ctx() + ": trace does not end at the answer"; });
          if (order != WitnessOrder::Canonical) continue;
          if (r.trace.size() <= n - r.subset.size()) ++tight_ok;
          if (!(r.trace.size() < n)) {
            ++literal_misses;
            if (literal_example.empty())
              literal_example = ctx() + ": " + std::to_string(r.trace.size()) + " step(s) from initial grade " +
                                std::to_string(n);
          }
        }
      }
    }
  }
  Outcome out = t.outcome(std::to_string(functors) + " functors, " + std::to_string(elements) +
                          " elements; descent equals subset scan; steps <= grade(K) - grade(least) in " +
                          std::to_string(tight_ok) + "/" + std::to_string(elements));
  if (literal_misses > 0) {
    out.ok = false;
    out.detail += "; trace length < initial grade violated " + std::to_string(literal_misses) +
                  " time(s), e.g. " + literal_example;
  }
  return out;
}

// ---------------------------------------------------------------- 7

Outcome engine_soundness() {
  Tally t;
  std::size_t functors = 0, compositions = 0;
  for (const auto& e : corpus()) {
    if (!e.spec.presentation) continue;
    ++functors;
    const auto& p = *e.spec.presentation;
    PresentedFunctor h(p);
    std::vector<FinSet> xs;
    std::vector<oracle::Classes> ref;
    for (std::size_t n = 0; n <= 3; ++n) {
      xs.push_back(FinSet::range(n));
      ref.push_back(oracle::fixpoint_classes(p, xs.back()));
      FinSet hx = h.obj(xs.back());
      t.expect(std::set<Label>(hx.begin(), hx.end()) == ref.back().reps,
               [&] { return stem(e.file) + ": classes at size " + std::to_string(n); });
      for (std::size_t i = 0; i < ref.back().instances.size(); ++i) {
        const auto& inst = ref.back().instances[i].as_tuple();
        t.expect(h.class_of(xs.back(), inst[0].as_string(), inst[1].as_tuple()) == ref.back().rep[i],
                 [&] { return stem(e.file) + ": class of " + ref.back().instances[i].to_string(); });
      }
    }
    auto rep_of = [&](std::size_t n, const Label& inst) {
      const auto& r = ref[n];
      for (std::size_t i = 0; i < r.instances.size(); ++i)
        if (r.instances[i] == inst) return r.rep[i];
      return Label("missing");
    };
    for (std::size_t a = 0; a <= 3; ++a) {
      t.expect(h.mor(FinMap::identity(xs[a])) == FinMap::identity(h.obj(xs[a])),
               [&] { return stem(e.file) + ": identity at size " + std::to_string(a); });
      for (std::size_t b = 0; b <= 3; ++b)
        for (const auto& f : all_maps(xs[a], xs[b])) {
          FinMap hf = h.mor(f);
          // Hf on each instance agrees with the reference classes over the target.
          for (const auto& inst : ref[a].instances) {
            const auto& parts = inst.as_tuple();
            std::vector<Label> moved;
            for (const auto& arg : parts[1].as_tuple()) moved.push_back(f(arg));
            t.expect(hf(rep_of(a, inst)) == rep_of(b, term_label(parts[0].as_string(), moved)),
                     [&] { return stem(e.file) + ": naturality at " + inst.to_string() + " under " + f.to_string(); });
          }
          for (std::size_t c = 0; c <= 3; ++c)
            for (const auto& g : all_maps(xs[b], xs[c])) {
              ++compositions;
              t.expect(h.mor(compose(g, f)) == compose(h.mor(g), hf),
                       [&] { return stem(e.file) + ": H(g.f) != Hg.Hf for " + f.to_string() + ", " + g.to_string(); });
            }
        }
    }
  }
  return t.outcome(std::to_string(functors) + " corpus functors, sizes <= 3, " + std::to_string(compositions) +
                   " composable pairs");
}

// ---------------------------------------------------------------- 8, 9

Outcome distinguished_criterion() {
  Tally t;
  std::size_t elements = 0, distinguished = 0, images = 0;
  for (const auto& e : corpus()) {
    auto h = e.spec.instantiate();
    for (std::size_t n = 0; n <= 3; ++n) {
      FinSet x = FinSet::range(n);
      auto listed = distinguished_elements(*h, x);
      std::set<Label> listed_set(listed.begin(), listed.end());
      for (const auto& v : h->obj(x)) {
        ++elements;
        const bool literal = oracle::distinguished_literal(*h, x, v, n + 2);
        distinguished += literal ? 1 : 0;
        t.expect(is_distinguished(*h, x, v).distinguished == literal,
                 [&] { return stem(e.file) + ": " + v.to_string() + " at size " + std::to_string(n); });
        t.expect(listed_set.count(v) == (literal ? 1U : 0U),
                 [&] { return stem(e.file) + ": listing of " + v.to_string(); });
        if (n == 0) t.expect(literal, [&] { return stem(e.file) + ": element of H(empty) not distinguished"; });
      }
      // Images of distinguished elements stay distinguished.
      for (std::size_t m = 0; m <= 3; ++m) {
        FinSet y = FinSet::range(m);
        auto target = distinguished_elements(*h, y);
        std::set<Label> target_set(target.begin(), target.end());
        for (const auto& f : all_maps(x, y)) {
          FinMap hf = h->mor(f);
          for (const auto& v : listed) {
            ++images;
            t.expect(target_set.count(hf(v)) == 1,
                     [&] { return stem(e.file) + ": image of " + v.to_string() + " under " + f.to_string(); });
          }
        }
      }
    }
  }
  return t.outcome(std::to_string(elements) + " elements, " + std::to_string(distinguished) +
                   " distinguished, literal quantifier over |Y| <= |X|+2; " + std::to_string(images) +
                   " images stay distinguished");
}

Outcome no_distinguished_means_intersections() {
  Tally t;
  std::size_t qualifying = 0;
  for (const auto& e : corpus()) {
    auto h = e.spec.instantiate();
    bool none = true;
    for (std::size_t n = 0; n <= 3 && none; ++n) none = distinguished_elements(*h, FinSet::range(n)).empty();
    if (!none) continue;
    ++qualifying;
    t.expect(preserves_intersections(*h, 3), [&] { return stem(e.file) + " breaks an intersection"; });
  }
  t.expect(qualifying > 0, [] { return std::string("no corpus functor without distinguished elements"); });
  return t.outcome(std::to_string(qualifying) + " functors without distinguished elements, all intersections "
                                                "(including empty) preserved at size <= 3");
}

// ---------------------------------------------------------------- 10

Outcome trichotomy() {
  Tally t;
  std::map<std::string, std::size_t> verdicts;
  for (const auto& e : corpus()) {
    auto h = e.spec.instantiate();
    const std::string name = stem(e.file);
    const bool products = reference_products_upto(*h, 4);
    auto cls = classify_functor(*h, 4);
    ++verdicts[to_string(cls.verdict)];
    if (!products) {
      t.expect(cls.verdict == Classification::NotProductPreserving, [&] { return name + ": products not preserved"; });
      continue;
    }
    t.expect(cls.verdict != Classification::NotProductPreserving, [&] { return name + ": preserved products missed"; });
    if (cls.verdict == Classification::C01Exception) {
      FinSet two = FinSet::range(2);
      t.expect(!reference_intersection(*h, two, FinSet{Label(0)}, FinSet{Label(1)}),
               [&] { return name + ": disjoint singletons square preserved"; });
      t.expect(preserves_intersections(*h, 3, true), [&] { return name + ": a nonempty intersection fails"; });
      continue;
    }
    ExponentForm form;
    try {
      form = recover_right_adjoint_form(*h, 3);
    } catch (const NotExponential& ex) {
      t.expect(false, [&] { return name + ": " + ex.what(); });
      continue;
    }
    t.expect((cls.verdict == Classification::ConstantOne) == (form.exponent == 0),
             [&] { return name + ": exponent " + std::to_string(form.exponent); });
    FinSet a = FinSet::range(form.exponent);
    for (std::size_t n = 0; n <= 3; ++n) {
      FinSet x = FinSet::range(n);
      std::set<Label> hit;
      for (const auto& g : all_maps(a, x)) hit.insert(h->mor(g)(form.generic));
      t.expect(hit.size() == oracle::all_tables(a.size(), n).size() && hit.size() == h->obj(x).size(),
               [&] { return name + ": X^A -> HX not bijective at size " + std::to_string(n); });
      for (std::size_t m = 0; m <= 3; ++m)
        for (const auto& f : all_maps(x, FinSet::range(m)))
          for (const auto& g : all_maps(a, x))
            t.expect(h->mor(f)(h->mor(g)(form.generic)) == h->mor(compose(f, g))(form.generic),
                     [&] { return name + ": naturality"; });
    }
  }
  std::string summary;
  for (const auto& [v, c] : verdicts) summary += (summary.empty() ? "" : ", ") + v + " " + std::to_string(c);
  return t.outcome(summary);
}

// ---------------------------------------------------------------- 11

Outcome eventually_constant() {
  Tally t;
  for (std::size_t d = 0; d <= 4; ++d) {
    EvSeqFunctor h(d);
    t.expect(h.obj(FinSet::range(1)).size() == 1, [&] { return "H1 at depth " + std::to_string(d); });
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t b = 0; b <= 3; ++b)
        t.expect(reference_product(h, FinSet::range(a), FinSet::range(b)), [&] {
          return "depth " + std::to_string(d) + ", sizes " + std::to_string(a) + " x " + std::to_string(b);
        });
  }
  for (std::size_t d = 0; d <= 6; ++d) {
    const auto w = ev_countable_witness(d, d + 2);
    t.expect(w == d + 1, [&] { return "witness at depth " + std::to_string(d) + " is " + std::to_string(w); });
  }
  return t.outcome("products at depth <= 4, sizes <= 3; countable witness d+1 for d = 0..6");
}

// ---------------------------------------------------------------- 12

IntersectionSquare subset_square(std::size_t n, const FinSet& b, const FinSet& bp) {
  auto a = CatObject::set(FinSet::range(n));
  auto ob = CatObject::set(b), obp = CatObject::set(bp);
  return intersection_square(CatMorphism::from_map(ob, a, FinMap::inclusion(b, a.carrier())),
                             CatMorphism::from_map(obp, a, FinMap::inclusion(bp, a.carrier())));
}

std::vector<IntersectionSquare> squares_of(const CatObject& a) {
  std::vector<IntersectionSquare> out;
  auto subs = subobjects(a);
  for (const auto& m : subs)
    for (const auto& mp : subs) out.push_back(intersection_square(m, mp));
  return out;
}

// e.m = id, e'.i' = id, e.m' = i.e', all as carrier tables.
bool reference_splitting(const IntersectionSquare& sq, const SplittingPair& sp) {
  const auto& e = sp.e.map().table();
  const auto& ep = sp.ep.map().table();
  return oracle::homomorphism(sq.a, sq.b, e) && oracle::homomorphism(sq.bp, sq.c, ep) &&
         then(sq.m.map().table(), e) == identity_table(sq.b.carrier().size()) &&
         then(sq.ip.map().table(), ep) == identity_table(sq.c.carrier().size()) &&
         then(sq.mp.map().table(), e) == then(ep, sq.i.map().table());
}

Outcome absolute_intersections() {
  Tally t;
  std::size_t split = 0, unsplit = 0;
  std::vector<IntersectionSquare> set_squares, nonempty_set_squares, pointed_squares, vec_squares;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto subs = subsets(FinSet::range(n));
    for (const auto& b : subs)
      for (const auto& bp : subs) {
        auto sq = subset_square(n, b, bp);
        set_squares.push_back(sq);
        if (!set_intersection(b, bp).empty()) nonempty_set_squares.push_back(sq);
      }
  }
  for (const auto& a : enumerate_objects(CatId::pointed(), 4))
    for (auto& sq : squares_of(a)) pointed_squares.push_back(sq);
  for (std::size_t d = 0; d <= 3; ++d)
    for (auto& sq : squares_of(CatObject::vec(2, d))) vec_squares.push_back(sq);

  for (const auto* family : {&set_squares, &pointed_squares, &vec_squares})
    for (const auto& sq : *family) {
      if (sq.c.carrier().empty()) {
        ++unsplit;
        bool refused = false;
        try {
          compute_splittings(sq);
        } catch (const NoSplitting&) {
          refused = true;
        }
        t.expect(refused, [&] { return "empty intersection split: " + sq.a.to_string(); });
        continue;
      }
      ++split;
      auto sp = compute_splittings(sq);
      t.expect(reference_splitting(sq, sp) && check_splittings(sq, sp).all(),
               [&] { return "splitting equations fail over " + sq.a.to_string(); });
    }

  std::size_t hom_runs = 0, engine_runs = 0;
  auto run = [&](const std::vector<IntersectionSquare>& squares, const SquareFunctor& f, std::size_t& counter) {
    for (const auto& sq : squares) {
      ++counter;
      auto rep = verify_absolute_pullback(sq, f);
      t.expect(rep.pass, [&] { return f.name + " over " + sq.a.to_string() + ": " + rep.failure; });
    }
  };
  for (const auto& [cat, squares] : std::vector<std::pair<CatId, const std::vector<IntersectionSquare>*>>{
           {CatId::set(), &set_squares}, {CatId::pointed(), &pointed_squares}, {CatId::vec(2), &vec_squares}})
    for (const auto& w : enumerate_objects(cat, cat.kind() == CatKind::Vec ? 1 : 3)) run(*squares, hom_functor(w), hom_runs);
  for (const auto& e : corpus()) run(nonempty_set_squares, engine_functor(e.spec.instantiate()), engine_runs);

  auto c01 = verify_absolute_pullback(subset_square(2, FinSet{Label(0)}, FinSet{Label(1)}),
                                      engine_functor(make_builtin("c01")));
  t.expect(!c01.pass && !c01.failure.empty(), [] { return std::string("c01 passes the disjoint square"); });

  return t.outcome(std::to_string(split) + " split squares, " + std::to_string(unsplit) + " refused; " +
                   std::to_string(hom_runs) + " hom-functor and " + std::to_string(engine_runs) +
                   " engine-functor runs; c01 fails the disjoint square: " + c01.failure);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "grade axioms on all small objects", 30.0, grade_axioms},
      {2, "equal-grade monos and strong epis are invertible", 30.0, equal_grade_invertibility},
      {3, "counterexample chains at depth 20", 1.0, counterexample_chains},
      {4, "independence index on 100 random GF(2) chains", 10.0, independence_index},
      {5, "subobject diagram colimits in Set and Pos", 60.0, subobject_colimits},
      {6, "least subobject by grade descent", 60.0, least_subobjects},
      {7, "presented functor engine soundness", 60.0, engine_soundness},
      {8, "distinguished elements", 60.0, distinguished_criterion},
      {9, "no distinguished elements implies intersections preserved", 60.0, no_distinguished_means_intersections},
      {10, "product-preserving trichotomy", 120.0, trichotomy},
      {11, "eventually constant sequences", 30.0, eventually_constant},
      {12, "absolute intersections", 120.0, absolute_intersections},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      out.ok = false;
      out.detail += "; over the time limit";
    }
    if (!out.ok) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit_seconds);
    std::cout << (out.ok ? "PASS" : "FAIL") << " " << c.id << ". " << c.title << " [" << timing << "] "
              << out.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
