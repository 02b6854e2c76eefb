#include "gradcat/suites.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "gradcat/adjoint.hpp"
#include "gradcat/chain.hpp"
#include "gradcat/linalg.hpp"

namespace gradcat {

using nlohmann::json;

namespace {

using Task = std::pair<std::string, std::function<CheckResult()>>;

CheckResult pass(std::string summary, json details = json::object()) {
  CheckResult r;
  r.summary = std::move(summary);
  r.details = std::move(details);
  return r;
}

CheckResult fail(std::string summary, std::string witness, json details = json::object()) {
  CheckResult r;
  r.verdict = Verdict::Fail;
  r.summary = std::move(summary);
  r.witness = std::move(witness);
  r.details = std::move(details);
  return r;
}

std::string stem(const std::string& file) { return std::filesystem::path(file).stem().string(); }

// ---------------------------------------------------------------- grades

CheckResult grade_axioms_check(const CatId& cat, std::size_t bound) {
  std::size_t objects = 0, subs = 0, quots = 0;
  for (const auto& a : enumerate_objects(cat, bound)) {
    auto rep = verify_grade_axioms(a);
    ++objects;
    subs += rep.subobjects_checked;
    quots += rep.quotients_checked;
    if (!rep.pass) return fail("grade axiom violated", a.to_string() + ": " + rep.failure);
  }
  return pass(std::to_string(objects) + " objects, " + std::to_string(subs) + " subobjects, " +
                  std::to_string(quots) + " strong quotients",
              {{"bound", bound}, {"objects", objects}, {"subobjects", subs}, {"quotients", quots}});
}

// Monos and strong epis between objects of equal grade are invertible.
CheckResult invertibility_check(const CatId& cat, std::size_t bound) {
  auto objs = enumerate_objects(cat, bound);
  std::map<std::uint64_t, std::vector<std::size_t>> by_grade;
  for (std::size_t i = 0; i < objs.size(); ++i) by_grade[grade(objs[i]).value].push_back(i);
  std::size_t pairs = 0, morphisms = 0;
  std::string witness;
  for (const auto& [g, group] : by_grade)
    for (auto i : group)
      for (auto j : group) {
        ++pairs;
        for_each_hom(objs[i], objs[j], [&](const FinMap& f) {
          ++morphisms;
          auto fl = classify(objs[i], objs[j], f);
          if ((fl.mono || fl.strong_epi) && !fl.iso) {
            witness = (fl.mono ? "mono " : "strong epi ") + objs[i].to_string() + " -> " + objs[j].to_string() +
                      " with table " + f.to_string() + " at grade " + std::to_string(g) + " is not invertible";
            return false;
          }
          return true;
        });
        if (!witness.empty()) return fail("non-invertible mono or strong epi at equal grade", witness);
      }
  return pass(std::to_string(pairs) + " equal-grade pairs, " + std::to_string(morphisms) + " morphisms",
              {{"bound", bound}, {"pairs", pairs}, {"morphisms", morphisms}});
}

// ---------------------------------------------------------------- limits

struct RandomVecChain {
  ChainSegment chain;
  ConeFamily cone;
  std::vector<std::vector<int>> vectors;
};

RandomVecChain random_vec_chain(std::mt19937& rng, std::size_t max_dim, std::size_t max_depth) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t n = 1 + pick(max_dim), depth = 1 + pick(max_depth);
  std::vector<std::size_t> dims(depth + 1);
  for (auto& d : dims) d = pick(max_dim + 1);
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    Matrix m(r, c, 2);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<int>(rng() & 1U));
    return m;
  };
  std::vector<CatObject> objs;
  for (auto d : dims) objs.push_back(CatObject::vec(2, d));
  std::vector<CatMorphism> conn(depth);
  for (std::size_t k = 0; k < depth; ++k)
    conn[k] = CatMorphism::from_matrix(objs[k + 1], objs[k], random_matrix(dims[k], dims[k + 1]));
  auto apex = CatObject::vec(2, n);
  std::vector<CatMorphism> legs(depth + 1);
  legs[depth] = CatMorphism::from_matrix(apex, objs[depth], random_matrix(dims[depth], n));
  for (std::size_t k = depth; k-- > 0;) legs[k] = compose(conn[k], legs[k + 1]);

  // Independent apex vectors, kept greedily from random draws.
  std::vector<std::vector<int>> vecs;
  const std::size_t want = 1 + pick(n);
  for (std::size_t tries = 0; vecs.size() < want && tries < 64; ++tries) {
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(rng() & 1U);
    auto cand = vecs;
    cand.push_back(v);
    if (rank(Matrix::from_columns(n, cand, 2)) == cand.size()) vecs = std::move(cand);
  }
  return {ChainSegment::make(objs, conn), ConeFamily{apex, legs}, vecs};
}

std::optional<std::size_t> rescan_independence(const RandomVecChain& rc) {
  for (std::size_t k = 0; k <= rc.chain.depth(); ++k) {
    std::vector<std::vector<int>> images;
    for (const auto& v : rc.vectors) images.push_back(rc.cone.legs[k].matrix().apply(v));
    if (rank(Matrix::from_columns(rc.chain.objects[k].dim(), images, 2)) == rc.vectors.size()) return k;
  }
  return std::nullopt;
}

constexpr std::uint32_t kChainSeed = 20240611;

CheckResult independence_check(std::size_t max_dim, std::size_t max_depth, bool via_mono_index) {
  std::mt19937 rng(kChainSeed);
  std::size_t found = 0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    auto rc = random_vec_chain(rng, max_dim, max_depth);
    auto expected = rescan_independence(rc);
    std::optional<std::size_t> got;
    if (via_mono_index) {
      // With the full standard basis the two indices coincide.
      std::vector<std::vector<int>> basis;
      for (std::size_t i = 0; i < rc.cone.apex.dim(); ++i) {
        std::vector<int> e(rc.cone.apex.dim(), 0);
        e[i] = 1;
        basis.push_back(e);
      }
      rc.vectors = basis;
      expected = rescan_independence(rc);
      got = mono_index(rc.chain, rc.cone).index;
    } else {
      got = find_independence_index(rc.chain, rc.vectors, rc.cone).index;
    }
    if (got != expected)
      return fail("index differs from a full rescan",
                  "chain " + std::to_string(trial) + " (seed " + std::to_string(kChainSeed) + "): got " +
                      (got ? std::to_string(*got) : "none") + ", rescan " + (expected ? std::to_string(*expected) : "none"));
    if (got) ++found;
  }
  return pass("100 seeded chains agree with a full rescan (" + std::to_string(found) + " with an index)",
              {{"chains", 100}, {"with_index", found}, {"max_dim", max_dim}, {"max_depth", max_depth}, {"seed", kChainSeed}});
}

// ---------------------------------------------------------------- counterexample chains

CheckResult counterexample_check(BuiltinChain chain, std::size_t depth) {
  auto rep = verify_counterexample_chain(chain, depth);
  json details{{"depth", rep.depth},
               {"connecting_checked", rep.connecting_checked},
               {"witnesses", rep.witnesses.size()},
               {"monic_legs", rep.monic_legs}};
  if (!rep.pass() || rep.witnesses.size() != depth || rep.monic_legs != 0)
    return fail("chain does not behave as a counterexample", rep.failure, details);
  return pass(std::to_string(rep.witnesses.size()) + " witness pairs merged, no leg is monic", details);
}

// ---------------------------------------------------------------- functor engine

// Least instance of each class by propagating minima along equation
// instances until nothing changes; no union-find.
struct Reference {
  std::vector<std::pair<std::string, std::vector<Label>>> instances;
  std::vector<Label> least;
};

void for_each_tuple(std::size_t n, std::size_t arity, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t(arity, 0);
  if (arity > 0 && n == 0) return;
  while (true) {
    fn(t);
    std::size_t k = arity;
    while (k > 0 && ++t[k - 1] == n) t[--k] = 0;
    if (k == 0) return;
  }
}

Reference reference_classes(const FunctorPresentation& p, const FinSet& x) {
  Reference ref;
  std::map<Label, std::size_t> index;
  for (const auto& op : p.ops)
    for_each_tuple(x.size(), op.arity, [&](const std::vector<std::size_t>& t) {
      std::vector<Label> args;
      for (auto i : t) args.push_back(x[i]);
      index.emplace(term_label(op.sym, args), ref.instances.size());
      ref.instances.emplace_back(op.sym, args);
    });
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (const auto& e : p.eqs)
    for_each_tuple(x.size(), p.variable_count(e), [&](const std::vector<std::size_t>& v) {
      auto inst = [&](const FlatTerm& t) {
        std::vector<Label> args;
        for (auto a : t.args) args.push_back(x[v[a]]);
        return index.at(term_label(t.op, args));
      };
      links.emplace_back(inst(e.lhs), inst(e.rhs));
    });
  for (const auto& [sym, args] : ref.instances) ref.least.push_back(term_label(sym, args));
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [a, b] : links) {
      if (ref.least[a] == ref.least[b]) continue;
      const Label m = std::min(ref.least[a], ref.least[b]);
      ref.least[a] = ref.least[b] = m;
      changed = true;
    }
  }
  return ref;
}

CheckResult engine_check(const FunctorSpec& spec, std::uint64_t guard, std::size_t small) {
  auto h = spec.instantiate(guard);
  std::size_t classes = 0, compositions = 0;
  if (spec.presentation) {
    const auto* pf = dynamic_cast<const PresentedFunctor*>(h.get());
    for (std::size_t n = 0; n <= small; ++n) {
      FinSet x = FinSet::range(n);
      auto ref = reference_classes(*spec.presentation, x);
      std::set<Label> reps(ref.least.begin(), ref.least.end());
      if (pf->obj(x).size() != reps.size())
        return fail("class count differs from the fixpoint reference",
                    "|X| = " + std::to_string(n) + ": engine " + std::to_string(pf->obj(x).size()) + ", reference " +
                        std::to_string(reps.size()));
      for (std::size_t i = 0; i < ref.instances.size(); ++i) {
        const auto got = pf->class_of(x, ref.instances[i].first, ref.instances[i].second);
        if (!(got == ref.least[i]))
          return fail("class representative differs from the fixpoint reference",
                      term_label(ref.instances[i].first, ref.instances[i].second).to_string() + " over |X| = " +
                          std::to_string(n) + ": engine " + got.to_string() + ", reference " + ref.least[i].to_string());
      }
      classes += reps.size();
    }
  }
  for (std::size_t a = 0; a <= small; ++a) {
    FinSet x = FinSet::range(a);
    if (!(h->mor(FinMap::identity(x)) == FinMap::identity(h->obj(x))))
      return fail("identities are not preserved", "|X| = " + std::to_string(a));
    for (std::size_t b = 0; b <= small; ++b)
      for (std::size_t c = 0; c <= small; ++c) {
        FinSet y = FinSet::range(b), z = FinSet::range(c);
        auto fs = all_maps(x, y);
        auto gs = all_maps(y, z);
        for (const auto& f : fs) {
          auto hf = h->mor(f);
          for (const auto& g : gs) {
            ++compositions;
            if (!(h->mor(compose(g, f)) == compose(h->mor(g), hf)))
              return fail("composition is not preserved", "f = " + f.to_string() + ", g = " + g.to_string());
          }
        }
      }
  }
  return pass("evaluation matches the fixpoint reference; functorial on " + std::to_string(compositions) +
                  " composable pairs",
              {{"sizes", small}, {"classes", classes}, {"compositions", compositions}});
}

bool literal_distinguished(const SetFunctor& h, const FinSet& x, const Label& value) {
  for (std::size_t m = 0; m <= x.size() + 2; ++m) {
    FinSet y = FinSet::range(m);
    std::optional<Label> first;
    bool same = true;
    for_each_table(x.size(), m, [&](const std::vector<std::size_t>& t) {
      Label img = h.mor(FinMap(x, y, t))(value);
      if (!first) first = img;
      same = *first == img;
      return same;
    });
    if (!same) return false;
  }
  return true;
}

CheckResult distinguished_check(const FunctorSpec& spec, std::uint64_t guard, std::size_t small) {
  auto h = spec.instantiate(guard);
  std::size_t elements = 0, closure = 0, found = 0;
  for (std::size_t n = 0; n <= small; ++n) {
    FinSet x = FinSet::range(n);
    for (const auto& v : h->obj(x)) {
      ++elements;
      bool fast = is_distinguished(*h, x, v).distinguished;
      if (fast != literal_distinguished(*h, x, v))
        return fail("injection test disagrees with the quantified definition",
                    v.to_string() + " over |X| = " + std::to_string(n));
      if (fast) ++found;
    }
    for (const auto& v : distinguished_elements(*h, x))
      for (std::size_t m = 0; m <= small; ++m) {
        FinSet y = FinSet::range(m);
        auto dy = distinguished_elements(*h, y);
        for (const auto& f : all_maps(x, y)) {
          ++closure;
          if (std::find(dy.begin(), dy.end(), h->mor(f)(v)) == dy.end())
            return fail("image of a distinguished element is not distinguished",
                        v.to_string() + " under " + f.to_string());
        }
      }
  }
  return pass(std::to_string(found) + " of " + std::to_string(elements) + " elements distinguished; " +
                  std::to_string(closure) + " images checked",
              {{"sizes", small}, {"elements", elements}, {"distinguished", found}, {"images", closure}});
}

CheckResult intersections_check(const FunctorSpec& spec, std::uint64_t guard, std::size_t small) {
  auto h = spec.instantiate(guard);
  for (std::size_t n = 0; n <= small; ++n)
    if (!distinguished_elements(*h, FinSet::range(n)).empty())
      return pass("has distinguished elements at |X| = " + std::to_string(n) + "; no claim", {{"applies", false}});
  auto v = preserves_pullbacks_upto(*h, small, false);
  if (!v.preserved) return fail("no distinguished elements, yet an intersection is not preserved", v.witness);
  return pass("no distinguished elements; all " + std::to_string(v.checks) + " intersections preserved",
              {{"applies", true}, {"checks", v.checks}});
}

CheckResult trichotomy_check(const FunctorSpec& spec, std::uint64_t guard, std::size_t n, std::size_t small) {
  auto h = spec.instantiate(guard);
  auto cls = classify_functor(*h, n);
  json details{{"verdict", to_string(cls.verdict)}, {"bound", n}, {"confirmations", cls.confirmations}};
  switch (cls.verdict) {
    case Classification::NotProductPreserving:
      details["witness"] = cls.witness;
      return pass("does not preserve finite products: " + cls.witness, details);
    case Classification::C01Exception: {
      FinSet two = FinSet::range(2);
      auto square = check_intersection(*h, two, FinSet{Label(0)}, FinSet{Label(1)});
      if (square.preserved) return fail("C01 verdict but the disjoint-singletons square is preserved", "", details);
      auto nonempty = preserves_pullbacks_upto(*h, n, true);
      if (!nonempty.preserved)
        return fail("C01 verdict but a nonempty intersection is not preserved", nonempty.witness, details);
      details["failing_square"] = square.witness;
      return pass("C01 exception: only intersections that are empty fail", details);
    }
    case Classification::ConstantOne:
    case Classification::RightAdjoint: {
      auto pb = preserves_pullbacks_upto(*h, n, false);
      if (!pb.preserved) return fail("right adjoint verdict but an intersection is not preserved", pb.witness, details);
      auto eq = preserves_equalizers_upto(*h, n);
      if (!eq.preserved) return fail("right adjoint verdict but an equalizer is not preserved", eq.witness, details);
      auto form = recover_right_adjoint_form(*h, small);
      details["exponent"] = form.exponent;
      details["generic"] = label_to_json(form.generic);
      details["naturality_checks"] = form.naturality_checks;
      return pass(to_string(cls.verdict) + ": naturally X^A with |A| = " + std::to_string(form.exponent), details);
    }
  }
  return fail("unknown verdict", "", details);
}

CheckResult evseq_check() {
  std::size_t checks = 0;
  for (std::size_t d = 0; d <= 4; ++d) {
    EvSeqFunctor h(d);
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t b = 0; b <= 3; ++b) {
        ++checks;
        auto v = check_product(h, FinSet::range(a), FinSet::range(b));
        if (!v.preserved) return fail("eventually constant sequences lose a finite product", "depth " + std::to_string(d) + ": " + v.witness);
      }
  }
  for (std::size_t d = 0; d <= 6; ++d) {
    auto w = ev_countable_witness(d, d + 2);
    if (w != d + 1)
      return fail("countable-product witness at the wrong index",
                  "depth " + std::to_string(d) + ": got " + std::to_string(w) + ", expected " + std::to_string(d + 1));
  }
  return pass("finite products preserved at depth <= 4; countable witness at d + 1 for d <= 6", {{"product_checks", checks}});
}

// ---------------------------------------------------------------- least subobjects

CheckResult least_subobject_check(const FunctorSpec& spec, std::uint64_t guard, std::size_t size) {
  auto h = spec.instantiate(guard);
  auto pre = preserves_pullbacks_upto(*h, size, false);
  if (!pre.preserved) {
    // Grade descent must refuse somewhere in range.
    for (std::size_t n = 0; n <= size; ++n) {
      FinSet k = FinSet::range(n);
      auto hk = h->obj(k);
      if (hk.empty()) continue;
      try {
        least_fp_subobject(*h, k, hk[0]);
      } catch (const ModeNotSound&) {
        return pass("intersections not preserved; grade descent refuses as required", {{"applies", false}});
      }
    }
    return fail("intersections not preserved but grade descent never refused", pre.witness);
  }
  std::size_t elements = 0, steps = 0, literal_violations = 0;
  std::string literal_witness;
  for (std::size_t n = 0; n <= size; ++n) {
    FinSet k = FinSet::range(n);
    for (const auto& x : h->obj(k)) {
      ++elements;
      auto brute = least_fp_subobject(*h, k, x, LeastMethod::BruteForce);
      auto descent = least_fp_subobject(*h, k, x);
      auto largest = least_fp_subobject(*h, k, x, LeastMethod::GradeDescent, WitnessOrder::LargestFirst);
      const std::string where = x.to_string() + " in H" + k.to_string();
      for (const auto* r : {&descent, &largest}) {
        if (!(r->subset == brute.subset))
          return fail("grade descent disagrees with brute force",
                      where + ": descent " + r->subset.to_string() + ", brute force " + brute.subset.to_string());
        std::size_t prev = k.size();
        for (const auto& m : r->trace) {
          if (m.size() >= prev) return fail("descent trace does not strictly decrease", where);
          prev = m.size();
        }
        if (r->trace.size() > k.size() - brute.subset.size())
          return fail("descent took more steps than the grade drop", where);
        steps = std::max(steps, r->trace.size());
        if (r->trace.size() >= k.size()) {
          ++literal_violations;
          if (literal_witness.empty())
            literal_witness = where + ": " + std::to_string(r->trace.size()) + " step(s) from initial grade " +
                              std::to_string(k.size());
        }
      }
    }
  }
  json details{{"applies", true},
               {"elements", elements},
               {"max_steps", steps},
               {"literal_bound_violations", literal_violations}};
  if (!literal_witness.empty()) details["literal_bound_witness"] = literal_witness;
  return pass("descent = brute force on " + std::to_string(elements) + " elements; steps <= grade drop", details);
}

CheckResult colimit_check(const CatId& cat, std::size_t k_bound, std::size_t test_bound) {
  auto tests = enumerate_objects(cat, test_bound);
  std::size_t objects = 0, cocones = 0, nodes = 0;
  for (const auto& k : enumerate_objects(cat, k_bound)) {
    auto d = canonical_subobject_diagram(k);
    if (!d.directed) return fail("subobject diagram is not directed", k.to_string());
    auto rep = verify_subobject_colimit(d, tests);
    if (!rep.pass) return fail("inclusions are not a colimit", k.to_string() + ": " + rep.failure);
    ++objects;
    cocones += rep.cocones;
    nodes += d.nodes.size();
  }
  return pass(std::to_string(objects) + " objects, " + std::to_string(cocones) + " cocones, each with one mediator",
              {{"objects", objects}, {"nodes", nodes}, {"cocones", cocones}, {"test_objects", tests.size()}});
}

// ---------------------------------------------------------------- squares

std::vector<IntersectionSquare> all_squares(const CatObject& a) {
  std::vector<IntersectionSquare> out;
  auto subs = subobjects(a);
  for (const auto& m : subs)
    for (const auto& mp : subs) out.push_back(intersection_square(m, mp));
  return out;
}

std::vector<IntersectionSquare> square_family(const CatId& cat, std::size_t bound) {
  std::vector<IntersectionSquare> out;
  for (std::size_t n = 0; n <= bound; ++n) {
    std::vector<CatObject> tops;
    switch (cat.kind()) {
      case CatKind::Set: tops.push_back(CatObject::set(FinSet::range(n))); break;
      case CatKind::SetP:
        if (n > 0) tops.push_back(CatObject::pointed(FinSet::range(n), Label(0)));
        break;
      case CatKind::Vec: tops.push_back(CatObject::vec(cat.prime(), n)); break;
      default: throw ContractViolation("square_family: unsupported instance");
    }
    for (const auto& a : tops) {
      auto sq = all_squares(a);
      out.insert(out.end(), sq.begin(), sq.end());
    }
  }
  return out;
}

CheckResult splitting_check(const CatId& cat, std::size_t bound) {
  std::size_t split = 0, unsplittable = 0;
  for (const auto& sq : square_family(cat, bound)) {
    const std::string where = sq.b.to_string() + " & " + sq.bp.to_string() + " in " + sq.a.to_string();
    if (cat.kind() == CatKind::Set && sq.c.carrier().empty()) {
      try {
        compute_splittings(sq);
        return fail("empty intersection in Set was split", where);
      } catch (const NoSplitting&) {
        ++unsplittable;
        continue;
      }
    }
    auto sp = compute_splittings(sq);
    auto chk = check_splittings(sq, sp);
    if (!chk.all())
      return fail("splitting equations fail", where + (chk.retracts_b ? "" : " [e o m != id]") +
                                                  (chk.retracts_c ? "" : " [e' o i' != id]") +
                                                  (chk.compatible ? "" : " [e o m' != i o e']"));
    ++split;
  }
  return pass(std::to_string(split) + " squares split" +
                  (unsplittable ? ", " + std::to_string(unsplittable) + " empty intersections refused" : ""),
              {{"bound", bound}, {"split", split}, {"refused", unsplittable}});
}

std::vector<IntersectionSquare> splittable_squares(const CatId& cat, std::size_t bound) {
  auto all = square_family(cat, bound);
  std::vector<IntersectionSquare> out;
  for (auto& sq : all)
    if (!(cat.kind() == CatKind::Set && sq.c.carrier().empty())) out.push_back(std::move(sq));
  return out;
}

CheckResult absolute_check(const std::vector<IntersectionSquare>& squares, const std::vector<SquareFunctor>& fs) {
  std::size_t checks = 0, pairs = 0;
  for (const auto& f : fs)
    for (const auto& sq : squares) {
      auto rep = verify_absolute_pullback(sq, f);
      ++checks;
      pairs = pairs > SIZE_MAX - rep.pairs ? SIZE_MAX : pairs + rep.pairs;
      if (!rep.pass) return fail("intersection square not preserved", rep.failure);
    }
  return pass(std::to_string(checks) + " (square, functor) combinations preserved",
              {{"combinations", checks}, {"functors", fs.size()}, {"squares", squares.size()}});
}

std::vector<SquareFunctor> hom_functors(const CatId& cat, std::size_t max_carrier) {
  std::vector<SquareFunctor> out;
  for (const auto& w : enumerate_objects(cat, max_carrier))
    if (w.carrier().size() <= max_carrier) out.push_back(hom_functor(w));
  return out;
}

CheckResult c01_empty_square_check() {
  auto a = CatObject::set(FinSet::range(2));
  auto b = CatObject::set(FinSet{Label(0)}), bp = CatObject::set(FinSet{Label(1)});
  auto sq = intersection_square(CatMorphism::from_map(b, a, FinMap::inclusion(b.carrier(), a.carrier())),
                                CatMorphism::from_map(bp, a, FinMap::inclusion(bp.carrier(), a.carrier())));
  auto rep = verify_absolute_pullback(sq, engine_functor(make_builtin("c01")));
  if (rep.pass) return fail("C01 preserved the intersection of the coproduct injections", "");
  if (rep.splittable) return fail("the empty-intersection square was reported splittable", "");
  return pass("failure reported as expected", {{"failure", rep.failure}});
}

// ---------------------------------------------------------------- assembly

std::uint64_t guard_of(const SuiteConfig& cfg) { return cfg.guard ? *cfg.guard : default_guard(); }

std::vector<CorpusEntry> corpus_of(const SuiteConfig& cfg) {
  return load_corpus(cfg.corpus.empty() ? default_corpus_dir() : cfg.corpus);
}

void add_grades(std::vector<Task>& tasks, const SuiteConfig& cfg) {
  const auto size = cfg.size.value_or(default_bounds("grades").size);
  for (const auto& inst : standard_instances()) {
    const auto bound = instance_bound(inst.cat, size);
    tasks.push_back({"grades/" + inst.id + "/axioms", [cat = inst.cat, bound] { return grade_axioms_check(cat, bound); }});
    tasks.push_back(
        {"grades/" + inst.id + "/invertibility", [cat = inst.cat, bound] { return invertibility_check(cat, bound); }});
  }
}

void add_limits(std::vector<Task>& tasks, const SuiteConfig& cfg) {
  const auto b = default_bounds("limits");
  const auto dim = cfg.size.value_or(b.size), depth = cfg.depth.value_or(b.depth);
  tasks.push_back({"limits/independence-index", [=] { return independence_check(dim, depth, false); }});
  tasks.push_back({"limits/mono-index", [=] { return independence_check(dim, depth, true); }});
}

void add_counterexamples(std::vector<Task>& tasks, const SuiteConfig& cfg) {
  const auto depth = cfg.depth.value_or(default_bounds("counterexamples").depth);
  for (auto c : {BuiltinChain::CyclicGroups, BuiltinChain::UnaryCycles})
    tasks.push_back({"counterexamples/" + to_string(c), [=] { return counterexample_check(c, depth); }});
}

void add_functor_classify(std::vector<Task>& tasks, const SuiteConfig& cfg, const std::vector<CorpusEntry>& corpus) {
  const auto n = cfg.size.value_or(default_bounds("functor-classify").size);
  const auto small = std::min<std::size_t>(n, 3);
  const auto guard = guard_of(cfg);
  for (const auto& e : corpus) {
    const std::string base = "functor-classify/" + stem(e.file) + "/";
    tasks.push_back({base + "engine", [=, s = e.spec] { return engine_check(s, guard, small); }});
    tasks.push_back({base + "distinguished", [=, s = e.spec] { return distinguished_check(s, guard, small); }});
    tasks.push_back({base + "intersections", [=, s = e.spec] { return intersections_check(s, guard, small); }});
    tasks.push_back({base + "trichotomy", [=, s = e.spec] { return trichotomy_check(s, guard, n, small); }});
  }
  tasks.push_back({"functor-classify/evconst", [] { return evseq_check(); }});
}

void add_adjoint(std::vector<Task>& tasks, const SuiteConfig& cfg, const std::vector<CorpusEntry>& corpus) {
  const auto size = cfg.size.value_or(default_bounds("adjoint").size);
  const auto guard = guard_of(cfg);
  for (const auto& e : corpus)
    tasks.push_back({"adjoint/least-subobject/" + stem(e.file), [=, s = e.spec] { return least_subobject_check(s, guard, size); }});
  const auto k_bound = std::min<std::size_t>(size, 3);
  tasks.push_back({"adjoint/subobject-colimit/set", [=] { return colimit_check(CatId::set(), k_bound, 3); }});
  tasks.push_back({"adjoint/subobject-colimit/pos", [=] { return colimit_check(CatId::pos(), k_bound, 3); }});
}

// The literal step bound: fewer descent steps than the initial grade.
CheckResult literal_trace_bound(const std::vector<CheckResult>& results) {
  std::size_t violations = 0;
  std::string witness;
  for (const auto& r : results) {
    if (r.id.rfind("adjoint/least-subobject/", 0) != 0 || !r.details.contains("literal_bound_violations")) continue;
    const auto v = r.details["literal_bound_violations"].get<std::size_t>();
    violations += v;
    if (v && witness.empty()) witness = r.id.substr(24) + ": " + r.details["literal_bound_witness"].get<std::string>();
  }
  if (violations)
    return fail(std::to_string(violations) + " descents need at least as many steps as the initial grade", witness,
                {{"violations", violations}});
  return pass("every descent takes fewer steps than the initial grade", {{"violations", 0}});
}

void add_absolute(std::vector<Task>& tasks, const SuiteConfig& cfg, const std::vector<CorpusEntry>& corpus) {
  const auto size = cfg.size.value_or(default_bounds("absolute").size);
  const auto guard = guard_of(cfg);
  const auto vec_bound = instance_bound(CatId::vec(2), size);
  tasks.push_back({"absolute/splittings/set", [=] { return splitting_check(CatId::set(), size); }});
  tasks.push_back({"absolute/splittings/pointed", [=] { return splitting_check(CatId::pointed(), size); }});
  tasks.push_back({"absolute/splittings/vec2", [=] { return splitting_check(CatId::vec(2), vec_bound); }});
  const std::size_t w_max = 3;
  tasks.push_back({"absolute/hom/set", [=] {
                     return absolute_check(splittable_squares(CatId::set(), size), hom_functors(CatId::set(), w_max));
                   }});
  tasks.push_back({"absolute/hom/pointed", [=] {
                     return absolute_check(splittable_squares(CatId::pointed(), size),
                                           hom_functors(CatId::pointed(), w_max));
                   }});
  tasks.push_back({"absolute/hom/vec2", [=] {
                     return absolute_check(splittable_squares(CatId::vec(2), vec_bound), hom_functors(CatId::vec(2), w_max));
                   }});
  for (const auto& e : corpus)
    tasks.push_back({"absolute/engine/" + stem(e.file), [=, s = e.spec] {
                       return absolute_check(splittable_squares(CatId::set(), size), {engine_functor(s.instantiate(guard))});
                     }});
  tasks.push_back({"absolute/c01-empty-square", [] { return c01_empty_square_check(); }});
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"grades", "limits", "functor-classify", "adjoint", "absolute",
                                              "counterexamples", "all"};
  return names;
}

SuiteBounds default_bounds(const std::string& suite) {
  if (suite == "grades") return {3, 0};
  if (suite == "limits") return {5, 8};
  if (suite == "functor-classify") return {4, 0};
  if (suite == "adjoint") return {4, 0};
  if (suite == "absolute") return {4, 0};
  if (suite == "counterexamples") return {0, 20};
  return {0, 0};
}

std::vector<NamedInstance> standard_instances() {
  return {{"set", CatId::set()},
          {"pointed", CatId::pointed()},
          {"pos", CatId::pos()},
          {"bool", CatId::boolean()},
          {"vec2", CatId::vec(2)},
          {"mset-z2", CatId::mset(Monoid::cyclic(2))},
          {"mset-idempotent", CatId::mset(Monoid::idempotent())},
          {"omega-rel-2", CatId::omega_rel({2})}};
}

std::size_t instance_bound(const CatId& cat, std::size_t size) {
  if (cat.kind() == CatKind::Vec) return size > 1 ? size - 1 : size;
  return size;
}

Report run_suite(const SuiteConfig& cfg, const std::string& command) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.name) == names.end())
    throw SpecError(ExitStatus::SchemaError, "suite.name", "unknown suite '" + cfg.name + "'");
  const bool all = cfg.name == "all";
  auto wants = [&](const char* s) { return all || cfg.name == s; };

  std::vector<CorpusEntry> corpus;
  if (wants("functor-classify") || wants("adjoint") || wants("absolute")) corpus = corpus_of(cfg);

  // Under "all", each suite keeps its own default bounds.
  std::vector<Task> tasks;
  if (wants("grades")) add_grades(tasks, cfg);
  if (wants("limits")) add_limits(tasks, cfg);
  if (wants("counterexamples")) add_counterexamples(tasks, cfg);
  if (wants("functor-classify")) add_functor_classify(tasks, cfg, corpus);
  if (wants("adjoint")) add_adjoint(tasks, cfg, corpus);
  if (wants("absolute")) add_absolute(tasks, cfg, corpus);

  auto results = run_checks(std::move(tasks), cfg.jobs);
  Report rep;
  rep.command = command;
  if (wants("adjoint")) results.push_back(run_check("adjoint/least-subobject-steps-below-initial-grade",
                                                    [&] { return literal_trace_bound(results); }));
  for (auto& r : results) rep.add(std::move(r));
  return rep;
}

// ---------------------------------------------------------------- single-spec commands

Report grade_command(const CatObject& a, const std::string& command) {
  Report rep;
  rep.command = command;
  rep.add(run_check("grade/value", [&] {
    return pass(a.cat().name() + " object of grade " + std::to_string(grade(a).value),
                {{"grade", grade(a).value}, {"category", a.cat().name()}});
  }));
  rep.add(run_check("grade/axioms", [&] {
    auto r = verify_grade_axioms(a);
    json d{{"subobjects", r.subobjects_checked}, {"quotients", r.quotients_checked}};
    if (!r.pass) return fail("grade axiom violated", r.failure, d);
    return pass("proper subobjects and strong quotients have smaller grade", d);
  }));
  return rep;
}

Report classify_command(const FunctorSpec& f, std::size_t n, std::uint64_t guard, const std::string& command) {
  Report rep;
  rep.command = command;
  const std::size_t small = std::min<std::size_t>(n, 3);
  rep.add(run_check("classify/trichotomy", [&] { return trichotomy_check(f, guard, n, small); }));
  rep.add(run_check("classify/distinguished", [&] {
    auto h = f.instantiate(guard);
    json per = json::object();
    for (std::size_t k = 0; k <= small; ++k) {
      json list = json::array();
      for (const auto& v : distinguished_elements(*h, FinSet::range(k))) list.push_back(label_to_json(v));
      per[std::to_string(k)] = list;
    }
    return pass("distinguished elements at sizes <= " + std::to_string(small), {{"by_size", per}});
  }));
  rep.add(run_check("classify/sizes", [&] {
    auto h = f.instantiate(guard);
    json sizes = json::array();
    for (std::size_t k = 0; k <= n; ++k) sizes.push_back(h->obj(FinSet::range(k)).size());
    return pass("|H(k)| for k = 0.." + std::to_string(n) + ": " + sizes.dump(), {{"sizes", sizes}});
  }));
  return rep;
}

Report chain_command(const ChainSpec& c, const std::string& command) {
  Report rep;
  rep.command = command;
  rep.add(run_check("chain/" + to_string(c.chain), [&] { return counterexample_check(c.chain, c.depth); }));
  return rep;
}

Report square_command(const SquareSpec& s, std::uint64_t guard, const std::string& command) {
  Report rep;
  rep.command = command;
  const auto& sq = s.square;
  rep.add(run_check("square/splittings", [&] {
    json d{{"intersection", sq.c.to_string()}};
    try {
      auto sp = compute_splittings(sq);
      auto chk = check_splittings(sq, sp);
      d["e"] = sp.e.to_string();
      d["e_prime"] = sp.ep.to_string();
      if (!chk.all()) return fail("splitting equations fail", sq.a.to_string(), d);
      return pass("split: e o m = id, e' o i' = id, e o m' = i o e'", d);
    } catch (const NoSplitting& e) {
      d["splittable"] = false;
      return pass(std::string("not splittable: ") + e.what(), d);
    }
  }));
  auto absolute = [&](const SquareFunctor& f) {
    auto r = verify_absolute_pullback(sq, f, s.max_apex);
    json d{{"functor", f.name}, {"splittable", r.splittable}, {"pairs", r.pairs}, {"max_apex", s.max_apex}};
    if (!r.pass) return fail("the functor does not preserve this intersection", r.failure, d);
    return pass("preserved for every apex of size <= " + std::to_string(s.max_apex), d);
  };
  if (s.functor) rep.add(run_check("square/absolute/functor", [&] { return absolute(engine_functor(s.functor->instantiate(guard))); }));
  if (s.hom) rep.add(run_check("square/absolute/hom", [&] { return absolute(hom_functor(*s.hom)); }));
  return rep;
}

}  // namespace gradcat
