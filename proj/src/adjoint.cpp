#include "gradcat/adjoint.hpp"

#include <algorithm>
#include <map>

#include "gradcat/error.hpp"

namespace gradcat {

// ---------------------------------------------------------------- least subobjects

bool factors_through(const SetFunctor& h, const FinSet& k, const Label& x, const FinSet& m) {
  FinMap hm = h.mor(FinMap::inclusion(m, k));
  auto target = hm.cod().find(x);
  if (!target) throw ContractViolation("least_fp_subobject: element " + x.to_string() + " is not in H K");
  for (auto v : hm.table())
    if (v == *target) return true;
  return false;
}

namespace {

bool intersections_preserved_in(const SetFunctor& h, const FinSet& k, std::string& witness) {
  auto subs = subsets(k);
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      auto r = check_intersection(h, k, subs[i], subs[j]);
      if (!r.preserved) {
        witness = r.witness;
        return false;
      }
    }
  return true;
}

}  // namespace

LeastFactorResult least_fp_subobject(const SetFunctor& h, const FinSet& k, const Label& x, LeastMethod method,
                                     WitnessOrder order) {
  LeastFactorResult res;
  res.method = method;
  auto subs = subsets(k);
  if (method == LeastMethod::BruteForce) {
    std::vector<FinSet> witnesses;
    for (const auto& s : subs) {
      ++res.witnesses_examined;
      if (factors_through(h, k, x, s)) witnesses.push_back(s);
    }
    for (const auto& w : witnesses) {
      bool below_all = std::all_of(witnesses.begin(), witnesses.end(), [&](const FinSet& o) { return is_subset(w, o); });
      if (below_all) {
        res.subset = w;
        return res;
      }
    }
    throw ContractViolation("least_fp_subobject: " + x.to_string() + " has no least subset of " + k.to_string() +
                            " through which it factors");
  }

  std::string why;
  if (!intersections_preserved_in(h, k, why))
    throw ModeNotSound("grade descent needs '" + h.name() + "' to preserve intersections in " + k.to_string() +
                       " (" + why + "); use brute force");
  if (order == WitnessOrder::LargestFirst) std::reverse(subs.begin(), subs.end());

  FinSet current = k;
  while (true) {
    std::optional<FinSet> next;
    for (const auto& w : subs) {
      if (is_subset(current, w)) continue;
      ++res.witnesses_examined;
      if (factors_through(h, k, x, w)) {
        next = set_intersection(current, w);
        break;
      }
    }
    if (!next) break;
    if (!factors_through(h, k, x, *next))
      throw TheoremViolation("grade descent: " + x.to_string() + " does not factor through the intersection " +
                             next->to_string());
    res.trace.push_back(*next);
    current = *next;
  }
  res.subset = current;
  return res;
}

FinSet least_fp_subobject_of(const SetFunctor& h, const FinSet& k, const std::vector<Label>& xs, LeastMethod method) {
  FinSet acc;
  for (const auto& x : xs) acc = set_union(acc, least_fp_subobject(h, k, x, method).subset);
  return acc;
}

// ---------------------------------------------------------------- subobject diagram

namespace {

std::size_t size_measure(const CatObject& k) {
  switch (k.cat().kind()) {
    case CatKind::Bool: return k.atoms().size();
    case CatKind::Vec: return k.dim();
    default: return k.carrier().size();
  }
}

using Table = std::vector<std::size_t>;

std::vector<Table> hom_tables(const CatObject& a, const CatObject& b) {
  std::vector<Table> out;
  for_each_hom(a, b, [&](const FinMap& f) {
    out.push_back(f.table());
    return true;
  });
  return out;
}

}  // namespace

SubobjectDiagram canonical_subobject_diagram(const CatObject& k) {
  SubobjectDiagram d;
  d.object = k;
  auto objects = enumerate_objects(k.cat(), size_measure(k));

  struct Arrow {
    std::size_t object;
    Table table;
    std::size_t node;
  };
  std::vector<Arrow> arrows;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    for_each_hom(objects[o], k, [&](const FinMap& f) {
      auto fac = factorize_in_cat(CatMorphism::from_map(objects[o], k, f));
      std::size_t node = d.nodes.size();
      for (std::size_t n = 0; n < d.nodes.size(); ++n)
        if (same_subobject(d.nodes[n], fac.mono)) {
          node = n;
          break;
        }
      if (node == d.nodes.size()) d.nodes.push_back(fac.mono);
      arrows.push_back({o, f.table(), node});
      return true;
    });
  }
  d.arrows = arrows.size();

  // Node-to-node inclusions on carriers, where they exist as morphisms.
  const std::size_t nn = d.nodes.size();
  std::vector<std::optional<FinMap>> incl(nn * nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) {
      if (!subobject_leq(d.nodes[i], d.nodes[j])) continue;
      std::vector<std::size_t> back(k.carrier().size(), SIZE_MAX);
      const auto& tj = d.nodes[j].map().table();
      for (std::size_t x = 0; x < tj.size(); ++x) back[tj[x]] = x;
      Table t;
      for (auto v : d.nodes[i].map().table()) t.push_back(back[v]);
      incl[i * nn + j] = FinMap(d.nodes[i].src().carrier(), d.nodes[j].src().carrier(), std::move(t));
      if (i != j) {
        d.edges.emplace_back(i, j);
        d.edge_maps.push_back(CatMorphism::from_map(d.nodes[i].src(), d.nodes[j].src(), *incl[i * nn + j]));
      }
    }

  // Comma-category morphisms f: (A, a) -> (B, b) with b f = a, and their fill-ins.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Table>> homs;
  std::vector<char> fill_checked(nn * nn, 0);
  for (const auto& a : arrows)
    for (const auto& b : arrows) {
      auto key = std::make_pair(a.object, b.object);
      auto it = homs.find(key);
      if (it == homs.end()) it = homs.emplace(key, hom_tables(objects[a.object], objects[b.object])).first;
      for (const auto& f : it->second) {
        bool commutes = true;
        for (std::size_t x = 0; x < f.size() && commutes; ++x) commutes = b.table[f[x]] == a.table[x];
        if (!commutes) continue;
        ++d.connecting;
        const auto& fill = incl[a.node * nn + b.node];
        if (!fill)
          throw TheoremViolation("subobject diagram: no fill-in between the images of a connected pair");
        if (!fill_checked[a.node * nn + b.node]) {
          // m_b o f' = m_a, and f' preserves structure.
          auto composite = compose(d.nodes[b.node].map(), *fill);
          if (!(composite == d.nodes[a.node].map()) ||
              !is_homomorphism(d.nodes[a.node].src(), d.nodes[b.node].src(), *fill))
            throw TheoremViolation("subobject diagram: fill-in does not commute with the images");
          fill_checked[a.node * nn + b.node] = 1;
        }
        ++d.fill_ins;
      }
    }

  d.directed = nn > 0;
  for (std::size_t i = 0; i < nn && d.directed; ++i)
    for (std::size_t j = i + 1; j < nn && d.directed; ++j) {
      bool bound = false;
      for (std::size_t u = 0; u < nn && !bound; ++u) bound = incl[i * nn + u] && incl[j * nn + u];
      d.directed = bound;
    }
  return d;
}

ColimitReport verify_subobject_colimit(const SubobjectDiagram& d, const std::vector<CatObject>& tests) {
  ColimitReport rep;
  const std::size_t nn = d.nodes.size();
  // Assign larger nodes first so that compatibility prunes early.
  std::vector<std::size_t> order(nn);
  for (std::size_t i = 0; i < nn; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d.nodes[a].src().carrier().size() > d.nodes[b].src().carrier().size();
  });
  std::vector<std::vector<std::pair<std::size_t, const FinMap*>>> lower_edges(nn), upper_edges(nn);
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    upper_edges[d.edges[e].first].push_back({d.edges[e].second, &d.edge_maps[e].map()});
    lower_edges[d.edges[e].second].push_back({d.edges[e].first, &d.edge_maps[e].map()});
  }

  for (const auto& t : tests) {
    if (!(t.cat() == d.object.cat())) throw ContractViolation("verify_subobject_colimit: test object from another instance");
    ++rep.test_objects;
    std::vector<std::vector<Table>> choices(nn);
    for (std::size_t i = 0; i < nn; ++i) choices[i] = hom_tables(d.nodes[i].src(), t);
    auto mediators = hom_tables(d.object, t);

    std::vector<const Table*> assigned(nn, nullptr);
    std::function<void(std::size_t)> extend = [&](std::size_t pos) {
      if (!rep.pass) return;
      if (pos == nn) {
        ++rep.cocones;
        std::size_t count = 0;
        for (const auto& u : mediators) {
          bool ok = true;
          for (std::size_t i = 0; i < nn && ok; ++i) {
            const auto& mt = d.nodes[i].map().table();
            for (std::size_t x = 0; x < mt.size() && ok; ++x) ok = u[mt[x]] == (*assigned[i])[x];
          }
          if (ok) ++count;
        }
        if (count != 1) {
          rep.pass = false;
          rep.failure = "cocone into " + t.to_string() + " has " + std::to_string(count) + " mediating maps";
        }
        return;
      }
      const std::size_t node = order[pos];
      for (const auto& c : choices[node]) {
        bool ok = true;
        // c_j o incl = c_i for each edge i -> j with both ends assigned.
        for (const auto& [upper, map] : upper_edges[node]) {
          if (!assigned[upper] || !ok) continue;
          for (std::size_t x = 0; x < c.size() && ok; ++x) ok = (*assigned[upper])[map->at(x)] == c[x];
        }
        for (const auto& [lower, map] : lower_edges[node]) {
          if (!assigned[lower] || !ok) continue;
          const auto& lt = *assigned[lower];
          for (std::size_t x = 0; x < lt.size() && ok; ++x) ok = c[map->at(x)] == lt[x];
        }
        if (!ok) continue;
        assigned[node] = &c;
        extend(pos + 1);
        assigned[node] = nullptr;
        if (!rep.pass) return;
      }
    };
    extend(0);
    if (!rep.pass) return rep;
  }
  return rep;
}

// ---------------------------------------------------------------- squares and splittings

IntersectionSquare intersection_square(const CatMorphism& m, const CatMorphism& mp) {
  auto pb = pullback_of_monos(m, mp);
  IntersectionSquare sq{m.cat(), m.dst(), m.src(), mp.src(), pb.object, m, mp, pb.left, pb.right};
  if (!(compose(m, sq.i).map() == compose(mp, sq.ip).map()))
    throw TheoremViolation("intersection square does not commute");
  return sq;
}

namespace {

// Preimage under an injective table, or SIZE_MAX.
std::vector<std::size_t> preimages(const FinMap& f) {
  std::vector<std::size_t> back(f.cod().size(), SIZE_MAX);
  for (std::size_t x = 0; x < f.dom().size(); ++x) back[f.at(x)] = x;
  return back;
}

SplittingPair retraction_splittings(const IntersectionSquare& sq, std::size_t default_b, std::size_t default_c) {
  auto back_m = preimages(sq.m.map());
  auto back_ip = preimages(sq.ip.map());
  std::vector<std::size_t> e(sq.a.carrier().size()), ep(sq.bp.carrier().size());
  for (std::size_t x = 0; x < e.size(); ++x) e[x] = back_m[x] == SIZE_MAX ? default_b : back_m[x];
  for (std::size_t x = 0; x < ep.size(); ++x) ep[x] = back_ip[x] == SIZE_MAX ? default_c : back_ip[x];
  return {CatMorphism::from_map(sq.a, sq.b, FinMap(sq.a.carrier(), sq.b.carrier(), std::move(e))),
          CatMorphism::from_map(sq.bp, sq.c, FinMap(sq.bp.carrier(), sq.c.carrier(), std::move(ep)))};
}

Matrix columns_matrix(std::size_t rows, const std::vector<std::vector<int>>& cols, int p) {
  return Matrix::from_columns(rows, cols, p);
}

SplittingPair vector_splittings(const IntersectionSquare& sq) {
  const int p = sq.cat.prime();
  const std::size_t da = sq.a.dim(), db = sq.b.dim(), dbp = sq.bp.dim(), dc = sq.c.dim();
  const Matrix& m = sq.m.matrix();
  const Matrix& mp = sq.mp.matrix();
  const Matrix& i = sq.i.matrix();
  const Matrix& ip = sq.ip.matrix();

  // B = B0 + C and B' = B0' + C by basis extension in coordinate order.
  std::vector<std::vector<int>> c_in_b, c_in_bp;
  for (std::size_t k = 0; k < dc; ++k) {
    c_in_b.push_back(i.column(k));
    c_in_bp.push_back(ip.column(k));
  }
  auto b0 = extend_to_basis(c_in_b, db, p);
  auto b0p = extend_to_basis(c_in_bp, dbp, p);

  // A = C + B0 + B0' + A0.
  std::vector<std::vector<int>> basis;
  for (const auto& v : c_in_b) basis.push_back(m.apply(v));
  for (const auto& v : b0) basis.push_back(m.apply(v));
  for (const auto& v : b0p) basis.push_back(mp.apply(v));
  auto a0 = extend_to_basis(basis, da, p);
  basis.insert(basis.end(), a0.begin(), a0.end());
  auto pinv = inverse(columns_matrix(da, basis, p));
  if (!pinv) throw TheoremViolation("vector splitting: adapted basis of A is singular");

  // e: keep the C and B0 coordinates, read them back in B.
  Matrix keep_b(db, da, p);
  for (std::size_t k = 0; k < dc; ++k)
    for (std::size_t r = 0; r < db; ++r) keep_b.set(r, k, c_in_b[k][r]);
  for (std::size_t k = 0; k < b0.size(); ++k)
    for (std::size_t r = 0; r < db; ++r) keep_b.set(r, dc + k, b0[k][r]);
  Matrix e = keep_b * *pinv;

  // e': the C coordinates of B' = C + B0'.
  std::vector<std::vector<int>> bp_basis = c_in_bp;
  bp_basis.insert(bp_basis.end(), b0p.begin(), b0p.end());
  auto qinv = inverse(columns_matrix(dbp, bp_basis, p));
  if (!qinv) throw TheoremViolation("vector splitting: adapted basis of B' is singular");
  Matrix take_c(dc, dbp, p);
  for (std::size_t k = 0; k < dc; ++k) take_c.set(k, k, 1);
  Matrix ep = take_c * *qinv;

  return {CatMorphism::from_matrix(sq.a, sq.b, e), CatMorphism::from_matrix(sq.bp, sq.c, ep)};
}

}  // namespace

SplittingPair compute_splittings(const IntersectionSquare& sq) {
  switch (sq.cat.kind()) {
    case CatKind::SetP:
      return retraction_splittings(sq, sq.b.base(), sq.c.base());
    case CatKind::Set: {
      if (sq.c.carrier().empty())
        throw NoSplitting("Set square with empty intersection " + sq.b.carrier().to_string() + " and " +
                          sq.bp.carrier().to_string() + " has no splitting");
      // The least element of C serves as the default point.
      return retraction_splittings(sq, sq.i.map().at(0), 0);
    }
    case CatKind::Vec:
      return vector_splittings(sq);
    default:
      throw ContractViolation("compute_splittings: no splitting construction for " + sq.cat.name());
  }
}

SplittingCheck check_splittings(const IntersectionSquare& sq, const SplittingPair& sp) {
  SplittingCheck c;
  c.retracts_b = compose(sp.e, sq.m).map() == CatMorphism::identity(sq.b).map();
  c.retracts_c = compose(sp.ep, sq.ip).map() == CatMorphism::identity(sq.c).map();
  c.compatible = compose(sp.e, sq.mp).map() == compose(sq.i, sp.ep).map();
  return c;
}

SquareFunctor engine_functor(FunctorPtr h) {
  SquareFunctor f;
  f.name = h->name();
  f.obj = [h](const CatObject& o) {
    if (o.cat().kind() != CatKind::Set) throw ContractViolation("engine functors apply to Set squares only");
    return h->obj(o.carrier());
  };
  f.mor = [h](const CatMorphism& m) {
    if (m.cat().kind() != CatKind::Set) throw ContractViolation("engine functors apply to Set squares only");
    return h->mor(m.map());
  };
  return f;
}

SquareFunctor hom_functor(const CatObject& w) {
  SquareFunctor f;
  f.name = "hom(" + w.to_string() + ", -)";
  auto labels = [w](const CatObject& x) {
    std::vector<Label> out;
    for_each_hom(w, x, [&](const FinMap& g) {
      Label::Tuple t;
      for (auto v : g.table()) t.push_back(x.carrier()[v]);
      out.emplace_back(std::move(t));
      return true;
    });
    return FinSet(std::move(out));
  };
  f.obj = labels;
  f.mor = [labels](const CatMorphism& m) {
    return FinMap::from_fn(labels(m.src()), labels(m.dst()), [&](const Label& g) {
      Label::Tuple t;
      for (const auto& v : g.as_tuple()) t.push_back(m.map()(v));
      return Label(std::move(t));
    });
  };
  return f;
}

AbsolutenessReport verify_absolute_pullback(const IntersectionSquare& sq, const SquareFunctor& f, std::size_t max_apex) {
  AbsolutenessReport rep;
  std::optional<SplittingPair> sp;
  try {
    sp = compute_splittings(sq);
    rep.splittable = true;
  } catch (const NoSplitting&) {
    rep.splittable = false;
  }
  FinMap fm = f.mor(sq.m), fmp = f.mor(sq.mp), fi = f.mor(sq.i), fip = f.mor(sq.ip);
  std::optional<FinMap> fep;
  if (sp) fep = f.mor(sp->ep);

  // Commutative pairs at a single point, their mediators, and the candidate v.
  struct Point {
    std::size_t b, bp;
    std::vector<std::size_t> mediators;
    std::size_t candidate;
  };
  std::vector<Point> pts;
  for (std::size_t b = 0; b < fm.dom().size(); ++b)
    for (std::size_t bp = 0; bp < fmp.dom().size(); ++bp) {
      if (fm.at(b) != fmp.at(bp)) continue;
      Point pt{b, bp, {}, fep ? fep->at(bp) : SIZE_MAX};
      for (std::size_t c = 0; c < fi.dom().size(); ++c)
        if (fi.at(c) == b && fip.at(c) == bp) pt.mediators.push_back(c);
      pts.push_back(std::move(pt));
    }

  const std::string where = "square " + sq.b.to_string() + " & " + sq.bp.to_string() + " in " + sq.a.to_string() +
                            " under " + f.name + ": ";
  // A pair (u, u') from an apex U is a map U -> P, and its mediators are
  // chosen pointwise, so the pair has exactly one mediator iff every point it
  // hits does. Every point is hit by some map once |U| >= 1; U = {} always
  // has the empty mediator. Checking each point once is therefore exact.
  rep.apexes = max_apex + 1;
  std::size_t power = 1;
  for (std::size_t u = 0; u <= max_apex; ++u) {
    rep.pairs = rep.pairs > SIZE_MAX - power ? SIZE_MAX : rep.pairs + power;
    power = pts.empty() ? 0 : (power > SIZE_MAX / pts.size() ? SIZE_MAX : power * pts.size());
  }
  if (max_apex == 0) return rep;
  for (const auto& pt : pts) {
    const std::string at = "(" + fm.dom()[pt.b].to_string() + ", " + fmp.dom()[pt.bp].to_string() + ")";
    if (pt.mediators.size() != 1) {
      rep.pass = false;
      rep.failure = where + "apex of size 1 at " + at + " has " + std::to_string(pt.mediators.size()) +
                    " mediators, F does not preserve the pullback";
      break;
    }
    if (sp && pt.mediators.front() != pt.candidate) {
      rep.pass = false;
      rep.failure = where + "at " + at + " the map F e' o u' is not the unique mediator";
      break;
    }
  }
  return rep;
}

}  // namespace gradcat
