#include "doctest.h"

#include "gradcat/error.hpp"
#include "gradcat/finset.hpp"
#include "gradcat/linalg.hpp"
#include "oracles.hpp"

using namespace gradcat;

TEST_CASE("labels order ints before strings before tuples") {
  CHECK(Label(5) < Label("a"));
  CHECK(Label("z") < Label::tuple({}));
  CHECK(Label::tuple({0, 1}) < Label::tuple({0, 2}));
  CHECK(Label::tuple({0}) < Label::tuple({0, 0}));
  CHECK(Label::tuple({"a", 1}).to_string() == "(a,1)");
}

TEST_CASE("finite sets are canonical") {
  FinSet a{Label("b"), Label("a")};
  FinSet b{Label("a"), Label("b")};
  CHECK(a == b);
  CHECK(a[0] == Label("a"));
  CHECK_THROWS_AS(FinSet({Label(1), Label(1)}), ContractViolation);
  CHECK_THROWS_AS(a.index_of(Label("c")), ContractViolation);
}

TEST_CASE("maps validate their tables") {
  FinSet x = FinSet::range(2), y = FinSet::range(3);
  CHECK_THROWS_AS(FinMap(x, y, {0}), ContractViolation);
  CHECK_THROWS_AS(FinMap(x, y, {0, 3}), ContractViolation);
  FinMap f(x, y, {2, 0});
  CHECK(f(Label(0)) == Label(2));
  CHECK(f.is_injective());
  CHECK_FALSE(f.is_surjective());
}

TEST_CASE("composition is associative and unital up to size 3") {
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (std::size_t c = 0; c <= 2; ++c) {
        FinSet x = FinSet::range(a), y = FinSet::range(b), z = FinSet::range(c), w = FinSet::range(2);
        auto fs = all_maps(x, y);
        auto gs = all_maps(y, z);
        auto hs = all_maps(z, w);
        for (const auto& f : fs) {
          CHECK(compose(FinMap::identity(y), f) == f);
          CHECK(compose(f, FinMap::identity(x)) == f);
          for (const auto& g : gs)
            for (const auto& h : hs) REQUIRE(compose(compose(h, g), f) == compose(h, compose(g, f)));
        }
      }
}

TEST_CASE("composition is associative for carriers of size 4") {
  FinSet x = FinSet::range(4);
  auto maps = all_maps(x, x);
  // Every 17th map keeps the triple loop small while covering the range.
  for (std::size_t i = 0; i < maps.size(); i += 17)
    for (std::size_t j = 0; j < maps.size(); j += 19)
      for (std::size_t k = 0; k < maps.size(); k += 23)
        REQUIRE(compose(compose(maps[i], maps[j]), maps[k]) == compose(maps[i], compose(maps[j], maps[k])));
}

TEST_CASE("product") {
  auto p = product({FinSet{Label("a"), Label("b")}, FinSet::range(2)});
  CHECK(p.apex.size() == 4);
  CHECK(p.legs.size() == 2);
  auto t = product({});
  CHECK(t.apex.size() == 1);
  CHECK(t.legs.empty());
  auto u = product({FinSet{Label("a")}});
  CHECK(u.apex.size() == 1);
  CHECK(u.legs[0].is_bijective());
}

TEST_CASE("coproduct") {
  auto c = coproduct({FinSet{Label("*")}, FinSet{Label("*")}});
  CHECK(c.apex.size() == 2);
  CHECK(c.legs[0].at(0) != c.legs[1].at(0));
  CHECK(coproduct({FinSet(), FinSet{Label("a")}}).apex.size() == 1);
  CHECK(coproduct({FinSet{Label("a"), Label("b")}, FinSet{Label("a")}}).apex.size() == 3);
}

TEST_CASE("product and coproduct are universal against small test cones") {
  FinSet x = FinSet::range(2), y = FinSet::range(3);
  auto p = product({x, y});
  auto c = coproduct({x, y});
  for (std::size_t u = 0; u <= 3; ++u) {
    FinSet apex = FinSet::range(u);
    for (const auto& f : all_maps(apex, x))
      for (const auto& g : all_maps(apex, y)) {
        int mediators = 0;
        for (const auto& h : all_maps(apex, p.apex))
          if (compose(p.legs[0], h) == f && compose(p.legs[1], h) == g) ++mediators;
        REQUIRE(mediators == 1);
      }
    for (const auto& f : all_maps(x, apex))
      for (const auto& g : all_maps(y, apex)) {
        int mediators = 0;
        for (const auto& h : all_maps(c.apex, apex))
          if (compose(h, c.legs[0]) == f && compose(h, c.legs[1]) == g) ++mediators;
        REQUIRE(mediators == 1);
      }
  }
}

TEST_CASE("equalizer") {
  FinSet x{Label(1), Label(2), Label(3)}, y = FinSet::range(2);
  auto e = equalizer(FinMap(x, y, {0, 1, 0}), FinMap(x, y, {0, 0, 0}));
  CHECK(e.object == FinSet{Label(1), Label(3)});
  CHECK(e.inclusion.is_injective());
  FinSet ab{Label("a"), Label("b")};
  auto e2 = equalizer(FinMap::identity(ab), FinMap::constant(ab, ab, 0));
  CHECK(e2.object == FinSet{Label("a")});
  auto e3 = equalizer(FinMap::identity(ab), FinMap::identity(ab));
  CHECK(e3.object == ab);
  CHECK_THROWS_AS(equalizer(FinMap::identity(ab), FinMap(ab, y, {0, 0})), ContractViolation);
}

TEST_CASE("pullback") {
  FinSet ab{Label("a"), Label("b")};
  auto pb = pullback(FinMap::inclusion(FinSet{Label("a")}, ab), FinMap::inclusion(FinSet{Label("b")}, ab));
  CHECK(pb.object.empty());
  auto diag = pullback(FinMap::identity(ab), FinMap::identity(ab));
  CHECK(diag.object.size() == 2);
  FinSet one{Label("x")};
  auto two = pullback(FinMap::constant(FinSet{Label(1), Label(2)}, one, 0), FinMap::constant(FinSet{Label(3)}, one, 0));
  CHECK(two.object.size() == 2);
  CHECK_THROWS_AS(pullback(FinMap::identity(ab), FinMap::identity(one)), ContractViolation);
}

TEST_CASE("pullback of monos is the intersection of images, all subsets up to size 5") {
  for (std::size_t n = 0; n <= 5; ++n) {
    FinSet b = FinSet::range(n);
    auto subs = subsets(b);
    for (const auto& s : subs)
      for (const auto& t : subs) {
        auto pb = pullback(FinMap::inclusion(s, b), FinMap::inclusion(t, b));
        auto inter = set_intersection(s, t);
        REQUIRE(pb.object.size() == inter.size());
        REQUIRE(compose(FinMap::inclusion(s, b), pb.left).image() == inter);
      }
  }
}

TEST_CASE("pullback is universal against test cones") {
  FinSet x = FinSet::range(3), y = FinSet::range(2), z = FinSet::range(2);
  FinMap f(x, z, {0, 1, 1}), g(y, z, {1, 0});
  auto pb = pullback(f, g);
  for (std::size_t u = 0; u <= 2; ++u) {
    FinSet apex = FinSet::range(u);
    for (const auto& p : all_maps(apex, x))
      for (const auto& q : all_maps(apex, y)) {
        if (!(compose(f, p) == compose(g, q))) continue;
        int mediators = 0;
        for (const auto& h : all_maps(apex, pb.object))
          if (compose(pb.left, h) == p && compose(pb.right, h) == q) ++mediators;
        REQUIRE(mediators == 1);
      }
  }
}

TEST_CASE("factorization") {
  FinSet ab{Label("a"), Label("b")}, ot{Label(1), Label(2)};
  auto c = factorize(FinMap::constant(ot, ab, 0));
  CHECK(c.epi.cod() == FinSet{Label("a")});
  auto inj = factorize(FinMap(ot, ab, {1, 0}));
  CHECK(inj.epi.is_bijective());
  FinSet three{Label(1), Label(2), Label(3)};
  auto f = FinMap(three, ab, {0, 0, 1});
  auto fac = factorize(f);
  CHECK(fac.epi.cod() == ab);
  CHECK_FALSE(fac.epi.is_injective());
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (const auto& h : all_maps(FinSet::range(a), FinSet::range(b))) {
        auto fc = factorize(h);
        REQUIRE(compose(fc.mono, fc.epi) == h);
        REQUIRE(fc.epi.is_surjective());
        REQUIRE(fc.mono.is_injective());
        REQUIRE(h.is_injective() == fc.epi.is_bijective());
        REQUIRE(h.is_surjective() == fc.mono.is_bijective());
      }
}

TEST_CASE("enumeration helpers") {
  CHECK(subsets(FinSet::range(3)).size() == 8);
  CHECK(subsets(FinSet::range(3))[1] == FinSet{Label(0)});
  for (std::size_t n = 0; n <= 5; ++n) CHECK(partitions(n).size() == oracle::bell(n));
  CHECK(count_maps(0, 0) == 1);
  CHECK(all_maps(FinSet::range(2), FinSet()).empty());
  auto q = quotient_map(FinSet{Label("a"), Label("b"), Label("c")}, {0, 1, 0});
  CHECK(q.cod() == FinSet{Label("a"), Label("b")});
}

TEST_CASE("rref, rank and null space over GF(2) and GF(3)") {
  Matrix m(2, 3, 2, {1, 1, 0, 0, 1, 1});
  CHECK(rank(m) == 2);
  auto ns = null_space(m);
  REQUIRE(ns.size() == 1);
  CHECK(m.apply(ns[0]) == std::vector<int>{0, 0});
  Matrix t(2, 2, 3, {1, 2, 2, 1});
  CHECK(rank(t) == 1);
  auto inv = inverse(Matrix(2, 2, 3, {1, 1, 0, 1}));
  REQUIRE(inv);
  CHECK(*inv * Matrix(2, 2, 3, {1, 1, 0, 1}) == Matrix::identity(2, 3));
  CHECK_FALSE(inverse(t));
}

TEST_CASE("rank agrees with an independent elimination on all 3x3 GF(2) matrices") {
  for (std::size_t code = 0; code < 512; ++code) {
    std::vector<int> d(9);
    for (std::size_t k = 0; k < 9; ++k) d[k] = static_cast<int>(code >> k & 1U);
    Matrix m(3, 3, 2, d);
    std::vector<std::vector<int>> rows{{d[0], d[1], d[2]}, {d[3], d[4], d[5]}, {d[6], d[7], d[8]}};
    REQUIRE(rank(m) == oracle::rank(rows, 2));
  }
}

TEST_CASE("subspace enumeration matches Gaussian binomials") {
  for (int p : {2, 3})
    for (std::size_t n = 0; n <= 3; ++n) {
      std::uint64_t expected = 0;
      for (std::size_t k = 0; k <= n; ++k) expected += oracle::gaussian_binomial(n, k, static_cast<std::uint64_t>(p));
      CHECK(all_rref_subspaces(n, p).size() == expected);
    }
}

TEST_CASE("solve, basis extension and intersections") {
  Matrix a = Matrix::from_columns(3, {{1, 0, 0}, {0, 1, 0}}, 2);
  auto x = solve(a, {1, 1, 0});
  REQUIRE(x);
  CHECK(*x == std::vector<int>{1, 1});
  CHECK_FALSE(solve(a, {0, 0, 1}));
  auto ext = extend_to_basis({{1, 1, 0}}, 3, 2);
  CHECK(ext == std::vector<std::vector<int>>{{1, 0, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(extend_to_basis({{1, 1}, {1, 1}}, 2, 2), ContractViolation);
  Matrix b = Matrix::from_columns(3, {{0, 1, 0}, {0, 0, 1}}, 2);
  auto inter = intersect_column_spaces(a, b);
  CHECK(inter == std::vector<std::vector<int>>{{0, 1, 0}});
}
