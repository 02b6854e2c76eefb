#include "gradcat/chain.hpp"

#include "gradcat/error.hpp"

namespace gradcat {

ChainSegment ChainSegment::make(std::vector<CatObject> objects, std::vector<CatMorphism> connecting) {
  if (objects.empty()) throw ContractViolation("chain: at least one object required");
  if (connecting.size() + 1 != objects.size())
    throw ContractViolation("chain: need exactly one connecting map per consecutive pair");
  const CatId cat = objects.front().cat();
  for (const auto& o : objects)
    if (!(o.cat() == cat)) throw ContractViolation("chain: objects from different instances");
  for (std::size_t k = 0; k < connecting.size(); ++k) {
    if (!(connecting[k].src() == objects[k + 1]) || !(connecting[k].dst() == objects[k]))
      throw ContractViolation("chain: connecting map " + std::to_string(k) + " must go L_" +
                              std::to_string(k + 1) + " -> L_" + std::to_string(k));
  }
  return ChainSegment{cat, std::move(objects), std::move(connecting)};
}

CatMorphism ChainSegment::connecting_map(std::size_t i, std::size_t j) const {
  if (i > j || j > depth()) throw ContractViolation("chain: connecting_map needs i <= j <= depth");
  CatMorphism acc = CatMorphism::identity(objects[j]);
  for (std::size_t k = j; k > i; --k) acc = compose(connecting[k - 1], acc);
  return acc;
}

ChainSegment ChainSegment::truncate(std::size_t d) const {
  if (d > depth()) throw ContractViolation("chain: truncation deeper than the chain");
  return ChainSegment{cat, {objects.begin(), objects.begin() + static_cast<long>(d + 1)},
                      {connecting.begin(), connecting.begin() + static_cast<long>(d)}};
}

bool ConeFamily::compatible_with(const ChainSegment& chain) const {
  if (legs.size() != chain.objects.size()) return false;
  for (std::size_t k = 0; k < legs.size(); ++k) {
    if (!(legs[k].src() == apex) || !(legs[k].dst() == chain.objects[k])) return false;
    if (k + 1 < legs.size() && !(compose(chain.connecting[k], legs[k + 1]).map() == legs[k].map())) return false;
  }
  return true;
}

ConeFamily ConeFamily::truncate(std::size_t d) const {
  if (d + 1 > legs.size()) throw ContractViolation("cone: truncation deeper than the cone");
  return ConeFamily{apex, {legs.begin(), legs.begin() + static_cast<long>(d + 1)}};
}

MonoIndexResult mono_index(const ChainSegment& chain, const ConeFamily& cone) {
  if (!cone.compatible_with(chain)) throw ContractViolation("mono_index: cone is not compatible with the chain");
  MonoIndexResult res;
  for (std::size_t k = 0; k < cone.legs.size(); ++k) {
    const auto& t = cone.legs[k].map().table();
    std::vector<std::size_t> first_hit(chain.objects[k].carrier().size(), SIZE_MAX);
    std::optional<MergedPair> merged;
    for (std::size_t x = 0; x < t.size() && !merged; ++x) {
      if (first_hit[t[x]] == SIZE_MAX) first_hit[t[x]] = x;
      else merged = MergedPair{k, first_hit[t[x]], x};
    }
    if (!merged) {
      res.index = k;
      return res;
    }
    res.witnesses.push_back(*merged);
  }
  return res;
}

IndependenceResult find_independence_index(const ChainSegment& chain,
                                           const std::vector<std::vector<int>>& vectors,
                                           const ConeFamily& cone) {
  if (chain.cat.kind() != CatKind::Vec) throw ContractViolation("find_independence_index: chain must live in Vec");
  if (!cone.compatible_with(chain)) throw ContractViolation("find_independence_index: incompatible cone");
  const int p = chain.cat.prime();
  for (const auto& v : vectors)
    if (v.size() != cone.apex.dim()) throw ContractViolation("find_independence_index: vector length differs from apex dimension");
  if (rank_of(vectors, p) != vectors.size())
    throw ContractViolation("find_independence_index: input vectors are linearly dependent");

  IndependenceResult res;
  // Independence at level k implies independence at every deeper level, so
  // the level found for the first j vectors is a lower bound for j+1.
  std::size_t level = 0;
  std::vector<std::vector<int>> images;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    while (level <= chain.depth()) {
      images.clear();
      for (std::size_t i = 0; i <= j; ++i) images.push_back(cone.legs[level].matrix().apply(vectors[i]));
      if (rank_of(images, p) == j + 1) break;
      ++level;
    }
    if (level > chain.depth()) return res;
    res.prefix_levels.push_back(level);
  }
  res.index = level;
  return res;
}

std::optional<BuiltinChain> builtin_chain_from_name(const std::string& name) {
  if (name == "ab-mod2k") return BuiltinChain::CyclicGroups;
  if (name == "un-cycles") return BuiltinChain::UnaryCycles;
  return std::nullopt;
}

std::string to_string(BuiltinChain c) { return c == BuiltinChain::CyclicGroups ? "ab-mod2k" : "un-cycles"; }

CounterexampleReport verify_counterexample_chain(BuiltinChain chain, std::size_t depth, std::uint64_t guard) {
  if (depth < 1) throw ContractViolation("counterexample chain: depth must be at least 1");
  if (depth > 61) throw ContractViolation("counterexample chain: depth exceeds 61 (64-bit apex)");
  std::uint64_t work = 0;
  for (std::size_t k = 2; k <= depth; ++k) work += std::uint64_t{1} << k;
  if (work > guard) throw ResourceError("counterexample chain: pointwise checks", guard);

  CounterexampleReport rep;
  rep.chain = chain;
  rep.depth = depth;

  // Level k is Z/2^k (group or cycle); the connecting map is reduction.
  // Cyclic groups: a map preserving 0 and commuting with +1 is additive.
  // Cycles: commuting with the successor is the whole structure.
  for (std::size_t k = 1; k < depth; ++k) {
    const std::uint64_t big = std::uint64_t{1} << (k + 1), small = std::uint64_t{1} << k;
    auto d = [small](std::uint64_t x) { return x % small; };
    if (chain == BuiltinChain::CyclicGroups && d(0) != 0) {
      rep.connecting_homomorphisms = false;
      rep.failure = "connecting map at level " + std::to_string(k) + " moves 0";
    }
    for (std::uint64_t x = 0; x < big; ++x) {
      if (d((x + 1) % big) != (d(x) + 1) % small) {
        rep.connecting_homomorphisms = false;
        if (rep.failure.empty())
          rep.failure = "connecting map at level " + std::to_string(k) + " fails at " + std::to_string(x);
        break;
      }
    }
    ++rep.connecting_checked;
  }

  auto leg = [](std::size_t k, std::int64_t n) {
    const std::int64_t m = std::int64_t{1} << k;
    return ((n % m) + m) % m;
  };
  for (std::size_t k = 1; k <= depth; ++k) {
    const std::int64_t top = std::int64_t{1} << k;
    if (k < depth) {
      for (std::int64_t n : {std::int64_t{-3}, std::int64_t{-1}, std::int64_t{0}, std::int64_t{1}, top - 1, top, 2 * top + 1})
        if (leg(k + 1, n) % top != leg(k, n)) rep.legs_compatible = false;
    }
    const std::int64_t a = leg(k, 0), b = leg(k, top);
    if (a == b) rep.witnesses.push_back({k, 0, top, a});
    else ++rep.monic_legs;
  }
  if (!rep.legs_compatible && rep.failure.empty()) rep.failure = "legs are not compatible with reduction";
  return rep;
}

}  // namespace gradcat
