#pragma once

// Truncated omega^op chains L_0 <- L_1 <- ... <- L_N, cones into them, the
// monic-leg search, the independence-index search for GF(p) chains, and the
// two built-in chains whose legs are never monic.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradcat/category.hpp"

namespace gradcat {

struct ChainSegment {
  CatId cat;
  std::vector<CatObject> objects;       // L_0 .. L_N
  std::vector<CatMorphism> connecting;  // connecting[k]: L_{k+1} -> L_k

  // Validates object/morphism shapes and instance membership.
  static ChainSegment make(std::vector<CatObject> objects, std::vector<CatMorphism> connecting);

  std::size_t depth() const { return objects.size() - 1; }
  // L_j -> L_i for i <= j.
  CatMorphism connecting_map(std::size_t i, std::size_t j) const;
  ChainSegment truncate(std::size_t depth) const;
};

struct ConeFamily {
  CatObject apex;
  std::vector<CatMorphism> legs;  // legs[k]: apex -> L_k

  // legs[k] == connecting[k] o legs[k+1] for every k.
  bool compatible_with(const ChainSegment& chain) const;
  ConeFamily truncate(std::size_t depth) const;
};

// Apex elements (by carrier index) identified by a leg.
struct MergedPair {
  std::size_t level = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

struct MonoIndexResult {
  std::optional<std::size_t> index;  // least k with a monic leg
  std::vector<MergedPair> witnesses;  // one per non-monic level scanned
};

MonoIndexResult mono_index(const ChainSegment& chain, const ConeFamily& cone);

struct IndependenceResult {
  std::optional<std::size_t> index;
  // Least level at which the first j+1 vectors become independent, for each j
  // (absent entries past the point where the search gave up).
  std::vector<std::size_t> prefix_levels;
};

// vectors: apex elements as coordinate vectors; must be independent.
IndependenceResult find_independence_index(const ChainSegment& chain,
                                           const std::vector<std::vector<int>>& vectors,
                                           const ConeFamily& cone);

// ---- built-in chains with a symbolic integer apex

enum class BuiltinChain { CyclicGroups, UnaryCycles };

std::optional<BuiltinChain> builtin_chain_from_name(const std::string& name);
std::string to_string(BuiltinChain c);

struct CounterexampleWitness {
  std::size_t level = 0;  // k, the leg into the level of size 2^k
  std::int64_t first = 0;
  std::int64_t second = 0;
  std::int64_t image = 0;  // common image under the leg
};

struct CounterexampleReport {
  BuiltinChain chain = BuiltinChain::CyclicGroups;
  std::size_t depth = 0;
  bool connecting_homomorphisms = true;
  std::size_t connecting_checked = 0;
  bool legs_compatible = true;
  std::vector<CounterexampleWitness> witnesses;
  std::size_t monic_legs = 0;
  std::string failure;

  bool pass() const {
    return connecting_homomorphisms && legs_compatible && monic_legs == 0 && witnesses.size() == depth;
  }
};

// Levels k = 1..depth, level k of size 2^k. The total pointwise work is
// bounded by `guard` elements; a larger depth raises ResourceError.
CounterexampleReport verify_counterexample_chain(BuiltinChain chain, std::size_t depth,
                                                 std::uint64_t guard = std::uint64_t{1} << 26);

}  // namespace gradcat
