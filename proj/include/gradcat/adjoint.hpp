#pragma once

// Least subobjects by grade descent, the diagram of finite subobjects of an
// object with its fill-ins, and intersection squares with splittings.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gradcat/category.hpp"
#include "gradcat/functor.hpp"

namespace gradcat {

// ---- least subobject through which an element factors

enum class LeastMethod { GradeDescent, BruteForce };

// Order in which grade descent looks for a witness not above the current
// candidate: canonical subset order, or largest subsets first.
enum class WitnessOrder { Canonical, LargestFirst };

struct LeastFactorResult {
  FinSet subset;               // least M in K
  std::vector<FinSet> trace;   // M_1, ..., M_k after the starting M_0 = K
  LeastMethod method = LeastMethod::GradeDescent;
  std::size_t witnesses_examined = 0;
};

// x lies in the image of H(M -> K).
bool factors_through(const SetFunctor& h, const FinSet& k, const Label& x, const FinSet& m);

// Grade descent requires H to preserve intersections of subsets of K
// (checked; ModeNotSound otherwise). Brute force scans every subset and
// raises ContractViolation when no least witness exists.
LeastFactorResult least_fp_subobject(const SetFunctor& h, const FinSet& k, const Label& x,
                                     LeastMethod method = LeastMethod::GradeDescent,
                                     WitnessOrder order = WitnessOrder::Canonical);

// Join of the per-element answers.
FinSet least_fp_subobject_of(const SetFunctor& h, const FinSet& k, const std::vector<Label>& xs,
                             LeastMethod method = LeastMethod::GradeDescent);

// ---- diagram of finite subobjects

struct SubobjectDiagram {
  CatObject object;
  std::vector<CatMorphism> nodes;                            // distinct image subobjects
  std::vector<std::pair<std::size_t, std::size_t>> edges;    // (i, j): node i below node j
  std::vector<CatMorphism> edge_maps;                        // inclusion node i -> node j
  std::size_t arrows = 0;       // pairs (A, a) scanned
  std::size_t connecting = 0;   // morphisms of the comma category scanned
  std::size_t fill_ins = 0;     // fill-ins verified
  bool directed = false;
};

SubobjectDiagram canonical_subobject_diagram(const CatObject& k);

struct ColimitReport {
  bool pass = true;
  std::size_t test_objects = 0;
  std::size_t cocones = 0;
  std::string failure;
};

// Every compatible cocone from the diagram into every test object factors
// through the inclusions into K exactly once.
ColimitReport verify_subobject_colimit(const SubobjectDiagram& d, const std::vector<CatObject>& tests);

// ---- intersection squares

struct IntersectionSquare {
  CatId cat;
  CatObject a, b, bp, c;
  CatMorphism m;    // b  -> a
  CatMorphism mp;   // bp -> a
  CatMorphism i;    // c  -> b
  CatMorphism ip;   // c  -> bp
};

// The square of the intersection of two monos into the same object.
IntersectionSquare intersection_square(const CatMorphism& m, const CatMorphism& mp);

struct SplittingPair {
  CatMorphism e;   // a  -> b
  CatMorphism ep;  // bp -> c
};

// SetP, Vec, and Set with nonempty intersection; NoSplitting for Set with an
// empty intersection, ContractViolation for other instances.
SplittingPair compute_splittings(const IntersectionSquare& sq);

struct SplittingCheck {
  bool retracts_b = false;    // e o m = id
  bool retracts_c = false;    // ep o ip = id
  bool compatible = false;    // e o mp = i o ep
  bool all() const { return retracts_b && retracts_c && compatible; }
};

SplittingCheck check_splittings(const IntersectionSquare& sq, const SplittingPair& sp);

// A functor from the square's instance to Set, as carrier data.
struct SquareFunctor {
  std::string name;
  std::function<FinSet(const CatObject&)> obj;
  std::function<FinMap(const CatMorphism&)> mor;
};

SquareFunctor engine_functor(FunctorPtr h);        // Set squares only
SquareFunctor hom_functor(const CatObject& w);     // hom(w, -) in w's instance

struct AbsolutenessReport {
  bool pass = true;
  bool splittable = false;
  std::size_t apexes = 0;
  std::size_t pairs = 0;          // commutative pairs (u, u') covered, saturating
  std::string failure;
};

// For every apex U with |U| <= max_apex and every (u, u') with
// Fm u = Fm' u', the mediator v = Fe' u' works and is the only one; without
// splittings, mediators are searched directly.
AbsolutenessReport verify_absolute_pullback(const IntersectionSquare& sq, const SquareFunctor& f,
                                            std::size_t max_apex = 3);

}  // namespace gradcat
