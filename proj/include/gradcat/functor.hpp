#pragma once

// Finitary set endofunctors given by flat equational presentations, evaluated
// by congruence closure over term instances, plus the built-in functors and
// the verdict operations (distinguished elements, limit preservation,
// classification, recovery of the exponent form).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gradcat/finset.hpp"

namespace gradcat {

class SetFunctor {
public:
  virtual ~SetFunctor() = default;
  virtual std::string name() const = 0;
  virtual FinSet obj(const FinSet& x) const = 0;
  virtual FinMap mor(const FinMap& f) const = 0;
};

using FunctorPtr = std::shared_ptr<const SetFunctor>;

// ---- presentations

struct Operation {
  std::string sym;
  std::size_t arity = 0;
};

// sym(v_args[0], ..., v_args[n-1]); variables are indices into the
// equation's variable set.
struct FlatTerm {
  std::string op;
  std::vector<std::size_t> args;
};

struct Equation {
  FlatTerm lhs;
  FlatTerm rhs;
};

struct FunctorPresentation {
  std::string name;
  std::vector<Operation> ops;
  std::vector<Equation> eqs;

  // Symbols distinct, arities match, equations use declared symbols.
  void validate() const;
  std::size_t variable_count(const Equation& e) const;
  std::optional<std::size_t> op_index(const std::string& sym) const;
};

// A term instance label: (sym, (x_1, ..., x_n)).
Label term_label(const std::string& sym, std::vector<Label> args);

std::uint64_t default_guard();  // 10^6, or GRADCAT_GUARD if set

class PresentedFunctor : public SetFunctor {
public:
  explicit PresentedFunctor(FunctorPresentation p, std::uint64_t guard = default_guard());

  std::string name() const override { return pres_.name; }
  const FunctorPresentation& presentation() const { return pres_; }
  std::uint64_t guard() const { return guard_; }

  // Classes labelled by their least term instance.
  FinSet obj(const FinSet& x) const override;
  FinMap mor(const FinMap& f) const override;

  // Class representative of an arbitrary term instance over x.
  Label class_of(const FinSet& x, const std::string& sym, const std::vector<Label>& args) const;
  std::size_t instance_count(std::size_t carrier_size) const;

private:
  struct Evaluation {
    FinSet classes;
    std::vector<std::size_t> offsets;         // first instance index per symbol
    std::vector<std::size_t> class_of;        // instance index -> class index
  };
  std::shared_ptr<const Evaluation> evaluate(const FinSet& x) const;
  std::size_t instance_index(const Evaluation& ev, std::size_t n, std::size_t op,
                             const std::vector<std::size_t>& args) const;

  FunctorPresentation pres_;
  std::uint64_t guard_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::vector<Label>, std::shared_ptr<const Evaluation>> cache_;
};

// ---- eventually constant sequences, truncated at depth d

// Label ((prefix...), tail), prefix normalized so its last entry differs from tail.
Label ev_label(const std::vector<Label>& prefix, const Label& tail);

class EvSeqFunctor : public SetFunctor {
public:
  explicit EvSeqFunctor(std::size_t depth) : depth_(depth) {}
  std::string name() const override { return "evconst:" + std::to_string(depth_); }
  std::size_t depth() const { return depth_; }
  FinSet obj(const FinSet& x) const override;
  FinMap mor(const FinMap& f) const override;

private:
  std::size_t depth_;
};

FinSet ev_eval(const FinSet& x, std::size_t depth);
// Least n such that (s_0, ..., s_n) has no depth-d preimage over the product
// of A_m = {0..m}.
std::size_t ev_countable_witness(std::size_t depth, std::size_t n_max);

// ---- built-ins

FunctorPresentation identity_presentation();
FunctorPresentation c01_presentation();
FunctorPresentation constant_one_presentation();
FunctorPresentation square_presentation();
FunctorPresentation x_plus_x_presentation();
FunctorPresentation hom_presentation(std::size_t w);

// "c01", "id", "const1", "square", "x-plus-x", "hom:W", "evconst:d".
FunctorPtr make_builtin(const std::string& name, std::uint64_t guard = default_guard());
bool is_builtin_name(const std::string& name);

// ---- verdicts

struct DistinguishedTest {
  bool distinguished = false;
  Label left;   // H(inl)(x)
  Label right;  // H(inr)(x)
};

DistinguishedTest is_distinguished(const SetFunctor& h, const FinSet& x, const Label& value);
std::vector<Label> distinguished_elements(const SetFunctor& h, const FinSet& x);

struct PreservationVerdict {
  bool preserved = true;
  std::size_t checks = 0;
  std::string witness;  // empty when preserved
};

// H(X x Y) -> HX x HY bijective for |X|, |Y| <= n, and H1 a singleton.
PreservationVerdict preserves_products_upto(const SetFunctor& h, std::size_t n);
PreservationVerdict check_product(const SetFunctor& h, const FinSet& x, const FinSet& y);
// Intersections of two subsets of B, |B| <= n.
PreservationVerdict preserves_pullbacks_upto(const SetFunctor& h, std::size_t n, bool nonempty_only);
PreservationVerdict check_intersection(const SetFunctor& h, const FinSet& b, const FinSet& s, const FinSet& t);
// Equalizers of parallel pairs X => Y, |X|, |Y| <= n.
PreservationVerdict preserves_equalizers_upto(const SetFunctor& h, std::size_t n);

enum class Classification { NotProductPreserving, ConstantOne, C01Exception, RightAdjoint };

std::string to_string(Classification c);

struct ClassifyResult {
  Classification verdict = Classification::NotProductPreserving;
  std::size_t bound = 0;
  std::string witness;
  std::vector<std::string> confirmations;
};

// Raises TheoremViolation when a theorem-backed follow-up check fails.
ClassifyResult classify_functor(const SetFunctor& h, std::size_t n);

struct ExponentForm {
  std::size_t exponent = 0;  // |A|
  Label generic;             // u in H(A), A = {0..|A|-1}
  std::size_t sizes_checked = 0;
  std::size_t naturality_checks = 0;
};

// H X ~ X^A via g |-> Hg(u). Raises NotExponential when no such form exists.
ExponentForm recover_right_adjoint_form(const SetFunctor& h, std::size_t n);

}  // namespace gradcat
