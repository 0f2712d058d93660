#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wcont/finset.hpp"
#include "wcont/skterm.hpp"

namespace wcont {

/// A finite assembly: a carrier set together with a nonempty set of
/// weak-normal realizer codes for each element.
class Assembly {
 public:
  Assembly() = default;
  Assembly(FinSet carrier, std::map<std::string, std::vector<Term>> realizers);

  const FinSet& carrier() const { return carrier_; }
  const std::map<std::string, std::vector<Term>>& realizers() const {
    return realizers_;
  }
  const std::vector<Term>& realizers_of(const std::string& element) const;
  bool realizes(const Term& code, const std::string& element) const;

  bool operator==(const Assembly& other) const;

 private:
  FinSet carrier_;
  std::map<std::string, std::vector<Term>> realizers_;  // sorted by TermLess
};

/// Assemblies in which every element has exactly one realizer.
using PartitionedAssembly = Assembly;

bool is_modest(const Assembly& a);
bool is_partitioned(const Assembly& a);

/// A carrier map together with the code claimed to track it.
struct TrackedMap {
  Assembly src, dst;
  FinMap fn;  // src.carrier() -> dst.carrier()
  Term code;
  EvalBudget budget;
  bool verified = false;
};

/// Checks the tracking condition: for every x and every e realizing x,
/// code . e normalizes within budget to a realizer of fn(x).
bool verify_tracking(const Assembly& src, const Assembly& dst, const FinMap& fn,
                     const Term& code, EvalBudget budget,
                     std::string* diagnostic = nullptr,
                     ApplyCache* cache = nullptr);

/// verify_tracking + packaging; throws UnverifiedTracking on failure.
TrackedMap make_tracked(const Assembly& src, const Assembly& dst, const FinMap& fn,
                        const Term& code, EvalBudget budget);

/// Least code (size, then lexicographic) of size <= size_bound passing
/// verify_tracking, or nullopt meaning "not found at this bound".
std::optional<Term> search_tracking(const Assembly& src, const Assembly& dst,
                                    const FinMap& fn, std::size_t size_bound,
                                    EvalBudget budget,
                                    ApplyCache* cache = nullptr);

/// Pullback in partitioned assemblies: carrier is the canonical pair set,
/// the realizer of (x,y) is the normal form of pair r_x r_y.
struct PasmPullback {
  PartitionedAssembly apex;
  TrackedMap proj1, proj2;
};
PasmPullback pasm_pullback(const TrackedMap& f, const TrackedMap& g);

/// The partitioned cover by (code, element) pairs, with its counit.
struct ProjectiveCover {
  PartitionedAssembly cover;
  TrackedMap counit;  // (e,x) -> x, tracked by the identity code
};
ProjectiveCover projective_cover(const Assembly& a);

/// Certifies that f is a regular epi via a section candidate: e_section
/// sends realizers of dst elements to realizers of src elements, and
/// \x. code (e_section x) tracks the identity on dst.
bool regular_epi_check(const TrackedMap& f, const Term& e_section,
                       EvalBudget budget);

/// The assembly on the given carrier where every element is realized by
/// underline(0); right adjoint to the forgetful functor on carriers.
PartitionedAssembly nabla(const FinSet& carrier);

/// Composition of tracked maps; code is the compiled \x. g.code (f.code x).
TrackedMap compose_tracked(const TrackedMap& g, const TrackedMap& f);

// Finite (co)limit scaffolding used by the container operators.
PartitionedAssembly asm_terminal();
PartitionedAssembly asm_initial();
Assembly asm_product(const Assembly& a, const Assembly& b, EvalBudget budget = {});
Assembly asm_coproduct(const Assembly& a, const Assembly& b, EvalBudget budget = {});

}  // namespace wcont
