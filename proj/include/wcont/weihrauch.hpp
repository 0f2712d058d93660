#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcont/operators.hpp"

namespace wcont {

/// A multi-valued function between finite sets. Inputs with an empty
/// solution set lie outside the domain.
class FiniteProblem {
 public:
  FiniteProblem() = default;
  FiniteProblem(FinSet inputs, FinSet outputs,
                std::map<std::string, std::vector<std::string>> solutions);

  const FinSet& inputs() const { return inputs_; }
  const FinSet& outputs() const { return outputs_; }
  const std::map<std::string, std::vector<std::string>>& solutions() const {
    return solutions_;
  }
  const std::vector<std::string>& solutions_of(const std::string& input) const;
  FinSet domain() const;

  bool operator==(const FiniteProblem& other) const = default;

 private:
  FinSet inputs_, outputs_;
  std::map<std::string, std::vector<std::string>> solutions_;  // sorted values
};

/// The pre/post-processing pair of a problem reduction: phi translates
/// instances, psi translates solutions back, indexed by the instance.
struct ReductionWitness {
  FinMap phi;  // dom(f1) -> dom(f2)
  FinMap psi;  // pairs (u, j) with j a solution of f2(phi(u)) -> outputs(f1)
};

/// Turns a problem into its container of (instance, solution) pairs over
/// the domain; always answerable.
Container c_of(const FiniteProblem& f);

/// Reads an answerable finset container as the problem sending a position
/// to its fiber of directions.
FiniteProblem w_of(const Container& p);

/// Exhaustive reduction search between finite problems: nullopt is a
/// definitive negative.
std::optional<ReductionWitness> reduce_problem(const FiniteProblem& f1,
                                               const FiniteProblem& f2);
bool verify_reduction(const FiniteProblem& f1, const FiniteProblem& f2,
                      const ReductionWitness& w, std::string* diagnostic = nullptr);

/// Explicit mutually-inverse morphisms between c_of(w_of(p)) and p.
IsoPair roundtrip_container_iso(const Container& p);

/// A map r |-> set of sets of codes; the support carries the nonempty
/// values. Inner and outer collections are kept sorted and deduplicated.
class ExtendedPredicate {
 public:
  ExtendedPredicate() = default;
  ExtendedPredicate(std::vector<Term> support,
                    std::map<std::string, std::vector<std::vector<Term>>> theta);

  const std::vector<Term>& support() const { return support_; }
  const std::map<std::string, std::vector<std::vector<Term>>>& theta() const {
    return theta_;
  }
  const std::vector<std::vector<Term>>& theta_of(const Term& r) const;
  bool in_support(const Term& r) const;

  bool operator==(const ExtendedPredicate& other) const;

 private:
  std::vector<Term> support_;  // sorted, weak-normal
  std::map<std::string, std::vector<std::vector<Term>>> theta_;
};

/// Canonical label of a set of codes: sorted printed terms in braces.
std::string theta_label(const std::vector<Term>& theta);

struct ExtReductionWitness {
  Term e_fwd;
  // (support term string, theta label) -> chosen xi
  std::map<std::pair<std::string, std::string>, std::vector<Term>> f_family;
  Term e_bwd;
  EvalBudget budget{};
};

bool ext_reduce_verify(const ExtendedPredicate& p, const ExtendedPredicate& q,
                       const ExtReductionWitness& w, std::string* diagnostic = nullptr);

/// The container of an extended predicate: positions (r, theta) realized
/// by r, directions (r, theta, s) realized by pair(r, s), bundle the
/// first projection.
Container hat_of(const ExtendedPredicate& p, EvalBudget budget = {});

/// The extended predicate of a pasm container: r is sent to the family of
/// realizer sets of the fibers over the positions r realizes.
ExtendedPredicate phi_of(const Container& p);

/// The predicate with singleton support underline(0) and constant value
/// {{underline(0)}, {underline(1)}}.
ExtendedPredicate wlem();

// Explicit reduction witnesses between p and phi_of(hat_of(p)).
ExtReductionWitness ext_wit_hatphi_to_p(const ExtendedPredicate& p,
                                        EvalBudget budget = {});
ExtReductionWitness ext_wit_p_to_hatphi(const ExtendedPredicate& p,
                                        EvalBudget budget = {});

/// Explicit mutual morphisms between a pasm container and hat_of(phi_of(p)):
/// `to` goes into the double translation, `from` comes back.
IsoPair thm_container_roundtrip(const Container& p, EvalBudget budget = {});

/// Degree poset: nodes are mutual-reducibility classes, edges the strict
/// covering relation, every claim backed by a stored witness or bound.
struct DegreePoset {
  enum class Status { Reducible, NotReducible, UnknownAtBound };
  struct Claim {
    std::string from, to;
    Status status;
    SearchBounds bounds{};
  };
  struct Node {
    std::vector<std::string> members;  // sorted binding names
  };
  struct Edge {
    std::size_t from, to;  // node indices, lower to higher degree
    bool bounded;          // true when backed by a bounded (pasm) search
  };
  std::vector<Node> nodes;   // sorted by first member
  std::vector<Edge> edges;   // Hasse edges of the class order
  std::vector<Claim> claims;
  SearchBounds bounds{};
  bool bounded = false;  // true for pasm inputs
};

DegreePoset degree_poset(const std::vector<std::pair<std::string, Container>>& items,
                         SearchBounds bounds = {});
DegreePoset degree_poset(const std::vector<std::pair<std::string, FiniteProblem>>& items);

}  // namespace wcont
