#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "wcont/container.hpp"

namespace wcont {

Container initial_container(BaseKind kind);   // id : 0 -> 0
Container terminal_container(BaseKind kind);  // ! : 0 -> 1

/// Coproduct P1 + P2 : X1 + X2 -> U1 + U2 with its coprojections.
struct CoproductResult {
  Container container;
  Morphism inl, inr;
};
CoproductResult coproduct(const Container& p, const Container& q);

/// Copairing [f, g] : P1 + P2 -> R of morphisms with a common target.
Morphism copair(const Morphism& f, const Morphism& g);

/// Product with total X1 x U2 + U1 x X2 over U1 x U2: one question to
/// each component, one answer back.
struct ProductResult {
  Container container;
  Morphism proj1, proj2;
};
ProductResult product(const Container& p, const Container& q);

/// Pairing <f, g> : R -> P1 x P2 of morphisms with a common source.
Morphism pair_morphisms(const Morphism& f, const Morphism& g);

/// The canonical isomorphism (P1 x Q) + (P2 x Q) <-> (P1 + P2) x Q.
struct IsoPair {
  Morphism to, from;
};
IsoPair distributivity(const Container& p1, const Container& p2, const Container& q);

/// Parallel product: ask both questions, get both answers.
Container tensor(const Container& p, const Container& q);

/// P (x) (Q + R) <-> P (x) Q + P (x) R, mutually inverse.
IsoPair tensor_coproduct_iso(const Container& p, const Container& q,
                             const Container& r);

/// The canonical vertical morphism (P (x) Q) x R -> P (x) (Q x R).
Morphism tensor_product_exchange(const Container& p, const Container& q,
                                 const Container& r);

/// Composition product over FinSet: positions are pairs (v, f : Y_v -> U),
/// directions over (v, f) are pairs (y, x) with x a direction of f(y).
struct StarData {
  Container container;
  // position label -> (v, graph of f : Y_v -> U)
  std::map<std::string, std::pair<std::string, std::map<std::string, std::string>>>
      positions;
  // direction label -> (position label, y, x)
  std::map<std::string, std::tuple<std::string, std::string, std::string>> directions;
};
StarData star_with_data(const Container& p, const Container& q);
Container star(const Container& p, const Container& q);

/// Bounded composition product over partitioned assemblies: positions are
/// pairs (e, (v, f)) where e is a code of size <= size_bound tracking f
/// fiberwise, realized by pair(r_v, e). A fiber with no directions admits
/// only the canonical empty-function code S K K. Monotone in size_bound.
Container star_p_bounded(const Container& p, const Container& q,
                         std::size_t size_bound, EvalBudget budget = {});

/// Evaluation of the polynomial functor of p: A |-> sum over positions u
/// of A^{fiber(u)}.
struct PolyEval {
  Container container;
  FinSet argument;
  FinSet result;
  struct Element {
    std::string position;
    std::map<std::string, std::string> assignment;  // fiber -> argument
  };
  std::map<std::string, Element> decode;
};
PolyEval poly_eval(const Container& p, const FinSet& a);

/// Functorial action of the polynomial functor on a map of arguments.
FinMap poly_map(const Container& p, const FinMap& f);

/// |[[p]](A)| computed arithmetically; throws on uint64 overflow.
std::uint64_t poly_card(const Container& p, std::uint64_t argument_card);

/// The natural-transformation component of a morphism at argument a,
/// mapping (u, g) to (forward(u), g . backward_u).
FinMap morphism_to_nat_trans(const Morphism& m, const FinSet& a);
bool naturality_check(const Morphism& m, const FinMap& f);

/// Constructed bijection certifying [[P * Q]](A) iso [[Q]]([[P]](A)).
struct StarSemantics {
  PolyEval star_side;
  PolyEval inner;  // [[P]](A)
  PolyEval outer;  // [[Q]]([[P]](A))
  FinMap bijection;
};
StarSemantics star_semantics(const Container& p, const Container& q, const FinSet& a);

/// A morphism (P * Q) x R -> (P x R) * Q found by exhaustive search over
/// small carriers.
Morphism lemma5_witness(const Container& p, const Container& q, const Container& r);

}  // namespace wcont
