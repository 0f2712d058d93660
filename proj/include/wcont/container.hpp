#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcont/assembly.hpp"
#include "wcont/finset.hpp"

namespace wcont {

enum class BaseKind { FinSet, PAsm };

std::string to_string(BaseKind kind);

/// A container is a bundle P : X -> U over the base category, read as the
/// U-indexed family of its fibers: U = positions, X = directions.
class Container {
 public:
  static Container finset(FinMap bundle);
  static Container pasm(TrackedMap bundle);

  BaseKind kind() const { return kind_; }
  const FinSet& positions() const;   // base carrier
  const FinSet& directions() const;  // total carrier
  const FinMap& bundle() const;      // carrier-level bundle map

  // PAsm kind only.
  const TrackedMap& tracked_bundle() const;
  const Assembly& base_assembly() const;
  const Assembly& total_assembly() const;

  bool operator==(const Container& other) const;

 private:
  Container() = default;
  BaseKind kind_ = BaseKind::FinSet;
  FinMap bundle_;                      // FinSet kind
  std::optional<TrackedMap> tracked_;  // PAsm kind
};

/// A morphism representative (forward, backward): forward on positions,
/// backward from a pullback of the target bundle along forward into the
/// source directions. The apex cone is carried explicitly so that
/// representatives over differently-presented pullbacks can be normalized.
struct MorphismRep {
  Container src, dst;
  FinMap forward;            // positions(src) -> positions(dst)
  FinSet apex;
  FinMap apex_to_src_base;   // apex -> positions(src)
  FinMap apex_to_dst_total;  // apex -> directions(dst)
  FinMap backward;           // apex -> directions(src)
  std::optional<Term> forward_code, backward_code;  // PAsm kind
  EvalBudget budget{};
};

/// Convenience: a representative on the canonical pullback apex.
MorphismRep make_rep(const Container& src, const Container& dst,
                     const FinMap& forward, const FinMap& backward);
MorphismRep make_rep_pasm(const Container& src, const Container& dst,
                          const FinMap& forward, const Term& forward_code,
                          const FinMap& backward, const Term& backward_code,
                          EvalBudget budget = {});

bool validate_rep(const MorphismRep& rep, std::string* diagnostic = nullptr);

struct SearchBounds {
  std::size_t code_size = 7;
  EvalBudget budget{};
};

/// A normalized morphism: the representative with its backward expressed
/// on the canonical pullback apex. Equality is structural on the carrier
/// data; tracking codes are witnesses, not part of the identity.
struct Morphism {
  Container src, dst;
  FinMap forward;
  FinMap backward;  // canonical apex -> directions(src)
  std::optional<Term> forward_code, backward_code;
  EvalBudget budget{};
  std::optional<SearchBounds> found_at;  // provenance of bounded searches

  bool operator==(const Morphism& other) const {
    return src == other.src && dst == other.dst && forward == other.forward &&
           backward == other.backward;
  }
};

/// Re-expresses a representative on the canonical apex via the unique
/// comparison isomorphism. Idempotent. Throws InvalidRep if the
/// representative does not validate.
Morphism normalize(const MorphismRep& rep);

/// The canonical pullback apex the backward map of a normalized morphism
/// is defined on.
PullbackResult canonical_apex(const Container& src, const Container& dst,
                              const FinMap& forward);

/// Canonical apex as a partitioned assembly (PAsm kind): the realizer of
/// an apex pair is the paired realizer of its components.
PartitionedAssembly canonical_apex_assembly(const Container& src,
                                            const Container& dst,
                                            const FinMap& forward,
                                            const FinSet& apex);

Morphism identity_morphism(const Container& p);
Morphism compose(const Morphism& outer, const Morphism& inner);

/// True iff the bundle is a pullback-stable epi, i.e. surjective on
/// carriers: every position has at least one direction.
bool is_answerable(const Container& p);

Container make_container(FinMap bundle);
Container make_container(TrackedMap bundle);

struct FindResult {
  std::optional<Morphism> morphism;
  bool definitive = false;  // FinSet searches are decision procedures
  SearchBounds bounds{};
};

/// Searches for a morphism p -> q. Over FinSet the search is exhaustive
/// and "none" is definitive; over PAsm it enumerates carrier maps and
/// tracking codes up to the given bounds, so "none" only means
/// not-found-at-bound.
FindResult find_morphism(const Container& p, const Container& q,
                         SearchBounds bounds = {});

/// All normalized morphisms p -> q (FinSet kind; meant for small carriers).
std::vector<Morphism> enumerate_morphisms(const Container& p, const Container& q);

/// Fibers of the source positions, i.e. the backward choice sets, for
/// enumeration helpers.
std::vector<FinMap> fiber_respecting_backwards(const Container& src,
                                               const PullbackResult& apex);

}  // namespace wcont
