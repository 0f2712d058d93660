#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wcont/error.hpp"

namespace wcont {

/// A finite set of distinct string labels, kept in canonical (lexicographic)
/// order. Equality of sets is equality of label lists.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::vector<std::string> labels);

  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(const std::string& label) const;

  bool operator==(const FinSet& other) const = default;

 private:
  std::vector<std::string> elements_;
};

/// A total function between finite sets, given by its graph.
class FinMap {
 public:
  FinMap() = default;
  FinMap(FinSet dom, FinSet cod, std::map<std::string, std::string> graph);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::map<std::string, std::string>& graph() const { return graph_; }

  const std::string& operator()(const std::string& label) const;

  bool operator==(const FinMap& other) const = default;

 private:
  FinSet dom_, cod_;
  std::map<std::string, std::string> graph_;
};

struct PullbackResult {
  FinSet apex;   // pairs "(a,b)" with f(a) = g(b)
  FinMap proj1;  // apex -> dom(f)
  FinMap proj2;  // apex -> dom(g)
};

/// An object of the slice over `base`: a bundle map total -> base.
struct SliceObj {
  FinSet total;
  FinSet base;
  FinMap map;  // total -> base
};

// Canonical label schemes. Every derived construction names its elements
// through these, so rebuilding a construction twice yields identical labels.
std::string pair_label(const std::string& a, const std::string& b);
std::string inl_label(const std::string& a);
std::string inr_label(const std::string& b);
std::string fn_label(const std::map<std::string, std::string>& graph);

FinMap identity(const FinSet& a);
FinMap compose(const FinMap& g, const FinMap& f);
FinMap constant_map(const FinSet& dom, const FinSet& cod, const std::string& target);

bool is_injective(const FinMap& f);
bool is_surjective(const FinMap& f);
bool is_bijective(const FinMap& f);
FinMap inverse(const FinMap& f);

PullbackResult pullback(const FinMap& f, const FinMap& g);

/// The unique mediating map into a pullback apex from a commuting outer cone
/// (alpha into dom(g), beta into dom(f)).
FinMap mediating(const PullbackResult& pb, const FinMap& f, const FinMap& g,
                 const FinMap& alpha, const FinMap& beta);

// Finite limit/colimit toolkit.
FinSet terminal();
FinSet initial();
FinSet product_set(const FinSet& a, const FinSet& b);
FinSet coproduct_set(const FinSet& a, const FinSet& b);

FinMap product_proj1(const FinSet& a, const FinSet& b);
FinMap product_proj2(const FinSet& a, const FinSet& b);
FinMap pairing(const FinMap& f1, const FinMap& f2);
FinMap product_map(const FinMap& f, const FinMap& g);  // f x g

FinMap coproduct_inl(const FinSet& a, const FinSet& b);
FinMap coproduct_inr(const FinSet& a, const FinSet& b);
FinMap copairing(const FinMap& f1, const FinMap& f2);
FinMap coproduct_map(const FinMap& f, const FinMap& g);  // f + g

FinMap bang_to_terminal(const FinSet& a);    // a -> 1
FinMap bang_from_initial(const FinSet& a);   // 0 -> a

/// Exponential B^A; elements are labelled by their full function graphs.
FinSet exponential_set(const FinSet& a, const FinSet& b);

/// The canonical distributor A x (B + C) -> (A x B) + (A x C).
FinMap distributor(const FinSet& a, const FinSet& b, const FinSet& c);

// Slice calculus: sums, reindexing and products along f.
SliceObj sigma_along(const FinMap& f, const SliceObj& a);
SliceObj reindex(const FinMap& f, const SliceObj& b);
SliceObj pi_along(const FinMap& f, const SliceObj& a);

/// Fiber of a bundle over a base point, as a sorted label list.
std::vector<std::string> fiber(const FinMap& map, const std::string& base_point);

/// All total maps a -> b, enumerated deterministically.
std::vector<FinMap> all_maps(const FinSet& a, const FinSet& b);

/// All slice morphisms a -> b over the common base (maps between totals
/// commuting with the bundle maps).
std::vector<FinMap> slice_homs(const SliceObj& a, const SliceObj& b);

}  // namespace wcont
