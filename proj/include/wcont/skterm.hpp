#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcont/error.hpp"

namespace wcont {

/// An immutable combinatory-logic term: S, K, application, and (before
/// bracket abstraction) named variables. Variables are inert under
/// reduction; PCA-facing operations expect closed terms.
class Term {
 public:
  enum class Tag : std::uint8_t { S, K, Var, App };

  struct Node {
    Tag tag;
    std::string var;  // Tag::Var only
    std::shared_ptr<const Node> left, right;
    std::size_t size;  // number of atoms
    // Lazily computed: -1 unknown, 0 reducible, 1 weak-normal.
    mutable std::atomic<std::int8_t> normal{-1};
  };

  Term();  // defaults to S
  static Term s();
  static Term k();
  static Term var(const std::string& name);
  static Term app(const Term& f, const Term& x);

  Tag tag() const { return node_->tag; }
  const std::string& var_name() const { return node_->var; }
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }
  std::size_t size() const { return node_->size; }
  const Node* raw() const { return node_.get(); }

  bool is_atom() const { return node_->tag != Tag::App; }
  bool is_closed() const;
  bool contains_var(const std::string& name) const;

  /// Canonical printed form: application is left-associative, parentheses
  /// only where needed. Injective on terms.
  std::string str() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
  friend struct TermLess;
  friend std::optional<Term> contract_leftmost(const Term& t);
};

/// Strict order: by size, then S < K < Var < App, then structurally.
struct TermLess {
  bool operator()(const Term& a, const Term& b) const;
};

struct EvalBudget {
  long max_steps = 10000;
};

constexpr long kDefaultBudget = 10000;

struct EvalOutcome {
  Term term;        // normal form when normalized, last term otherwise
  long steps = 0;   // S/K contractions performed
  bool normalized = false;
};

/// Leftmost-outermost weak reduction, one step per S/K contraction.
EvalOutcome reduce(const Term& t, EvalBudget budget);

/// True iff t has no weak redex anywhere.
bool is_weak_normal(const Term& t);

/// reduce(App(a, x), budget): the partial application of the algebra.
EvalOutcome apply(const Term& a, const Term& x, EvalBudget budget);

/// Bracket abstraction [var]body with the standard rules:
///   [x]x = S K K;  [x]t = K t when x not free in t;  [x](t u) = S [x]t [x]u.
Term bracket_abstract(const std::string& var, const Term& body);

/// Compiles away every lambda in a term built with lam()/parse_term.
Term compile(const Term& t);

// Standard codes: Church-style booleans and pairing.
Term code_ident();                // S K K
Term code_true();                 // compiled \x.\y.x
Term code_false();                // compiled \x.\y.y
Term code_underline(int i);       // 0 -> code_false, 1 -> code_true
Term code_pair();                 // compiled \x.\y.\z.z x y
Term code_fst();                  // compiled \p.p (\x.\y.x)
Term code_snd();                  // compiled \p.p (\x.\y.y)

/// Normal form of pair a b; throws if it fails to normalize in the budget.
Term make_pair(const Term& a, const Term& b, EvalBudget budget = {});

/// Textual syntax: S, K, juxtaposition, parentheses, and lambdas
/// "\x. body" which are compiled by bracket abstraction. Lambda-bound
/// names are the only identifiers allowed in closed terms.
Term parse_term(const std::string& text);

/// parse_term + closedness check; throws UnboundVariable on free names.
Term parse_closed_term(const std::string& text);

/// All closed S/K terms with at most `max_size` atoms, in enumeration
/// order (size ascending, then TermLess). Cached across calls.
const std::vector<Term>& enumerate_terms(std::size_t max_size);

struct FilterSpec {
  std::function<bool(const Term&)> member;  // default: everything
  bool contains(const Term& t) const { return !member || member(t); }
};

struct ObservedApplication {
  Term fn, arg, result;
};

/// Checks that a filter contains S and K and is closed under the observed
/// applications (whenever fn and arg are members, so is the result).
bool check_filter_closure(const FilterSpec& fs,
                          const std::vector<ObservedApplication>& observed);

/// Shared memo for repeated reductions of applications during searches.
/// Entries pin their argument terms so node pointers stay valid as keys.
class ApplyCache {
 public:
  EvalOutcome apply(const Term& f, const Term& x, EvalBudget budget);

 private:
  struct Entry {
    Term f, x;
    EvalOutcome out;
    long budget_used = 0;
  };
  std::map<std::pair<const Term::Node*, const Term::Node*>, Entry> memo_;
};

}  // namespace wcont
