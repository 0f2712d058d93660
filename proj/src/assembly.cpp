#include "wcont/assembly.hpp"

#include <algorithm>

namespace wcont {

Assembly::Assembly(FinSet carrier, std::map<std::string, std::vector<Term>> realizers)
    : carrier_(std::move(carrier)), realizers_(std::move(realizers)) {
  if (realizers_.size() != carrier_.size())
    throw Error("Assembly: realizer table not defined on exactly the carrier");
  for (auto& [x, codes] : realizers_) {
    if (!carrier_.contains(x))
      throw Error("Assembly: realizers given for unknown element \"" + x + "\"");
    if (codes.empty())
      throw Error("Assembly: element \"" + x + "\" has no realizer");
    for (const Term& e : codes) {
      if (!e.is_closed())
        throw Error("Assembly: realizer of \"" + x + "\" is not closed");
      if (!is_weak_normal(e))
        throw Error("Assembly: realizer " + e.str() + " of \"" + x +
                    "\" is not weak-normal");
    }
    std::sort(codes.begin(), codes.end(), TermLess{});
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  }
}

const std::vector<Term>& Assembly::realizers_of(const std::string& element) const {
  auto it = realizers_.find(element);
  if (it == realizers_.end())
    throw Error("Assembly: \"" + element + "\" is not in the carrier");
  return it->second;
}

bool Assembly::realizes(const Term& code, const std::string& element) const {
  const auto& codes = realizers_of(element);
  return std::binary_search(codes.begin(), codes.end(), code, TermLess{});
}

bool Assembly::operator==(const Assembly& other) const {
  return carrier_ == other.carrier_ && realizers_ == other.realizers_;
}

bool is_modest(const Assembly& a) {
  std::map<std::string, std::string> owner;  // code string -> element
  for (const auto& [x, codes] : a.realizers()) {
    for (const Term& e : codes) {
      auto [it, inserted] = owner.emplace(e.str(), x);
      if (!inserted && it->second != x) return false;
    }
  }
  return true;
}

bool is_partitioned(const Assembly& a) {
  for (const auto& [_, codes] : a.realizers())
    if (codes.size() != 1) return false;
  return true;
}

bool verify_tracking(const Assembly& src, const Assembly& dst, const FinMap& fn,
                     const Term& code, EvalBudget budget, std::string* diagnostic,
                     ApplyCache* cache) {
  if (fn.dom() != src.carrier() || fn.cod() != dst.carrier())
    throw IllTyped("verify_tracking: map not typed between the given carriers");
  for (const auto& x : src.carrier().elements()) {
    for (const Term& e : src.realizers_of(x)) {
      EvalOutcome out = cache ? cache->apply(code, e, budget)
                              : apply(code, e, budget);
      if (!out.normalized) {
        if (diagnostic)
          *diagnostic = "budget exhausted on element \"" + x + "\", realizer " +
                        e.str();
        return false;
      }
      if (!dst.realizes(out.term, fn(x))) {
        if (diagnostic)
          *diagnostic = "code sends realizer " + e.str() + " of \"" + x +
                        "\" to " + out.term.str() + ", which does not realize \"" +
                        fn(x) + "\"";
        return false;
      }
    }
  }
  return true;
}

TrackedMap make_tracked(const Assembly& src, const Assembly& dst, const FinMap& fn,
                        const Term& code, EvalBudget budget) {
  std::string diag;
  if (!verify_tracking(src, dst, fn, code, budget, &diag))
    throw UnverifiedTracking("make_tracked: " + diag);
  return TrackedMap{src, dst, fn, code, budget, true};
}

std::optional<Term> search_tracking(const Assembly& src, const Assembly& dst,
                                    const FinMap& fn, std::size_t size_bound,
                                    EvalBudget budget, ApplyCache* cache) {
  ApplyCache local;
  if (!cache) cache = &local;
  for (const Term& candidate : enumerate_terms(size_bound)) {
    if (verify_tracking(src, dst, fn, candidate, budget, nullptr, cache))
      return candidate;
  }
  return std::nullopt;
}

PasmPullback pasm_pullback(const TrackedMap& f, const TrackedMap& g) {
  if (!f.verified || !g.verified)
    throw UnverifiedInput("pasm_pullback: inputs must be verified tracked maps");
  if (!(f.dst == g.dst))
    throw CodDomMismatch("pasm_pullback: maps do not share a codomain");
  if (!is_partitioned(f.src) || !is_partitioned(g.src))
    throw UnverifiedInput("pasm_pullback: sources must be partitioned");
  std::vector<std::string> labels;
  std::map<std::string, std::vector<Term>> realizers;
  std::map<std::string, std::string> p1, p2;
  EvalBudget budget{std::max(f.budget.max_steps, g.budget.max_steps)};
  for (const auto& a : f.src.carrier().elements()) {
    for (const auto& b : g.src.carrier().elements()) {
      if (f.fn(a) != g.fn(b)) continue;
      std::string lab = pair_label(a, b);
      labels.push_back(lab);
      realizers[lab] = {make_pair(f.src.realizers_of(a).front(),
                                  g.src.realizers_of(b).front(), budget)};
      p1[lab] = a;
      p2[lab] = b;
    }
  }
  PartitionedAssembly apex(FinSet(std::move(labels)), std::move(realizers));
  TrackedMap proj1 = make_tracked(apex, f.src,
                                  FinMap(apex.carrier(), f.src.carrier(), std::move(p1)),
                                  code_fst(), budget);
  TrackedMap proj2 = make_tracked(apex, g.src,
                                  FinMap(apex.carrier(), g.src.carrier(), std::move(p2)),
                                  code_snd(), budget);
  return PasmPullback{std::move(apex), std::move(proj1), std::move(proj2)};
}

ProjectiveCover projective_cover(const Assembly& a) {
  std::vector<std::string> labels;
  std::map<std::string, std::vector<Term>> realizers;
  std::map<std::string, std::string> counit;
  for (const auto& [x, codes] : a.realizers()) {
    for (const Term& e : codes) {
      std::string lab = pair_label(e.str(), x);
      labels.push_back(lab);
      realizers[lab] = {e};
      counit[lab] = x;
    }
  }
  PartitionedAssembly cover(FinSet(std::move(labels)), std::move(realizers));
  TrackedMap eps = make_tracked(
      cover, a, FinMap(cover.carrier(), a.carrier(), std::move(counit)),
      code_ident(), EvalBudget{});
  return ProjectiveCover{std::move(cover), std::move(eps)};
}

bool regular_epi_check(const TrackedMap& f, const Term& e_section,
                       EvalBudget budget) {
  if (!f.verified)
    throw UnverifiedInput("regular_epi_check: map must be verified");
  // Section sends every realizer of every target element to a realizer of
  // some source element.
  for (const auto& y : f.dst.carrier().elements()) {
    for (const Term& e : f.dst.realizers_of(y)) {
      EvalOutcome out = apply(e_section, e, budget);
      if (!out.normalized) return false;
      bool lands = false;
      for (const auto& x : f.src.carrier().elements()) {
        if (f.src.realizes(out.term, x)) {
          lands = true;
          break;
        }
      }
      if (!lands) return false;
    }
  }
  // \x. code (e_section x) tracks the identity on the target.
  Term roundtrip = bracket_abstract(
      "x", Term::app(f.code, Term::app(e_section, Term::var("x"))));
  return verify_tracking(f.dst, f.dst, identity(f.dst.carrier()), roundtrip,
                         budget);
}

PartitionedAssembly nabla(const FinSet& carrier) {
  std::map<std::string, std::vector<Term>> realizers;
  for (const auto& x : carrier.elements())
    realizers[x] = {code_underline(0)};
  return PartitionedAssembly(carrier, std::move(realizers));
}

TrackedMap compose_tracked(const TrackedMap& g, const TrackedMap& f) {
  if (!f.verified || !g.verified)
    throw UnverifiedInput("compose_tracked: inputs must be verified");
  if (!(f.dst == g.src))
    throw CodDomMismatch("compose_tracked: maps do not compose");
  Term code = bracket_abstract(
      "x", Term::app(g.code, Term::app(f.code, Term::var("x"))));
  EvalBudget budget{f.budget.max_steps + g.budget.max_steps};
  return make_tracked(f.src, g.dst, compose(g.fn, f.fn), code, budget);
}

PartitionedAssembly asm_terminal() { return nabla(terminal()); }

PartitionedAssembly asm_initial() { return PartitionedAssembly(initial(), {}); }

Assembly asm_product(const Assembly& a, const Assembly& b, EvalBudget budget) {
  std::map<std::string, std::vector<Term>> realizers;
  for (const auto& x : a.carrier().elements()) {
    for (const auto& y : b.carrier().elements()) {
      std::vector<Term> codes;
      for (const Term& rx : a.realizers_of(x))
        for (const Term& ry : b.realizers_of(y))
          codes.push_back(make_pair(rx, ry, budget));
      realizers[pair_label(x, y)] = std::move(codes);
    }
  }
  return Assembly(product_set(a.carrier(), b.carrier()), std::move(realizers));
}

Assembly asm_coproduct(const Assembly& a, const Assembly& b, EvalBudget budget) {
  std::map<std::string, std::vector<Term>> realizers;
  for (const auto& x : a.carrier().elements()) {
    std::vector<Term> codes;
    for (const Term& rx : a.realizers_of(x))
      codes.push_back(make_pair(code_underline(0), rx, budget));
    realizers[inl_label(x)] = std::move(codes);
  }
  for (const auto& y : b.carrier().elements()) {
    std::vector<Term> codes;
    for (const Term& ry : b.realizers_of(y))
      codes.push_back(make_pair(code_underline(1), ry, budget));
    realizers[inr_label(y)] = std::move(codes);
  }
  return Assembly(coproduct_set(a.carrier(), b.carrier()), std::move(realizers));
}

}  // namespace wcont
