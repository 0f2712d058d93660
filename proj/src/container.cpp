#include "wcont/container.hpp"

#include <algorithm>
#include <set>

namespace wcont {

std::string to_string(BaseKind kind) {
  return kind == BaseKind::FinSet ? "finset" : "pasm";
}

Container Container::finset(FinMap bundle) {
  Container c;
  c.kind_ = BaseKind::FinSet;
  c.bundle_ = std::move(bundle);
  return c;
}

Container Container::pasm(TrackedMap bundle) {
  if (!bundle.verified)
    throw UnverifiedTracking("Container: bundle must be a verified tracked map");
  if (!is_partitioned(bundle.src) || !is_partitioned(bundle.dst))
    throw UnverifiedInput("Container: pasm bundles live on partitioned assemblies");
  Container c;
  c.kind_ = BaseKind::PAsm;
  c.bundle_ = bundle.fn;
  c.tracked_ = std::move(bundle);
  return c;
}

const FinSet& Container::positions() const { return bundle_.cod(); }
const FinSet& Container::directions() const { return bundle_.dom(); }
const FinMap& Container::bundle() const { return bundle_; }

const TrackedMap& Container::tracked_bundle() const {
  if (!tracked_) throw KindMismatch("Container: not a pasm container");
  return *tracked_;
}

const Assembly& Container::base_assembly() const { return tracked_bundle().dst; }
const Assembly& Container::total_assembly() const { return tracked_bundle().src; }

bool Container::operator==(const Container& other) const {
  if (kind_ != other.kind_ || !(bundle_ == other.bundle_)) return false;
  if (kind_ == BaseKind::PAsm)
    return tracked_->src == other.tracked_->src &&
           tracked_->dst == other.tracked_->dst;
  return true;
}

PullbackResult canonical_apex(const Container& src, const Container& dst,
                              const FinMap& forward) {
  return pullback(forward, dst.bundle());
}

PartitionedAssembly canonical_apex_assembly(const Container& src,
                                            const Container& dst,
                                            const FinMap& forward,
                                            const FinSet& apex) {
  PullbackResult pb = canonical_apex(src, dst, forward);
  if (!(pb.apex == apex))
    throw InvalidRep("canonical_apex_assembly: apex is not the canonical one");
  std::map<std::string, std::vector<Term>> realizers;
  for (const auto& a : apex.elements()) {
    const Term& ru = src.base_assembly().realizers_of(pb.proj1(a)).front();
    const Term& ry = dst.total_assembly().realizers_of(pb.proj2(a)).front();
    realizers[a] = {make_pair(ru, ry)};
  }
  return PartitionedAssembly(apex, std::move(realizers));
}

MorphismRep make_rep(const Container& src, const Container& dst,
                     const FinMap& forward, const FinMap& backward) {
  PullbackResult pb = canonical_apex(src, dst, forward);
  return MorphismRep{src,      dst,      forward,  pb.apex,
                     pb.proj1, pb.proj2, backward, std::nullopt,
                     std::nullopt};
}

MorphismRep make_rep_pasm(const Container& src, const Container& dst,
                          const FinMap& forward, const Term& forward_code,
                          const FinMap& backward, const Term& backward_code,
                          EvalBudget budget) {
  MorphismRep rep = make_rep(src, dst, forward, backward);
  rep.forward_code = forward_code;
  rep.backward_code = backward_code;
  rep.budget = budget;
  return rep;
}

bool validate_rep(const MorphismRep& rep, std::string* diagnostic) {
  auto fail = [&](const std::string& msg) {
    if (diagnostic) *diagnostic = msg;
    return false;
  };
  if (rep.src.kind() != rep.dst.kind())
    return fail("source and target have different base kinds");
  if (rep.forward.dom() != rep.src.positions() ||
      rep.forward.cod() != rep.dst.positions())
    return fail("forward map badly typed");
  if (rep.apex_to_src_base.dom() != rep.apex ||
      rep.apex_to_src_base.cod() != rep.src.positions())
    return fail("apex-to-base leg badly typed");
  if (rep.apex_to_dst_total.dom() != rep.apex ||
      rep.apex_to_dst_total.cod() != rep.dst.directions())
    return fail("apex-to-directions leg badly typed");
  if (rep.backward.dom() != rep.apex ||
      rep.backward.cod() != rep.src.directions())
    return fail("backward map badly typed");
  if (!(compose(rep.dst.bundle(), rep.apex_to_dst_total) ==
        compose(rep.forward, rep.apex_to_src_base)))
    return fail("apex cone does not commute with the target bundle");
  PullbackResult pb = canonical_apex(rep.src, rep.dst, rep.forward);
  if (rep.apex.size() != pb.apex.size())
    return fail("apex has the wrong cardinality for a pullback");
  std::set<std::string> seen;
  for (const auto& a : rep.apex.elements()) {
    std::string lab = pair_label(rep.apex_to_src_base(a), rep.apex_to_dst_total(a));
    if (!seen.insert(lab).second)
      return fail("apex cone is not jointly injective");
  }
  if (!(compose(rep.src.bundle(), rep.backward) == rep.apex_to_src_base))
    return fail("backward map lands outside the required fibers");
  if (rep.src.kind() == BaseKind::PAsm) {
    if (!rep.forward_code || !rep.backward_code)
      return fail("pasm representative is missing tracking codes");
    if (!(rep.apex == pb.apex) || !(rep.apex_to_src_base == pb.proj1) ||
        !(rep.apex_to_dst_total == pb.proj2))
      return fail("pasm representatives must be given on the canonical apex");
    std::string diag;
    if (!verify_tracking(rep.src.base_assembly(), rep.dst.base_assembly(),
                         rep.forward, *rep.forward_code, rep.budget, &diag))
      return fail("forward code fails tracking: " + diag);
    PartitionedAssembly apex_asm =
        canonical_apex_assembly(rep.src, rep.dst, rep.forward, rep.apex);
    if (!verify_tracking(apex_asm, rep.src.total_assembly(), rep.backward,
                         *rep.backward_code, rep.budget, &diag))
      return fail("backward code fails tracking: " + diag);
  }
  return true;
}

Morphism normalize(const MorphismRep& rep) {
  std::string diag;
  if (!validate_rep(rep, &diag)) throw InvalidRep("normalize: " + diag);
  PullbackResult pb = canonical_apex(rep.src, rep.dst, rep.forward);
  FinMap backward_norm;
  if (rep.apex == pb.apex && rep.apex_to_src_base == pb.proj1 &&
      rep.apex_to_dst_total == pb.proj2) {
    backward_norm = rep.backward;
  } else {
    // theta: canonical apex -> rep apex, the unique comparison iso.
    std::map<std::string, std::string> inv;
    for (const auto& a : rep.apex.elements())
      inv[pair_label(rep.apex_to_src_base(a), rep.apex_to_dst_total(a))] = a;
    std::map<std::string, std::string> theta;
    for (const auto& c : pb.apex.elements()) theta[c] = inv.at(c);
    backward_norm = compose(rep.backward, FinMap(pb.apex, rep.apex, std::move(theta)));
  }
  return Morphism{rep.src,          rep.dst,           rep.forward,
                  backward_norm,    rep.forward_code,  rep.backward_code,
                  rep.budget,       std::nullopt};
}

Morphism identity_morphism(const Container& p) {
  FinMap fwd = identity(p.positions());
  PullbackResult pb = canonical_apex(p, p, fwd);
  MorphismRep rep{p, p, fwd, pb.apex, pb.proj1, pb.proj2, pb.proj2,
                  std::nullopt, std::nullopt};
  if (p.kind() == BaseKind::PAsm) {
    rep.forward_code = code_ident();
    rep.backward_code = code_snd();
    rep.budget = p.tracked_bundle().budget;
  }
  return normalize(rep);
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (!(inner.dst == outer.src))
    throw TypeMismatch("compose: morphisms do not share an intermediate container");
  FinMap fwd = compose(outer.forward, inner.forward);
  PullbackResult pb = canonical_apex(inner.src, outer.dst, fwd);
  std::map<std::string, std::string> graph;
  for (const auto& a : pb.apex.elements()) {
    const std::string& u = pb.proj1(a);
    const std::string& z = pb.proj2(a);
    const std::string& y = outer.backward(pair_label(inner.forward(u), z));
    graph[a] = inner.backward(pair_label(u, y));
  }
  MorphismRep rep{inner.src, outer.dst, fwd, pb.apex, pb.proj1, pb.proj2,
                  FinMap(pb.apex, inner.src.directions(), std::move(graph)),
                  std::nullopt, std::nullopt};
  if (inner.src.kind() == BaseKind::PAsm) {
    Term a = Term::var("a");
    Term fst_a = Term::app(code_fst(), a);
    Term snd_a = Term::app(code_snd(), a);
    Term mid = Term::app(
        *outer.backward_code,
        Term::app(Term::app(code_pair(), Term::app(*inner.forward_code, fst_a)),
                  snd_a));
    Term bwd = bracket_abstract(
        "a", Term::app(*inner.backward_code,
                       Term::app(Term::app(code_pair(), fst_a), mid)));
    rep.forward_code = bracket_abstract(
        "x", Term::app(*outer.forward_code,
                       Term::app(*inner.forward_code, Term::var("x"))));
    rep.backward_code = bwd;
    rep.budget = EvalBudget{inner.budget.max_steps + outer.budget.max_steps + 4096};
  }
  return normalize(rep);
}

bool is_answerable(const Container& p) { return is_surjective(p.bundle()); }

Container make_container(FinMap bundle) { return Container::finset(std::move(bundle)); }
Container make_container(TrackedMap bundle) { return Container::pasm(std::move(bundle)); }

std::vector<FinMap> fiber_respecting_backwards(const Container& src,
                                               const PullbackResult& apex) {
  std::vector<FinMap> out;
  const auto& elems = apex.apex.elements();
  std::vector<std::vector<std::string>> choices;
  for (const auto& a : elems) {
    choices.push_back(fiber(src.bundle(), apex.proj1(a)));
    if (choices.back().empty()) return out;  // no backward map exists
  }
  std::vector<std::size_t> odo(elems.size(), 0);
  while (true) {
    std::map<std::string, std::string> graph;
    for (std::size_t i = 0; i < elems.size(); ++i) graph[elems[i]] = choices[i][odo[i]];
    out.push_back(FinMap(apex.apex, src.directions(), std::move(graph)));
    std::size_t k = elems.size();
    while (k > 0 && ++odo[k - 1] == choices[k - 1].size()) odo[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

namespace {

FindResult find_finset(const Container& p, const Container& q) {
  std::map<std::string, std::string> fwd_graph;
  for (const auto& u : p.positions().elements()) {
    bool u_answerable = !fiber(p.bundle(), u).empty();
    std::optional<std::string> target;
    for (const auto& v : q.positions().elements()) {
      if (u_answerable || fiber(q.bundle(), v).empty()) {
        target = v;
        break;
      }
    }
    if (!target) return FindResult{std::nullopt, true, {}};
    fwd_graph[u] = *target;
  }
  FinMap fwd(p.positions(), q.positions(), std::move(fwd_graph));
  PullbackResult pb = canonical_apex(p, q, fwd);
  std::map<std::string, std::string> bwd_graph;
  for (const auto& a : pb.apex.elements())
    bwd_graph[a] = fiber(p.bundle(), pb.proj1(a)).front();
  Morphism m = normalize(make_rep(
      p, q, fwd, FinMap(pb.apex, p.directions(), std::move(bwd_graph))));
  return FindResult{std::move(m), true, {}};
}

// A pasm backward search may run against an alternative presentation of the
// pullback apex that realizes a pair by the realizer of its direction
// component alone. That presentation is isomorphic to the canonical one
// whenever every source position shares a single realizer, which makes the
// first projection trackable by a constant code.
std::optional<Term> shared_position_realizer(const Container& p) {
  std::optional<Term> shared;
  for (const auto& u : p.positions().elements()) {
    const auto& codes = p.base_assembly().realizers_of(u);
    if (codes.size() != 1) return std::nullopt;
    if (!shared)
      shared = codes.front();
    else if (!(*shared == codes.front()))
      return std::nullopt;
  }
  return shared;
}

FindResult find_pasm(const Container& p, const Container& q, SearchBounds bounds) {
  ApplyCache cache;
  bool base_shared = shared_position_realizer(p).has_value();
  for (const FinMap& fwd : all_maps(p.positions(), q.positions())) {
    std::optional<Term> e_fwd =
        search_tracking(p.base_assembly(), q.base_assembly(), fwd,
                        bounds.code_size, bounds.budget, &cache);
    if (!e_fwd) continue;
    PullbackResult pb = canonical_apex(p, q, fwd);
    PartitionedAssembly apex_asm = canonical_apex_assembly(p, q, fwd, pb.apex);
    std::optional<PartitionedAssembly> apex_snd;
    if (base_shared) {
      std::map<std::string, std::vector<Term>> realizers;
      for (const auto& a : pb.apex.elements())
        realizers[a] = {q.total_assembly().realizers_of(pb.proj2(a)).front()};
      apex_snd = PartitionedAssembly(pb.apex, std::move(realizers));
    }
    for (const FinMap& bwd : fiber_respecting_backwards(p, pb)) {
      std::optional<Term> e_bwd =
          search_tracking(apex_asm, p.total_assembly(), bwd, bounds.code_size,
                          bounds.budget, &cache);
      EvalBudget rep_budget = bounds.budget;
      if (!e_bwd && apex_snd) {
        std::optional<Term> e = search_tracking(*apex_snd, p.total_assembly(),
                                                bwd, bounds.code_size,
                                                bounds.budget, &cache);
        if (e) {
          e_bwd = bracket_abstract(
              "a", Term::app(*e, Term::app(code_snd(), Term::var("a"))));
          rep_budget = EvalBudget{bounds.budget.max_steps + 256};
        }
      }
      if (!e_bwd) continue;
      Morphism m = normalize(
          make_rep_pasm(p, q, fwd, *e_fwd, bwd, *e_bwd, rep_budget));
      m.found_at = bounds;
      return FindResult{std::move(m), true, bounds};
    }
  }
  return FindResult{std::nullopt, false, bounds};
}

}  // namespace

FindResult find_morphism(const Container& p, const Container& q,
                         SearchBounds bounds) {
  if (p.kind() != q.kind())
    throw KindMismatch("find_morphism: containers have different base kinds");
  if (bounds.budget.max_steps <= 0) bounds.budget = EvalBudget{};
  if (p.kind() == BaseKind::FinSet) return find_finset(p, q);
  return find_pasm(p, q, bounds);
}

std::vector<Morphism> enumerate_morphisms(const Container& p, const Container& q) {
  if (p.kind() != BaseKind::FinSet || q.kind() != BaseKind::FinSet)
    throw KindMismatch("enumerate_morphisms: finset containers only");
  std::vector<Morphism> out;
  for (const FinMap& fwd : all_maps(p.positions(), q.positions())) {
    PullbackResult pb = canonical_apex(p, q, fwd);
    for (const FinMap& bwd : fiber_respecting_backwards(p, pb))
      out.push_back(normalize(make_rep(p, q, fwd, bwd)));
  }
  return out;
}

}  // namespace wcont
