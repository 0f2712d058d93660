#include "wcont/operators.hpp"

#include <algorithm>

namespace wcont {

namespace {

// Lambda-building shorthand for tracking codes.
Term V(const char* n) { return Term::var(n); }
Term ap(const Term& f, const Term& x) { return Term::app(f, x); }
Term ap(const Term& f, const Term& x, const Term& y) { return ap(ap(f, x), y); }
Term P2(const Term& a, const Term& b) { return ap(code_pair(), a, b); }
Term F1(const Term& p) { return ap(code_fst(), p); }
Term S2(const Term& p) { return ap(code_snd(), p); }
Term L(const char* v, const Term& body) { return bracket_abstract(v, body); }

void require_same_kind(const Container& p, const Container& q, const char* op) {
  if (p.kind() != q.kind())
    throw KindMismatch(std::string(op) + ": containers have different base kinds");
}

EvalBudget join_budgets(const Container& p, const Container& q) {
  long base = kDefaultBudget;
  if (p.kind() == BaseKind::PAsm)
    base = std::max(base, p.tracked_bundle().budget.max_steps +
                              q.tracked_bundle().budget.max_steps);
  return EvalBudget{base + 4096};
}

std::vector<std::map<std::string, std::string>> all_graphs(
    const std::vector<std::string>& dom, const FinSet& cod) {
  std::vector<std::map<std::string, std::string>> out;
  if (dom.empty()) {
    out.push_back({});
    return out;
  }
  if (cod.empty()) return out;
  std::vector<std::size_t> odo(dom.size(), 0);
  while (true) {
    std::map<std::string, std::string> g;
    for (std::size_t i = 0; i < dom.size(); ++i) g[dom[i]] = cod.elements()[odo[i]];
    out.push_back(std::move(g));
    std::size_t k = dom.size();
    while (k > 0 && ++odo[k - 1] == cod.size()) odo[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace

Container initial_container(BaseKind kind) {
  FinMap bundle(initial(), initial(), {});
  if (kind == BaseKind::FinSet) return Container::finset(std::move(bundle));
  return Container::pasm(
      make_tracked(asm_initial(), asm_initial(), bundle, code_ident(), EvalBudget{}));
}

Container terminal_container(BaseKind kind) {
  FinMap bundle(initial(), terminal(), {});
  if (kind == BaseKind::FinSet) return Container::finset(std::move(bundle));
  return Container::pasm(
      make_tracked(asm_initial(), asm_terminal(), bundle, code_ident(), EvalBudget{}));
}

CoproductResult coproduct(const Container& p, const Container& q) {
  require_same_kind(p, q, "coproduct");
  FinMap bundle = coproduct_map(p.bundle(), q.bundle());
  Container c;
  if (p.kind() == BaseKind::FinSet) {
    c = Container::finset(bundle);
  } else {
    Assembly total = asm_coproduct(p.total_assembly(), q.total_assembly());
    Assembly base = asm_coproduct(p.base_assembly(), q.base_assembly());
    const Term& ep = p.tracked_bundle().code;
    const Term& eq = q.tracked_bundle().code;
    Term code = L("c", P2(F1(V("c")), ap(F1(V("c")), ap(eq, S2(V("c"))),
                                         ap(ep, S2(V("c"))))));
    c = Container::pasm(make_tracked(total, base, bundle, code, join_budgets(p, q)));
  }

  auto coproj = [&](const Container& side, bool left) {
    FinMap fwd = left ? coproduct_inl(p.positions(), q.positions())
                      : coproduct_inr(p.positions(), q.positions());
    PullbackResult pb = canonical_apex(side, c, fwd);
    std::map<std::string, std::string> graph;
    for (const auto& u : side.positions().elements()) {
      for (const auto& x : fiber(side.bundle(), u)) {
        std::string t = left ? inl_label(x) : inr_label(x);
        graph[pair_label(u, t)] = x;
      }
    }
    MorphismRep rep = make_rep(side, c, fwd,
                               FinMap(pb.apex, side.directions(), std::move(graph)));
    if (p.kind() == BaseKind::PAsm) {
      rep.forward_code = L("u", P2(code_underline(left ? 0 : 1), V("u")));
      rep.backward_code = L("a", S2(S2(V("a"))));
      rep.budget = join_budgets(p, q);
    }
    return normalize(rep);
  };
  Morphism inl = coproj(p, true);
  Morphism inr = coproj(q, false);
  return CoproductResult{std::move(c), std::move(inl), std::move(inr)};
}

Morphism copair(const Morphism& f, const Morphism& g) {
  if (!(f.dst == g.dst))
    throw TypeMismatch("copair: morphisms have different targets");
  CoproductResult cop = coproduct(f.src, g.src);
  const Container& c = cop.container;
  FinMap fwd = copairing(f.forward, g.forward);
  PullbackResult pb = canonical_apex(c, f.dst, fwd);
  std::map<std::string, std::string> graph;
  for (const auto& a : pb.apex.elements()) {
    const std::string& t = pb.proj1(a);
    const std::string& z = pb.proj2(a);
    bool left = t.rfind("inl:", 0) == 0;
    std::string u = t.substr(4);
    if (left)
      graph[a] = inl_label(f.backward(pair_label(u, z)));
    else
      graph[a] = inr_label(g.backward(pair_label(u, z)));
  }
  MorphismRep rep = make_rep(c, f.dst, fwd,
                             FinMap(pb.apex, c.directions(), std::move(graph)));
  if (c.kind() == BaseKind::PAsm) {
    Term arg = P2(S2(F1(V("a"))), S2(V("a")));
    rep.forward_code =
        L("u", ap(F1(V("u")), ap(*g.forward_code, S2(V("u"))),
                  ap(*f.forward_code, S2(V("u")))));
    rep.backward_code =
        L("a", P2(F1(F1(V("a"))), ap(F1(F1(V("a"))), ap(*g.backward_code, arg),
                                     ap(*f.backward_code, arg))));
    rep.budget = EvalBudget{f.budget.max_steps + g.budget.max_steps + 8192};
  }
  return normalize(rep);
}

ProductResult product(const Container& p, const Container& q) {
  require_same_kind(p, q, "product");
  FinMap bundle = copairing(product_map(p.bundle(), identity(q.positions())),
                            product_map(identity(p.positions()), q.bundle()));
  Container c;
  if (p.kind() == BaseKind::FinSet) {
    c = Container::finset(bundle);
  } else {
    Assembly total = asm_coproduct(asm_product(p.total_assembly(), q.base_assembly()),
                                   asm_product(p.base_assembly(), q.total_assembly()));
    Assembly base = asm_product(p.base_assembly(), q.base_assembly());
    const Term& ep = p.tracked_bundle().code;
    const Term& eq = q.tracked_bundle().code;
    Term left_case = P2(ap(ep, F1(S2(V("c")))), S2(S2(V("c"))));
    Term right_case = P2(F1(S2(V("c"))), ap(eq, S2(S2(V("c")))));
    Term code = L("c", ap(F1(V("c")), right_case, left_case));
    c = Container::pasm(make_tracked(total, base, bundle, code, join_budgets(p, q)));
  }

  auto proj = [&](const Container& side, bool left) {
    FinMap fwd = left ? product_proj1(p.positions(), q.positions())
                      : product_proj2(p.positions(), q.positions());
    PullbackResult pb = canonical_apex(c, side, fwd);
    std::map<std::string, std::string> graph;
    for (const auto& u1 : p.positions().elements()) {
      for (const auto& u2 : q.positions().elements()) {
        std::string base_pt = pair_label(u1, u2);
        if (left) {
          for (const auto& x : fiber(p.bundle(), u1))
            graph[pair_label(base_pt, x)] = inl_label(pair_label(x, u2));
        } else {
          for (const auto& y : fiber(q.bundle(), u2))
            graph[pair_label(base_pt, y)] = inr_label(pair_label(u1, y));
        }
      }
    }
    MorphismRep rep = make_rep(c, side, fwd,
                               FinMap(pb.apex, c.directions(), std::move(graph)));
    if (p.kind() == BaseKind::PAsm) {
      rep.forward_code = left ? code_fst() : code_snd();
      rep.backward_code =
          left ? L("a", P2(code_underline(0), P2(S2(V("a")), S2(F1(V("a"))))))
               : L("a", P2(code_underline(1), P2(F1(F1(V("a"))), S2(V("a")))));
      rep.budget = join_budgets(p, q);
    }
    return normalize(rep);
  };
  Morphism pr1 = proj(p, true);
  Morphism pr2 = proj(q, false);
  return ProductResult{std::move(c), std::move(pr1), std::move(pr2)};
}

Morphism pair_morphisms(const Morphism& f, const Morphism& g) {
  if (!(f.src == g.src))
    throw TypeMismatch("pair_morphisms: morphisms have different sources");
  ProductResult prod = product(f.dst, g.dst);
  const Container& c = prod.container;
  const Container& r = f.src;
  FinMap fwd = pairing(f.forward, g.forward);
  PullbackResult pb = canonical_apex(r, c, fwd);
  std::map<std::string, std::string> graph;
  for (const auto& w : r.positions().elements()) {
    const std::string& u1 = f.forward(w);
    const std::string& u2 = g.forward(w);
    for (const auto& x : fiber(f.dst.bundle(), u1))
      graph[pair_label(w, inl_label(pair_label(x, u2)))] =
          f.backward(pair_label(w, x));
    for (const auto& y : fiber(g.dst.bundle(), u2))
      graph[pair_label(w, inr_label(pair_label(u1, y)))] =
          g.backward(pair_label(w, y));
  }
  MorphismRep rep = make_rep(r, c, fwd,
                             FinMap(pb.apex, r.directions(), std::move(graph)));
  if (r.kind() == BaseKind::PAsm) {
    rep.forward_code = L("w", P2(ap(*f.forward_code, V("w")),
                                 ap(*g.forward_code, V("w"))));
    Term left_arg = P2(F1(V("a")), F1(S2(S2(V("a")))));
    Term right_arg = P2(F1(V("a")), S2(S2(S2(V("a")))));
    rep.backward_code = L("a", ap(F1(S2(V("a"))), ap(*g.backward_code, right_arg),
                                  ap(*f.backward_code, left_arg)));
    rep.budget = EvalBudget{f.budget.max_steps + g.budget.max_steps + 8192};
  }
  return normalize(rep);
}

IsoPair distributivity(const Container& p1, const Container& p2, const Container& q) {
  require_same_kind(p1, p2, "distributivity");
  require_same_kind(p1, q, "distributivity");
  Container lhs = coproduct(product(p1, q).container, product(p2, q).container).container;
  Container rhs = product(coproduct(p1, p2).container, q).container;

  auto tag_label = [](bool left, const std::string& s) {
    return left ? inl_label(s) : inr_label(s);
  };

  std::map<std::string, std::string> fwd_graph, bwd_fwd_graph;
  for (int side = 0; side < 2; ++side) {
    const Container& pi = side == 0 ? p1 : p2;
    for (const auto& u : pi.positions().elements()) {
      for (const auto& v : q.positions().elements()) {
        std::string from = tag_label(side == 0, pair_label(u, v));
        std::string to = pair_label(tag_label(side == 0, u), v);
        fwd_graph[from] = to;
        bwd_fwd_graph[to] = from;
      }
    }
  }
  FinMap c_fwd(lhs.positions(), rhs.positions(), fwd_graph);
  FinMap c_bwd(rhs.positions(), lhs.positions(), bwd_fwd_graph);

  // to : lhs -> rhs, backward shuffles the target directions back.
  PullbackResult pb_to = canonical_apex(lhs, rhs, c_fwd);
  std::map<std::string, std::string> to_graph;
  for (int side = 0; side < 2; ++side) {
    const Container& pi = side == 0 ? p1 : p2;
    bool left = side == 0;
    for (const auto& u : pi.positions().elements()) {
      for (const auto& v : q.positions().elements()) {
        std::string b = tag_label(left, pair_label(u, v));
        for (const auto& x : fiber(pi.bundle(), u)) {
          std::string t = inl_label(pair_label(tag_label(left, x), v));
          to_graph[pair_label(b, t)] = tag_label(left, inl_label(pair_label(x, v)));
        }
        for (const auto& y : fiber(q.bundle(), v)) {
          std::string t = inr_label(pair_label(tag_label(left, u), y));
          to_graph[pair_label(b, t)] = tag_label(left, inr_label(pair_label(u, y)));
        }
      }
    }
  }
  MorphismRep to_rep = make_rep(lhs, rhs, c_fwd,
                                FinMap(pb_to.apex, lhs.directions(), std::move(to_graph)));

  // from : rhs -> lhs, the inverse rearrangement.
  PullbackResult pb_from = canonical_apex(rhs, lhs, c_bwd);
  std::map<std::string, std::string> from_graph;
  for (int side = 0; side < 2; ++side) {
    const Container& pi = side == 0 ? p1 : p2;
    bool left = side == 0;
    for (const auto& u : pi.positions().elements()) {
      for (const auto& v : q.positions().elements()) {
        std::string b = pair_label(tag_label(left, u), v);
        for (const auto& x : fiber(pi.bundle(), u)) {
          std::string t = tag_label(left, inl_label(pair_label(x, v)));
          from_graph[pair_label(b, t)] = inl_label(pair_label(tag_label(left, x), v));
        }
        for (const auto& y : fiber(q.bundle(), v)) {
          std::string t = tag_label(left, inr_label(pair_label(u, y)));
          from_graph[pair_label(b, t)] = inr_label(pair_label(tag_label(left, u), y));
        }
      }
    }
  }
  MorphismRep from_rep = make_rep(rhs, lhs, c_bwd,
                                  FinMap(pb_from.apex, rhs.directions(),
                                         std::move(from_graph)));

  if (p1.kind() == BaseKind::PAsm) {
    EvalBudget budget = join_budgets(lhs, rhs);
    to_rep.forward_code =
        L("p", P2(P2(F1(V("p")), F1(S2(V("p")))), S2(S2(V("p")))));
    Term t = S2(V("a"));
    to_rep.backward_code =
        L("a", P2(F1(F1(S2(t))), P2(F1(t), P2(S2(F1(S2(t))), S2(S2(t))))));
    to_rep.budget = budget;
    from_rep.forward_code =
        L("p", P2(F1(F1(V("p"))), P2(S2(F1(V("p"))), S2(V("p")))));
    from_rep.backward_code =
        L("a", P2(F1(S2(t)), P2(P2(F1(t), F1(S2(S2(t)))), S2(S2(S2(t))))));
    from_rep.budget = budget;
  }
  return IsoPair{normalize(to_rep), normalize(from_rep)};
}

Container tensor(const Container& p, const Container& q) {
  require_same_kind(p, q, "tensor");
  FinMap bundle = product_map(p.bundle(), q.bundle());
  if (p.kind() == BaseKind::FinSet) return Container::finset(std::move(bundle));
  Assembly total = asm_product(p.total_assembly(), q.total_assembly());
  Assembly base = asm_product(p.base_assembly(), q.base_assembly());
  Term code = L("p", P2(ap(p.tracked_bundle().code, F1(V("p"))),
                        ap(q.tracked_bundle().code, S2(V("p")))));
  return Container::pasm(make_tracked(total, base, bundle, code, join_budgets(p, q)));
}

IsoPair tensor_coproduct_iso(const Container& p, const Container& q,
                             const Container& r) {
  require_same_kind(p, q, "tensor_coproduct_iso");
  require_same_kind(p, r, "tensor_coproduct_iso");
  Container lhs = tensor(p, coproduct(q, r).container);
  Container rhs = coproduct(tensor(p, q), tensor(p, r)).container;

  auto tag_label = [](bool left, const std::string& s) {
    return left ? inl_label(s) : inr_label(s);
  };

  std::map<std::string, std::string> fwd_graph, bwd_fwd_graph;
  for (int side = 0; side < 2; ++side) {
    const Container& qi = side == 0 ? q : r;
    bool left = side == 0;
    for (const auto& u : p.positions().elements()) {
      for (const auto& v : qi.positions().elements()) {
        std::string from = pair_label(u, tag_label(left, v));
        std::string to = tag_label(left, pair_label(u, v));
        fwd_graph[from] = to;
        bwd_fwd_graph[to] = from;
      }
    }
  }
  FinMap c_fwd(lhs.positions(), rhs.positions(), fwd_graph);
  FinMap c_bwd(rhs.positions(), lhs.positions(), bwd_fwd_graph);

  PullbackResult pb_to = canonical_apex(lhs, rhs, c_fwd);
  PullbackResult pb_from = canonical_apex(rhs, lhs, c_bwd);
  std::map<std::string, std::string> to_graph, from_graph;
  for (int side = 0; side < 2; ++side) {
    const Container& qi = side == 0 ? q : r;
    bool left = side == 0;
    for (const auto& u : p.positions().elements()) {
      for (const auto& v : qi.positions().elements()) {
        for (const auto& x : fiber(p.bundle(), u)) {
          for (const auto& d : fiber(qi.bundle(), v)) {
            std::string lhs_total = pair_label(x, tag_label(left, d));
            std::string rhs_total = tag_label(left, pair_label(x, d));
            to_graph[pair_label(pair_label(u, tag_label(left, v)), rhs_total)] =
                lhs_total;
            from_graph[pair_label(tag_label(left, pair_label(u, v)), lhs_total)] =
                rhs_total;
          }
        }
      }
    }
  }
  MorphismRep to_rep = make_rep(lhs, rhs, c_fwd,
                                FinMap(pb_to.apex, lhs.directions(), std::move(to_graph)));
  MorphismRep from_rep = make_rep(rhs, lhs, c_bwd,
                                  FinMap(pb_from.apex, rhs.directions(),
                                         std::move(from_graph)));
  if (p.kind() == BaseKind::PAsm) {
    // <a,<b,c>> |-> <b,<a,c>> both on bases and (post-projection) directions.
    Term rot = L("p", P2(F1(S2(V("p"))), P2(F1(V("p")), S2(S2(V("p"))))));
    EvalBudget budget = join_budgets(lhs, rhs);
    to_rep.forward_code = rot;
    to_rep.backward_code = L("a", ap(rot, S2(V("a"))));
    to_rep.budget = budget;
    from_rep.forward_code = rot;
    from_rep.backward_code = L("a", ap(rot, S2(V("a"))));
    from_rep.budget = budget;
  }
  return IsoPair{normalize(to_rep), normalize(from_rep)};
}

Morphism tensor_product_exchange(const Container& p, const Container& q,
                                 const Container& r) {
  require_same_kind(p, q, "tensor_product_exchange");
  require_same_kind(p, r, "tensor_product_exchange");
  Container lhs = product(tensor(p, q), r).container;
  Container rhs = tensor(p, product(q, r).container);

  std::map<std::string, std::string> fwd_graph;
  for (const auto& u : p.positions().elements())
    for (const auto& v : q.positions().elements())
      for (const auto& w : r.positions().elements())
        fwd_graph[pair_label(pair_label(u, v), w)] =
            pair_label(u, pair_label(v, w));
  FinMap fwd(lhs.positions(), rhs.positions(), std::move(fwd_graph));

  PullbackResult pb = canonical_apex(lhs, rhs, fwd);
  std::map<std::string, std::string> graph;
  for (const auto& u : p.positions().elements()) {
    for (const auto& v : q.positions().elements()) {
      for (const auto& w : r.positions().elements()) {
        std::string b = pair_label(pair_label(u, v), w);
        for (const auto& x : fiber(p.bundle(), u)) {
          for (const auto& y : fiber(q.bundle(), v)) {
            std::string t = pair_label(x, inl_label(pair_label(y, w)));
            graph[pair_label(b, t)] = inl_label(pair_label(pair_label(x, y), w));
          }
          for (const auto& z : fiber(r.bundle(), w)) {
            std::string t = pair_label(x, inr_label(pair_label(v, z)));
            graph[pair_label(b, t)] = inr_label(pair_label(pair_label(u, v), z));
          }
        }
      }
    }
  }
  MorphismRep rep = make_rep(lhs, rhs, fwd,
                             FinMap(pb.apex, lhs.directions(), std::move(graph)));
  if (p.kind() == BaseKind::PAsm) {
    rep.forward_code =
        L("p", P2(F1(F1(V("p"))), P2(S2(F1(V("p"))), S2(V("p")))));
    Term t = S2(V("a"));
    Term tag = F1(S2(t));
    Term c1 = F1(S2(S2(t)));
    Term c2 = S2(S2(S2(t)));
    Term left_case = P2(code_underline(0), P2(P2(F1(t), c1), c2));
    Term right_case = P2(code_underline(1), P2(F1(F1(V("a"))), c2));
    rep.backward_code = L("a", ap(tag, right_case, left_case));
    rep.budget = join_budgets(lhs, rhs);
  }
  return normalize(rep);
}

StarData star_with_data(const Container& p, const Container& q) {
  if (p.kind() != BaseKind::FinSet || q.kind() != BaseKind::FinSet)
    throw KindMismatch("star: finset containers only");
  StarData data;
  std::vector<std::string> pos_labels, dir_labels;
  std::map<std::string, std::string> bundle;
  for (const auto& v : q.positions().elements()) {
    std::vector<std::string> yv = fiber(q.bundle(), v);
    for (auto& f : all_graphs(yv, p.positions())) {
      std::string pos = pair_label(v, fn_label(f));
      pos_labels.push_back(pos);
      data.positions[pos] = {v, f};
      for (const auto& y : yv) {
        for (const auto& x : fiber(p.bundle(), f.at(y))) {
          std::string dir = pair_label(pos, pair_label(y, x));
          dir_labels.push_back(dir);
          bundle[dir] = pos;
          data.directions[dir] = {pos, y, x};
        }
      }
    }
  }
  FinSet positions(std::move(pos_labels));
  FinSet directions(std::move(dir_labels));
  data.container =
      Container::finset(FinMap(directions, positions, std::move(bundle)));
  return data;
}

Container star(const Container& p, const Container& q) {
  return star_with_data(p, q).container;
}

Container star_p_bounded(const Container& p, const Container& q,
                         std::size_t size_bound, EvalBudget budget) {
  if (p.kind() != BaseKind::PAsm || q.kind() != BaseKind::PAsm)
    throw KindMismatch("star_p_bounded: pasm containers only");
  const std::vector<Term>& candidates = enumerate_terms(size_bound);
  std::vector<std::string> pos_labels, dir_labels;
  std::map<std::string, std::vector<Term>> pos_realizers, dir_realizers;
  std::map<std::string, std::string> bundle;

  for (const auto& v : q.positions().elements()) {
    const Term& rv = q.base_assembly().realizers_of(v).front();
    std::vector<std::string> yv = fiber(q.bundle(), v);

    // Tracking codes per fiberwise function; a fiber with no directions
    // only admits the canonical empty-function code.
    std::vector<std::pair<Term, std::map<std::string, std::string>>> tracked;
    if (yv.empty()) {
      if (code_ident().size() <= size_bound)
        tracked.push_back({code_ident(), {}});
    } else {
      // Normal forms of e . r_y for every candidate, computed once per y.
      std::map<std::string, std::vector<std::optional<Term>>> nf;
      for (const auto& y : yv) {
        const Term& ry = q.total_assembly().realizers_of(y).front();
        auto& column = nf[y];
        column.reserve(candidates.size());
        for (const Term& e : candidates) {
          EvalOutcome out = apply(e, ry, budget);
          column.push_back(out.normalized ? std::optional<Term>(out.term)
                                          : std::nullopt);
        }
      }
      for (auto& f : all_graphs(yv, p.positions())) {
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
          bool tracks = true;
          for (const auto& y : yv) {
            const auto& got = nf[y][ci];
            if (!got || !p.base_assembly().realizes(*got, f.at(y))) {
              tracks = false;
              break;
            }
          }
          if (tracks) tracked.push_back({candidates[ci], f});
        }
      }
    }

    for (const auto& [e, f] : tracked) {
      std::string pos = pair_label(e.str(), pair_label(v, fn_label(f)));
      pos_labels.push_back(pos);
      Term pos_code = make_pair(rv, e, budget);
      pos_realizers[pos] = {pos_code};
      for (const auto& y : yv) {
        const Term& ry = q.total_assembly().realizers_of(y).front();
        for (const auto& x : fiber(p.bundle(), f.at(y))) {
          const Term& rx = p.total_assembly().realizers_of(x).front();
          std::string dir = pair_label(pos, pair_label(y, x));
          dir_labels.push_back(dir);
          dir_realizers[dir] = {make_pair(pos_code, make_pair(ry, rx, budget), budget)};
          bundle[dir] = pos;
        }
      }
    }
  }
  PartitionedAssembly positions(FinSet(std::move(pos_labels)), std::move(pos_realizers));
  PartitionedAssembly directions(FinSet(std::move(dir_labels)), std::move(dir_realizers));
  FinMap fn(directions.carrier(), positions.carrier(), std::move(bundle));
  return Container::pasm(make_tracked(directions, positions, fn, code_fst(), budget));
}

PolyEval poly_eval(const Container& p, const FinSet& a) {
  if (p.kind() != BaseKind::FinSet)
    throw KindMismatch("poly_eval: finset containers only");
  PolyEval pe;
  pe.container = p;
  pe.argument = a;
  std::vector<std::string> labels;
  for (const auto& u : p.positions().elements()) {
    std::vector<std::string> xu = fiber(p.bundle(), u);
    for (auto& g : all_graphs(xu, a)) {
      std::string lab = pair_label(u, fn_label(g));
      labels.push_back(lab);
      pe.decode[lab] = PolyEval::Element{u, std::move(g)};
    }
  }
  pe.result = FinSet(std::move(labels));
  return pe;
}

FinMap poly_map(const Container& p, const FinMap& f) {
  PolyEval src = poly_eval(p, f.dom());
  PolyEval dst = poly_eval(p, f.cod());
  std::map<std::string, std::string> graph;
  for (const auto& [lab, el] : src.decode) {
    std::map<std::string, std::string> composed;
    for (const auto& [x, av] : el.assignment) composed[x] = f(av);
    graph[lab] = pair_label(el.position, fn_label(composed));
  }
  return FinMap(src.result, dst.result, std::move(graph));
}

std::uint64_t poly_card(const Container& p, std::uint64_t argument_card) {
  std::uint64_t total = 0;
  for (const auto& u : p.positions().elements()) {
    std::uint64_t pow = 1;
    for (std::size_t i = 0; i < fiber(p.bundle(), u).size(); ++i) {
      if (argument_card != 0 && pow > UINT64_MAX / std::max<std::uint64_t>(argument_card, 1))
        throw Error("poly_card: overflow");
      pow *= argument_card;
    }
    if (pow > UINT64_MAX - total) throw Error("poly_card: overflow");
    total += pow;
  }
  return total;
}

FinMap morphism_to_nat_trans(const Morphism& m, const FinSet& a) {
  if (m.src.kind() != BaseKind::FinSet)
    throw KindMismatch("morphism_to_nat_trans: finset morphisms only");
  PolyEval src = poly_eval(m.src, a);
  PolyEval dst = poly_eval(m.dst, a);
  std::map<std::string, std::string> graph;
  for (const auto& [lab, el] : src.decode) {
    const std::string& v = m.forward(el.position);
    std::map<std::string, std::string> composed;
    for (const auto& y : fiber(m.dst.bundle(), v))
      composed[y] = el.assignment.at(m.backward(pair_label(el.position, y)));
    graph[lab] = pair_label(v, fn_label(composed));
  }
  return FinMap(src.result, dst.result, std::move(graph));
}

bool naturality_check(const Morphism& m, const FinMap& f) {
  FinMap at_dom = morphism_to_nat_trans(m, f.dom());
  FinMap at_cod = morphism_to_nat_trans(m, f.cod());
  FinMap src_action = poly_map(m.src, f);
  FinMap dst_action = poly_map(m.dst, f);
  return compose(at_cod, src_action) == compose(dst_action, at_dom);
}

StarSemantics star_semantics(const Container& p, const Container& q, const FinSet& a) {
  StarData sd = star_with_data(p, q);
  StarSemantics sem;
  sem.star_side = poly_eval(sd.container, a);
  sem.inner = poly_eval(p, a);
  sem.outer = poly_eval(q, sem.inner.result);

  // Direction labels per star position, with their (y, x) decompositions.
  std::map<std::string, std::vector<std::tuple<std::string, std::string, std::string>>>
      by_position;
  for (const auto& [dir, decomp] : sd.directions)
    by_position[std::get<0>(decomp)].push_back({dir, std::get<1>(decomp),
                                                std::get<2>(decomp)});

  std::map<std::string, std::string> graph;
  for (const auto& [lab, el] : sem.star_side.decode) {
    const auto& [v, f] = sd.positions.at(el.position);
    // For each answer y of q, collect the p-evaluation element the section
    // assigns to the question f(y).
    std::map<std::string, std::map<std::string, std::string>> inner_assign;
    for (const auto& [dir, y, x] : by_position[el.position])
      inner_assign[y][x] = el.assignment.at(dir);
    std::map<std::string, std::string> outer_assign;
    for (const auto& [y, u] : f)
      outer_assign[y] = pair_label(u, fn_label(inner_assign[y]));
    graph[lab] = pair_label(v, fn_label(outer_assign));
  }
  sem.bijection = FinMap(sem.star_side.result, sem.outer.result, std::move(graph));
  return sem;
}

Morphism lemma5_witness(const Container& p, const Container& q, const Container& r) {
  if (p.kind() != BaseKind::FinSet || q.kind() != BaseKind::FinSet ||
      r.kind() != BaseKind::FinSet)
    throw KindMismatch("lemma5_witness: finset containers only");
  for (const Container* c : {&p, &q, &r}) {
    if (c->positions().size() > 2 || c->directions().size() > 2)
      throw SearchSpaceExceeded("lemma5_witness: carriers must have at most 2 elements");
  }
  Container lhs = product(star(p, q), r).container;
  Container rhs = star(product(p, r).container, q);
  FindResult found = find_morphism(lhs, rhs);
  if (!found.morphism)
    throw Error("lemma5_witness: exhaustive search found no morphism");
  return *found.morphism;
}

}  // namespace wcont
