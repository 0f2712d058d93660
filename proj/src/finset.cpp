#include "wcont/finset.hpp"

#include <algorithm>

namespace wcont {

FinSet::FinSet(std::vector<std::string> labels) : elements_(std::move(labels)) {
  std::sort(elements_.begin(), elements_.end());
  auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end())
    throw Error("FinSet: duplicate label \"" + *dup + "\"");
}

bool FinSet::contains(const std::string& label) const {
  return std::binary_search(elements_.begin(), elements_.end(), label);
}

FinMap::FinMap(FinSet dom, FinSet cod, std::map<std::string, std::string> graph)
    : dom_(std::move(dom)), cod_(std::move(cod)), graph_(std::move(graph)) {
  if (graph_.size() != dom_.size())
    throw Error("FinMap: graph not defined on exactly the domain");
  for (const auto& [k, v] : graph_) {
    if (!dom_.contains(k))
      throw Error("FinMap: graph key \"" + k + "\" not in domain");
    if (!cod_.contains(v))
      throw Error("FinMap: image \"" + v + "\" of \"" + k + "\" not in codomain");
  }
}

const std::string& FinMap::operator()(const std::string& label) const {
  auto it = graph_.find(label);
  if (it == graph_.end())
    throw Error("FinMap: \"" + label + "\" outside domain");
  return it->second;
}

std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

std::string inl_label(const std::string& a) { return "inl:" + a; }
std::string inr_label(const std::string& b) { return "inr:" + b; }

std::string fn_label(const std::map<std::string, std::string>& graph) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : graph) {
    if (!first) out += ",";
    first = false;
    out += k + "->" + v;
  }
  return out + "}";
}

FinMap identity(const FinSet& a) {
  std::map<std::string, std::string> graph;
  for (const auto& x : a.elements()) graph[x] = x;
  return FinMap(a, a, std::move(graph));
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.cod() != g.dom())
    throw CodDomMismatch("compose: cod of inner map differs from dom of outer map");
  std::map<std::string, std::string> graph;
  for (const auto& [x, y] : f.graph()) graph[x] = g(y);
  return FinMap(f.dom(), g.cod(), std::move(graph));
}

FinMap constant_map(const FinSet& dom, const FinSet& cod, const std::string& target) {
  std::map<std::string, std::string> graph;
  for (const auto& x : dom.elements()) graph[x] = target;
  return FinMap(dom, cod, std::move(graph));
}

bool is_injective(const FinMap& f) {
  std::vector<std::string> seen;
  for (const auto& [_, v] : f.graph()) seen.push_back(v);
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool is_surjective(const FinMap& f) {
  std::vector<std::string> image;
  for (const auto& [_, v] : f.graph()) image.push_back(v);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image.size() == f.cod().size();
}

bool is_bijective(const FinMap& f) { return is_injective(f) && is_surjective(f); }

FinMap inverse(const FinMap& f) {
  if (!is_bijective(f)) throw Error("inverse: map is not a bijection");
  std::map<std::string, std::string> graph;
  for (const auto& [k, v] : f.graph()) graph[v] = k;
  return FinMap(f.cod(), f.dom(), std::move(graph));
}

PullbackResult pullback(const FinMap& f, const FinMap& g) {
  if (f.cod() != g.cod())
    throw CodDomMismatch("pullback: maps do not share a codomain");
  std::vector<std::string> apex_labels;
  std::map<std::string, std::string> p1, p2;
  for (const auto& a : f.dom().elements()) {
    for (const auto& b : g.dom().elements()) {
      if (f(a) == g(b)) {
        std::string lab = pair_label(a, b);
        apex_labels.push_back(lab);
        p1[lab] = a;
        p2[lab] = b;
      }
    }
  }
  FinSet apex(std::move(apex_labels));
  return PullbackResult{apex, FinMap(apex, f.dom(), std::move(p1)),
                        FinMap(apex, g.dom(), std::move(p2))};
}

FinMap mediating(const PullbackResult& pb, const FinMap& f, const FinMap& g,
                 const FinMap& alpha, const FinMap& beta) {
  if (alpha.dom() != beta.dom())
    throw CodDomMismatch("mediating: cone legs have different sources");
  if (alpha.cod() != g.dom() || beta.cod() != f.dom())
    throw CodDomMismatch("mediating: cone legs badly typed");
  std::map<std::string, std::string> graph;
  for (const auto& z : alpha.dom().elements()) {
    if (f(beta(z)) != g(alpha(z)))
      throw SquareDoesNotCommute("mediating: outer square does not commute at \"" + z + "\"");
    std::string lab = pair_label(beta(z), alpha(z));
    if (!pb.apex.contains(lab))
      throw SquareDoesNotCommute("mediating: cone misses the apex at \"" + z + "\"");
    graph[z] = lab;
  }
  return FinMap(alpha.dom(), pb.apex, std::move(graph));
}

FinSet terminal() { return FinSet({"*"}); }
FinSet initial() { return FinSet(std::vector<std::string>{}); }

FinSet product_set(const FinSet& a, const FinSet& b) {
  std::vector<std::string> labels;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) labels.push_back(pair_label(x, y));
  return FinSet(std::move(labels));
}

FinSet coproduct_set(const FinSet& a, const FinSet& b) {
  std::vector<std::string> labels;
  for (const auto& x : a.elements()) labels.push_back(inl_label(x));
  for (const auto& y : b.elements()) labels.push_back(inr_label(y));
  return FinSet(std::move(labels));
}

FinMap product_proj1(const FinSet& a, const FinSet& b) {
  std::map<std::string, std::string> graph;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) graph[pair_label(x, y)] = x;
  return FinMap(product_set(a, b), a, std::move(graph));
}

FinMap product_proj2(const FinSet& a, const FinSet& b) {
  std::map<std::string, std::string> graph;
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) graph[pair_label(x, y)] = y;
  return FinMap(product_set(a, b), b, std::move(graph));
}

FinMap pairing(const FinMap& f1, const FinMap& f2) {
  if (f1.dom() != f2.dom())
    throw CodDomMismatch("pairing: components have different sources");
  std::map<std::string, std::string> graph;
  for (const auto& z : f1.dom().elements())
    graph[z] = pair_label(f1(z), f2(z));
  return FinMap(f1.dom(), product_set(f1.cod(), f2.cod()), std::move(graph));
}

FinMap product_map(const FinMap& f, const FinMap& g) {
  std::map<std::string, std::string> graph;
  for (const auto& x : f.dom().elements())
    for (const auto& y : g.dom().elements())
      graph[pair_label(x, y)] = pair_label(f(x), g(y));
  return FinMap(product_set(f.dom(), g.dom()), product_set(f.cod(), g.cod()),
                std::move(graph));
}

FinMap coproduct_inl(const FinSet& a, const FinSet& b) {
  std::map<std::string, std::string> graph;
  for (const auto& x : a.elements()) graph[x] = inl_label(x);
  return FinMap(a, coproduct_set(a, b), std::move(graph));
}

FinMap coproduct_inr(const FinSet& a, const FinSet& b) {
  std::map<std::string, std::string> graph;
  for (const auto& y : b.elements()) graph[y] = inr_label(y);
  return FinMap(b, coproduct_set(a, b), std::move(graph));
}

FinMap copairing(const FinMap& f1, const FinMap& f2) {
  if (f1.cod() != f2.cod())
    throw CodDomMismatch("copairing: components have different targets");
  std::map<std::string, std::string> graph;
  for (const auto& x : f1.dom().elements()) graph[inl_label(x)] = f1(x);
  for (const auto& y : f2.dom().elements()) graph[inr_label(y)] = f2(y);
  return FinMap(coproduct_set(f1.dom(), f2.dom()), f1.cod(), std::move(graph));
}

FinMap coproduct_map(const FinMap& f, const FinMap& g) {
  std::map<std::string, std::string> graph;
  for (const auto& x : f.dom().elements()) graph[inl_label(x)] = inl_label(f(x));
  for (const auto& y : g.dom().elements()) graph[inr_label(y)] = inr_label(g(y));
  return FinMap(coproduct_set(f.dom(), g.dom()), coproduct_set(f.cod(), g.cod()),
                std::move(graph));
}

FinMap bang_to_terminal(const FinSet& a) {
  return constant_map(a, terminal(), "*");
}

FinMap bang_from_initial(const FinSet& a) {
  return FinMap(initial(), a, {});
}

FinSet exponential_set(const FinSet& a, const FinSet& b) {
  std::vector<std::string> labels;
  for (const auto& m : all_maps(a, b)) labels.push_back(fn_label(m.graph()));
  return FinSet(std::move(labels));
}

FinMap distributor(const FinSet& a, const FinSet& b, const FinSet& c) {
  FinSet bc = coproduct_set(b, c);
  FinSet lhs = product_set(a, bc);
  FinSet rhs = coproduct_set(product_set(a, b), product_set(a, c));
  std::map<std::string, std::string> graph;
  for (const auto& x : a.elements()) {
    for (const auto& y : b.elements())
      graph[pair_label(x, inl_label(y))] = inl_label(pair_label(x, y));
    for (const auto& z : c.elements())
      graph[pair_label(x, inr_label(z))] = inr_label(pair_label(x, z));
  }
  return FinMap(lhs, rhs, std::move(graph));
}

SliceObj sigma_along(const FinMap& f, const SliceObj& a) {
  if (a.base != f.dom())
    throw BaseMismatch("sigma_along: slice base differs from dom of f");
  return SliceObj{a.total, f.cod(), compose(f, a.map)};
}

SliceObj reindex(const FinMap& f, const SliceObj& b) {
  if (b.base != f.cod())
    throw BaseMismatch("reindex: slice base differs from cod of f");
  PullbackResult pb = pullback(f, b.map);
  return SliceObj{pb.apex, f.dom(), pb.proj1};
}

std::vector<std::string> fiber(const FinMap& map, const std::string& base_point) {
  std::vector<std::string> out;
  for (const auto& [x, y] : map.graph())
    if (y == base_point) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

SliceObj pi_along(const FinMap& f, const SliceObj& a) {
  if (a.base != f.dom())
    throw BaseMismatch("pi_along: slice base differs from dom of f");
  std::vector<std::string> total_labels;
  std::map<std::string, std::string> bundle;
  for (const auto& j : f.cod().elements()) {
    std::vector<std::string> index = fiber(f, j);
    // Sections of a.map over the fiber f^-1(j).
    std::vector<std::vector<std::string>> choices;
    bool empty_fiber = false;
    for (const auto& i : index) {
      choices.push_back(fiber(a.map, i));
      if (choices.back().empty()) empty_fiber = true;
    }
    if (empty_fiber) continue;
    std::vector<std::size_t> odo(index.size(), 0);
    while (true) {
      std::map<std::string, std::string> section;
      for (std::size_t k = 0; k < index.size(); ++k)
        section[index[k]] = choices[k][odo[k]];
      std::string lab = pair_label(j, fn_label(section));
      total_labels.push_back(lab);
      bundle[lab] = j;
      // Advance the odometer; empty index yields the single empty section.
      std::size_t k = index.size();
      while (k > 0 && ++odo[k - 1] == choices[k - 1].size()) odo[--k] = 0;
      if (k == 0) break;
    }
  }
  FinSet total(std::move(total_labels));
  return SliceObj{total, f.cod(), FinMap(total, f.cod(), std::move(bundle))};
}

std::vector<FinMap> all_maps(const FinSet& a, const FinSet& b) {
  std::vector<FinMap> out;
  if (a.empty()) {
    out.push_back(FinMap(a, b, {}));
    return out;
  }
  if (b.empty()) return out;  // no maps from nonempty to empty
  std::vector<std::size_t> odo(a.size(), 0);
  while (true) {
    std::map<std::string, std::string> graph;
    for (std::size_t k = 0; k < a.size(); ++k)
      graph[a.elements()[k]] = b.elements()[odo[k]];
    out.push_back(FinMap(a, b, std::move(graph)));
    std::size_t k = a.size();
    while (k > 0 && ++odo[k - 1] == b.size()) odo[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<FinMap> slice_homs(const SliceObj& a, const SliceObj& b) {
  if (a.base != b.base)
    throw BaseMismatch("slice_homs: objects live over different bases");
  std::vector<FinMap> out;
  for (const auto& h : all_maps(a.total, b.total)) {
    if (compose(b.map, h) == a.map) out.push_back(h);
  }
  return out;
}

}  // namespace wcont
