#include "wcont/skterm.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace wcont {

namespace {

std::shared_ptr<const Term::Node> make_node(Term::Tag tag, std::string var,
                                            std::shared_ptr<const Term::Node> l,
                                            std::shared_ptr<const Term::Node> r) {
  auto n = std::make_shared<Term::Node>();
  n->tag = tag;
  n->var = std::move(var);
  n->left = std::move(l);
  n->right = std::move(r);
  n->size = n->left ? n->left->size + n->right->size : 1;
  if (tag != Term::Tag::App) n->normal.store(1, std::memory_order_relaxed);
  return n;
}

const std::shared_ptr<const Term::Node>& s_node() {
  static const auto n = make_node(Term::Tag::S, "", nullptr, nullptr);
  return n;
}

const std::shared_ptr<const Term::Node>& k_node() {
  static const auto n = make_node(Term::Tag::K, "", nullptr, nullptr);
  return n;
}

}  // namespace

Term::Term() : node_(s_node()) {}

Term Term::s() { return Term(s_node()); }
Term Term::k() { return Term(k_node()); }

Term Term::var(const std::string& name) {
  return Term(make_node(Tag::Var, name, nullptr, nullptr));
}

Term Term::app(const Term& f, const Term& x) {
  return Term(make_node(Tag::App, "", f.node_, x.node_));
}

bool Term::is_closed() const {
  if (tag() == Tag::Var) return false;
  if (tag() != Tag::App) return true;
  return left().is_closed() && right().is_closed();
}

bool Term::contains_var(const std::string& name) const {
  if (tag() == Tag::Var) return var_name() == name;
  if (tag() != Tag::App) return false;
  return left().contains_var(name) || right().contains_var(name);
}

namespace {

void print_into(const Term& t, std::string& out, bool parenthesize_apps) {
  switch (t.tag()) {
    case Term::Tag::S: out += 'S'; return;
    case Term::Tag::K: out += 'K'; return;
    case Term::Tag::Var: out += t.var_name(); return;
    case Term::Tag::App:
      if (parenthesize_apps) out += '(';
      print_into(t.left(), out, false);
      out += ' ';
      print_into(t.right(), out, true);
      if (parenthesize_apps) out += ')';
      return;
  }
}

}  // namespace

std::string Term::str() const {
  std::string out;
  print_into(*this, out, false);
  return out;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (tag() != other.tag() || size() != other.size()) return false;
  switch (tag()) {
    case Tag::S:
    case Tag::K: return true;
    case Tag::Var: return var_name() == other.var_name();
    case Tag::App:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

namespace {

int tag_rank(Term::Tag t) {
  switch (t) {
    case Term::Tag::S: return 0;
    case Term::Tag::K: return 1;
    case Term::Tag::Var: return 2;
    case Term::Tag::App: return 3;
  }
  return 4;
}

// -1 / 0 / 1 three-way structural comparison, tags ranked S < K < Var < App.
int structural_cmp(const Term& a, const Term& b) {
  if (a.raw() == b.raw()) return 0;
  int ra = tag_rank(a.tag()), rb = tag_rank(b.tag());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.tag()) {
    case Term::Tag::S:
    case Term::Tag::K: return 0;
    case Term::Tag::Var:
      return a.var_name() < b.var_name() ? -1 : (a.var_name() == b.var_name() ? 0 : 1);
    case Term::Tag::App: {
      int c = structural_cmp(a.left(), b.left());
      if (c != 0) return c;
      return structural_cmp(a.right(), b.right());
    }
  }
  return 0;
}

}  // namespace

bool TermLess::operator()(const Term& a, const Term& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return structural_cmp(a, b) < 0;
}

std::optional<Term> contract_leftmost(const Term& root) {
  struct Frame {
    std::shared_ptr<const Term::Node> n;
    int state = 0;  // 0: check here, 1: in left child, 2: in right child
  };
  std::vector<Frame> path;
  path.push_back({root.node_, 0});
  std::optional<Term> contracted;
  while (!path.empty()) {
    Frame& f = path.back();
    const Term::Node* n = f.n.get();
    if (n->tag != Term::Tag::App ||
        n->normal.load(std::memory_order_relaxed) == 1) {
      path.pop_back();
      continue;
    }
    if (f.state == 0) {
      if (n->left->tag == Term::Tag::App &&
          n->left->left->tag == Term::Tag::K) {
        contracted = Term(n->left->right);  // K x y -> x
        break;
      }
      if (n->left->tag == Term::Tag::App &&
          n->left->left->tag == Term::Tag::App &&
          n->left->left->left->tag == Term::Tag::S) {
        Term x(n->left->left->right), y(n->left->right), z(n->right);
        contracted = Term::app(Term::app(x, z), Term::app(y, z));
        break;
      }
      f.state = 1;
      path.push_back({n->left, 0});
    } else if (f.state == 1) {
      f.state = 2;
      path.push_back({n->right, 0});
    } else {
      n->normal.store(1, std::memory_order_relaxed);
      path.pop_back();
    }
  }
  if (!contracted) return std::nullopt;
  Term result = *contracted;
  for (std::size_t i = path.size() - 1; i-- > 0;) {
    const Frame& pf = path[i];
    if (pf.state == 1)
      result = Term::app(result, Term(pf.n->right));
    else
      result = Term::app(Term(pf.n->left), result);
  }
  return result;
}

bool is_weak_normal(const Term& t) { return !contract_leftmost(t); }

EvalOutcome reduce(const Term& t, EvalBudget budget) {
  if (budget.max_steps < 1) throw Error("reduce: budget must be at least 1");
  Term cur = t;
  long steps = 0;
  while (steps < budget.max_steps) {
    auto next = contract_leftmost(cur);
    if (!next) return {cur, steps, true};
    cur = *next;
    ++steps;
  }
  if (!contract_leftmost(cur)) return {cur, steps, true};
  return {cur, steps, false};
}

EvalOutcome apply(const Term& a, const Term& x, EvalBudget budget) {
  return reduce(Term::app(a, x), budget);
}

Term bracket_abstract(const std::string& var, const Term& body) {
  if (!body.contains_var(var)) return Term::app(Term::k(), body);
  if (body.tag() == Term::Tag::Var) return code_ident();  // body == var here
  // Application containing the variable.
  return Term::app(Term::app(Term::s(), bracket_abstract(var, body.left())),
                   bracket_abstract(var, body.right()));
}

Term code_ident() {
  static const Term t = Term::app(Term::app(Term::s(), Term::k()), Term::k());
  return t;
}

Term code_true() {
  static const Term t =
      bracket_abstract("x", bracket_abstract("y", Term::var("x")));
  return t;
}

Term code_false() {
  static const Term t =
      bracket_abstract("x", bracket_abstract("y", Term::var("y")));
  return t;
}

Term code_underline(int i) {
  if (i == 0) return code_false();
  if (i == 1) return code_true();
  throw Error("code_underline: only 0 and 1 are encoded");
}

Term code_pair() {
  static const Term t = bracket_abstract(
      "x", bracket_abstract(
               "y", bracket_abstract(
                        "z", Term::app(Term::app(Term::var("z"), Term::var("x")),
                                       Term::var("y")))));
  return t;
}

Term code_fst() {
  static const Term t =
      bracket_abstract("p", Term::app(Term::var("p"), code_true()));
  return t;
}

Term code_snd() {
  static const Term t =
      bracket_abstract("p", Term::app(Term::var("p"), code_false()));
  return t;
}

Term make_pair(const Term& a, const Term& b, EvalBudget budget) {
  EvalOutcome out = reduce(Term::app(Term::app(code_pair(), a), b), budget);
  if (!out.normalized)
    throw Error("make_pair: pairing did not normalize within budget");
  return out.term;
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return text[pos];
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '\''))
      ++pos;
    if (start == pos) throw ParseError("expected identifier at position " +
                                       std::to_string(start) + " in \"" + text + "\"");
    return text.substr(start, pos - start);
  }

  Term atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Term t = term();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')')
        throw ParseError("missing ')' in \"" + text + "\"");
      ++pos;
      return t;
    }
    if (c == '\\') return lambda();
    std::string name = ident();
    if (name == "S") return Term::s();
    if (name == "K") return Term::k();
    return Term::var(name);
  }

  Term lambda() {
    ++pos;  // consume backslash
    std::string name = ident();
    if (name == "S" || name == "K")
      throw ParseError("cannot bind combinator name \"" + name + "\"");
    skip_ws();
    if (pos >= text.size() || text[pos] != '.')
      throw ParseError("expected '.' after lambda binder in \"" + text + "\"");
    ++pos;
    return bracket_abstract(name, term());
  }

  bool at_atom_start() {
    if (at_end()) return false;
    char c = text[pos];
    return c == '(' || c == '\\' || std::isalnum(static_cast<unsigned char>(c)) ||
           c == '_';
  }

  Term term() {
    Term t = atom();
    while (!at_end() && text[pos] != ')' && at_atom_start())
      t = Term::app(t, atom());
    return t;
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  Parser p{text};
  Term t = p.term();
  if (!p.at_end())
    throw ParseError("trailing input at position " + std::to_string(p.pos) +
                     " in \"" + text + "\"");
  return t;
}

Term parse_closed_term(const std::string& text) {
  Term t = parse_term(text);
  if (!t.is_closed())
    throw UnboundVariable("term \"" + text + "\" has unbound variables");
  return t;
}

const std::vector<Term>& enumerate_terms(std::size_t max_size) {
  static std::mutex mu;
  static std::vector<std::vector<Term>> by_size;  // by_size[n] = closed terms of size n+1
  static std::map<std::size_t, std::vector<Term>> flattened;
  std::lock_guard<std::mutex> lock(mu);
  auto hit = flattened.find(max_size);
  if (hit != flattened.end()) return hit->second;
  if (by_size.empty()) by_size.push_back({Term::s(), Term::k()});
  while (by_size.size() < max_size) {
    std::size_t n = by_size.size() + 1;
    std::vector<Term> bucket;
    for (std::size_t i = 1; i < n; ++i)
      for (const Term& l : by_size[i - 1])
        for (const Term& r : by_size[n - i - 1])
          bucket.push_back(Term::app(l, r));
    std::sort(bucket.begin(), bucket.end(), TermLess{});
    by_size.push_back(std::move(bucket));
  }
  std::vector<Term> flat;
  for (std::size_t n = 0; n < max_size; ++n)
    flat.insert(flat.end(), by_size[n].begin(), by_size[n].end());
  return flattened.emplace(max_size, std::move(flat)).first->second;
}

bool check_filter_closure(const FilterSpec& fs,
                          const std::vector<ObservedApplication>& observed) {
  if (!fs.contains(Term::s()) || !fs.contains(Term::k())) return false;
  for (const auto& obs : observed) {
    if (fs.contains(obs.fn) && fs.contains(obs.arg) && !fs.contains(obs.result))
      return false;
  }
  return true;
}

EvalOutcome ApplyCache::apply(const Term& f, const Term& x, EvalBudget budget) {
  auto key = std::make_pair(f.raw(), x.raw());
  auto it = memo_.find(key);
  if (it != memo_.end()) {
    const Entry& e = it->second;
    if (e.out.normalized && e.out.steps <= budget.max_steps) return e.out;
    if (!e.out.normalized && e.budget_used >= budget.max_steps) return e.out;
  }
  EvalOutcome out = wcont::apply(f, x, budget);
  memo_[key] = Entry{f, x, out, budget.max_steps};
  return out;
}

}  // namespace wcont
