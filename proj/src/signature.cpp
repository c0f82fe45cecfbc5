#include "sctcheck/signature.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sctcheck {

std::size_t product_arity(const Term& type) {
  std::size_t n = 0;
  for (Term cur = type; cur.is_prod(); cur = cur.codomain()) ++n;
  return n;
}

std::vector<std::string> product_binders(const Term& type) {
  std::vector<std::string> out;
  for (Term cur = type; cur.is_prod(); cur = cur.codomain()) out.push_back(cur.binder());
  return out;
}

bool is_kind(const Term& type) {
  Term cur = type;
  while (cur.is_prod()) cur = cur.codomain();
  return cur.is_sort() && cur.sort_kind() == SortKind::Type;
}

void Signature::declare(const std::string& name, const Term& theta, int line) {
  if (index_.count(name)) throw SignatureError("symbol " + name + " declared twice");
  if (!theta.free_vars().empty())
    throw SignatureError("type of " + name + " has free variable " + theta.free_vars().front());
  SymbolInfo info;
  info.name = name;
  info.theta = theta;
  info.sort = is_kind(theta) ? SortKind::Kind : SortKind::Type;
  info.arity = product_arity(theta);
  info.line = line;
  index_.emplace(name, symbols_.size());
  symbols_.push_back(std::move(info));
}

const SymbolInfo* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &symbols_[it->second];
}

const SymbolInfo& Signature::at(const std::string& name) const {
  const SymbolInfo* info = find(name);
  if (info == nullptr) throw SignatureError("unknown symbol " + name);
  return *info;
}

bool Signature::is_defined(const std::string& name) const {
  const SymbolInfo* info = find(name);
  return info != nullptr && info->defined;
}

void Signature::mark_defined(const std::string& name) { symbols_[index_.at(name)].defined = true; }

void Signature::set_prec_class(const std::string& name, std::size_t cls) {
  symbols_[index_.at(name)].prec_class = cls;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& graph) {
  const std::size_t n = graph.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> number(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> sccs;
  std::size_t counter = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    number[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : graph[v]) {
      if (number[w] == kUnvisited) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], number[w]);
      }
    }
    if (low[v] == number[v]) {
      std::vector<std::size_t> scc;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      std::sort(scc.begin(), scc.end());
      sccs.push_back(std::move(scc));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (number[v] == kUnvisited) dfs(v);
  return sccs;
}

Precedence::Precedence(std::vector<std::string> symbols,
                       const std::vector<std::vector<std::size_t>>& edges) {
  auto sccs = strongly_connected_components(edges);
  std::vector<std::size_t> cls(symbols.size());
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    std::vector<std::string> members;
    for (std::size_t v : sccs[c]) {
      cls[v] = c;
      class_of_[symbols[v]] = c;
      members.push_back(symbols[v]);
    }
    classes_.push_back(std::move(members));
  }
  std::set<std::pair<std::size_t, std::size_t>> dag;
  for (std::size_t v = 0; v < edges.size(); ++v)
    for (std::size_t w : edges[v])
      if (cls[v] != cls[w]) dag.emplace(cls[v], cls[w]);
  dag_edges_.assign(dag.begin(), dag.end());

  // Tarjan emits every class after the classes it reaches.
  const std::size_t n = sccs.size();
  reach_.assign(n, std::vector<bool>(n, false));
  ranks_.assign(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (auto [a, b] : dag_edges_) succ[a].push_back(b);
  for (std::size_t c = 0; c < n; ++c) {
    reach_[c][c] = true;
    for (std::size_t d : succ[c]) {
      for (std::size_t e = 0; e < n; ++e)
        if (reach_[d][e]) reach_[c][e] = true;
      ranks_[c] = std::max(ranks_[c], ranks_[d] + 1);
    }
  }
}

std::size_t Precedence::class_of(const std::string& f) const {
  auto it = class_of_.find(f);
  if (it == class_of_.end()) throw SignatureError("symbol " + f + " not in precedence");
  return it->second;
}

bool Precedence::geq(const std::string& f, const std::string& g) const {
  return reach_[class_of(f)][class_of(g)];
}

bool Precedence::gt(const std::string& f, const std::string& g) const {
  return geq(f, g) && !geq(g, f);
}

bool Precedence::equivalent(const std::string& f, const std::string& g) const {
  return class_of(f) == class_of(g);
}

Precedence build_precedence(const Signature& sig, const RuleSet& rules) {
  std::vector<std::string> names;
  std::map<std::string, std::size_t, std::less<>> index;
  for (const auto& s : sig.symbols()) {
    index.emplace(s.name, names.size());
    names.push_back(s.name);
  }
  std::vector<std::set<std::size_t>> succ(names.size());
  auto add_occurrences = [&](std::size_t from, const Term& t) {
    for (const auto& g : symbols_of(t)) {
      auto it = index.find(g);
      if (it != index.end() && it->second != from) succ[from].insert(it->second);
    }
  };
  for (const auto& s : sig.symbols()) add_occurrences(index.at(s.name), s.theta);
  for (const auto& r : rules) add_occurrences(index.at(r.head), r.rhs);
  std::vector<std::vector<std::size_t>> edges;
  for (const auto& s : succ) edges.emplace_back(s.begin(), s.end());
  return Precedence(std::move(names), edges);
}

System build_system(std::vector<Declaration> decls) {
  System sys;
  for (const auto& d : decls) {
    if (const auto* s = std::get_if<SymbolDecl>(&d)) {
      sys.signature.declare(s->name, s->type, s->line);
    } else if (const auto* r = std::get_if<RuleDecl>(&d)) {
      std::string head = head_symbol(r->lhs);
      if (!sys.signature.contains(head)) throw SignatureError("rule for undeclared symbol " + head);
      sys.rules.add(r->lhs, r->rhs, r->line);
      sys.signature.mark_defined(head);
    } else {
      const auto& i = std::get<InfixDecl>(d);
      if (!sys.signature.contains(i.symbol)) throw SignatureError("infix for undeclared symbol " + i.symbol);
      sys.signature.infix.add(i.op, i.symbol);
    }
  }
  sys.precedence = build_precedence(sys.signature, sys.rules);
  for (const auto& s : sys.signature.symbols())
    sys.signature.set_prec_class(s.name, sys.precedence.class_of(s.name));
  sys.declarations = std::move(decls);
  return sys;
}

System build_system_from_text(std::string_view text) { return build_system(parse_file(text)); }

std::vector<RuleArityCheck> check_condition_b(const RuleSet& rules, const Signature& sig) {
  std::vector<RuleArityCheck> out;
  for (const auto& r : rules) {
    std::size_t arity = sig.arity(r.head);
    out.push_back({r.index, r.args.size() <= arity, r.args.size(), arity});
  }
  return out;
}

}  // namespace sctcheck
