#include "sctcheck/term.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace sctcheck {

namespace {

std::vector<std::string> merge_free(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> without(std::vector<std::string> names, const std::string& name) {
  auto it = std::lower_bound(names.begin(), names.end(), name);
  if (it != names.end() && *it == name) names.erase(it);
  return names;
}

const TermNode& checked(const Term& t) {
  assert(t.node() != nullptr);
  return *t.node();
}

}  // namespace

Term Term::sort(SortKind kind) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Sort;
  node->sort = kind;
  return Term(std::move(node));
}

Term Term::var(std::string name) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Var;
  node->free = {name};
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::sym(std::string name) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Sym;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::prod(std::string binder, Term domain, Term codomain) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Prod;
  node->free = merge_free(domain.free_vars(), without(codomain.free_vars(), binder));
  node->name = std::move(binder);
  node->left = std::move(domain);
  node->right = std::move(codomain);
  return Term(std::move(node));
}

Term Term::arrow(Term domain, Term codomain) {
  std::set<std::string> avoid(codomain.free_vars().begin(), codomain.free_vars().end());
  std::string binder = avoid.count("_") ? fresh_name("x", avoid) : "_";
  return prod(std::move(binder), std::move(domain), std::move(codomain));
}

Term Term::app(Term fun, Term arg) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::App;
  node->free = merge_free(fun.free_vars(), arg.free_vars());
  node->left = std::move(fun);
  node->right = std::move(arg);
  return Term(std::move(node));
}

Term Term::abs(std::string binder, Term domain, Term body) {
  auto node = std::make_shared<TermNode>();
  node->kind = TermKind::Abs;
  node->free = merge_free(domain.free_vars(), without(body.free_vars(), binder));
  node->name = std::move(binder);
  node->left = std::move(domain);
  node->right = std::move(body);
  return Term(std::move(node));
}

TermKind Term::kind() const { return checked(*this).kind; }
SortKind Term::sort_kind() const { return checked(*this).sort; }
const std::string& Term::name() const { return checked(*this).name; }
const Term& Term::fun() const { return checked(*this).left; }
const Term& Term::arg() const { return checked(*this).right; }
const Term& Term::domain() const { return checked(*this).left; }
const Term& Term::codomain() const { return checked(*this).right; }
const Term& Term::body() const { return checked(*this).right; }
const std::vector<std::string>& Term::free_vars() const { return checked(*this).free; }

bool Term::has_free(std::string_view name) const {
  const auto& fv = free_vars();
  return std::binary_search(fv.begin(), fv.end(), name, std::less<>{});
}

Spine spine(const Term& t) {
  Spine s;
  Term cur = t;
  while (cur.is_app()) {
    s.args.push_back(cur.arg());
    cur = cur.fun();
  }
  std::reverse(s.args.begin(), s.args.end());
  s.head = cur;
  return s;
}

Term make_spine(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = Term::app(std::move(head), a);
  return head;
}

std::string head_symbol(const Term& t) {
  Term cur = t;
  while (cur.is_app()) cur = cur.fun();
  return cur.is_sym() ? cur.name() : std::string();
}

std::set<std::string> free_vars(const Term& t) {
  return {t.free_vars().begin(), t.free_vars().end()};
}

namespace {

void collect_symbols(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Sym:
      out.insert(t.name());
      break;
    case TermKind::Prod:
    case TermKind::App:
    case TermKind::Abs:
      collect_symbols(t.node()->left, out);
      collect_symbols(t.node()->right, out);
      break;
    default:
      break;
  }
}

using BinderPairs = std::vector<std::pair<const std::string*, const std::string*>>;

bool alpha_equal_rec(const Term& a, const Term& b, BinderPairs& env) {
  if (a.node() == b.node() && env.empty()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Sort:
      return a.sort_kind() == b.sort_kind();
    case TermKind::Sym:
      return a.name() == b.name();
    case TermKind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        bool left = *it->first == a.name();
        bool right = *it->second == b.name();
        if (left || right) return left && right;
      }
      return a.name() == b.name();
    }
    case TermKind::App:
      return alpha_equal_rec(a.fun(), b.fun(), env) && alpha_equal_rec(a.arg(), b.arg(), env);
    case TermKind::Prod:
    case TermKind::Abs: {
      if (!alpha_equal_rec(a.domain(), b.domain(), env)) return false;
      env.emplace_back(&a.binder(), &b.binder());
      bool eq = alpha_equal_rec(a.node()->right, b.node()->right, env);
      env.pop_back();
      return eq;
    }
  }
  return false;
}

void key_rec(const Term& t, std::vector<const std::string*>& bound, std::string& out) {
  switch (t.kind()) {
    case TermKind::Sort:
      out += t.sort_kind() == SortKind::Type ? "T" : "K";
      return;
    case TermKind::Sym:
      out += "s";
      out += t.name();
      out += ' ';
      return;
    case TermKind::Var:
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (*bound[i] == t.name()) {
          out += "#";
          out += std::to_string(bound.size() - 1 - i);
          out += ' ';
          return;
        }
      }
      out += "v";
      out += t.name();
      out += ' ';
      return;
    case TermKind::App:
      out += "(";
      key_rec(t.fun(), bound, out);
      key_rec(t.arg(), bound, out);
      out += ")";
      return;
    case TermKind::Prod:
    case TermKind::Abs:
      out += t.is_prod() ? "[P" : "[L";
      key_rec(t.domain(), bound, out);
      bound.push_back(&t.binder());
      key_rec(t.node()->right, bound, out);
      bound.pop_back();
      out += "]";
      return;
  }
}

void subterms_rec(const Term& t, Position& pos, std::vector<Subterm>& out) {
  out.push_back({pos, t});
  switch (t.kind()) {
    case TermKind::App: {
      Spine s = spine(t);
      std::size_t n = s.args.size();
      // Head sits under n function edges; argument i under n-1-i of them.
      std::size_t base = pos.size();
      pos.insert(pos.end(), n, 0);
      subterms_rec(s.head, pos, out);
      for (std::size_t i = 0; i < n; ++i) {
        pos.resize(base);
        pos.insert(pos.end(), n - 1 - i, 0);
        pos.push_back(1);
        subterms_rec(s.args[i], pos, out);
      }
      pos.resize(base);
      return;
    }
    case TermKind::Prod:
    case TermKind::Abs:
      pos.push_back(0);
      subterms_rec(t.domain(), pos, out);
      pos.back() = 1;
      subterms_rec(t.node()->right, pos, out);
      pos.pop_back();
      return;
    default:
      return;
  }
}

Term rebuild(const Term& t, const Term& left, const Term& right) {
  switch (t.kind()) {
    case TermKind::App:
      return Term::app(left, right);
    case TermKind::Prod:
      return Term::prod(t.binder(), left, right);
    case TermKind::Abs:
      return Term::abs(t.binder(), left, right);
    default:
      throw std::logic_error("rebuild on a leaf term");
  }
}

Term replace_rec(const Term& t, const Position& position, std::size_t depth,
                 const Term& replacement) {
  if (depth == position.size()) return replacement;
  if (t.is_sort() || t.is_var() || t.is_sym())
    throw std::out_of_range("position outside term");
  const Term& left = t.node()->left;
  const Term& right = t.node()->right;
  if (position[depth] == 0) return rebuild(t, replace_rec(left, position, depth + 1, replacement), right);
  return rebuild(t, left, replace_rec(right, position, depth + 1, replacement));
}

}  // namespace

std::set<std::string> symbols_of(const Term& t) {
  std::set<std::string> out;
  collect_symbols(t, out);
  return out;
}

bool alpha_equal(const Term& a, const Term& b) {
  BinderPairs env;
  return alpha_equal_rec(a, b, env);
}

std::string alpha_key(const Term& t) {
  std::vector<const std::string*> bound;
  std::string out;
  key_rec(t, bound, out);
  return out;
}

std::vector<Subterm> structural_subterms(const Term& t) {
  std::vector<Subterm> out;
  Position pos;
  subterms_rec(t, pos, out);
  return out;
}

Term subterm_at(const Term& t, const Position& position) {
  Term cur = t;
  for (int step : position) {
    if (cur.is_sort() || cur.is_var() || cur.is_sym())
      throw std::out_of_range("position outside term");
    cur = step == 0 ? cur.node()->left : cur.node()->right;
  }
  return cur;
}

Term replace_at(const Term& t, const Position& position, const Term& replacement) {
  return replace_rec(t, position, 0, replacement);
}

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case TermKind::Prod:
    case TermKind::App:
    case TermKind::Abs:
      return 1 + term_size(t.node()->left) + term_size(t.node()->right);
    default:
      return 1;
  }
}

std::string fresh_name(std::string_view base, const std::set<std::string>& avoid) {
  std::string stem(base);
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty() || stem.front() == '_') stem = "x";
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

bool is_wildcard_name(std::string_view name) {
  if (name.size() < 2 || name.front() != '_') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace sctcheck
