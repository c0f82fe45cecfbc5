#include "sctcheck/sct.hpp"

#include <deque>
#include <stdexcept>
#include <tuple>

namespace sctcheck {

Entry multiply(Entry a, Entry b) {
  if (a == Entry::Infinity || b == Entry::Infinity) return Entry::Infinity;
  int sum = static_cast<int>(a) + static_cast<int>(b);
  return sum < 0 ? Entry::MinusOne : Entry::Zero;
}

namespace {

bool reaches_strictly(const Term& a, const Term& b) {
  Spine s = spine(a);
  if (!s.head.is_sym()) return false;
  for (const auto& arg : s.args)
    if (alpha_equal(arg, b) || reaches_strictly(arg, b)) return true;
  return false;
}

}  // namespace

Comparison subterm_ge(const Term& a, const Term& b) {
  if (alpha_equal(a, b)) return Comparison::Equal;
  return reaches_strictly(a, b) ? Comparison::Strict : Comparison::Incomparable;
}

SizeMatrix::SizeMatrix(std::size_t rows, std::size_t cols, Entry fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

SizeMatrix SizeMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SizeMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix literal");
    for (std::size_t j = 0; j < cols; ++j) {
      int v = rows[i][j];
      m.set(i, j, v < 0 ? Entry::MinusOne : v == 0 ? Entry::Zero : Entry::Infinity);
    }
  }
  return m;
}

bool SizeMatrix::is_idempotent() const { return is_square() && compose(*this, *this) == *this; }

bool SizeMatrix::has_decreasing_diagonal() const {
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i)
    if (at(i, i) == Entry::MinusOne) return true;
  return false;
}

SizeMatrix SizeMatrix::without(std::size_t row, std::size_t col) const {
  std::size_t r = row < rows_ ? rows_ - 1 : rows_;
  std::size_t c = col < cols_ ? cols_ - 1 : cols_;
  SizeMatrix out(r, c);
  for (std::size_t i = 0, oi = 0; i < rows_; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < cols_; ++j) {
      if (j == col) continue;
      out.set(oi, oj++, at(i, j));
    }
    ++oi;
  }
  return out;
}

std::string SizeMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      switch (at(i, j)) {
        case Entry::MinusOne: out += " -1"; break;
        case Entry::Zero: out += "  0"; break;
        case Entry::Infinity: out += "  ∞"; break;
      }
    }
    out += " ]\n";
  }
  return out;
}

SizeMatrix compose(const SizeMatrix& m, const SizeMatrix& n) {
  if (m.cols() != n.rows()) throw std::invalid_argument("size-change matrix dimension mismatch");
  SizeMatrix out(m.rows(), n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j) {
      Entry best = Entry::Infinity;
      for (std::size_t k = 0; k < m.cols(); ++k) {
        Entry e = multiply(m.at(i, k), n.at(k, j));
        if (e < best) best = e;
      }
      out.set(i, j, best);
    }
  return out;
}

SizeMatrix build_matrix(const DependencyPair& dp, const Signature& sig) {
  SizeMatrix m(sig.arity(dp.lhs_head), sig.arity(dp.rhs_head));
  for (std::size_t i = 0; i < dp.lhs_args.size() && i < m.rows(); ++i)
    for (std::size_t j = 0; j < dp.rhs_args.size() && j < m.cols(); ++j) {
      switch (subterm_ge(dp.lhs_args[i], dp.rhs_args[j])) {
        case Comparison::Strict: m.set(i, j, Entry::MinusOne); break;
        case Comparison::Equal: m.set(i, j, Entry::Zero); break;
        case Comparison::Incomparable: break;
      }
    }
  return m;
}

void CallGraph::add_node(const std::string& name) {
  for (const auto& n : nodes_)
    if (n == name) return;
  nodes_.push_back(name);
}

bool CallGraph::add(const std::string& from, const std::string& to, const SizeMatrix& m,
                    Derivation derivation) {
  add_node(from);
  add_node(to);
  return edges_[{from, to}].emplace(m, std::move(derivation)).second;
}

const CallGraph::MatrixSet* CallGraph::edge(const std::string& from, const std::string& to) const {
  auto it = edges_.find({from, to});
  return it == edges_.end() ? nullptr : &it->second;
}

bool CallGraph::contains(const std::string& from, const std::string& to, const SizeMatrix& m) const {
  const MatrixSet* set = edge(from, to);
  return set != nullptr && set->count(m) != 0;
}

std::size_t CallGraph::matrix_count() const {
  std::size_t n = 0;
  for (const auto& [key, set] : edges_) n += set.size();
  return n;
}

bool CallGraph::operator==(const CallGraph& other) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (const auto& [key, set] : edges_) {
    auto it = other.edges_.find(key);
    if (it == other.edges_.end() || it->second.size() != set.size()) return false;
    for (const auto& [m, d] : set)
      if (!it->second.count(m)) return false;
  }
  return true;
}

CallGraph build_call_graph(const std::vector<DependencyPair>& dps, const Signature& sig) {
  CallGraph g;
  for (const auto& s : sig.symbols())
    if (s.defined) g.add_node(s.name);
  for (const auto& dp : dps) g.add(dp.lhs_head, dp.rhs_head, build_matrix(dp, sig), {dp.label});
  return g;
}

CallGraph transitive_closure(const CallGraph& g) {
  CallGraph closed = g;
  using Item = std::tuple<std::string, std::string, SizeMatrix, CallGraph::Derivation>;
  std::deque<Item> work;
  for (const auto& [key, set] : g.edges())
    for (const auto& [m, d] : set) work.emplace_back(key.first, key.second, m, d);

  auto join = [](const CallGraph::Derivation& a, const CallGraph::Derivation& b) {
    CallGraph::Derivation out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  };

  while (!work.empty()) {
    auto [from, to, m, d] = std::move(work.front());
    work.pop_front();
    // Snapshot the candidate partners first: insertion must not disturb the
    // iteration below.
    std::vector<Item> pending;
    for (const auto& [key, set] : closed.edges()) {
      if (key.first == to)
        for (const auto& [n, dn] : set) pending.emplace_back(from, key.second, compose(m, n), join(d, dn));
      if (key.second == from)
        for (const auto& [n, dn] : set) pending.emplace_back(key.first, to, compose(n, m), join(dn, d));
    }
    for (auto& item : pending) {
      auto& [f, t, prod, deriv] = item;
      if (closed.add(f, t, prod, deriv)) work.push_back(std::move(item));
    }
  }
  return closed;
}

SctResult check_sct(const CallGraph& closed) {
  SctResult res;
  for (const auto& node : closed.nodes()) {
    const CallGraph::MatrixSet* loops = closed.edge(node, node);
    if (loops == nullptr) continue;
    for (const auto& [m, d] : *loops) {
      LoopMatrix lm{node, m, d, m.is_idempotent(), m.has_decreasing_diagonal()};
      if (lm.idempotent && !lm.decreasing) {
        res.pass = false;
        res.violations.push_back(lm);
      }
      res.loops.push_back(std::move(lm));
    }
  }
  return res;
}

}  // namespace sctcheck
