#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sctcheck/deppairs.hpp"
#include "sctcheck/signature.hpp"
#include "sctcheck/term.hpp"

namespace sctcheck {

/// Size-change matrix entry. The numeric order -1 < 0 < ∞ is the min-plus order.
enum class Entry : std::int8_t { MinusOne = -1, Zero = 0, Infinity = 1 };

/// Saturated min-plus product of two entries.
Entry multiply(Entry a, Entry b);

enum class Comparison { Strict, Equal, Incomparable };

/// Strict iff b is reached from a by repeatedly stepping from a symbol-headed
/// spine f t1 ... tn to one of its ti; Equal iff α-equal.
Comparison subterm_ge(const Term& a, const Term& b);

class SizeMatrix {
 public:
  SizeMatrix() = default;
  SizeMatrix(std::size_t rows, std::size_t cols, Entry fill = Entry::Infinity);
  /// Row-major literal; every row must have the same length.
  static SizeMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Entry at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Entry e) { entries_[i * cols_ + j] = e; }

  bool is_square() const { return rows_ == cols_; }
  bool is_idempotent() const;
  bool has_decreasing_diagonal() const;

  /// Copy without the given row and column (npos keeps everything).
  SizeMatrix without(std::size_t row, std::size_t col) const;

  /// `[ -1  ∞ ]` rows, one per line.
  std::string to_string() const;

  auto operator<=>(const SizeMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Min-plus product M ⊗ N (path M then N). Throws std::invalid_argument on a
/// dimension mismatch.
SizeMatrix compose(const SizeMatrix& m, const SizeMatrix& n);

/// arit(Θ_f) × arit(Θ_g) matrix of the pair; rows and columns past the given
/// arguments stay ∞.
SizeMatrix build_matrix(const DependencyPair& dp, const Signature& sig);

/// Directed graph on defined symbols; each edge carries a set of matrices, and
/// each matrix remembers the first chain of pairs that produced it.
class CallGraph {
 public:
  using Key = std::pair<std::string, std::string>;
  using Derivation = std::vector<std::string>;
  using MatrixSet = std::map<SizeMatrix, Derivation>;

  void add_node(const std::string& name);
  /// Inserts the matrix; returns false when the edge already carries it.
  bool add(const std::string& from, const std::string& to, const SizeMatrix& m, Derivation derivation);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::map<Key, MatrixSet>& edges() const { return edges_; }
  const MatrixSet* edge(const std::string& from, const std::string& to) const;
  bool contains(const std::string& from, const std::string& to, const SizeMatrix& m) const;
  std::size_t matrix_count() const;

  bool operator==(const CallGraph& other) const;

 private:
  std::vector<std::string> nodes_;
  std::map<Key, MatrixSet> edges_;
};

CallGraph build_call_graph(const std::vector<DependencyPair>& dps, const Signature& sig);

/// Least fixpoint of the edge sets under composition along consecutive edges.
CallGraph transitive_closure(const CallGraph& g);

struct LoopMatrix {
  std::string symbol;
  SizeMatrix matrix;
  CallGraph::Derivation derivation;
  bool idempotent = false;
  bool decreasing = false;
};

struct SctResult {
  bool pass = true;
  std::vector<LoopMatrix> loops;       // every self-edge matrix of the closure
  std::vector<LoopMatrix> violations;  // idempotent loops without a -1 diagonal
};

/// Idempotent-loop criterion on a closed call graph.
SctResult check_sct(const CallGraph& closed);

}  // namespace sctcheck
