#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclotile/certificate.hpp"
#include "cyclotile/cyclo.hpp"
#include "cyclotile/digitset.hpp"

namespace cyclotile {

// The Φ-tree of base b: roots are Φ_d for d | b, d > 1, and the children of Φ_e
// are the cyclotomic factors of Φ_e(x^b). Nodes are identified by their index.

IndexSet rootIndices(std::uint64_t base);

/// Throws NotInTree when gcd(e, b) = 1.
IndexSet children(std::uint64_t e, std::uint64_t base);

/// Finite antichain met by every root path. Checked exhaustively: a path that
/// passes every member's index without a hit can never hit, since child
/// indices at least double.
bool isBlocking(const IndexSet& indices, std::uint64_t base);

/// deg of the kernel polynomial: sum of φ(e).
std::uint64_t kernelDegree(const IndexSet& indices);

struct Blocking {
  IndexSet indices;
  std::uint64_t base;

  friend bool operator==(const Blocking&, const Blocking&) = default;
};

struct ExploredNode {
  enum class Status { Blocked, Expanded, Dead };
  std::uint64_t index;
  std::optional<std::uint64_t> parent;
  unsigned depth;
  Status status;
};

struct BlockingSearch {
  bool found = false;
  IndexSet blocking;
  std::optional<std::uint64_t> deadNode;
  SearchStats stats;
  std::vector<ExploredNode> explored;
};

/// First-hit depth-first search for a blocking of Φ_e factors of P. A node
/// joins the blocking when Φ_e | P; a non-dividing node with φ(e) > deg P
/// kills the search, as no descendant index can divide either.
/// No cardinality requirement on P.
BlockingSearch searchBlocking(std::uint64_t base, const IntPoly& p);

struct DecideOptions {
  /// Cap for the general spectrum recorded in the certificate; 0 picks
  /// min(2 deg^2, 20000).
  std::uint64_t generalSpectrumCap = 0;
  bool computePkOrder = true;
};

/// Requires #D = b, 0 in D and gcd(D) = 1.
Certificate decideTileDigitSet(std::uint64_t base, const DigitSet& digits,
                               const DecideOptions& options = {});

/// Rejects inputs outside the decision procedure's domain.
void validateTileInput(std::uint64_t base, const DigitSet& digits);

/// Product of Φ_e over the blocking; throws InvalidBlocking if it is not one.
IntPoly kernelFromBlocking(const Blocking& blocking);

/// Replace d by its children; kernel changes by the factor Φ_d(x^b) / Φ_d(x).
Blocking refineBlocking(const Blocking& blocking, std::uint64_t d);

/// All blockings with kernel degree <= maxDegree, breadth-first refinement from
/// the root blocking, sorted by kernel degree then indices.
std::vector<Blocking> enumerateKernels(std::uint64_t base, std::uint64_t maxDegree);

struct DividingBlockings {
  std::vector<Blocking> blockings;
  bool truncated = false;
};

/// Every blocking whose members all divide P (at most `limit` of them).
DividingBlockings enumerateDividingBlockings(std::uint64_t base, const IntPoly& p,
                                             std::size_t limit = 1000);

struct P1Result {
  bool holds = false;
  /// Smallest j with Φ_d(x^{b^j}) | P, for each d | b, d > 1 that has one.
  std::map<std::uint64_t, unsigned> witness;
};

P1Result checkP1(std::uint64_t base, const DigitSet& digits);

/// Smallest k with condition (P_k), or nullopt when none exists.
std::optional<unsigned> pkOrder(std::uint64_t base, const DigitSet& digits);
std::optional<unsigned> pkOrder(std::uint64_t base, const IntPoly& p);

/// Graphviz rendering of the explored part of the Φ-tree.
std::string searchToDot(std::uint64_t base, const BlockingSearch& search);

/// Graphviz rendering of the tree down to a blocking, members highlighted.
std::string blockingToDot(const Blocking& blocking);

}  // namespace cyclotile
