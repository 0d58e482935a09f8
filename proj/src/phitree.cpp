#include "cyclotile/phitree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

#include "cyclotile/errors.hpp"
#include "cyclotile/spectra.hpp"

namespace cyclotile {

IndexSet rootIndices(std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  IndexSet out;
  for (auto d : divisors(base))
    if (d > 1) out.insert(d);
  return out;
}

IndexSet children(std::uint64_t e, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (e < 2 || std::gcd(e, base) == 1)
    throw NotInTree("index " + std::to_string(e) + " is not in the tree of base " + std::to_string(base));
  return expandIndices(CycIndex(e), base);
}

bool isBlocking(const IndexSet& indices, std::uint64_t base) {
  if (indices.empty()) return false;
  const std::uint64_t top = *indices.rbegin();
  IndexSet hit;
  // Child indices at least double, so a path past `top` without a hit never hits.
  std::function<bool(std::uint64_t)> walk = [&](std::uint64_t e) {
    if (indices.count(e)) {
      hit.insert(e);
      return true;
    }
    if (e > top) return false;
    for (auto c : children(e, base))
      if (!walk(c)) return false;
    return true;
  };
  for (auto r : rootIndices(base))
    if (!walk(r)) return false;
  // Members never reached sit below another member or outside the tree.
  return hit.size() == indices.size();
}

std::uint64_t kernelDegree(const IndexSet& indices) {
  std::uint64_t deg = 0;
  for (auto e : indices) deg += eulerPhi(e);
  return deg;
}

BlockingSearch searchBlocking(std::uint64_t base, const IntPoly& p) {
  if (p.isZero()) throw std::invalid_argument("searchBlocking: zero polynomial");
  BlockingSearch out;
  DivisibilityMemo memo(p);
  const std::uint64_t deg = memo.degree();

  std::function<bool(std::uint64_t, std::optional<std::uint64_t>, unsigned)> visit =
      [&](std::uint64_t e, std::optional<std::uint64_t> parent, unsigned depth) {
        ++out.stats.nodesVisited;
        out.stats.maxDepth = std::max<std::uint64_t>(out.stats.maxDepth, depth);
        if (memo.divides(e)) {
          out.blocking.insert(e);
          out.explored.push_back({e, parent, depth, ExploredNode::Status::Blocked});
          return true;
        }
        // φ is monotone along index divisibility, so no descendant can divide.
        if (eulerPhi(e) > deg) {
          out.explored.push_back({e, parent, depth, ExploredNode::Status::Dead});
          out.deadNode = e;
          return false;
        }
        out.explored.push_back({e, parent, depth, ExploredNode::Status::Expanded});
        for (auto c : children(e, base))
          if (!visit(c, e, depth + 1)) return false;
        return true;
      };

  out.found = true;
  for (auto r : rootIndices(base)) {
    if (!visit(r, std::nullopt, 0)) {
      out.found = false;
      out.blocking.clear();
      break;
    }
  }
  out.stats.divisibilityTests = memo.testsRun();
  return out;
}

void validateTileInput(std::uint64_t base, const DigitSet& digits) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (digits.size() != base)
    throw WrongCardinality("digit set has " + std::to_string(digits.size()) + " elements, base is " +
                           std::to_string(base));
  if (!digits.contains(0)) throw InvalidDigitSet("digit set must contain 0");
  if (digits.gcd() != 1)
    throw NormalizedInputRequired("gcd of digits is " + std::to_string(digits.gcd()) + ", expected 1");
}

Certificate decideTileDigitSet(std::uint64_t base, const DigitSet& digits, const DecideOptions& options) {
  validateTileInput(base, digits);
  const IntPoly mask = maskPolynomial(digits);
  Certificate cert(base, digits);

  auto search = searchBlocking(base, mask);
  cert.verdict = search.found ? Verdict::Tile : Verdict::NotTile;
  cert.stats = search.stats;
  if (search.found) {
    cert.blocking = search.blocking;
    cert.kernel = search.blocking;
  }
  if (options.computePkOrder) cert.pkOrder = pkOrder(base, mask);

  std::uint64_t cap = options.generalSpectrumCap;
  if (cap == 0) cap = std::min<std::uint64_t>(completeSpectrumCap(mask), 20000);
  cert.spectrum = spectrumReport(base, mask, cap);
  cert.t1 = checkT1(digits);
  cert.t2 = checkT2(digits);
  cert.thm42 = checkTheorem42(base, digits);
  return cert;
}

IntPoly kernelFromBlocking(const Blocking& blocking) {
  if (!isBlocking(blocking.indices, blocking.base))
    throw InvalidBlocking("not a blocking of the tree of base " + std::to_string(blocking.base));
  IntPoly k = IntPoly::constant(1);
  for (auto e : blocking.indices) k = multiply(k, cyclotomic(e));
  return k;
}

Blocking refineBlocking(const Blocking& blocking, std::uint64_t d) {
  if (!blocking.indices.count(d))
    throw std::invalid_argument("refineBlocking: " + std::to_string(d) + " is not a member");
  Blocking out = blocking;
  out.indices.erase(d);
  for (auto c : children(d, blocking.base)) out.indices.insert(c);
  return out;
}

namespace {

bool kernelOrder(const Blocking& a, const Blocking& b) {
  const auto da = kernelDegree(a.indices), db = kernelDegree(b.indices);
  if (da != db) return da < db;
  return a.indices < b.indices;
}

}  // namespace

std::vector<Blocking> enumerateKernels(std::uint64_t base, std::uint64_t maxDegree) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (maxDegree < base - 1)
    throw std::invalid_argument("enumerateKernels: maxDegree must be at least base - 1");
  std::set<IndexSet> seen;
  std::deque<IndexSet> queue;
  const IndexSet root = rootIndices(base);
  seen.insert(root);
  queue.push_back(root);
  while (!queue.empty()) {
    IndexSet cur = std::move(queue.front());
    queue.pop_front();
    const std::uint64_t deg = kernelDegree(cur);
    for (auto d : cur) {
      // Φ_d(x^b) replaces Φ_d: degree grows by φ(d)(b - 1).
      if (deg + eulerPhi(d) * (base - 1) > maxDegree) continue;
      IndexSet next = refineBlocking({cur, base}, d).indices;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Blocking> out;
  for (const auto& s : seen) {
    if (!isBlocking(s, base)) throw std::logic_error("enumerateKernels produced a non-blocking");
    out.push_back({s, base});
  }
  std::sort(out.begin(), out.end(), kernelOrder);
  return out;
}

DividingBlockings enumerateDividingBlockings(std::uint64_t base, const IntPoly& p, std::size_t limit) {
  if (p.isZero()) throw std::invalid_argument("enumerateDividingBlockings: zero polynomial");
  DividingBlockings out;
  DivisibilityMemo memo(p);
  const std::uint64_t deg = memo.degree();
  using Options = std::vector<IndexSet>;

  // Cartesian product of option lists, truncated at `limit`.
  auto combine = [&](const Options& acc, const Options& more) {
    Options next;
    for (const auto& a : acc) {
      for (const auto& m : more) {
        if (next.size() >= limit) {
          out.truncated = true;
          return next;
        }
        IndexSet u = a;
        u.insert(m.begin(), m.end());
        next.push_back(std::move(u));
      }
    }
    return next;
  };

  std::function<Options(std::uint64_t)> options = [&](std::uint64_t e) {
    Options here;
    if (memo.divides(e)) here.push_back({e});
    if (eulerPhi(e) > deg) return here;
    Options below{IndexSet{}};
    for (auto c : children(e, base)) {
      Options sub = options(c);
      if (sub.empty()) return here;
      below = combine(below, sub);
    }
    for (auto& s : below) {
      if (here.size() >= limit) {
        out.truncated = true;
        break;
      }
      here.push_back(std::move(s));
    }
    return here;
  };

  Options all{IndexSet{}};
  for (auto r : rootIndices(base)) {
    Options sub = options(r);
    if (sub.empty()) return out;
    all = combine(all, sub);
  }
  for (auto& s : all) out.blockings.push_back({std::move(s), base});
  std::sort(out.blockings.begin(), out.blockings.end(), kernelOrder);
  return out;
}

namespace {

// Smallest j with every factor of Φ_d(x^{b^j}) dividing P, if one exists.
std::optional<unsigned> fullDivisibilityLevel(std::uint64_t d, std::uint64_t base, DivisibilityMemo& memo) {
  const std::uint64_t deg = memo.degree();
  std::uint64_t total = eulerPhi(d);  // deg Φ_d(x^{b^j})
  for (unsigned j = 0; total <= deg; ++j) {
    const auto factors = expandIndicesPower(d, base, j);
    if (std::all_of(factors.begin(), factors.end(), [&](std::uint64_t t) { return memo.divides(t); }))
      return j;
    total *= base;
  }
  return std::nullopt;
}

}  // namespace

P1Result checkP1(std::uint64_t base, const DigitSet& digits) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  DivisibilityMemo memo(maskPolynomial(digits));
  P1Result out;
  out.holds = true;
  for (auto d : rootIndices(base)) {
    if (auto j = fullDivisibilityLevel(d, base, memo))
      out.witness[d] = *j;
    else
      out.holds = false;
  }
  return out;
}

std::optional<unsigned> pkOrder(std::uint64_t base, const IntPoly& p) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (p.isZero()) throw std::invalid_argument("pkOrder: zero polynomial");
  DivisibilityMemo memo(p);
  const std::uint64_t deg = memo.degree();
  std::map<std::uint64_t, std::optional<unsigned>> known;

  std::function<std::optional<unsigned>(std::uint64_t)> order = [&](std::uint64_t t) -> std::optional<unsigned> {
    if (auto it = known.find(t); it != known.end()) return it->second;
    std::optional<unsigned> result;
    if (fullDivisibilityLevel(t, base, memo)) {
      result = 1;
    } else {
      // j_1: first level where some factor of Φ_t(x^{b^j}) divides P.
      for (unsigned j = 0;; ++j) {
        const auto factors = expandIndicesPower(t, base, j);
        if (std::all_of(factors.begin(), factors.end(), [&](std::uint64_t f) { return eulerPhi(f) > deg; }))
          break;
        if (std::none_of(factors.begin(), factors.end(), [&](std::uint64_t f) { return memo.divides(f); }))
          continue;
        unsigned worst = 0;
        bool ok = true;
        for (auto f : factors) {
          auto sub = order(f);
          if (!sub) {
            ok = false;
            break;
          }
          worst = std::max(worst, *sub);
        }
        if (ok) result = worst + 1;
        break;
      }
    }
    known[t] = result;
    return result;
  };

  unsigned worst = 0;
  for (auto d : rootIndices(base)) {
    auto o = order(d);
    if (!o) return std::nullopt;
    worst = std::max(worst, *o);
  }
  return worst;
}

std::optional<unsigned> pkOrder(std::uint64_t base, const DigitSet& digits) {
  validateTileInput(base, digits);
  return pkOrder(base, maskPolynomial(digits));
}

std::string searchToDot(std::uint64_t base, const BlockingSearch& search) {
  std::ostringstream os;
  os << "digraph phitree {\n  label=\"base " << base << "\";\n  node [shape=ellipse];\n";
  for (const auto& n : search.explored) {
    os << "  n" << n.index << " [label=\"Φ" << n.index << "\"";
    switch (n.status) {
      case ExploredNode::Status::Blocked: os << ", style=filled, fillcolor=palegreen"; break;
      case ExploredNode::Status::Dead: os << ", style=filled, fillcolor=lightcoral"; break;
      case ExploredNode::Status::Expanded: break;
    }
    os << "];\n";
  }
  for (const auto& n : search.explored)
    if (n.parent) os << "  n" << *n.parent << " -> n" << n.index << ";\n";
  os << "}\n";
  return os.str();
}

std::string blockingToDot(const Blocking& blocking) {
  if (!isBlocking(blocking.indices, blocking.base)) throw InvalidBlocking("not a blocking");
  std::ostringstream nodes, edges;
  std::function<void(std::uint64_t)> walk = [&](std::uint64_t e) {
    const bool member = blocking.indices.count(e) != 0;
    nodes << "  n" << e << " [label=\"Φ" << e << "\"" << (member ? ", style=filled, fillcolor=palegreen" : "")
          << "];\n";
    if (member) return;
    for (auto c : children(e, blocking.base)) {
      edges << "  n" << e << " -> n" << c << ";\n";
      walk(c);
    }
  };
  for (auto r : rootIndices(blocking.base)) walk(r);
  return "digraph blocking {\n  label=\"base " + std::to_string(blocking.base) + "\";\n" + nodes.str() +
         edges.str() + "}\n";
}

}  // namespace cyclotile
