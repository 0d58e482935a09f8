#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclotile/cyclo.hpp"
#include "cyclotile/digitset.hpp"
#include "cyclotile/spectra.hpp"

namespace cyclotile {

enum class Verdict { Tile, NotTile };

const char* verdictName(Verdict v);

struct SearchStats {
  std::uint64_t nodesVisited = 0;
  std::uint64_t divisibilityTests = 0;
  std::uint64_t maxDepth = 0;
};

/// Proof object for a tile / not-tile decision.
///
/// For a tile verdict `blocking` is a blocking of the Φ-tree of `base` whose
/// kernel polynomial (product of Φ_e over `kernel`) divides the mask of
/// `digits`. Loading from JSON re-verifies everything instead of trusting it.
struct Certificate {
  static constexpr int kSchemaVersion = 1;

  Certificate(std::uint64_t b, DigitSet d) : base(b), digits(std::move(d)) {}

  std::uint64_t base;
  DigitSet digits;
  Verdict verdict = Verdict::NotTile;
  IndexSet blocking;
  IndexSet kernel;
  std::optional<unsigned> pkOrder;
  SpectrumReport spectrum;
  bool t1 = false;
  bool t2 = false;
  Theorem42Result thm42;
  SearchStats stats;
  /// Digit strings (most significant first) of the integer-tree blocking, when
  /// the cross-check ran.
  std::optional<std::vector<std::string>> protasovBlocking;
};

/// Compact JSON with fixed field order:
/// base, digits, verdict, blocking, kernel, pk_order, prime_power_spectrum,
/// t1, t2, thm42, then thm42_violation, t2_convention, general_spectrum,
/// search, [protasov_blocking], schema.
std::string toJson(const Certificate& cert);

/// Parses and re-verifies; throws InvalidCertificate on any mismatch.
Certificate certificateFromJson(std::string_view json);

/// Re-derives every claim of the certificate from base and digits.
void verifyCertificate(const Certificate& cert);

}  // namespace cyclotile
