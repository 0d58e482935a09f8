#include "cyclotile/certificate.hpp"

#include <json.hpp>

#include "cyclotile/errors.hpp"
#include "cyclotile/phitree.hpp"
#include "cyclotile/protasov.hpp"

namespace cyclotile {

using ojson = nlohmann::ordered_json;

const char* verdictName(Verdict v) { return v == Verdict::Tile ? "tile" : "not-tile"; }

std::string toJson(const Certificate& c) {
  ojson j;
  j["base"] = c.base;
  j["digits"] = c.digits.digits();
  j["verdict"] = verdictName(c.verdict);
  j["blocking"] = std::vector<std::uint64_t>(c.blocking.begin(), c.blocking.end());
  j["kernel"] = std::vector<std::uint64_t>(c.kernel.begin(), c.kernel.end());
  j["pk_order"] = c.pkOrder ? ojson(*c.pkOrder) : ojson(nullptr);
  j["prime_power_spectrum"] =
      std::vector<std::uint64_t>(c.spectrum.primePowerSpectrum.begin(), c.spectrum.primePowerSpectrum.end());
  j["t1"] = c.t1;
  j["t2"] = c.t2;
  ojson thm = ojson::object();
  for (const auto& [p, exps] : c.thm42.exponents) thm[std::to_string(p)] = exps;
  j["thm42"] = thm;
  j["thm42_violation"] = c.thm42.passed ? ojson(nullptr) : ojson(clauseName(c.thm42.violated));
  j["t2_convention"] = kT2Convention;
  const auto& g = c.spectrum.generalSpectrum;
  j["general_spectrum"] = {{"cap", g.cap},
                           {"complete", g.complete},
                           {"indices", std::vector<std::uint64_t>(g.indices.begin(), g.indices.end())}};
  j["search"] = {{"nodes_visited", c.stats.nodesVisited},
                 {"divisibility_tests", c.stats.divisibilityTests},
                 {"max_depth", c.stats.maxDepth}};
  if (c.protasovBlocking) j["protasov_blocking"] = *c.protasovBlocking;
  j["schema"] = Certificate::kSchemaVersion;
  return j.dump();
}

namespace {

IndexSet indexSetFrom(const ojson& j, const char* field) {
  IndexSet out;
  for (const auto& v : j.at(field)) {
    auto e = v.get<std::uint64_t>();
    if (!out.insert(e).second) throw InvalidCertificate(std::string("duplicate entry in ") + field);
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidCertificate(what);
}

}  // namespace

void verifyCertificate(const Certificate& c) {
  try {
    validateTileInput(c.base, c.digits);
  } catch (const TileError& e) {
    throw InvalidCertificate(std::string("input outside the decision domain: ") + e.what());
  }
  const IntPoly mask = maskPolynomial(c.digits);

  if (c.verdict == Verdict::Tile) {
    require(!c.blocking.empty(), "tile verdict without a blocking");
    require(c.kernel == c.blocking, "kernel indices differ from blocking");
    require(isBlocking(c.blocking, c.base), "blocking does not block the tree");
    require(divideExact(mask, kernelFromBlocking({c.blocking, c.base})).has_value(),
            "kernel polynomial does not divide the mask");
  } else {
    require(c.blocking.empty() && c.kernel.empty(), "not-tile verdict carries a blocking");
    require(!searchBlocking(c.base, mask).found, "a dividing blocking exists");
  }

  require(pkOrder(c.base, mask) == c.pkOrder, "pk_order mismatch");
  require(c.pkOrder.has_value() == (c.verdict == Verdict::Tile), "pk_order presence contradicts verdict");

  const auto& g = c.spectrum.generalSpectrum;
  require(g.cap >= 2 && g.cap <= std::max<std::uint64_t>(completeSpectrumCap(mask), 20000),
          "general spectrum cap out of range");
  const auto report = spectrumReport(c.base, mask, g.cap);
  require(report.primePowerSpectrum == c.spectrum.primePowerSpectrum, "prime-power spectrum mismatch");
  require(report.generalSpectrum.indices == g.indices, "general spectrum mismatch");
  require(report.generalSpectrum.complete == g.complete, "general spectrum completeness flag mismatch");
  require(checkT1(c.digits) == c.t1, "t1 mismatch");
  require(checkT2(c.digits) == c.t2, "t2 mismatch");
  const auto thm = checkTheorem42(c.base, c.digits);
  require(thm.passed == c.thm42.passed && thm.exponents == c.thm42.exponents &&
              thm.violated == c.thm42.violated,
          "prime-power structure mismatch");

  if (c.protasovBlocking) {
    const auto pr = protasovDecide(c.base, c.digits);
    std::vector<std::string> names;
    for (const auto& v : pr.blocking) names.push_back(v.toString());
    require(names == *c.protasovBlocking, "integer-tree blocking mismatch");
  }
}

Certificate certificateFromJson(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw InvalidCertificate(std::string("malformed JSON: ") + e.what());
  }
  try {
    require(j.is_object(), "certificate must be a JSON object");
    require(j.value("schema", 0) == Certificate::kSchemaVersion, "unsupported schema version");
    std::vector<std::uint64_t> ds = j.at("digits").get<std::vector<std::uint64_t>>();
    Certificate c(j.at("base").get<std::uint64_t>(), DigitSet::fromUnsigned(ds));
    require(c.digits.digits() == ds, "digits must be sorted and distinct");

    const auto verdict = j.at("verdict").get<std::string>();
    require(verdict == "tile" || verdict == "not-tile", "unknown verdict " + verdict);
    c.verdict = verdict == "tile" ? Verdict::Tile : Verdict::NotTile;
    c.blocking = indexSetFrom(j, "blocking");
    c.kernel = indexSetFrom(j, "kernel");
    if (!j.at("pk_order").is_null()) c.pkOrder = j.at("pk_order").get<unsigned>();
    c.spectrum.primePowerSpectrum = indexSetFrom(j, "prime_power_spectrum");
    c.t1 = j.at("t1").get<bool>();
    c.t2 = j.at("t2").get<bool>();
    for (const auto& [key, value] : j.at("thm42").items())
      c.thm42.exponents[std::stoull(key)] = value.get<std::vector<unsigned>>();
    c.spectrum.perPrimeExponents = c.thm42.exponents;
    const auto& violation = j.at("thm42_violation");
    c.thm42.passed = violation.is_null();
    if (!c.thm42.passed) {
      const auto name = violation.get<std::string>();
      using C = Theorem42Result::Clause;
      C clause = C::None;
      for (C cand : {C::ForeignPrime, C::Count, C::Residue})
        if (name == clauseName(cand)) clause = cand;
      require(clause != C::None, "unknown structure clause " + name);
      c.thm42.violated = clause;
    }
    require(j.at("t2_convention").get<std::string>() == kT2Convention, "unknown t2 convention");
    const auto& g = j.at("general_spectrum");
    c.spectrum.generalSpectrum.cap = g.at("cap").get<std::uint64_t>();
    c.spectrum.generalSpectrum.complete = g.at("complete").get<bool>();
    c.spectrum.generalSpectrum.indices = indexSetFrom(g, "indices");
    const auto& s = j.at("search");
    c.stats.nodesVisited = s.at("nodes_visited").get<std::uint64_t>();
    c.stats.divisibilityTests = s.at("divisibility_tests").get<std::uint64_t>();
    c.stats.maxDepth = s.at("max_depth").get<std::uint64_t>();
    if (j.contains("protasov_blocking"))
      c.protasovBlocking = j.at("protasov_blocking").get<std::vector<std::string>>();

    verifyCertificate(c);
    // The structure detail string is not serialized; restore it from the check.
    c.thm42.detail = checkTheorem42(c.base, c.digits).detail;
    return c;
  } catch (const InvalidCertificate&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidCertificate(std::string("bad certificate field: ") + e.what());
  }
}

}  // namespace cyclotile
