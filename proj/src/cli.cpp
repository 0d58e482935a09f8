#include "cyclotile/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <thread>

#include "cyclotile/certificate.hpp"
#include "cyclotile/errors.hpp"
#include "cyclotile/oracles.hpp"
#include "cyclotile/phitree.hpp"
#include "cyclotile/protasov.hpp"
#include "cyclotile/recipe.hpp"

namespace cyclotile {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::uint64_t kKenyonRange = 200;

std::string braces(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto e : s) {
    out += (first ? "" : ",") + std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::string braces(const std::vector<std::uint64_t>& v) { return braces(IndexSet(v.begin(), v.end())); }

std::string exponentList(const std::vector<unsigned>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::string certificateText(const Certificate& c) {
  std::ostringstream os;
  os << "verdict: " << verdictName(c.verdict) << "\n";
  os << "base: " << c.base << "\n";
  os << "digits: " << c.digits.toString() << "\n";
  if (c.verdict == Verdict::Tile) {
    os << "blocking: " << braces(c.blocking) << "\n";
    os << "kernel degree: " << kernelDegree(c.kernel) << "\n";
  }
  os << "pk order: " << (c.pkOrder ? std::to_string(*c.pkOrder) : "absent") << "\n";
  os << "prime-power spectrum: " << braces(c.spectrum.primePowerSpectrum) << "\n";
  os << "T1: " << (c.t1 ? "holds" : "fails") << "\n";
  os << "T2 (" << kT2Convention << "): " << (c.t2 ? "holds" : "fails") << "\n";
  os << "prime-power structure: " << (c.thm42.passed ? "pass" : "fail");
  if (!c.thm42.passed) os << " (" << clauseName(c.thm42.violated) << ": " << c.thm42.detail << ")";
  os << "\n";
  for (const auto& [p, exps] : c.thm42.exponents) os << "  exponents of " << p << ": " << exponentList(exps) << "\n";
  const auto& g = c.spectrum.generalSpectrum;
  os << "spectrum up to " << g.cap << (g.complete ? " (complete)" : " (partial)") << ": " << braces(g.indices)
     << "\n";
  os << "search: " << c.stats.nodesVisited << " nodes, " << c.stats.divisibilityTests << " divisibility tests, depth "
     << c.stats.maxDepth << "\n";
  if (c.protasovBlocking) {
    const auto& v = *c.protasovBlocking;
    os << "integer-tree blocking: " << v.size() << " vertices";
    for (std::size_t i = 0; i < std::min<std::size_t>(v.size(), 12); ++i) os << " " << v[i];
    if (v.size() > 12) os << " ...";
    os << "\n";
  }
  return os.str();
}

int verdictExit(const Certificate& c) { return c.verdict == Verdict::Tile ? kExitTile : kExitNotTile; }

// Runs the integer-tree and root-condition oracles; returns a disagreement
// message, if any.
std::optional<std::string> crossCheck(Certificate& c) {
  const auto pr = protasovDecide(c.base, c.digits);
  std::vector<std::string> names;
  for (const auto& v : pr.blocking) names.push_back(v.toString());
  c.protasovBlocking = names;
  const bool treeTile = pr.status == ProtasovResult::Status::Blocking;
  if (pr.status == ProtasovResult::Status::Inconclusive)
    return std::string("integer-tree search inconclusive at depth ") + std::to_string(pr.depthBound);
  if (treeTile != (c.verdict == Verdict::Tile))
    return std::string("integer-tree search says ") + (treeTile ? "tile" : "not-tile");
  if (treeTile && pr.tauImage != c.blocking) return std::string("integer-tree blocking maps to ") + braces(pr.tauImage);
  if (c.verdict == Verdict::Tile) {
    const auto k = kenyonBoundedCheck(c.base, c.digits, kKenyonRange);
    if (!k.passed) return "root condition fails at m = " + std::to_string(*k.failingM);
  }
  return std::nullopt;
}

struct Session {
  std::ostream& out;
  std::ostream& err;
  RunConfig cfg;
  std::string certificatePath;
  std::string inputPath;
  std::uint64_t cacheFill = 0;

  void loadCache() {
    if (!cfg.cachePath) return;
    if (!std::filesystem::exists(*cfg.cachePath)) return;
    auto r = CycCache::global().load(*cfg.cachePath);
    if (!r.headerOk || r.recomputed) err << "cache: " << r.recomputed << " entries recomputed\n";
  }

  void saveCache() {
    if (cfg.cachePath) CycCache::global().save(*cfg.cachePath);
  }

  // Base and digits from either --digits or --recipe.
  std::pair<std::uint64_t, DigitSet> input() {
    if (cfg.digits.has_value() == cfg.recipe.has_value())
      throw std::invalid_argument("give exactly one of --digits and --recipe");
    if (cfg.recipe) {
      const Recipe recipe = loadRecipe(*cfg.recipe);
      if (cfg.base && *cfg.base != recipe.base) throw std::invalid_argument("--base differs from the recipe base");
      return {recipe.base, buildFromRecipe(recipe).digits};
    }
    if (!cfg.base) throw std::invalid_argument("--base is required with --digits");
    return {*cfg.base, DigitSet::parse(*cfg.digits)};
  }

  int analyze() {
    auto [base, digits] = input();
    Certificate cert = decideTileDigitSet(base, digits);
    std::optional<std::string> disagreement;
    if (cfg.crossCheck) disagreement = crossCheck(cert);
    switch (cfg.format) {
      case OutputFormat::Json: out << toJson(cert) << "\n"; break;
      case OutputFormat::Dot: out << searchToDot(base, searchBlocking(base, maskPolynomial(digits))); break;
      case OutputFormat::Svg: throw std::invalid_argument("analyze has no svg output");
      case OutputFormat::Text: out << certificateText(cert); break;
    }
    if (disagreement) {
      err << "oracle disagreement: " << *disagreement << "\n";
      return kExitOracle;
    }
    return verdictExit(cert);
  }

  int construct() {
    if (!cfg.recipe) throw std::invalid_argument("construct needs --recipe");
    const Recipe recipe = loadRecipe(*cfg.recipe);
    const auto built = buildFromRecipe(recipe);
    Certificate cert = decideTileDigitSet(recipe.base, built.digits);
    std::optional<std::string> disagreement;
    if (cfg.crossCheck) disagreement = crossCheck(cert);
    if (cfg.format == OutputFormat::Json) {
      ojson j;
      j["kind"] = kindName(recipe.kind);
      j["digits"] = built.digits.digits();
      j["order"] = built.order;
      ojson stages = ojson::array();
      if (built.trace) {
        for (const auto& st : built.trace->stages) {
          stages.push_back({{"psi", std::vector<std::uint64_t>(st.psi.begin(), st.psi.end())},
                            {"kernel", std::vector<std::uint64_t>(st.kernel.begin(), st.kernel.end())},
                            {"modulus", st.modulus},
                            {"replacements", st.replacements},
                            {"digits", st.digits}});
        }
      }
      j["stages"] = stages;
      j["certificate"] = ojson::parse(toJson(cert));
      out << j.dump() << "\n";
    } else if (cfg.format == OutputFormat::Text) {
      out << "kind: " << kindName(recipe.kind) << "\n";
      out << "order: " << built.order << "\n";
      if (built.trace) {
        for (std::size_t i = 0; i < built.trace->stages.size(); ++i) {
          const auto& st = built.trace->stages[i];
          out << "stage " << i << ": S=" << braces(st.psi) << " K=" << braces(st.kernel) << " n=" << st.modulus
              << " D=" << braces(st.digits) << "\n";
        }
      }
      out << certificateText(cert);
    } else {
      throw std::invalid_argument("construct supports text and json output");
    }
    if (disagreement) {
      err << "oracle disagreement: " << *disagreement << "\n";
      return kExitOracle;
    }
    return verdictExit(cert);
  }

  int kernels() {
    if (!cfg.base) throw std::invalid_argument("kernels needs --base");
    if (cfg.maxDegree == 0) throw std::invalid_argument("kernels needs --max-degree");
    const auto list = enumerateKernels(*cfg.base, cfg.maxDegree);
    switch (cfg.format) {
      case OutputFormat::Text:
        for (const auto& b : list) out << braces(b.indices) << " degree " << kernelDegree(b.indices) << "\n";
        break;
      case OutputFormat::Json: {
        ojson arr = ojson::array();
        for (const auto& b : list)
          arr.push_back({{"indices", std::vector<std::uint64_t>(b.indices.begin(), b.indices.end())},
                         {"degree", kernelDegree(b.indices)}});
        out << arr.dump() << "\n";
        break;
      }
      case OutputFormat::Dot:
        for (const auto& b : list) out << blockingToDot(b);
        break;
      case OutputFormat::Svg: throw std::invalid_argument("kernels has no svg output");
    }
    return kExitTile;
  }

  int geometry() {
    auto [base, digits] = input();
    const auto iu = tileIntervals(base, digits, cfg.depth);
    switch (cfg.format) {
      case OutputFormat::Text: {
        out << iu.toText() << "\n";
        auto collision = directSumDiagnostic(base, digits, std::max(1u, cfg.depth));
        out << "direct-sum diagnostic (heuristic): "
            << (collision ? "first collision at level " + std::to_string(*collision) : std::string("none")) << "\n";
        break;
      }
      case OutputFormat::Svg: out << iu.toSvg(); break;
      case OutputFormat::Json: {
        ojson arr = ojson::array();
        for (const auto& [l, r] : iu.intervals()) arr.push_back({formatRational(l), formatRational(r)});
        out << ojson{{"depth", cfg.depth}, {"intervals", arr}, {"measure", formatRational(iu.measure())}}.dump()
            << "\n";
        break;
      }
      case OutputFormat::Dot: throw std::invalid_argument("geometry has no dot output");
    }
    return kExitTile;
  }

  int oracle() {
    if (!cfg.digits) throw std::invalid_argument("oracle needs --digits");
    const DigitSet a = DigitSet::parse(*cfg.digits);
    const auto report = integerTileReport(a, cfg.periodCap);
    std::optional<AbsContResult> ac;
    if (cfg.base) ac = absContCheck(*cfg.base, a);
    if (cfg.format == OutputFormat::Json) {
      ojson j;
      j["digits"] = a.digits();
      j["integer_tile"] = report.tiling.has_value();
      if (report.tiling) {
        j["period"] = report.tiling->period;
        j["complement"] = report.tiling->complement;
      }
      j["period_cap"] = report.periodCap;
      j["periods_tried"] = report.periodsTried.size();
      if (ac) {
        j["base"] = *cfg.base;
        j["absolutely_continuous"] = ac->absolutelyContinuous;
        j["blocking"] = std::vector<std::uint64_t>(ac->blocking.begin(), ac->blocking.end());
      }
      out << j.dump() << "\n";
    } else {
      if (report.tiling)
        out << "period " << report.tiling->period << ", L=" << braces(report.tiling->complement) << "\n";
      else
        out << "no tiling with period <= " << report.periodCap << " (" << report.periodsTried.size()
            << " periods tried)\n";
      if (ac) {
        out << "base " << *cfg.base << ": " << (ac->absolutelyContinuous ? "absolutely continuous" : "not absolutely continuous");
        if (ac->absolutelyContinuous) out << ", blocking " << braces(ac->blocking);
        out << "\n";
      }
    }
    return report.tiling ? kExitTile : kExitNotTile;
  }

  int cache() {
    if (!cfg.cachePath) throw std::invalid_argument("cache needs --cache");
    auto& c = CycCache::global();
    if (std::filesystem::exists(*cfg.cachePath)) {
      auto r = c.load(*cfg.cachePath);
      out << "loaded " << r.accepted << " entries, recomputed " << r.recomputed
          << (r.headerOk ? "" : ", header missing or unknown") << "\n";
    }
    for (std::uint64_t n = 1; n <= cacheFill; ++n) c.get(n);
    c.save(*cfg.cachePath);
    out << "saved " << c.size() << " entries to " << *cfg.cachePath << "\n";
    return kExitTile;
  }

  int verify() {
    std::ifstream in(certificatePath);
    if (!in) throw std::invalid_argument("cannot open " + certificatePath);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto cert = certificateFromJson(ss.str());
    out << "certificate valid: " << verdictName(cert.verdict) << "\n";
    return kExitTile;
  }

  int batch() {
    std::ifstream in(inputPath);
    if (!in) throw std::invalid_argument("cannot open " + inputPath);
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
      auto start = line.find_first_not_of(" \t");
      if (start == std::string::npos || line[start] == '#') continue;
      lines.emplace_back(n, line.substr(start));
    }
    auto work = [crossCheckOn = cfg.crossCheck](std::size_t lineNo, std::string text) {
      ojson j;
      j["line"] = lineNo;
      try {
        std::istringstream ls(text);
        std::uint64_t b;
        std::string rest;
        if (!(ls >> b)) throw std::invalid_argument("line must start with the base");
        std::getline(ls, rest);
        Certificate cert = decideTileDigitSet(b, DigitSet::parse(rest));
        if (crossCheckOn) {
          if (auto d = crossCheck(cert)) j["disagreement"] = *d;
        }
        j["certificate"] = ojson::parse(toJson(cert));
      } catch (const std::exception& e) {
        j["error"] = e.what();
      }
      return j;
    };
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ojson> results(lines.size());
    for (std::size_t begin = 0; begin < lines.size(); begin += workers) {
      std::vector<std::future<ojson>> tasks;
      const std::size_t end = std::min(lines.size(), begin + workers);
      for (std::size_t i = begin; i < end; ++i)
        tasks.push_back(std::async(std::launch::async, work, lines[i].first, lines[i].second));
      for (std::size_t i = begin; i < end; ++i) results[i] = tasks[i - begin].get();
    }
    int code = kExitTile;
    for (const auto& j : results) {
      out << j.dump() << "\n";
      if (j.contains("disagreement")) code = kExitOracle;
      else if (j.contains("error") && code != kExitOracle) code = kExitError;
    }
    return code;
  }
};

OutputFormat parseFormat(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "dot") return OutputFormat::Dot;
  if (s == "svg") return OutputFormat::Svg;
  throw std::invalid_argument("unknown format " + s);
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tile digit sets: decision certificates, spectra, product-form constructions"};
  app.require_subcommand(1);
  Session s{out, err, {}, {}, {}, 0};
  std::string format = "text";

  auto addInput = [&](CLI::App* sub) {
    sub->add_option("--base", s.cfg.base, "Base b >= 2")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
    sub->add_option("--digits", s.cfg.digits, "Digits, comma separated, e.g. 0,1,8,9");
    sub->add_option("--recipe", s.cfg.recipe, "Construction recipe (JSON)");
  };
  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text, json, dot or svg")
        ->check(CLI::IsMember({"text", "json", "dot", "svg"}));
    sub->add_option("--cache", s.cfg.cachePath, "Cyclotomic cache file");
  };

  auto* analyze = app.add_subcommand("analyze", "Decide whether D is a tile digit set for base b");
  addInput(analyze);
  addCommon(analyze);
  analyze->add_flag("--cross-check", s.cfg.crossCheck, "Confirm with the integer-tree and root-condition oracles");

  auto* construct = app.add_subcommand("construct", "Build a digit set from a recipe and certify it");
  construct->add_option("--recipe", s.cfg.recipe, "Construction recipe (JSON)")->required();
  addCommon(construct);
  construct->add_flag("--cross-check", s.cfg.crossCheck, "Confirm with the oracles");

  auto* kernels = app.add_subcommand("kernels", "List blockings by kernel degree");
  kernels->add_option("--base", s.cfg.base, "Base b >= 2")->required();
  kernels->add_option("--max-degree", s.cfg.maxDegree, "Largest kernel degree")->required();
  addCommon(kernels);

  auto* geometry = app.add_subcommand("geometry", "Interval cover of T(b, D) at a given depth");
  addInput(geometry);
  geometry->add_option("--depth", s.cfg.depth, "Expansion depth")->check(CLI::Range(0u, 64u));
  addCommon(geometry);

  auto* oracle = app.add_subcommand("oracle", "Integer tiling of Z and the absolute-continuity check");
  oracle->add_option("--digits", s.cfg.digits, "Digits, comma separated")->required();
  oracle->add_option("--base", s.cfg.base, "Base for the absolute-continuity check");
  oracle->add_option("--period-cap", s.cfg.periodCap, "Largest period to search");
  addCommon(oracle);

  auto* cache = app.add_subcommand("cache", "Load, verify, extend and save the cyclotomic cache");
  cache->add_option("--cache", s.cfg.cachePath, "Cache file")->required();
  cache->add_option("--fill", s.cacheFill, "Make sure Φ_1..Φ_N are present");

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate file");
  verify->add_option("certificate", s.certificatePath, "Certificate JSON")->required();

  auto* batch = app.add_subcommand("batch", "Analyze one 'base digits' line per input line");
  batch->add_option("input", s.inputPath, "Input file")->required();
  batch->add_flag("--cross-check", s.cfg.crossCheck, "Confirm with the oracles");
  batch->add_option("--cache", s.cfg.cachePath, "Cyclotomic cache file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTile : kExitError;
  }

  try {
    s.cfg.format = parseFormat(format);
    if (!cache->parsed()) s.loadCache();
    s.cfg.subcommand = app.get_subcommands().front()->get_name();
    if (s.cfg.subcommand == "cache") return s.cache();
    int code = kExitError;
    if (analyze->parsed()) code = s.analyze();
    else if (construct->parsed()) code = s.construct();
    else if (kernels->parsed()) code = s.kernels();
    else if (geometry->parsed()) code = s.geometry();
    else if (oracle->parsed()) code = s.oracle();
    else if (verify->parsed()) code = s.verify();
    else if (batch->parsed()) code = s.batch();
    s.saveCache();
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace cyclotile
