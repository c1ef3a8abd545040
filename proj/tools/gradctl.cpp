// gradctl: batch command line over the table, representation, verification,
// bound, export and cache layers. Output is plain text by default; --json
// switches every command to a deterministic JSON document (alphabetical keys,
// floats printed with 17 significant digits, no wall time), so identical
// invocations are byte-identical.
//
// Exit codes: 0 pass, 1 identity failure, 2 bad input, 3 capacity, 4 I/O.

#include "gradkit/cliffkit.hpp"
#include "gradkit/curvkit.hpp"
#include "gradkit/errors.hpp"
#include "gradkit/repforge.hpp"
#include "gradkit/weightcalc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gradkit;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitIdentity = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitIo = 4;

/// Mirrors the shared command line surface; weight stays raw text until a
/// command that needs it parses and validates it.
struct CommandConfig {
  int n = 0;
  std::string weight_text;
  double tolerance = 1e-9;
  int q_max = -1; // -1 selects 2N+2 for an N+1 component table
  unsigned seed = 1;
  std::string cache_dir; // empty means GRADKIT_CACHE_DIR or .gradkit-cache
  bool json_output = false;

  std::string resolved_cache_dir() const {
    return cache_dir.empty() ? default_cache_dir() : cache_dir;
  }
};

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null"; // JSON has no inf/nan literals
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Serializes with stable byte-level conventions: objects keep the container's
/// alphabetical key order, floats go through format_double. nlohmann's own
/// dump() would pick shortest-round-trip float text instead.
void dump_json(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_json(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_json(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump(); // strings (escaped), integers, booleans, null
  }
}

void print_json(const json& j) {
  std::string text;
  dump_json(j, text);
  std::cout << text << "\n";
}

std::vector<HalfInt> parse_weight(const std::string& text) {
  std::vector<HalfInt> coords;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    coords.push_back(HalfInt::parse(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return coords;
}

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational: '" + text + "'"); };
  auto to_ll = [&](const std::string& part) {
    long long v = 0;
    size_t used = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != part.size()) throw bad();
    return v;
  };
  if (text.empty()) throw bad();
  const size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(to_ll(text));
  const long long den = to_ll(text.substr(slash + 1));
  if (den == 0) throw bad();
  return Rational(to_ll(text.substr(0, slash)), den);
}

DominantWeight require_weight(const CommandConfig& cfg) {
  if (cfg.n <= 0) throw std::invalid_argument("--n is required and must be positive");
  if (cfg.weight_text.empty()) throw std::invalid_argument("--weight is required");
  return DominantWeight(cfg.n, parse_weight(cfg.weight_text)); // ctor rejects invalid weights
}

/// Degree k of an all-ones prefix (1,..,1,0,..,0); 0 for every other weight.
int form_degree(const DominantWeight& w) {
  int k = 0;
  while (k < w.rank() && w.coords[k] == HalfInt(1)) ++k;
  for (int i = k; i < w.rank(); ++i)
    if (w.coords[i] != HalfInt(0)) return 0;
  return k;
}

bool is_spinor_weight(const DominantWeight& w) {
  for (int i = 0; i + 1 < w.rank(); ++i)
    if (w.coords[i].twice() != 1) return false;
  return w.coords[w.rank() - 1].abs().twice() == 1;
}

// ---------------------------------------------------------------------------
// verify

SuiteResult run_suite(const std::string& name, const Workspace& ws, const CommandConfig& cfg) {
  const Limits limits;
  SuiteResult out;
  out.suite = name;
  const DominantWeight& w = ws.rho().weight;
  const std::string tag = "n=" + std::to_string(w.n) + " rho=" + w.str();

  if (name == "moments") {
    out.merge(verify_moment_identities(ws, cfg.q_max, cfg.tolerance));
  } else if (name == "equivariance") {
    // library calibration is 10x the residual floor of the exact identities
    out.merge(verify_equivariance(ws, 8, cfg.seed, cfg.tolerance * 10));
  } else if (name == "projectors") {
    out.merge(verify_projectors(ws, cfg.tolerance));
  } else if (name == "pfaffian") {
    if (ws.n() % 2 == 0)
      out.merge(verify_pfaffian(ws, limits, cfg.tolerance));
    else
      out.note("pfaffian suite skipped for odd n", tag, 0.0);
  } else if (name == "specialization") {
    if (ws.merged().size() >= 2)
      out.merge(verify_bochner(w));
    else
      out.note("second order coefficient rows skipped on a single component table", tag, 0.0);
    if (is_spinor_weight(w) && ws.n() % 2 == 1)
      out.merge(spinor_suite(ws.n(), limits, cfg.tolerance));
    if (const int k = form_degree(w); k >= 1 && 2 * k < ws.n()) {
      out.merge(exterior_suite(ws.n(), k, limits, cfg.tolerance));
      if (ws.n() % 2 == 0 && k == ws.n() / 2 - 1) out.merge(hodge_suite(ws.n(), limits, cfg.tolerance));
    }
  } else if (name == "curvature") {
    out.merge(verify_constant_curvature(ws.rho(), 1.0, cfg.tolerance));
    const AlgebraicCurvatureTensor R = random_positive_curvature(ws.n(), cfg.seed);
    out.merge(verify_curvature_bound(ws.rho(), R, curvature_floor(R), 32, cfg.seed + 1,
                                     cfg.tolerance));
  } else if (name == "symbols") {
    out.merge(verify_symbols(ws, 50, cfg.seed, cfg.tolerance));
  } else if (name == "all") {
    for (const char* part : {"moments", "equivariance", "projectors", "pfaffian",
                             "specialization", "curvature", "symbols"})
      out.merge(run_suite(part, ws, cfg));
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return out;
}

const CheckResult* worst_failure(const SuiteResult& suite) {
  const CheckResult* worst = nullptr;
  double worst_ratio = 0.0;
  for (const auto& c : suite.cases) {
    if (c.pass()) continue;
    const double ratio = c.max_residual / (c.tolerance > 0 ? c.tolerance : 1.0);
    if (!worst || ratio > worst_ratio) {
      worst = &c;
      worst_ratio = ratio;
    }
  }
  return worst;
}

void print_suite_pretty(const SuiteResult& suite, double wall_ms) {
  for (const auto& c : suite.cases) {
    const char* mark = !c.asserted ? "  --" : (c.pass() ? "  ok" : "FAIL");
    std::printf("%s  %s  [%s]  residual=%.3e", mark, c.identity.c_str(), c.params.c_str(),
                c.max_residual);
    if (c.asserted) std::printf("  tol=%.3e", c.tolerance);
    if (c.has_fitted) std::printf("  fitted=%.12g", c.fitted);
    std::printf("\n");
  }
  std::printf("suite %s: %s  (%zu cases, %.1f ms)\n", suite.suite.c_str(),
              suite.pass() ? "PASS" : "FAIL", suite.cases.size(), wall_ms);
}

int cmd_verify(const CommandConfig& cfg, const std::string& suite_name) {
  const DominantWeight target = require_weight(cfg);
  BuildOptions opts;
  opts.cache_dir = cfg.resolved_cache_dir();
  const auto started = std::chrono::steady_clock::now();
  Workspace ws(build_rep(target, opts));
  const SuiteResult suite = run_suite(suite_name, ws, cfg);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();

  if (cfg.json_output) {
    json weight = json::array();
    for (const auto& c : target.coords) weight.push_back(c.str());
    print_json(json{{"command", "verify"},
                    {"n", cfg.n},
                    {"weight", weight},
                    {"suite", suite_name},
                    {"seed", cfg.seed},
                    {"tolerance", cfg.tolerance},
                    {"result", suite_to_json(suite)}});
  } else {
    print_suite_pretty(suite, wall_ms);
  }
  if (suite.pass()) return kExitPass;
  if (const CheckResult* worst = worst_failure(suite))
    std::cerr << "worst failure: " << worst->identity << " [" << worst->params
              << "] residual=" << format_double(worst->max_residual)
              << " tolerance=" << format_double(worst->tolerance) << "\n";
  return kExitIdentity;
}

// ---------------------------------------------------------------------------
// decompose / bound

int cmd_decompose(const CommandConfig& cfg) {
  const DominantWeight target = require_weight(cfg);
  const DecompositionTable table = decompose(target);
  if (cfg.json_output) {
    json j = table_to_json(table);
    j["command"] = "decompose";
    print_json(j);
    return kExitPass;
  }
  std::printf("rho=%s  n=%d  components=%d  exceptional=%s\n", target.str().c_str(), target.n,
              table.size(), table.exceptional ? "true" : "false");
  for (const auto& c : table.components)
    std::printf("  %s  kind=%s  m=%s  casimir=%s  dim=%lld\n", c.weight.str().c_str(),
                kind_str(c.kind, c.mu_index).c_str(), c.conformal_weight.str().c_str(),
                c.casimir.str().c_str(), c.dimension);
  return kExitPass;
}

int cmd_bound(const CommandConfig& cfg, const std::string& r_text) {
  const DominantWeight target = require_weight(cfg);
  const Rational r = parse_rational(r_text);
  if (!(r > Rational(0))) throw std::invalid_argument("--r must be positive");
  const BoundReport report = [&] {
    try {
      return eigenvalue_bound(target, r);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument(e.what()); // single-component weight is bad input
    }
  }();

  const int k = form_degree(target);
  Rational classical;
  if (k >= 1) classical = Rational(k) * Rational(target.n - k + 1) * r;

  if (cfg.json_output) {
    json j = bound_to_json(report);
    j["command"] = "bound";
    if (k >= 1) {
      j["classical_form_bound"] = classical.str();
      j["classical_matches"] = classical == report.bound;
    }
    print_json(j);
    return kExitPass;
  }
  std::printf("bound = %s   (rho=%s, r=%s, m_top=%s, m_bottom=%s, casimir=%s)\n",
              report.bound.str().c_str(), target.str().c_str(), r.str().c_str(),
              report.m_top.str().c_str(), report.m_bottom.str().c_str(),
              report.casimir.str().c_str());
  if (k >= 1)
    std::printf("classical form bound k(n-k+1)r = %s   match=%s\n", classical.str().c_str(),
                classical == report.bound ? "true" : "false");
  return kExitPass;
}

// ---------------------------------------------------------------------------
// export

std::string hom_file_name(int comp, int i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "hom_%02d_e%02d.cmat", comp, i);
  return buf;
}

int cmd_export(const CommandConfig& cfg, const std::string& what, const std::string& out_root) {
  const DominantWeight target = require_weight(cfg);
  BuildOptions opts;
  opts.cache_dir = cfg.resolved_cache_dir();
  const Representation rep = build_rep(target, opts);

  const fs::path dir = fs::path(out_root) / cache_key(target) / what;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create export directory " + dir.string() + ": " + ec.message());

  json weight = json::array();
  for (const auto& c : target.coords) weight.push_back(c.str());
  json manifest{{"format", "gradkit-export-1"},
                {"command", "export"},
                {"what", what},
                {"n", target.n},
                {"weight", weight},
                {"dim", rep.dim()}};
  json files = json::array();

  if (what == "generators") {
    for (size_t i = 0; i < rep.gens.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "gen_%03d.cmat", static_cast<int>(i));
      write_cmat(dir / buf, rep.gens[i]);
      files.push_back(buf);
    }
  } else {
    Workspace ws(rep);
    json components = json::array();
    for (int k = 0; k < ws.merged().size(); ++k) {
      const ComponentDescriptor& desc = ws.merged().components[k];
      json entry{{"weight", weight_to_json(desc.weight)},
                 {"conformal_weight", desc.conformal_weight.str()},
                 {"dimension", desc.dimension}};
      if (what == "projectors") {
        char buf[32];
        std::snprintf(buf, sizeof buf, "projector_%02d.cmat", k);
        write_cmat(dir / buf, ws.gram_projector(k));
        files.push_back(buf);
        entry["file"] = buf;
      } else { // clifford
        const CliffordHom hom = ws.merged_hom(k);
        json names = json::array();
        for (int i = 0; i < ws.n(); ++i) {
          const std::string name = hom_file_name(k, i);
          write_cmat(dir / name, hom.p[i]);
          files.push_back(name);
          names.push_back(name);
        }
        entry["files"] = names;
      }
      components.push_back(std::move(entry));
    }
    manifest["components"] = std::move(components);
  }
  manifest["files"] = std::move(files);

  std::string text;
  dump_json(manifest, text);
  {
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write manifest under " + dir.string());
    out << text << "\n";
  }

  if (cfg.json_output) {
    manifest["directory"] = dir.string();
    print_json(manifest);
  } else {
    std::printf("wrote %zu matrices + manifest.json under %s\n", manifest["files"].size(),
                dir.string().c_str());
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------
// cache

bool looks_like_cache_entry(const fs::directory_entry& e) {
  return e.is_directory() && e.path().filename().string().rfind("n", 0) == 0 &&
         fs::exists(e.path() / "manifest.json");
}

int cmd_cache(const CommandConfig& cfg, const std::string& action) {
  const fs::path root = cfg.resolved_cache_dir();

  if (action == "path") {
    const std::string resolved = fs::absolute(root).lexically_normal().string();
    if (cfg.json_output)
      print_json(json{{"command", "cache"}, {"action", "path"}, {"path", resolved}});
    else
      std::printf("%s\n", resolved.c_str());
    return kExitPass;
  }

  std::vector<std::string> keys;
  if (fs::exists(root)) {
    for (const auto& e : fs::directory_iterator(root))
      if (looks_like_cache_entry(e)) keys.push_back(e.path().filename().string());
  }
  std::sort(keys.begin(), keys.end());

  if (action == "list") {
    if (cfg.json_output) {
      print_json(json{{"command", "cache"}, {"action", "list"}, {"keys", keys}});
    } else {
      for (const auto& k : keys) std::printf("%s\n", k.c_str());
    }
    return kExitPass;
  }

  // clear: remove recognized entries only, keep the root directory itself
  size_t cleared = 0;
  for (const auto& k : keys) {
    std::error_code ec;
    fs::remove_all(root / k, ec);
    if (ec) throw IoError("cannot clear cache entry " + (root / k).string() + ": " + ec.message());
    ++cleared;
  }
  if (cfg.json_output)
    print_json(json{{"command", "cache"}, {"action", "clear"}, {"cleared", cleared}});
  else
    std::printf("cleared %zu entries under %s\n", cleared, root.string().c_str());
  return kExitPass;
}

void add_common_options(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--n", cfg.n, "ambient dimension");
  sub->add_option("--weight", cfg.weight_text,
                  "dominant weight, comma separated 'a' or 'a/b' tokens (halves as 1/2)");
  sub->add_option("--tolerance", cfg.tolerance, "base residual tolerance")->capture_default_str();
  sub->add_option("--q-max", cfg.q_max, "highest moment power, -1 selects 2N+2")
      ->check(CLI::Range(-1, 64));
  sub->add_option("--seed", cfg.seed, "seed for sampled verifiers")->capture_default_str();
  sub->add_option("--cache-dir", cfg.cache_dir,
                  "representation cache root (default GRADKIT_CACHE_DIR or .gradkit-cache)");
  sub->add_flag("--json", cfg.json_output, "deterministic JSON output");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"batch interface to the weight table / representation / verification stack"};
  app.require_subcommand(1);

  CommandConfig cfg;
  std::string suite_name = "all";
  std::string r_text;
  std::string what;
  std::string out_root = "gradkit-export";
  std::string cache_action;

  CLI::App* dec = app.add_subcommand("decompose", "branching table of rho (x) R^n");
  add_common_options(dec, cfg);

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite on one weight");
  add_common_options(ver, cfg);
  ver->add_option("--suite", suite_name, "suite to run")
      ->check(CLI::IsMember({"moments", "equivariance", "projectors", "pfaffian",
                             "specialization", "curvature", "symbols", "all"}))
      ->capture_default_str();

  CLI::App* bnd = app.add_subcommand("bound", "first eigenvalue bound under a curvature floor");
  add_common_options(bnd, cfg);
  bnd->add_option("--r", r_text, "curvature floor, rational 'a' or 'a/b'")->required();

  CLI::App* exp = app.add_subcommand("export", "write CMAT1 matrices plus a manifest");
  add_common_options(exp, cfg);
  exp->add_option("what", what, "generators | projectors | clifford")
      ->required()
      ->check(CLI::IsMember({"generators", "projectors", "clifford"}));
  exp->add_option("--out", out_root, "export root directory")->capture_default_str();

  CLI::App* cache = app.add_subcommand("cache", "manage the representation cache");
  add_common_options(cache, cfg);
  cache->add_option("action", cache_action, "list | clear | path")
      ->required()
      ->check(CLI::IsMember({"list", "clear", "path"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitBadInput;
  }

  try {
    if (dec->parsed()) return cmd_decompose(cfg);
    if (ver->parsed()) return cmd_verify(cfg, suite_name);
    if (bnd->parsed()) return cmd_bound(cfg, r_text);
    if (exp->parsed()) return cmd_export(cfg, what, out_root);
    if (cache->parsed()) return cmd_cache(cfg, cache_action);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const IoError& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io: " << e.what() << "\n";
    return kExitIo;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity: " << e.what() << "\n";
    return kExitIdentity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIdentity;
  }
  return kExitBadInput;
}
