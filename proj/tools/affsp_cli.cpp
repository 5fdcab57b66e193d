// affsp: command-line front end over the C API.
//
// Exit codes: 0 all requested checks pass, 1 a verification failed,
// 2 usage or domain error, 3 memory guard tripped.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "affsp/affsp.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

int exit_code(affsp_status s) {
  switch (s) {
    case AFFSP_OK: return kPass;
    case AFFSP_ERR_RESOURCE: return kResource;
    case AFFSP_ERR_DOMAIN:
    case AFFSP_ERR_SHAPE:
    case AFFSP_ERR_RANGE:
    case AFFSP_ERR_FORMAT:
    case AFFSP_ERR_ARGUMENT: return kUsage;
    default: return kFail;
  }
}

int report_error(affsp_status s) {
  std::cerr << "affsp: " << affsp_status_name(s) << ": " << affsp_last_error() << '\n';
  return exit_code(s);
}

struct Handle {
  affsp_report* r = nullptr;
  ~Handle() { affsp_report_destroy(r); }
};

std::string render(const affsp_report* r, affsp_format f) {
  char* s = nullptr;
  if (affsp_report_render(r, f, &s) != AFFSP_OK) return {};
  std::string out(s);
  affsp_string_free(s);
  return out;
}

affsp_format parse_format(const std::string& f) {
  if (f == "json") return AFFSP_FORMAT_JSON;
  if (f == "csv") return AFFSP_FORMAT_CSV;
  return AFFSP_FORMAT_TEXT;
}

// Prints a single report; exit code reflects its pass flag.
int emit(const affsp_report* r, affsp_format f) {
  std::cout << render(r, f);
  std::cout.flush();
  return affsp_report_passed(r) ? kPass : kFail;
}

struct Config {
  std::string format = "text";
  std::string cache_dir;
  std::uint64_t memory_cap = 0;
  unsigned threads = 0;

  std::string family;
  unsigned n = 1;
  std::string theory = "lie";
  unsigned max_degree = 3;
  bool emit_cycles = false;
  unsigned k_max = 0;
  std::string claim;
  int cap = -1;
};

int run_verify_all(affsp_context* ctx, const Config& cfg, affsp_format f) {
  nlohmann::json suite{{"report", "suite"}, {"n", cfg.n}, {"claims", nlohmann::json::array()}};
  bool all = true;
  bool csv_header = false;
  for (std::size_t i = 0; i < affsp_claim_count(); ++i) {
    Handle h;
    affsp_status s = affsp_verify(ctx, affsp_claim_id(i), cfg.n, -1, &h.r);
    if (s != AFFSP_OK) return report_error(s);
    all = all && affsp_report_passed(h.r);
    if (f == AFFSP_FORMAT_JSON) {
      suite["claims"].push_back(nlohmann::json::parse(render(h.r, f)));
    } else if (f == AFFSP_FORMAT_CSV) {
      std::string csv = render(h.r, f);
      if (csv_header) csv = csv.substr(csv.find('\n') + 1);
      csv_header = true;
      std::cout << csv << std::flush;
    } else {
      std::cout << render(h.r, f) << std::flush;
    }
  }
  if (f == AFFSP_FORMAT_JSON) {
    suite["pass"] = all;
    std::cout << suite.dump(2) << '\n';
  } else if (f == AFFSP_FORMAT_TEXT) {
    std::cout << "suite n=" << cfg.n << ": " << (all ? "PASS" : "FAIL") << '\n';
  }
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homology of the affine symplectic Lie algebra and its subalgebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;

  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Differential cache directory")->envname("AFFSP_CACHE_DIR");
  app.add_option("--memory-cap", cfg.memory_cap, "Largest nonzero count of any matrix")
      ->envname("AFFSP_MEMORY_CAP")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads for elimination")->check(CLI::PositiveNumber);

  auto* algebra = app.add_subcommand("algebra", "Algebra structure");
  algebra->require_subcommand(1);
  auto* info = algebra->add_subcommand("info", "Basis, structure constants and validation");
  info->add_option("--family", cfg.family, "sp, I or g")->required();
  info->add_option("--n", cfg.n, "Rank n >= 1")->required();

  auto* homology = app.add_subcommand("homology", "Betti numbers of a complex");
  homology->add_option("--family", cfg.family, "sp, I or g")->required();
  homology->add_option("--n", cfg.n, "Rank n >= 1")->required();
  homology->add_option("--theory", cfg.theory, "lie, leibniz, adjoint, coeff:<module>, rel or cr")->required();
  homology->add_option("--max-degree", cfg.max_degree, "Highest degree reported")->required();
  homology->add_flag("--emit-cycles", cfg.emit_cycles, "Attach representative cycles");

  auto* invariants = app.add_subcommand("invariants", "Invariant subspaces over sp_n");
  invariants->add_option("--n", cfg.n, "Rank n >= 1")->required();
  invariants->add_option("--k-max", cfg.k_max, "Largest exterior degree")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification claim, or all of them");
  verify->add_option("claim", cfg.claim, "Claim id or 'all'")->required();
  verify->add_option("--n", cfg.n, "Rank n >= 1")->required();
  verify->add_option("--cap", cfg.cap, "Degree cap (default depends on claim and n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  affsp_context* ctx = nullptr;
  if (affsp_status s = affsp_context_create(&ctx); s != AFFSP_OK) return report_error(s);
  struct CtxGuard {
    affsp_context* c;
    ~CtxGuard() { affsp_context_destroy(c); }
  } guard{ctx};

  if (!cfg.cache_dir.empty())
    if (affsp_status s = affsp_context_set_cache_dir(ctx, cfg.cache_dir.c_str()); s != AFFSP_OK) return report_error(s);
  if (cfg.memory_cap)
    if (affsp_status s = affsp_context_set_memory_cap(ctx, cfg.memory_cap); s != AFFSP_OK) return report_error(s);
  if (cfg.threads)
    if (affsp_status s = affsp_context_set_threads(ctx, cfg.threads); s != AFFSP_OK) return report_error(s);

  const affsp_format f = parse_format(cfg.format);

  if (*info || *homology) {
    affsp_algebra* a = nullptr;
    if (affsp_status s = affsp_algebra_create(ctx, cfg.family.c_str(), cfg.n, &a); s != AFFSP_OK)
      return report_error(s);
    Handle h;
    affsp_status s = *info ? affsp_algebra_info(a, &h.r)
                           : affsp_homology(ctx, a, cfg.theory.c_str(), cfg.max_degree, cfg.emit_cycles, &h.r);
    affsp_algebra_destroy(a);
    if (s != AFFSP_OK) return report_error(s);
    return emit(h.r, f);
  }
  if (*invariants) {
    Handle h;
    if (affsp_status s = affsp_invariants(ctx, cfg.n, cfg.k_max, &h.r); s != AFFSP_OK) return report_error(s);
    return emit(h.r, f);
  }
  if (*verify) {
    if (cfg.claim == "all") {
      if (cfg.cap >= 0) std::cerr << "affsp: --cap is ignored for 'verify all'; per-claim defaults apply\n";
      return run_verify_all(ctx, cfg, f);
    }
    Handle h;
    if (affsp_status s = affsp_verify(ctx, cfg.claim.c_str(), cfg.n, cfg.cap, &h.r); s != AFFSP_OK)
      return report_error(s);
    return emit(h.r, f);
  }
  return kUsage;
}
