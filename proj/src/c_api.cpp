#include "affsp/affsp.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "affsp/cache.hpp"
#include "affsp/errors.hpp"
#include "affsp/homology.hpp"
#include "affsp/invariants.hpp"
#include "affsp/theorems.hpp"

using nlohmann::json;

struct affsp_context {
  std::unique_ptr<affsp::DifferentialCache> cache;
  std::size_t nnz_cap = affsp::nnz_cap();
  unsigned threads = affsp::linalg_threads();
};

struct affsp_algebra {
  std::string family;
  unsigned n = 0;
  std::shared_ptr<const affsp::LieAlgebra> algebra;
  std::optional<affsp::SubalgebraDecomposition> decomposition;
};

struct affsp_report {
  json payload;
  std::string csv;
  std::string text;
  bool passed = true;
  std::vector<std::size_t> betti;
};

namespace {

thread_local std::string last_error;

affsp_status fail(affsp_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Fn>
affsp_status guarded(Fn&& fn) {
  try {
    fn();
    return AFFSP_OK;
  } catch (const affsp::DomainError& e) {
    return fail(AFFSP_ERR_DOMAIN, e.what());
  } catch (const affsp::ShapeError& e) {
    return fail(AFFSP_ERR_SHAPE, e.what());
  } catch (const affsp::RangeError& e) {
    return fail(AFFSP_ERR_RANGE, e.what());
  } catch (const affsp::ResourceError& e) {
    return fail(AFFSP_ERR_RESOURCE, e.what());
  } catch (const affsp::ConsistencyError& e) {
    return fail(AFFSP_ERR_CONSISTENCY, e.what());
  } catch (const affsp::FormatError& e) {
    return fail(AFFSP_ERR_FORMAT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AFFSP_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(AFFSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AFFSP_ERR_INTERNAL, "unknown error");
  }
}

// Applies the context's limits to the process-wide engine settings.
void apply(const affsp_context* ctx) {
  affsp::set_nnz_cap(ctx->nnz_cap);
  affsp::set_linalg_threads(ctx->threads);
}

affsp::BuildOptions build_options(const affsp_context* ctx) { return {ctx->cache.get(), true}; }

std::unique_ptr<affsp::LieModule> ideal_module(const affsp_algebra* a) {
  using namespace affsp;
  if (a->family == "I") return std::make_unique<LieModule>(adjoint_module(a->algebra));
  if (a->family == "g")
    return std::make_unique<LieModule>(
        coordinate_submodule(adjoint_module(a->algebra), a->decomposition->ideal_indices, "I" + std::to_string(a->n)));
  return std::make_unique<LieModule>(symplectic_modules(a->n).ideal);
}

// "trivial", "adjoint", "ideal", "ideal^K", "adjoint^K".
affsp::LieModule parse_module(const affsp_algebra* a, const std::string& spec) {
  using namespace affsp;
  std::string base = spec;
  std::optional<unsigned> power;
  if (auto caret = spec.find('^'); caret != std::string::npos) {
    base = spec.substr(0, caret);
    std::string digits = spec.substr(caret + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
      throw DomainError("bad exterior power in module spec '" + spec + "'");
    power = static_cast<unsigned>(std::stoul(digits));
  }
  std::unique_ptr<LieModule> m;
  if (base == "trivial" && !power) return trivial_module(a->algebra);
  if (base == "adjoint") m = std::make_unique<LieModule>(adjoint_module(a->algebra));
  else if (base == "ideal") m = ideal_module(a);
  else throw DomainError("unknown module '" + spec + "' (expected trivial, adjoint, ideal, ideal^K or adjoint^K)");
  if (power) return exterior_power_module(*m, *power);
  return *m;
}

affsp::ChainComplex build_complex(const affsp_context* ctx, const affsp_algebra* a, const std::string& theory,
                                  unsigned cap) {
  using namespace affsp;
  auto opts = build_options(ctx);
  if (theory == "lie") return ce_complex(a->algebra, cap, opts);
  if (theory == "leibniz") return leibniz_complex(a->algebra, cap, opts);
  if (theory == "adjoint") return coeff_complex(adjoint_module(a->algebra), cap, opts);
  if (theory == "rel") return rel_complex(a->algebra, cap, opts);
  if (theory == "cr") return cr_complex(a->algebra, cap, opts);
  if (theory.rfind("coeff:", 0) == 0) {
    LieModule m = parse_module(a, theory.substr(6));
    if (!(m.algebra() == *a->algebra)) throw DomainError("module is not over the requested algebra");
    return coeff_complex(m, cap, opts);
  }
  throw DomainError("unknown theory '" + theory + "' (expected lie, leibniz, adjoint, coeff:<module>, rel or cr)");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

affsp_report* from_verification(const affsp::VerificationReport& v) {
  auto r = std::make_unique<affsp_report>();
  r->payload = v.to_json();
  r->payload["report"] = "verification";
  r->csv = v.to_csv();
  r->text = v.to_text();
  r->passed = v.pass();
  return r.release();
}

}  // namespace

extern "C" {

const char* affsp_version(void) { return "1.0.0"; }

const char* affsp_status_name(affsp_status status) {
  switch (status) {
    case AFFSP_OK: return "ok";
    case AFFSP_ERR_DOMAIN: return "domain error";
    case AFFSP_ERR_SHAPE: return "shape error";
    case AFFSP_ERR_RANGE: return "range error";
    case AFFSP_ERR_RESOURCE: return "resource error";
    case AFFSP_ERR_CONSISTENCY: return "consistency error";
    case AFFSP_ERR_FORMAT: return "format error";
    case AFFSP_ERR_ARGUMENT: return "invalid argument";
    case AFFSP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* affsp_last_error(void) { return last_error.c_str(); }

affsp_status affsp_context_create(affsp_context** out) {
  if (!out) return fail(AFFSP_ERR_ARGUMENT, "null output pointer");
  return guarded([&] { *out = new affsp_context(); });
}

void affsp_context_destroy(affsp_context* ctx) { delete ctx; }

affsp_status affsp_context_set_cache_dir(affsp_context* ctx, const char* dir) {
  if (!ctx) return fail(AFFSP_ERR_ARGUMENT, "null context");
  return guarded([&] {
    if (!dir || !*dir)
      ctx->cache.reset();
    else
      ctx->cache = std::make_unique<affsp::DifferentialCache>(dir);
  });
}

affsp_status affsp_context_set_memory_cap(affsp_context* ctx, uint64_t nnz_cap) {
  if (!ctx) return fail(AFFSP_ERR_ARGUMENT, "null context");
  if (nnz_cap == 0) return fail(AFFSP_ERR_ARGUMENT, "memory cap must be positive");
  ctx->nnz_cap = static_cast<std::size_t>(nnz_cap);
  return AFFSP_OK;
}

affsp_status affsp_context_set_threads(affsp_context* ctx, unsigned threads) {
  if (!ctx) return fail(AFFSP_ERR_ARGUMENT, "null context");
  if (threads == 0) return fail(AFFSP_ERR_ARGUMENT, "thread count must be positive");
  ctx->threads = threads;
  return AFFSP_OK;
}

affsp_status affsp_algebra_create(affsp_context* ctx, const char* family, unsigned n, affsp_algebra** out) {
  if (!ctx || !family || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    apply(ctx);
    auto a = std::make_unique<affsp_algebra>();
    a->family = family;
    a->n = n;
    if (a->family == "sp") {
      a->algebra = affsp::build_sp(n);
    } else if (a->family == "I") {
      a->algebra = affsp::build_I(n);
    } else if (a->family == "g") {
      auto g = affsp::build_g(n);
      a->algebra = g.algebra;
      a->decomposition = g.decomposition;
    } else {
      throw affsp::DomainError("unknown family '" + a->family + "' (expected sp, I or g)");
    }
    *out = a.release();
  });
}

void affsp_algebra_destroy(affsp_algebra* algebra) { delete algebra; }

affsp_status affsp_algebra_dim(const affsp_algebra* algebra, size_t* out) {
  if (!algebra || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  *out = algebra->algebra->dim();
  return AFFSP_OK;
}

affsp_status affsp_algebra_info(const affsp_algebra* a, affsp_report** out) {
  if (!a || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto r = std::make_unique<affsp_report>();
    const affsp::LieAlgebra& L = *a->algebra;
    affsp::LieValidation v = affsp::validate_lie(L);
    json desc = L.describe();
    json& p = r->payload;
    p["report"] = "algebra";
    p["family"] = a->family;
    p["n"] = a->n;
    p["dim"] = L.dim();
    p["labels"] = desc["labels"];
    p["constants"] = desc["constants"];
    p["abelian"] = L.is_abelian();
    p["fingerprint"] = affsp::fingerprint(desc);
    p["validation"] = {{"antisymmetry", v.antisymmetry}, {"jacobi", v.jacobi}, {"pass", v.passed()}};
    if (a->decomposition)
      p["decomposition"] = {{"ideal", a->decomposition->ideal_indices},
                            {"quotient", a->decomposition->quotient_indices}};
    r->passed = v.passed();

    std::string csv = "index,label\n";
    std::string text = a->family + std::to_string(a->n) + ": dim " + std::to_string(L.dim()) +
                       (L.is_abelian() ? ", abelian" : "") + ", validation " + (v.passed() ? "pass" : "FAIL") + "\n";
    for (affsp::Index i = 0; i < L.dim(); ++i) {
      csv += std::to_string(i) + ",\"" + L.labels()[i] + "\"\n";
      text += "  e" + std::to_string(i) + " = " + L.labels()[i] + "\n";
    }
    if (a->decomposition)
      text += "  ideal I" + std::to_string(a->n) + ": e0..e" + std::to_string(a->decomposition->ideal_indices.size() - 1) +
              ", quotient sp" + std::to_string(a->n) + ": the rest\n";
    r->csv = std::move(csv);
    r->text = std::move(text);
    *out = r.release();
  });
}

affsp_status affsp_homology(affsp_context* ctx, const affsp_algebra* a, const char* theory, unsigned max_degree,
                            int emit_cycles, affsp_report** out) {
  if (!ctx || !a || !theory || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    apply(ctx);
    // One extra degree so that every reported Betti number is exact.
    affsp::ChainComplex C = build_complex(ctx, a, theory, max_degree + 1);
    affsp::HomologyReport h = affsp::homology_report(C, emit_cycles != 0);
    h.degrees.pop_back();
    auto r = std::make_unique<affsp_report>();
    json body = h.to_json(&C);
    r->payload = {{"report", "homology"}, {"family", a->family},     {"n", a->n},
                  {"theory", theory},     {"max_degree", max_degree}};
    r->payload.update(body);
    r->csv = h.to_csv();
    r->text = h.to_text();
    r->betti = h.betti_numbers();
    *out = r.release();
  });
}

affsp_status affsp_invariants(affsp_context* ctx, unsigned n, unsigned k_max, affsp_report** out) {
  if (!ctx || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    apply(ctx);
    affsp::AppendixReport a = affsp::appendix_report(n, k_max);
    auto r = std::make_unique<affsp_report>();
    r->payload = a.to_json();
    r->payload["report"] = "invariants";
    r->payload["k_max"] = k_max;
    r->csv = a.to_csv();
    r->text = a.to_text();
    r->passed = a.pass();
    *out = r.release();
  });
}

affsp_status affsp_verify(affsp_context* ctx, const char* claim, unsigned n, int cap, affsp_report** out) {
  if (!ctx || !claim || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    apply(ctx);
    std::optional<unsigned> c;
    if (cap >= 0) c = static_cast<unsigned>(cap);
    affsp::SuiteOptions opts{ctx->cache.get()};
    *out = from_verification(affsp::run_claim(claim, n, c, opts));
  });
}

size_t affsp_claim_count(void) { return affsp::claim_ids().size(); }

const char* affsp_claim_id(size_t index) {
  const auto& ids = affsp::claim_ids();
  return index < ids.size() ? ids[index].c_str() : nullptr;
}

void affsp_report_destroy(affsp_report* report) { delete report; }

int affsp_report_passed(const affsp_report* report) { return report && report->passed ? 1 : 0; }

affsp_status affsp_report_render(const affsp_report* report, affsp_format format, char** out) {
  if (!report || !out) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    switch (format) {
      case AFFSP_FORMAT_JSON: *out = copy_string(report->payload.dump(2) + "\n"); return;
      case AFFSP_FORMAT_CSV: *out = copy_string(report->csv); return;
      case AFFSP_FORMAT_TEXT: *out = copy_string(report->text); return;
    }
    throw affsp::DomainError("unknown format");
  });
}

void affsp_string_free(char* s) { std::free(s); }

affsp_status affsp_report_betti(const affsp_report* report, size_t* values, size_t capacity, size_t* count) {
  if (!report || !count || (capacity && !values)) return fail(AFFSP_ERR_ARGUMENT, "null argument");
  if (report->payload.value("report", "") != "homology") return fail(AFFSP_ERR_ARGUMENT, "not a homology report");
  *count = report->betti.size();
  for (size_t i = 0; i < capacity && i < report->betti.size(); ++i) values[i] = report->betti[i];
  return AFFSP_OK;
}

}  // extern "C"
