#include "combdual/combdual.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "combdual/run.hpp"

struct cd_graph {
  combdual::LazyGraph graph;
};

struct cd_truncation {
  combdual::FiniteTruncation h;
};

namespace {

thread_local std::string last_error;

cd_status fail(cd_status s, const std::string& message) {
  last_error = message;
  return s;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, translating exceptions into status codes.
template <class F>
cd_status guard(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const combdual::InvalidArgument& e) {
    return fail(CD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(CD_ERR_INVALID_ARGUMENT, std::string("malformed JSON: ") + e.what());
  } catch (const combdual::BudgetExceeded& e) {
    return fail(CD_ERR_BUDGET, e.what());
  } catch (const std::exception& e) {
    return fail(CD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CD_ERR_INTERNAL, "unknown error");
  }
}

cd_status emit(const combdual::Json& j, char** out, int* out_exit) {
  *out = copy_string(j.dump(2));
  if (!*out) return fail(CD_ERR_INTERNAL, "out of memory");
  if (out_exit) *out_exit = combdual::exit_code(j);
  return CD_OK;
}

combdual::Json parse(const char* text) { return combdual::Json::parse(text); }

}  // namespace

extern "C" {

const char* cd_version(void) { return "1.0.0"; }

const char* cd_last_error(void) { return last_error.c_str(); }

void cd_string_free(char* s) { std::free(s); }

cd_status cd_family_names(char** out_json) {
  if (!out_json) return fail(CD_ERR_NULL_POINTER, "null output pointer");
  return guard([&] { return emit(combdual::Json(combdual::family_names()), out_json, nullptr); });
}

cd_status cd_family_create(const char* name, const char* params_json, cd_graph** out) {
  if (!name || !out) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    combdual::ParamMap params;
    if (params_json) params = parse(params_json).get<combdual::ParamMap>();
    *out = new cd_graph{combdual::family(name, params)};
    return CD_OK;
  });
}

void cd_graph_free(cd_graph* g) { delete g; }

cd_status cd_truncate(const cd_graph* g, int radius, int branching_cap, cd_truncation** out) {
  if (!g || !out) return fail(CD_ERR_NULL_POINTER, "null argument");
  if (radius < 0) return fail(CD_ERR_INVALID_ARGUMENT, "radius must be non-negative");
  return guard([&] {
    std::optional<std::uint32_t> cap;
    if (branching_cap > 0) cap = static_cast<std::uint32_t>(branching_cap);
    *out = new cd_truncation{combdual::truncate(g->graph, radius, cap)};
    return CD_OK;
  });
}

void cd_truncation_free(cd_truncation* h) { delete h; }

cd_status cd_truncation_size(const cd_truncation* h, int* out_vertices) {
  if (!h || !out_vertices) return fail(CD_ERR_NULL_POINTER, "null argument");
  *out_vertices = h->h.size();
  return CD_OK;
}

cd_status cd_truncation_to_json(const cd_truncation* h, char** out_json) {
  if (!h || !out_json) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] { return emit(combdual::truncation_to_json(h->h), out_json, nullptr); });
}

cd_status cd_truncation_to_dot(const cd_truncation* h, char** out_dot) {
  if (!h || !out_dot) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    *out_dot = copy_string(combdual::truncation_to_dot(h->h));
    return *out_dot ? CD_OK : fail(CD_ERR_INTERNAL, "out of memory");
  });
}

cd_status cd_analyze(const char* config_json, char** out_report, int* out_exit) {
  if (!config_json || !out_report) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    auto config = combdual::config_from_json(parse(config_json));
    return emit(combdual::analyze_report(config), out_report, out_exit);
  });
}

cd_status cd_decompose(const char* config_json, const char* theorem, char** out_report,
                       int* out_exit) {
  if (!config_json || !theorem || !out_report) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    auto config = combdual::config_from_json(parse(config_json));
    return emit(combdual::decompose_report(config, theorem), out_report, out_exit);
  });
}

cd_status cd_verify(const char* report_json, char** out_table, int* out_exit) {
  if (!report_json || !out_table) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] { return emit(combdual::verify_report(parse(report_json)), out_table, out_exit); });
}

cd_status cd_certify_recheck(const char* doc_json, int radius, char** out_table, int* out_exit) {
  if (!doc_json || !out_table) return fail(CD_ERR_NULL_POINTER, "null argument");
  return guard([&] {
    std::optional<int> r;
    if (radius >= 0) r = radius;
    return emit(combdual::recheck_certificates(parse(doc_json), r), out_table, out_exit);
  });
}

}  // extern "C"
