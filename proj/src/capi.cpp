#include "twistlab.h"

#include <chrono>
#include <cstring>
#include <new>
#include <string>

#include "twistlab/io.hpp"

using namespace twistlab;

struct tl_object {
  ParsedObject object;
  std::string uri; // how it was obtained, for report headers
};

struct tl_report {
  RunReport report;
};

namespace {

constexpr std::size_t kDefaultMaxDim = 64;

char* dup_string(const std::string& text) {
  char* out = new (std::nothrow) char[text.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void set_error(char** err, const std::string& message) {
  if (err) *err = dup_string(message);
}

tl_status status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse_error:
      return TL_PARSE_ERROR;
    case ErrorCode::invalid_argument:
      return TL_INVALID_ARGUMENT;
    case ErrorCode::not_invertible:
    case ErrorCode::inconsistent_system:
    case ErrorCode::not_convolution_invertible:
      return TL_NOT_INVERTIBLE;
    case ErrorCode::uncertified:
      return TL_UNCERTIFIED;
    case ErrorCode::check_failed:
      return TL_CHECK_FAILED;
    case ErrorCode::internal_consistency:
      return TL_INTERNAL;
    case ErrorCode::limit_exceeded:
      return TL_LIMIT_EXCEEDED;
  }
  return TL_INVALID_ARGUMENT;
}

template <typename Fn>
tl_status guarded(char** err, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    set_error(err, e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    set_error(err, e.what());
    return TL_INVALID_ARGUMENT;
  }
}

FieldSpec field_from(const char* field) {
  if (!field || !*field) return FieldSpec::rationals();
  return FieldSpec::parse(field);
}

void enforce_guard(std::size_t guard_dim, std::size_t max_dim) {
  std::size_t bound = max_dim == 0 ? kDefaultMaxDim : max_dim;
  if (guard_dim > bound)
    fail(ErrorCode::limit_exceeded,
         "size guard: total dimension " + std::to_string(guard_dim) +
             " exceeds the bound " + std::to_string(bound) +
             " (raise it with max_dim / --max-dim)");
}

tl_report* make_report(const std::string& command,
                       const std::vector<const tl_object*>& inputs,
                       PipelineResult result, long long wall_ms) {
  auto* out = new tl_report;
  out->report.command = command;
  for (const tl_object* obj : inputs)
    out->report.inputs.emplace_back(obj->uri, object_digest(obj->object));
  out->report.ok = result.ok();
  out->report.implication_violation = result.implication_violation();
  out->report.stages = std::move(result.stages);
  out->report.wall_ms = wall_ms;
  return out;
}

class Stopwatch {
public:
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

} // namespace

extern "C" {

const char* tl_version(void) { return "1.0.0"; }

tl_status tl_object_resolve(const char* uri, const char* field, tl_object** out,
                            char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!uri || !out)
      fail(ErrorCode::invalid_argument, "uri and out must be non-null");
    auto* handle = new tl_object{resolve_uri(uri, field_from(field)), uri};
    *out = handle;
    return TL_OK;
  });
}

tl_status tl_object_parse_string(const char* text, const char* field,
                                 tl_object** out, char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!text || !out)
      fail(ErrorCode::invalid_argument, "text and out must be non-null");
    auto* handle = new tl_object{
        parse_definition_text(text, field_from(field), "."), "<string>"};
    *out = handle;
    return TL_OK;
  });
}

tl_status tl_object_serialize(const tl_object* obj, char** text, char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!obj || !text)
      fail(ErrorCode::invalid_argument, "obj and text must be non-null");
    *text = dup_string(serialize_definition(obj->object));
    return TL_OK;
  });
}

const char* tl_object_kind(const tl_object* obj) {
  return obj ? obj->object.kind.c_str() : "";
}

tl_status tl_object_digest(const tl_object* obj, char** digest, char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!obj || !digest)
      fail(ErrorCode::invalid_argument, "obj and digest must be non-null");
    *digest = dup_string(object_digest(obj->object));
    return TL_OK;
  });
}

void tl_object_free(tl_object* obj) { delete obj; }

tl_status tl_check(const tl_object* obj, size_t max_dim, tl_report** out,
                   char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!obj || !out)
      fail(ErrorCode::invalid_argument, "obj and out must be non-null");
    enforce_guard(obj->object.guard_dim(), max_dim);
    Stopwatch timer;
    PipelineResult result = run_check(obj->object);
    *out = make_report("check " + obj->object.kind, {obj}, std::move(result),
                       timer.elapsed_ms());
    return (*out)->report.ok ? TL_OK : TL_CHECK_FAILED;
  });
}

tl_status tl_build(const char* what, const tl_object* const* inputs,
                   size_t count, const char* options, size_t max_dim,
                   tl_object** out, char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!what || !out || (count > 0 && !inputs))
      fail(ErrorCode::invalid_argument, "bad build arguments");
    std::vector<const ParsedObject*> objects;
    objects.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!inputs[i]) fail(ErrorCode::invalid_argument, "null input");
      enforce_guard(inputs[i]->object.guard_dim(), max_dim);
      objects.push_back(&inputs[i]->object);
    }
    ParsedObject built = run_build(what, objects, options ? options : "");
    enforce_guard(built.guard_dim(), max_dim);
    *out = new tl_object{std::move(built), std::string("built:") + what};
    return TL_OK;
  });
}

tl_status tl_pipeline(const char* name, const tl_object* instance,
                      const char* options, size_t max_dim, tl_report** out,
                      char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!name || !instance || !out)
      fail(ErrorCode::invalid_argument, "bad pipeline arguments");
    enforce_guard(instance->object.guard_dim(), max_dim);
    Stopwatch timer;
    PipelineResult result =
        run_named_pipeline(name, instance->object, options ? options : "");
    bool ok = result.ok();
    bool violated = result.implication_violation();
    *out = make_report(std::string("pipeline ") + name, {instance},
                       std::move(result), timer.elapsed_ms());
    if (violated) return TL_INTERNAL;
    return ok ? TL_OK : TL_CHECK_FAILED;
  });
}

int tl_report_ok(const tl_report* report) {
  return report && report->report.ok ? 1 : 0;
}

int tl_report_implication_violation(const tl_report* report) {
  return report && report->report.implication_violation ? 1 : 0;
}

tl_status tl_report_render(const tl_report* report, int as_json, char** text,
                           char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!report || !text)
      fail(ErrorCode::invalid_argument, "report and text must be non-null");
    *text = dup_string(as_json ? render_report_json(report->report)
                               : render_report_text(report->report));
    return TL_OK;
  });
}

void tl_report_free(tl_report* report) { delete report; }

tl_status tl_list_builtins(char** text, char** err) {
  return guarded(err, [&]() -> tl_status {
    if (!text) fail(ErrorCode::invalid_argument, "text must be non-null");
    std::string out;
    for (const auto& [name, description] : builtin_catalog()) {
      out += name;
      out.append(name.size() < 10 ? 10 - name.size() : 1, ' ');
      out += description + "\n";
    }
    *text = dup_string(out);
    return TL_OK;
  });
}

tl_status tl_set_jobs(unsigned jobs) {
  set_worker_count(jobs);
  return TL_OK;
}

void tl_string_free(char* text) { delete[] text; }

} // extern "C"
