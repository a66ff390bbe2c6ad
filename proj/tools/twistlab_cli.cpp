// Command-line front end. Links against the twistlab shared library through
// its C interface only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twistlab.h"

namespace {

// exit codes: 0 pass, 1 check failed, 2 input/parse error
int exit_code_for(tl_status status) {
  switch (status) {
    case TL_OK:
      return 0;
    case TL_CHECK_FAILED:
    case TL_NOT_INVERTIBLE:
    case TL_UNCERTIFIED:
    case TL_INTERNAL:
      return 1;
    case TL_PARSE_ERROR:
    case TL_INVALID_ARGUMENT:
    case TL_LIMIT_EXCEEDED:
      return 2;
  }
  return 2;
}

struct StringGuard {
  char* value = nullptr;
  ~StringGuard() { tl_string_free(value); }
};

struct ObjectGuard {
  tl_object* value = nullptr;
  ~ObjectGuard() { tl_object_free(value); }
};

struct ReportGuard {
  tl_report* value = nullptr;
  ~ReportGuard() { tl_report_free(value); }
};

int report_failure(const char* context, tl_status status, char* err) {
  StringGuard guard{err};
  std::cerr << context << ": " << (err ? err : "unknown error") << "\n";
  return exit_code_for(status);
}

int emit_report(tl_report* report, const std::string& report_out) {
  {
    StringGuard text;
    char* err = nullptr;
    tl_status status = tl_report_render(report, 0, &text.value, &err);
    if (status != TL_OK) return report_failure("render", status, err);
    std::cout << text.value;
  }
  if (!report_out.empty()) {
    StringGuard json;
    char* err = nullptr;
    tl_status status = tl_report_render(report, 1, &json.value, &err);
    if (status != TL_OK) return report_failure("render", status, err);
    std::ofstream out(report_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report to " << report_out << "\n";
      return 2;
    }
    out << json.value;
  }
  return tl_report_ok(report) ? 0 : 1;
}

struct CommonFlags {
  std::string field = "Q";
  std::size_t max_dim = 0; // 0 = library default (64)
  unsigned jobs = 1;
  std::string report_out;

  void attach(CLI::App* cmd, bool with_report) {
    cmd->add_option("--field", field, "coefficient field: Q or GF:<p>")
        ->capture_default_str();
    cmd->add_option("--max-dim", max_dim,
                    "size guard for exhaustive checks (default 64)");
    cmd->add_option("--jobs", jobs, "worker threads for basis scans")
        ->capture_default_str();
    if (with_report)
      cmd->add_option("--report-out", report_out,
                      "also write the structured JSON report here");
  }

  void apply() const { tl_set_jobs(jobs); }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checker for twisted tensor products of algebras"};
  app.require_subcommand(1);

  // check <kind> <uri>
  auto* check_cmd = app.add_subcommand("check", "run a certification suite");
  std::string check_kind, check_uri;
  check_cmd->add_option("kind", check_kind,
                        "algebra|hopf|group|comodule-algebra|twisting-data|"
                        "star-data|invariance-data|nu-twist|sqt-element")
      ->required();
  check_cmd->add_option("uri", check_uri, "file path or builtin:<name>")
      ->required();
  CommonFlags check_flags;
  check_flags.attach(check_cmd, true);

  // build <what> <inputs...> --out <path>
  auto* build_cmd = app.add_subcommand("build", "construct and write an object");
  std::string build_what, build_out;
  std::vector<std::string> build_inputs;
  build_cmd->add_option("what", build_what,
                        "twisted-product|smash|double|star|derive-rprime|"
                        "group-algebra")
      ->required();
  build_cmd->add_option("inputs", build_inputs, "input uris")->required();
  build_cmd->add_option("--out", build_out, "output definition file")->required();
  CommonFlags build_flags;
  build_flags.attach(build_cmd, false);

  // pipeline <name> ...
  auto* pipe_cmd = app.add_subcommand("pipeline", "run an end-to-end pipeline");
  std::string pipe_name, pipe_instance, pipe_builtin, pipe_c, pipe_r, pipe_nu;
  pipe_cmd->add_option("name", pipe_name,
                       "comodule-twist|homogenization|sqt-double")
      ->required();
  pipe_cmd->add_option("--instance", pipe_instance,
                       "instance file (nu-twist / comodule-algebra / "
                       "sqt-element)");
  pipe_cmd->add_option("--builtin", pipe_builtin, "builtin hopf instance name");
  pipe_cmd->add_option("--c", pipe_c, "deformation scalar (comodule-twist)");
  pipe_cmd->add_option("--r", pipe_r, "element choice: trivial|triangular");
  pipe_cmd->add_option("--nu", pipe_nu, "action choice: trivial");
  CommonFlags pipe_flags;
  pipe_flags.attach(pipe_cmd, true);

  auto* list_cmd = app.add_subcommand("list-builtins", "list builtin instances");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    StringGuard text;
    char* err = nullptr;
    tl_status status = tl_list_builtins(&text.value, &err);
    if (status != TL_OK) return report_failure("list-builtins", status, err);
    std::cout << text.value;
    return 0;
  }

  if (check_cmd->parsed()) {
    check_flags.apply();
    ObjectGuard obj;
    char* err = nullptr;
    tl_status status = tl_object_resolve(
        check_uri.c_str(), check_flags.field.c_str(), &obj.value, &err);
    if (status != TL_OK) return report_failure("check", status, err);
    if (check_kind != tl_object_kind(obj.value)) {
      std::cerr << "check: expected kind " << check_kind << ", file declares "
                << tl_object_kind(obj.value) << "\n";
      return 2;
    }
    ReportGuard report;
    status = tl_check(obj.value, check_flags.max_dim, &report.value, &err);
    if (status != TL_OK && status != TL_CHECK_FAILED)
      return report_failure("check", status, err);
    return emit_report(report.value, check_flags.report_out);
  }

  if (build_cmd->parsed()) {
    build_flags.apply();
    std::vector<ObjectGuard> guards(build_inputs.size());
    std::vector<const tl_object*> handles;
    char* err = nullptr;
    for (std::size_t i = 0; i < build_inputs.size(); ++i) {
      tl_status status =
          tl_object_resolve(build_inputs[i].c_str(), build_flags.field.c_str(),
                            &guards[i].value, &err);
      if (status != TL_OK) return report_failure("build", status, err);
      handles.push_back(guards[i].value);
    }
    std::string options;
    if (build_what == "group-algebra") options = "field=" + build_flags.field;
    ObjectGuard built;
    tl_status status =
        tl_build(build_what.c_str(), handles.data(), handles.size(),
                 options.c_str(), build_flags.max_dim, &built.value, &err);
    if (status != TL_OK) return report_failure("build", status, err);
    StringGuard text;
    status = tl_object_serialize(built.value, &text.value, &err);
    if (status != TL_OK) return report_failure("build", status, err);
    std::ofstream out(build_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << build_out << "\n";
      return 2;
    }
    out << text.value;
    StringGuard digest;
    status = tl_object_digest(built.value, &digest.value, &err);
    if (status != TL_OK) return report_failure("build", status, err);
    std::cout << "wrote " << tl_object_kind(built.value) << " to " << build_out
              << " (" << digest.value << ")\n";
    return 0;
  }

  if (pipe_cmd->parsed()) {
    pipe_flags.apply();
    if (pipe_instance.empty() == pipe_builtin.empty()) {
      std::cerr << "pipeline: give exactly one of --instance or --builtin\n";
      return 2;
    }
    std::string uri =
        !pipe_instance.empty() ? pipe_instance : "builtin:" + pipe_builtin;
    ObjectGuard obj;
    char* err = nullptr;
    tl_status status = tl_object_resolve(uri.c_str(), pipe_flags.field.c_str(),
                                         &obj.value, &err);
    if (status != TL_OK) return report_failure("pipeline", status, err);
    std::string options;
    if (!pipe_c.empty()) options += "c=" + pipe_c + " ";
    if (!pipe_r.empty()) options += "r=" + pipe_r + " ";
    if (!pipe_nu.empty()) options += "nu=" + pipe_nu + " ";
    ReportGuard report;
    status = tl_pipeline(pipe_name.c_str(), obj.value, options.c_str(),
                         pipe_flags.max_dim, &report.value, &err);
    if (status != TL_OK && status != TL_CHECK_FAILED && status != TL_INTERNAL)
      return report_failure("pipeline", status, err);
    return emit_report(report.value, pipe_flags.report_out);
  }

  return 2;
}
