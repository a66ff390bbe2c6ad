#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "twistlab/io.hpp"

using namespace twistlab;
using namespace twistlab::testing;

namespace {

const FieldSpec Q = FieldSpec::rationals();

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "twistlab_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

} // namespace

TEST_CASE("builtin resolution and serialization round trip") {
  for (const char* name : {"kC2", "kC2xC2", "H4"}) {
    ParsedObject obj = resolve_uri(std::string("builtin:") + name, Q);
    CHECK(obj.kind == "hopf");
    std::string text = serialize_definition(obj);
    ParsedObject reparsed = parse_definition_text(text, Q, ".");
    CHECK(serialize_definition(reparsed) == text); // byte stable
    CHECK(object_digest(reparsed) == object_digest(obj));
    CHECK(run_check(reparsed).ok());
  }
}

TEST_CASE("builtin over a prime field") {
  ParsedObject obj = resolve_uri("builtin:H4", FieldSpec::prime_field(5));
  const HopfAlgebra* h = obj.get<HopfAlgebra>();
  REQUIRE(h != nullptr);
  CHECK(h->field().modulus == 5);
  CHECK(run_check(obj).ok());
}

TEST_CASE("parser rejections") {
  auto reject = [](const std::string& text, const char* what) {
    CAPTURE(what);
    CHECK_THROWS_AS(parse_definition_text(text, Q, "."), Error);
  };
  reject("", "empty");
  reject("twistlab 2\nkind hopf\n", "wrong version");
  reject("kind hopf\n", "missing header");
  reject("twistlab 1\nfield Q\n", "missing kind");
  reject("twistlab 1\nkind nonsense\nfield Q\n", "unknown kind");
  reject("twistlab 1\nkind algebra\nfield Q\nfield Q\ndim 1\n", "duplicate key");
  reject("twistlab 1\nkind algebra\nfield Q\ndim 1\nshiny yes\n", "unknown key");
  reject("twistlab 1\nkind algebra\nfield Q\ndim 1\n", "missing maps");
  reject(
      "twistlab 1\nkind linmap\nfield Q\nmap main\n  dom 2\n  cod 2\n"
      "  entry 0 0 1/0\nend\n",
      "zero denominator");
  reject(
      "twistlab 1\nkind linmap\nfield Q\nmap main\n  dom 2\n  cod 2\n"
      "  entry 5 0 1\nend\n",
      "entry out of range");
  reject(
      "twistlab 1\nkind linmap\nfield Q\nmap main\n  dom 2\n  cod 2\n"
      "  entry 0 0 1\n  entry 0 0 2\nend\n",
      "duplicate entry");
  reject(
      "twistlab 1\nkind linmap\nfield GF 5\nmap main\n  dom 2\n  cod 2\n"
      "  entry 0 0 1/2\nend\n",
      "fraction in a prime field");
  reject("twistlab 1\nkind linmap\nfield Q\nmap main\n  dom 2\n  cod 2\n",
         "unterminated block");
  reject("twistlab 1\nkind group\ndim 2\ntable\n  0 1\nend\n", "short table");
}

TEST_CASE("linmap file round trip") {
  std::string text =
      "twistlab 1\n"
      "kind linmap\n"
      "field Q\n"
      "map main\n"
      "  dom 2 2\n"
      "  cod 2 2\n"
      "  entry 0 0 1\n"
      "  entry 3 1 -2/3\n"
      "end\n";
  ParsedObject obj = parse_definition_text(text, Q, ".");
  const LinMap* m = obj.get<LinMap>();
  REQUIRE(m != nullptr);
  CHECK(m->at(3, 1) == Scalar::parse(Q, "-2/3"));
  CHECK(serialize_definition(obj) == text);
}

TEST_CASE("group files build group algebras") {
  std::string text =
      "twistlab 1\n"
      "kind group\n"
      "dim 2\n"
      "basis e s\n"
      "table\n"
      "  0 1\n"
      "  1 0\n"
      "end\n";
  ParsedObject group = parse_definition_text(text, Q, ".");
  CHECK(group.kind == "group");
  CHECK(serialize_definition(parse_definition_text(serialize_definition(group),
                                                   Q, ".")) ==
        serialize_definition(group));

  ParsedObject hopf = run_build("group-algebra", {&group}, "field=GF:7");
  const HopfAlgebra* h = hopf.get<HopfAlgebra>();
  REQUIRE(h != nullptr);
  CHECK(h->field().modulus == 7);
  CHECK(h->certify().ok());
}

TEST_CASE("composite files resolve refs and run end to end") {
  auto dir = scratch_dir();

  ParsedObject kc2 = resolve_uri("builtin:kC2", Q);
  write_file(dir / "kc2.hopf", serialize_definition(kc2));

  // comodule algebra: kC2 over itself through its comultiplication
  const HopfAlgebra* h = kc2.get<HopfAlgebra>();
  ParsedObject coaction;
  coaction.kind = "linmap";
  coaction.value = h->comult();
  write_file(dir / "coaction.map", serialize_definition(coaction));

  write_file(dir / "ca.def",
             "twistlab 1\n"
             "kind comodule-algebra\n"
             "ref A kc2.hopf\n"
             "ref H kc2.hopf\n"
             "ref coaction coaction.map\n");

  ParsedObject ca = parse_definition_file((dir / "ca.def").string(), Q);
  CHECK(ca.kind == "comodule-algebra");
  CHECK(run_check(ca).ok());

  // nu-twist with the inline c-deformation action, c = -1
  write_file(dir / "nu.def",
             "twistlab 1\n"
             "kind nu-twist\n"
             "ref CA ca.def\n"
             "map nu\n"
             "  dom 2 2\n"
             "  cod 2\n"
             "  entry 0 0 1\n"
             "  entry 1 1 1\n"
             "  entry 0 2 1\n"
             "  entry 1 3 -1\n"
             "end\n");
  ParsedObject nu = parse_definition_file((dir / "nu.def").string(), Q);
  CHECK(nu.kind == "nu-twist");
  PipelineResult res = run_named_pipeline("comodule-twist", nu, "");
  CHECK(res.ok());

  // twisting-data with an inline zero map fails its unit axioms
  write_file(dir / "zero.def",
             "twistlab 1\n"
             "kind twisting-data\n"
             "ref A kc2.hopf\n"
             "ref B kc2.hopf\n"
             "map R\n"
             "  dom 2 2\n"
             "  cod 2 2\n"
             "  entry 0 0 1\n"
             "end\n");
  ParsedObject zero_twist = parse_definition_file((dir / "zero.def").string(), Q);
  CHECK_FALSE(run_check(zero_twist).ok());
}

TEST_CASE("unused refs and maps are rejected") {
  auto dir = scratch_dir();
  write_file(dir / "spare.def",
             "twistlab 1\n"
             "kind comodule-algebra\n"
             "ref A builtin:kC2\n"
             "ref H builtin:kC2\n"
             "ref extra builtin:kC2\n"
             "map coaction\n"
             "  dom 2\n"
             "  cod 2 2\n"
             "  entry 0 0 1\n"
             "  entry 3 1 1\n"
             "end\n");
  CHECK_THROWS_AS(parse_definition_file((dir / "spare.def").string(), Q), Error);
}

TEST_CASE("digests separate different objects") {
  ParsedObject a = resolve_uri("builtin:kC2", Q);
  ParsedObject b = resolve_uri("builtin:kC2xC2", Q);
  ParsedObject c = resolve_uri("builtin:kC2", FieldSpec::prime_field(5));
  CHECK(object_digest(a) == object_digest(resolve_uri("builtin:kC2", Q)));
  CHECK(object_digest(a) != object_digest(b));
  CHECK(object_digest(a) != object_digest(c));
}

TEST_CASE("builds through the dispatch layer") {
  ParsedObject kc2 = resolve_uri("builtin:kC2", Q);
  ParsedObject dbl = run_build("double", {&kc2}, "");
  CHECK(dbl.kind == "algebra");
  CHECK(dbl.get<Algebra>()->dim() == 4);
  CHECK(run_check(dbl).ok());

  CHECK_THROWS_AS(run_build("double", {&dbl}, ""), Error); // wrong input kind
  CHECK_THROWS_AS(run_build("nonsense", {&kc2}, ""), Error);
  CHECK_THROWS_AS(run_build("double", {&kc2}, "weird=1"), Error);
}

TEST_CASE("derive-rprime build matches the pipeline-derived map") {
  auto dir = scratch_dir();
  ParsedObject h4 = resolve_uri("builtin:H4", Q);
  const HopfAlgebra* h = h4.get<HopfAlgebra>();
  write_file(dir / "h4.hopf", serialize_definition(h4));

  auto write_map = [&](const char* name, const LinMap& m) {
    ParsedObject obj;
    obj.kind = "linmap";
    obj.value = m;
    write_file(dir / name, serialize_definition(obj));
  };
  write_map("flip.map", LinMap::flip(Q, 4, 4));
  write_map("rho.map", h->comult());
  write_map("lambda.map",
            compose(tensor(LinMap::identity(Q, {4}), h->antipode()), h->comult()));

  write_file(dir / "inv.def",
             "twistlab 1\n"
             "kind invariance-data\n"
             "ref A h4.hopf\n"
             "ref Aprime h4.hopf\n"
             "ref B h4.hopf\n"
             "ref R flip.map\n"
             "ref rho rho.map\n"
             "ref lambda lambda.map\n");
  ParsedObject inv = parse_definition_file((dir / "inv.def").string(), Q);
  ParsedObject derived = run_build("derive-rprime", {&inv}, "");
  CHECK(derived.kind == "linmap");

  // the other route: the homogenization pipeline derives the same map
  PipelineResult pipeline = run_named_pipeline("homogenization", h4, "");
  REQUIRE(pipeline.derived_R.has_value());
  CHECK(derived.get<LinMap>()->entries_equal(*pipeline.derived_R));
}

TEST_CASE("pipeline dispatch on hopf instances") {
  ParsedObject kc2 = resolve_uri("builtin:kC2", Q);
  CHECK(run_named_pipeline("comodule-twist", kc2, "c=-1").ok());
  CHECK(run_named_pipeline("homogenization", kc2, "").ok());
  CHECK(run_named_pipeline("sqt-double", kc2, "r=triangular").ok());
  CHECK(run_named_pipeline("sqt-double", kc2, "r=trivial").ok());
  CHECK_THROWS_AS(run_named_pipeline("sqt-double", kc2, ""), Error);
  CHECK_THROWS_AS(run_named_pipeline("comodule-twist", kc2, "c=0"), Error);
  ParsedObject h4 = resolve_uri("builtin:H4", Q);
  CHECK_THROWS_AS(run_named_pipeline("comodule-twist", h4, "c=-1"), Error);
  CHECK_THROWS_AS(run_named_pipeline("unknown", kc2, ""), Error);
}

TEST_CASE("guard dimensions") {
  CHECK(resolve_uri("builtin:kC2", Q).guard_dim() == 2);
  CHECK(resolve_uri("builtin:H4", Q).guard_dim() == 4);
  ParsedObject kc2 = resolve_uri("builtin:kC2", Q);
  ParsedObject dbl = run_build("double", {&kc2}, "");
  CHECK(dbl.guard_dim() == 4);
}

TEST_CASE("the shipped format corpus parses, certifies, and round-trips") {
  std::size_t seen = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(TWISTLAB_FORMATS_DIR)) {
    if (!entry.is_regular_file()) continue;
    ++seen;
    CAPTURE(entry.path().string());
    ParsedObject obj = parse_definition_file(entry.path().string(), Q);
    CHECK_FALSE(obj.kind.empty());
    if (is_serializable_kind(obj.kind)) {
      std::string text = serialize_definition(obj);
      ParsedObject reparsed = parse_definition_text(text, Q, ".");
      CHECK(serialize_definition(reparsed) == text);
    }
    if (obj.kind != "linmap") CHECK(run_check(obj).ok());
  }
  CHECK(seen >= 10); // one exemplar for every object kind
}

TEST_CASE("report rendering is deterministic") {
  ParsedObject kc2 = resolve_uri("builtin:kC2", Q);
  RunReport report;
  report.command = "check hopf";
  report.inputs.emplace_back("builtin:kC2", object_digest(kc2));
  PipelineResult res = run_check(kc2);
  report.stages = res.stages;
  report.ok = res.ok();
  std::string text = render_report_text(report);
  CHECK(text.find("verdict: pass") != std::string::npos);
  std::string json1 = render_report_json(report);
  std::string json2 = render_report_json(report);
  CHECK(json1 == json2);
  CHECK(json1.find("\"twistlab_report\": 1") != std::string::npos);
}
