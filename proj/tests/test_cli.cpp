#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"
#include "kp/error.hpp"
#include "kp/serialize.hpp"
#include "kp/spreads.hpp"

using namespace kp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json run_json(const std::string& args, int expected_code) {
  const auto r = run(args + " --json");
  CHECK(r.code == expected_code);
  return Json::parse(r.out);
}

const Json& result(const Json& report, const std::string& check) {
  for (const auto& r : report["results"])
    if (r["check"] == check) return r;
  FAIL("no result " << check);
  return report;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("kp_test_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("subspace and algebra JSON round trips") {
  Rng rng(81);
  for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(3), FieldSpec::f2st()}) {
    CHECK(field_from_json(to_json(f)) == f);
    CHECK(field_from_name(field_name(f)) == f);
    for (int dim = 0; dim <= 3; ++dim) {
      const auto s = random_subspace(f, 5, dim, rng);
      CHECK(subspace_from_json(f, to_json(s)) == s);
      const auto reparsed = Json::parse(to_json(s).dump());
      CHECK(subspace_from_json(f, reparsed) == s);
    }
  }
  const auto q = FieldSpec::rationals();
  const auto h = Algebra::quaternion(q, q.parse("-1/3"), q.from_int(-7));
  CHECK(to_json(h) == Json::parse(R"({"kind":"quaternion","a":"-1/3","b":"-7"})"));
  const auto back = algebra_from_json(q, to_json(h));
  CHECK(back.a() == h.a());
  CHECK(back.b() == h.b());
  CHECK(algebra_from_json(FieldSpec::f2st(), to_json(Algebra::tower())).kind() == AlgebraKind::Tower);
}

TEST_CASE("descriptor JSON round trip") {
  const auto q = FieldSpec::rationals();
  Rng rng(82);
  const auto kappa = clifford_hfd_plane(Algebra::quaternion(q, q.from_int(-1), q.from_int(-1)), Side::Left, rng, 5);
  const auto d = two_plane_descriptor(kappa, rng);
  const auto e = descriptor_from_json(Json::parse(to_json(d).dump()));
  CHECK(e.d == d.d);
  REQUIRE(e.planes.size() == d.planes.size());
  for (std::size_t i = 0; i < d.planes.size(); ++i) CHECK(e.planes[i] == d.planes[i]);
  CHECK(e.default_plane == d.default_plane);
  REQUIRE(e.exceptions.size() == d.exceptions.size());
  for (std::size_t i = 0; i < d.exceptions.size(); ++i) {
    CHECK(same_param(e.exceptions[i].param, d.exceptions[i].param));
    CHECK(e.exceptions[i].plane == d.exceptions[i].plane);
  }
  REQUIRE(e.certificates.size() == 2);
  CHECK_FALSE(e.certificates[0].has_value());
  REQUIRE(e.certificates[1].has_value());
  CHECK(e.certificates[1]->centre == d.certificates[1]->centre);
  CHECK(e.certificates[1]->source_rows == d.certificates[1]->source_rows);
  CHECK_NOTHROW(validate(e));
  CHECK(to_json(e) == to_json(d));
}

TEST_CASE("malformed descriptors") {
  const auto ok = Json::parse(R"({"field":{"kind":"rationals"},
    "D":{"n":5,"rows":[["1","0","0","0","0","-1"],["0","1","0","0","1","0"]]},
    "planes":[{"n":5,"rows":[["1","0","0","0","0","-1"],["0","1","0","0","1","0"],["0","0","1","-1","0","0"]]}],
    "default":0,"exceptions":[]})");
  CHECK_NOTHROW(validate(descriptor_from_json(ok)));

  auto broken = [&](const std::function<void(Json&)>& edit) {
    Json j = ok;
    edit(j);
    return code_of([&] { descriptor_from_json(j); });
  };
  CHECK(broken([](Json& j) { j.erase("D"); }) == ErrorCode::ParseError);
  CHECK(broken([](Json& j) { j["field"]["kind"] = "reals"; }) == ErrorCode::ParseError);
  CHECK(broken([](Json& j) { j["D"]["rows"][0][0] = "1/0"; }) != ErrorCode::Internal);
  CHECK(broken([](Json& j) { j["D"]["rows"][0].erase(0); }) == ErrorCode::ParseError);
  CHECK(broken([](Json& j) { j["D"]["rows"][0][2] = "x"; }) == ErrorCode::ParseError);
  CHECK(broken([](Json& j) { j["default"] = 3; }) == ErrorCode::InvalidDescriptor);
  CHECK(broken([](Json& j) { j["default"] = -1; }) == ErrorCode::ParseError);
  CHECK(broken([](Json& j) { j["exceptions"] = Json::parse(R"([{"param":["0","0"],"plane":0}])"); }) ==
        ErrorCode::InvalidDescriptor);
  CHECK(broken([](Json& j) { j["exceptions"] = Json::parse(R"([{"param":["1"],"plane":0}])"); }) ==
        ErrorCode::ParseError);
  CHECK(broken([](Json& j) { j["planes"] = Json::array(); }) == ErrorCode::InvalidDescriptor);
}

TEST_CASE("demo clifford") {
  const auto r = run_json("demo clifford --field Q --a -1 --b -1", 0);
  const auto& c = result(r, "classification")["details"];
  CHECK(c["is_clifford"] == true);
  CHECK(c["dimension"] == 2);
  CHECK(result(r, "plane_external")["status"] == "pass");
  CHECK(result(r, "partition")["status"] == "pass");
  CHECK(r["counts"]["fail"] == 0);
  CHECK(r["config"]["generator"] == std::string(Rng::kName));

  const auto t = run_json("demo clifford --field f2st --samples 20", 0);
  CHECK(result(t, "plane_polar_type")["details"]["plane_polar_type"] == "self_polar");
  CHECK(result(t, "nucleus_lines")["status"] == "pass");

  const auto split = run_json("demo clifford --field Q --a 1 --b 1", 2);
  CHECK(split["error"]["code"] == "NotDivision");
  CHECK(run("demo clifford --field gf3").code == 2);
  CHECK(run("demo clifford --field Q --a 1/0").code == 2);
  CHECK(run("demo clifford --bogus").code == 2);
}

TEST_CASE("construct-hfd and verify") {
  const auto k1 = scratch("k1.json"), two = scratch("two.json"), corrupt = scratch("corrupt.json");
  REQUIRE(run("demo clifford --samples 5 --save-descriptor " + k1.string()).code == 0);

  const auto constant = run_json("construct-hfd --in " + k1.string(), 0);
  CHECK(result(constant, "classification")["details"]["case"] == "plane_of_lines");

  const auto built = run_json("construct-hfd --in " + k1.string() + " --auto-second-plane --save-descriptor " +
                                  two.string(),
                              0);
  const auto& c = result(built, "classification")["details"];
  CHECK(c["case"] == "collinear_vertices");
  CHECK(c["attained_planes"] == 2);
  CHECK(c["dimension"] == 3);
  const auto d = descriptor_from_json(Json::parse(slurp(two)));
  CHECK(subspace_from_json(FieldSpec::rationals(), c["v"]) == meet(d.planes[0], d.planes[1]));

  const auto v = run_json("verify --in " + two.string() + " --samples 1000 --seed 42", 0);
  CHECK(result(v, "hfd_random_points")["details"]["passed"] == 1000);
  CHECK(v["counts"]["fail"] == 0);
  CHECK(result(v, "distinguished_class")["status"] == "pass");

  // Second plane swapped for one through D that meets H5 at e0.
  Json j = Json::parse(slurp(two));
  j["planes"][1]["rows"] = j["D"]["rows"];
  j["planes"][1]["rows"].push_back(Json::parse(R"(["1","0","0","0","0","0"])"));
  j["certificates"] = Json::array();
  std::ofstream(corrupt) << j.dump();
  const auto refused = run_json("verify --in " + corrupt.string(), 1);
  CHECK(result(refused, "validate")["details"]["error"] == "PlaneNotExternal");
  const auto forced = run_json("verify --in " + corrupt.string() + " --skip-validate --samples 200", 1);
  CHECK(forced["counts"]["fail"].get<int>() > 0);

  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"field":{"kind":"rationals"},"D":)";
  CHECK(run_json("construct-hfd --in " + bad.string(), 2)["error"]["code"] == "ParseError");
  CHECK(run("verify --in " + scratch("missing.json").string()).code == 2);
  fs::remove_all(k1.parent_path());
}

TEST_CASE("identical configuration gives byte-identical reports") {
  const auto k1 = scratch("k1.json"), two = scratch("two.json");
  REQUIRE(run("construct-hfd --auto-second-plane --seed 7 --save-descriptor " + two.string()).code == 0);
  const auto a = run("verify --in " + two.string() + " --samples 100 --seed 5 --json");
  const auto b = run("verify --in " + two.string() + " --samples 100 --seed 5 --json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run("verify --in " + two.string() + " --samples 100 --seed 6 --json");
  CHECK(c.out != a.out);
  CHECK(run("demo clifford --seed 3 --json").out == run("demo clifford --seed 3 --json").out);
  fs::remove_all(two.parent_path());
}

TEST_CASE("search-finite") {
  const auto g2 = run_json("search-finite --field gf2", 0);
  CHECK(g2["counts"]["planes"] == 1395);
  CHECK(g2["counts"]["external_planes"] == 0);

  // Oracle: count the points of H5 on each line directly.
  for (std::uint32_t p : {2u, 3u}) {
    const auto f = FieldSpec::prime(p);
    std::uint64_t zero = 0;
    SubspaceStream lines(f, 5, 1);
    while (auto l = lines.next()) {
      int on = klein_q(l->row(1)).is_zero();
      for (std::uint32_t t = 0; t < p; ++t) on += klein_q(l->row(0) + f.from_int(t) * l->row(1)).is_zero();
      zero += on == 0;
    }
    const auto r = run_json("search-finite --field gf" + std::to_string(p) + " --what zero_secants", 0);
    CHECK(r["counts"]["zero_secants"] == zero);
    CHECK(zero > 0);
  }
  const auto g3 = run_json("search-finite --field gf3 --what external_planes", 0);
  CHECK(g3["counts"]["planes"] == 33880);  // [6 choose 3]_3
  CHECK(g3["counts"]["external_planes"] == 0);
  CHECK(run("search-finite --field Q").code == 2);
}
