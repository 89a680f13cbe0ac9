#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>

#include "chainlab/cli.hpp"
#include "chainlab/derived.hpp"
#include "chainlab/document.hpp"
#include "helpers.hpp"

using namespace chainlab;
using namespace testkit;
using chainlab::cli::run_command;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("chainlab_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kTwoMaps =
    "ring Z\n"
    "complex A\n rank 0 1\nend\n"
    "complex B\n rank 0 1\nend\n"
    "complex C\n rank 0 1\nend\n"
    "map f A -> B\n f 0 [[2]]\nend\n"
    "map g B -> C\n f 0 [[3]]\nend\n";

}  // namespace

TEST_CASE("documented examples") {
  auto r = run_command({"tor", "4", "6", "--i", "1"});
  CHECK(r.status == 0);
  CHECK(r.out == "Z/2\n");

  auto v = run_command({"verify-axioms", "--seed", "7", "--instances", "100", "--ring", "F2"});
  CHECK(v.status == 0);
  CHECK(v.out.find("all checks passed") != std::string::npos);

  auto file = write_temp("disk.cx", render(disk(ZZ, 6, -1), "D"));
  auto c = run_command({"cohomology", file});
  CHECK(c.status == 0);
  CHECK(c.out == "H^-1 = 0\nH^0 = " + cohomology(disk(ZZ, 6, -1), 0).to_string() + "\n");
}

TEST_CASE("exit statuses") {
  CHECK(run_command({}).status == 2);
  CHECK(run_command({"tor", "4"}).status == 2);
  CHECK(run_command({"cohomology", "/nonexistent/file.cx"}).status == 2);
  auto bad = write_temp("bad.cx", "complex X\n rank 0 1\n rank 1 1\n rank 2 1\n d 0 [[1]]\n d 1 [[1]]\nend\n");
  auto r = run_command({"cohomology", bad});
  CHECK(r.status == 2);
  CHECK(r.err.find("degree 0") != std::string::npos);
  CHECK(run_command({"tor", "4", "x", "--i", "1"}).status == 2);
  CHECK(run_command({"tor", "4", "6", "--i", "-1"}).status == 2);
  CHECK(run_command({"--help"}).status == 0);

  auto maps = write_temp("maps.cx", kTwoMaps);
  CHECK(run_command({"null-homotopy", maps}).status == 1);
  CHECK(run_command({"quasi-iso", maps}).status == 1);
  CHECK(run_command({"tilt-verdict", maps, "--ring", "Q"}).status == 0);  // the document says Z
  auto q = write_temp("q.cx", render(sphere(QQ, 0), "S"));
  CHECK(run_command({"tilt-verdict", q}).status == 2);
}

TEST_CASE("octahedron and friends") {
  auto maps = write_temp("maps2.cx", kTwoMaps);
  auto o = run_command({"octahedron", maps});
  CHECK(o.status == 0);
  CHECK(o.out.find("H^0: Z/2 -> Z/6 -> Z/3") != std::string::npos);
  CHECK(o.out.find("TR4: pass") != std::string::npos);

  auto cone = run_command({"cone", maps, "--map", "g", "--les", "--rotations", "3"});
  CHECK(cone.status == 0);
  auto cone_doc = cone.out.substr(0, cone.out.find("# cofiber"));
  CHECK(cohomology(parse_complex(cone_doc), 0) == FgModule::cyclic(ZZ, 3));

  auto shifted = run_command({"shift", maps, "--by", "2", "--complex", "B"});
  CHECK(parse_complex(shifted.out) == sphere(ZZ, -2));

  auto t = run_command({"tensor", maps, "--left", "A", "--right", "B", "--sum"});
  CHECK(parse_complex(t.out) == sphere(ZZ, 0, 2));

  auto res = run_command({"resolve", "Z/2+Z"});
  CHECK(res.status == 0);
  CHECK(cohomology(parse_complex(res.out.substr(0, res.out.find("# aug"))), 0) == FgModule(ZZ, 1, {2}));

  auto hk = run_command({"hom-k", maps, "--source", "A", "--target", "B"});
  CHECK(hk.out == "Hom_K(A, B) = Z\n");
  auto hd = run_command({"hom-k", maps, "--degree", "1"});
  CHECK(hd.out == "Hom_D(A, B[1]) = 0\n");

  auto dt = run_command({"derived-tensor", "2", "2"});
  CHECK(dt.out.find("H^-1 = Z/2") != std::string::npos);
  auto one = run_command({"derived-tensor", "4", "6", "--one-sided"});
  CHECK(one.out.find("H^-1 = Z/2") != std::string::npos);

  auto e = run_command({"ext", "4", "0", "--i", "1"});
  CHECK(e.out == "Z/4\n");

  auto gen = run_command({"generate", "--seed", "3", "--torsion", "2"});
  CHECK(gen.status == 0);
  auto g2 = run_command({"generate", "--seed", "3", "--torsion", "2"});
  CHECK(gen.out == g2.out);
  CHECK(validate(parse_complex(gen.out)).ok);

  auto split = write_temp("split.cx", render(ChainComplex(ZZ, 0, {1, 1}), "S"));
  auto tr = run_command({"truncate", split, "--n", "0", "--triangle"});
  CHECK(tr.out.find("triangle: certified") != std::string::npos);
  auto below = run_command({"truncate", split, "--n", "0"});
  CHECK(parse_complex(below.out) == sphere(ZZ, 0));
  auto tv = run_command({"t-verdict", split, "--n", "0"});
  CHECK(tv.out.find("heart: no") != std::string::npos);
  auto tilt = run_command({"tilt-verdict", "--module", "Z/4+Z"});
  CHECK(tilt.out.find("torsion: Z/4") != std::string::npos);

  auto cyl = run_command({"cylinder", maps});
  CHECK(cyl.out.find("out_Y quasi-isomorphism: yes") != std::string::npos);
}

TEST_CASE("json output") {
  auto r = run_command({"--json", "tor", "4", "6", "--i", "1"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["tor"]["text"] == "Z/2");
  CHECK(j["command"] == "tor");
  auto v = run_command({"verify-axioms", "--seed", "1", "--instances", "5", "--json"});
  auto jv = nlohmann::json::parse(v.out);
  CHECK(jv["pass"] == true);
  CHECK(jv["axioms"].size() == 5);
}

TEST_CASE("default ring from the environment") {
  setenv("CHAINLAB_RING", "Q", 1);
  auto r = run_command({"resolve", "Q"});
  CHECK(r.out.rfind("ring Q", 0) == 0);
  CHECK(run_command({"resolve", "Q", "--ring", "F3"}).status == 2);  // Q is not an F3 module name
  setenv("CHAINLAB_RING", "nonsense", 1);
  CHECK(run_command({"resolve", "4"}).status == 2);
  unsetenv("CHAINLAB_RING");
}

TEST_CASE("operation coverage") {
  std::set<std::string> subs(cli::subcommands().begin(), cli::subcommands().end());
  CHECK(subs.size() == 18);
  std::set<std::string> used, ops;
  for (const auto& e : cli::operation_coverage()) {
    CHECK_MESSAGE(subs.count(e.subcommand), e.subcommand);
    CHECK_MESSAGE(ops.insert(e.module + "::" + e.operation).second, e.operation);
    used.insert(e.subcommand);
  }
  CHECK(used == subs);
  CHECK(ops.size() == 40);
  for (const auto& s : subs) CHECK_MESSAGE(run_command({s, "--help"}).status == 0, s);
}
