#include "corpus.hpp"

#include <groupoidal/cli.hpp>
#include <groupoidal/json_io.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace groupoidal;
using nlohmann::json;

namespace {

  std::filesystem::path const samples = GROUPOIDAL_SAMPLES;

  struct Run {
    int  code;
    json out;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream os;
    int                code = cli::run(std::move(args), os);
    auto const         s    = os.str();
    return {code, json::parse(s, nullptr, false)};
  }

  std::string sample(char const* name) { return (samples / name).string(); }

}  // namespace

TEST(JsonRoundTrip, Groupoids) {
  for (auto const& [name, g] : corpus::groupoids().all())
    EXPECT_TRUE(*io::load_groupoid(io::dump_groupoid(*g)) == *g) << name;
}

TEST(JsonRoundTrip, BuilderStrings) {
  EXPECT_TRUE(*io::load_groupoid("pair(3)") == pair_groupoid(3));
  EXPECT_TRUE(*io::load_groupoid("cyclic(4)") == cyclic(4));
  EXPECT_TRUE(*io::load_groupoid("point") == point());
  EXPECT_FALSE(io::builder_groupoid("pair(x)").has_value());
}

TEST(JsonRoundTrip, FunctorsAndBibundles) {
  for (auto const& [name, f] : corpus::functors()) {
    auto const back = io::load_functor(io::dump_functor(f));
    EXPECT_EQ(back.obj, f.obj) << name;
    EXPECT_EQ(back.mor, f.mor) << name;
  }
  for (auto const& [name, E] : corpus::bibundles())
    EXPECT_TRUE(io::load_bibundle(io::dump_bibundle(E)) == E) << name;
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const E = sigma(c);
    EXPECT_TRUE(io::load_bibundle(io::dump_bibundle(E)) == E) << name;
  }
}

TEST(JsonRoundTrip, Cocycles) {
  for (auto const& [name, c] : corpus::cocycles()) {
    auto const back = io::load_cocycle(io::dump_cocycle(c));
    EXPECT_TRUE(back.cover == c.cover) << name;
    EXPECT_EQ(back.maps, c.maps) << name;
  }
}

TEST(JsonRoundTrip, ComplexesAndActions) {
  for (auto const& [name, a] : corpus::actions()) {
    EXPECT_TRUE(io::same_action(io::load_action(io::dump_action(a)), a)) << name;
    auto const K = io::load_complex(io::dump_complex(a.complex));
    EXPECT_EQ(K.facets(), a.complex.facets()) << name;
  }
}

TEST(JsonRoundTrip, ReportsAndModules) {
  AbelianInvariants a;
  a.rank    = 2;
  a.torsion = {Integer(2), Integer(6)};
  EXPECT_EQ(io::load_invariants(io::dump_invariants(a)), a);
  Presentation p{{"a", "b"}, {{1, 2, -1, -2}}};
  EXPECT_EQ(io::load_presentation(io::dump_presentation(p)), p);
  for (auto const& [name, g] : corpus::groupoids().all()) {
    auto const A  = groupoid_algebra(g);
    auto const sc = io::load_structure_constants(io::dump_algebra(A));
    auto const ex = structure_constants(A);
    ASSERT_EQ(sc.size(), ex.size()) << name;
    for (std::size_t i = 0; i < sc.size(); ++i)
      EXPECT_TRUE(sc[i].i == ex[i].i && sc[i].j == ex[i].j && sc[i].k == ex[i].k && sc[i].value == ex[i].value) << name;
    auto const M    = regular_bimodule(g);
    auto const back = io::load_bimodule(io::dump_bimodule(M));
    EXPECT_EQ(back.basis, M.basis) << name;
    EXPECT_EQ(back.left_action, M.left_action) << name;
    EXPECT_EQ(back.right_action, M.right_action) << name;
  }
}

TEST(JsonRoundTrip, LargeIntegersSurvive) {
  AbelianInvariants a;
  a.torsion = {Integer("123456789012345678901234567890")};
  EXPECT_EQ(io::load_invariants(io::dump_invariants(a)), a);
}

TEST(Cli, ValidateSummaries) {
  auto r = run({"validate", "pair(3)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, json::parse(R"({"kind":"groupoid","morphisms":9,"objects":3,"orbits":1})"));
  EXPECT_EQ(run({"validate", sample("pair3.json")}).out, r.out);
  EXPECT_EQ(run({"validate", sample("bundle_c4_point.json")}).code, 0);
}

TEST(Cli, ErrorClassesMapToExitCodes) {
  auto broken = run({"validate", sample("broken_groupoid.json")});
  EXPECT_EQ(broken.code, 1);
  EXPECT_EQ(broken.out["error"]["violations"][0]["code"], "MissingComposite");
  EXPECT_EQ(run({"validate", "{not json"}).code, 3);
  EXPECT_EQ(run({"validate", sample("missing.json")}).code, 3);
  EXPECT_EQ(run({"no-such-command"}).code, 3);
  EXPECT_EQ(run({"morita", "cyclic(5)", "cyclic(5)", "--budget", "1"}).code, 2);
  std::ostringstream help;
  EXPECT_EQ(cli::run({"--help"}, help), 0);
}

TEST(Cli, HomologyAndPi1) {
  auto h = run({"homology", sample("rot33.json"), "--n", "1"});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.out, json::parse(R"({"n":1,"rank":1,"torsion":[]})"));
  auto z2 = run({"homology", sample("rot23.json"), "--n", "0", "--coefficients", "Z/2"});
  EXPECT_EQ(z2.code, 0);
  EXPECT_EQ(z2.out["torsion"], json::parse("[2]"));
  EXPECT_EQ(run({"pi1", "cyclic(4)"}).code, 0);
  EXPECT_EQ(run({"pi1", sample("rot23.json")}).code, 0);
}

TEST(Cli, CircleBundles) {
  auto const t = sample("circle_trivial.json"), w = sample("circle_twisted.json");
  auto       c = run({"cohomologous", t, w});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out["cohomologous"], false);
  auto s = run({"sigma", w});
  ASSERT_EQ(s.code, 0);
  auto const bundle = s.out["bundle"].dump();
  auto       l      = run({"leaves", bundle});
  ASSERT_EQ(l.code, 0);
  ASSERT_EQ(l.out["leaves"].size(), 1u);
  EXPECT_EQ(l.out["leaves"][0]["holonomy_order"], 2);
  auto h = run({"holonomy", bundle, "--base", "[r0|a|0]", "--loop", "@c,@b,@d,@a"});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.out["holonomy"], "r1");
  EXPECT_EQ(run({"holonomy", bundle, "--base", "[r0|c|0]", "--loop", "@d,@c"}).code, 1);
}

TEST(Cli, OutputIsDeterministic) {
  for (auto const& args : std::vector<std::vector<std::string>>{{"tensor", sample("unit_c3.json"), sample("unit_c3.json")},
                                                                 {"mho-check", sample("pair3_point.json"), "{\"unit\":\"point\"}"},
                                                                 {"algebra", "cyclic(3)"}}) {
    std::ostringstream a, b;
    EXPECT_EQ(cli::run(args, a), 0) << args[0];
    cli::run(args, b);
    EXPECT_EQ(a.str(), b.str()) << args[0];
  }
}
