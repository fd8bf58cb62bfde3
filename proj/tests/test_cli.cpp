#include "support.hpp"

#include "morita/cli.hpp"

using namespace fx;

namespace {

const std::string t2_path = std::string(MORITA_FIXTURES) + "/t2_corner.json";
const std::string m2_path = std::string(MORITA_FIXTURES) + "/m2_corner.json";

Flags with(const std::string& path, std::vector<std::string> contexts = {}, std::vector<std::string> modules = {}) {
  Flags f;
  f.workspace = path;
  f.contexts = std::move(contexts);
  f.modules = std::move(modules);
  return f;
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

const char* minimal = R"({
  "field": {"kind": "gf", "p": 3},
  "algebras": {"k": {"dim": 1, "unit": [1], "mul": [[[1]]]}},
  "modules": {"kreg": {"regular": "k"}},
  "contexts": {"id": {"identity": "k"}}
})";

TEST(Workspace, ParsesFixtures) {
  AnyWorkspace t2 = parse_workspace(t2_path);
  ASSERT_TRUE(std::holds_alternative<Workspace<GF>>(t2));
  const auto& ws = std::get<Workspace<GF>>(t2);
  EXPECT_EQ(ws.modules.size(), 4u);
  EXPECT_EQ(ws.modules.at("P2").dim, 2u);
  EXPECT_TRUE(is_isomorphic(ws.modules.at("P2"), p2(ws.algebras.at("T2"))).found());
  EXPECT_EQ(ws.contexts.size(), 2u);
  EXPECT_NO_THROW(parse_workspace(m2_path));
}

TEST(Workspace, Minimal) {
  AnyWorkspace ws = parse_workspace_text(minimal);
  ASSERT_TRUE(std::holds_alternative<Workspace<GF>>(ws));
  EXPECT_EQ(std::get<Workspace<GF>>(ws).algebras.at("k")->field().characteristic(), 3u);
  RunResult r = run("strict", ws, with("", {"id"}));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.human, "strict: true"));
}

TEST(Workspace, ErrorsNameThePath) {
  auto message = [](const std::string& text) {
    try {
      parse_workspace_text(text);
    } catch (const invalid_input& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  std::string dangling = minimal;
  dangling.insert(dangling.rfind('}'), R"(, "catalogs": {"c": {"algebra": "k", "modules": ["kreg", "ghost"]}})");
  EXPECT_EQ(message(dangling), "/catalogs/c/modules/1: unknown module \"ghost\"");

  std::string wrong_field = minimal;
  wrong_field.replace(wrong_field.find("\"p\": 3"), 6, "\"p\": 4");
  EXPECT_TRUE(contains(message(wrong_field), "/field/p"));
  EXPECT_TRUE(contains(message("{"), "parse error"));
  EXPECT_EQ(message(R"({"field": {"kind": "reals"}})"), "/field/kind: expected \"gf\" or \"rationals\"");
}

TEST(Cli, ExitCodesAndHeadlines) {
  RunResult equiv = run_file("equiv", with(t2_path, {"t2corner"}));
  EXPECT_EQ(equiv.exit_code, 0);
  EXPECT_TRUE(contains(equiv.human, "I = 2-dim, idempotent (exponent 1)"));

  RunResult strict = run_file("strict", with(t2_path, {"identity"}));
  EXPECT_EQ(strict.exit_code, 0);
  EXPECT_TRUE(contains(strict.human, "strict: true"));

  Flags loc = with(t2_path, {}, {"T2reg"});
  loc.ideal = "I";
  RunResult localized = run_file("localize", loc);
  EXPECT_EQ(localized.exit_code, 0);
  EXPECT_TRUE(contains(localized.human, "localized dim 1"));

  Flags closed = with(t2_path, {"t2corner"}, {"S1"});
  EXPECT_EQ(run_file("closed", closed).exit_code, 1);
  closed.modules = {"S2"};
  EXPECT_EQ(run_file("closed", closed).exit_code, 0);

  RunResult proper = run_file("equiv-strict", with(t2_path, {"t2corner"}));
  EXPECT_EQ(proper.exit_code, 1);
  EXPECT_TRUE(contains(proper.human, "I is a proper ideal of R (dim 2 of 3)"));

  EXPECT_EQ(run_file("equiv-strict", with(m2_path, {"m2corner"})).exit_code, 0);
  EXPECT_EQ(run_file("compose", with(t2_path, {"identity", "t2corner"})).exit_code, 0);
  RunResult mismatch = run_file("compose", with(t2_path, {"t2corner", "identity"}));
  EXPECT_EQ(mismatch.exit_code, 2);
  EXPECT_TRUE(contains(mismatch.human, "middle algebras differ"));

  Flags graded = with(t2_path, {"t2corner"});
  graded.grading = "c2";
  EXPECT_EQ(run_file("graded-equiv", graded).exit_code, 0);
}

TEST(Cli, InputErrorsExitWithTwo) {
  RunResult unknown_context = run_file("equiv", with(t2_path, {"nope"}));
  EXPECT_EQ(unknown_context.exit_code, 2);
  EXPECT_TRUE(contains(unknown_context.human, "unknown context \"nope\""));
  EXPECT_EQ(run_file("frobnicate", with(t2_path)).exit_code, 2);
  EXPECT_EQ(run_file("equiv", with("/nonexistent.json", {"t2corner"})).exit_code, 2);
  EXPECT_EQ(run_file("closed", with(t2_path, {"t2corner"})).exit_code, 2);  // no --module
  auto err = nlohmann::json::parse(run_file("equiv", with(t2_path, {"nope"})).machine);
  EXPECT_FALSE(err["summary"]["pass"].get<bool>());
}

TEST(Cli, MachineReportIsDeterministic) {
  Flags f = with(t2_path, {"t2corner"});
  f.seed = 11;
  RunResult a = run_file("equiv", f, false), b = run_file("equiv", f, false);
  EXPECT_EQ(a.machine, b.machine);
  EXPECT_TRUE(a.human.empty());
  auto doc = nlohmann::json::parse(a.machine);
  EXPECT_EQ(doc["command"], "equiv");
  EXPECT_TRUE(doc["summary"]["pass"].get<bool>());

  // same bytes when the workspace is parsed from text instead of the file
  std::ifstream in(t2_path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(run("equiv", parse_workspace_text(text.str()), f, false).machine, a.machine);
}

TEST(Cli, CatalogCommand) {
  Flags f = with(t2_path);
  f.algebra = "T2";
  f.max_dim = 2;
  RunResult r = run_file("catalog", f);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(contains(r.human, "1 of dim 0, 2 of dim 1, 4 of dim 2"));
}

// ---- properties ----

TEST(CliProperties, EveryCommandIsDeterministicAndExitsInRange) {
  Flags f = with(t2_path, {"identity", "t2corner"}, {"P2", "S2"});
  f.ideal = "I";
  f.algebra = "T2";
  f.grading = "c2";
  f.max_dim = 2;
  for (const auto& c : commands()) {
    SCOPED_TRACE(c);
    RunResult a = run_file(c, f), b = run_file(c, f);
    EXPECT_GE(a.exit_code, 0);
    EXPECT_LE(a.exit_code, 2);
    EXPECT_EQ(a.machine, b.machine);
    EXPECT_EQ(a.human, b.human);
    EXPECT_NO_THROW((void)nlohmann::json::parse(a.machine));
  }
}

}  // namespace
