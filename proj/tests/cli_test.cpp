#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "rdom/cli.hpp"

using namespace rdom;
using namespace rdom::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rdom_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  Json read(const std::string& name) const {
    std::ifstream in(path(name));
    return Json::parse(in);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenSolveVerify) {
  ASSERT_EQ(run({"gen", "--seed", "1", "--grid", "5", "5", "--keep-prob", "0.7", "--max-len", "4", "-o", path("g.json")})
                .code,
            0);
  auto solved = run({"solve", "--graph", path("g.json"), "--radius", "6", "--method", "quasi", "--seed", "7", "-o",
                     path("s.json")});
  ASSERT_EQ(solved.code, 0) << solved.err;
  auto doc = read("s.json");
  EXPECT_EQ(doc["feasible"], true);
  EXPECT_EQ(doc["method"], "quasi");
  EXPECT_EQ(doc["seed"], 7);
  EXPECT_TRUE(doc["lowerBound"].is_number());
  EXPECT_EQ(run({"verify", "--graph", path("g.json"), "--solution", path("s.json"), "--radius", "6"}).code, 0);

  // Same inputs, same document.
  ASSERT_EQ(run({"solve", "--graph", path("g.json"), "--radius", "6", "--method", "quasi", "--seed", "7", "-o",
                 path("s2.json")})
                .code,
            0);
  EXPECT_EQ(read("s2.json"), doc);
}

TEST_F(Cli, ExactOnP5) {
  write("p5.json", graph_to_json(p5()).dump());
  auto r = run({"solve", "--graph", path("p5.json"), "--radius", "2", "--method", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["weight"], 1);
  EXPECT_EQ(doc["centers"], Json::array({3}));
  EXPECT_EQ(doc["lowerBound"], 1.0);
}

TEST_F(Cli, CorruptedSolutionFailsVerify) {
  write("p5.json", graph_to_json(p5()).dump());
  write("bad.json", R"({"method":"exact","seed":0,"centers":[1],"weight":1,"lowerBound":null,"feasible":true})");
  EXPECT_EQ(run({"verify", "--graph", path("p5.json"), "--solution", path("bad.json"), "--radius", "2"}).code, 1);
  write("lie.json", R"({"method":"exact","seed":0,"centers":[3],"weight":2,"lowerBound":null,"feasible":true})");
  EXPECT_EQ(run({"verify", "--graph", path("p5.json"), "--solution", path("lie.json"), "--radius", "2"}).code, 1);
  write("ok.json", R"({"method":"exact","seed":0,"centers":[3],"weight":1,"lowerBound":null,"feasible":true})");
  EXPECT_EQ(run({"verify", "--graph", path("p5.json"), "--solution", path("ok.json"), "--radius", "2"}).code, 0);
}

TEST_F(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--radius", "1"}).code, 2);
  EXPECT_EQ(run({"solve", "--graph", path("missing.json"), "--radius", "1"}).code, 2);
  write("broken.json", "{\"directed\": false");
  EXPECT_EQ(run({"solve", "--graph", path("broken.json"), "--radius", "1"}).code, 2);
  write("p5.json", graph_to_json(p5()).dump());
  EXPECT_EQ(run({"solve", "--graph", path("p5.json"), "--radius", "1", "--method", "fast"}).code, 2);
  EXPECT_EQ(run({"solve", "--graph", path("p5.json"), "--radius", "-1"}).code, 2);
  // Exact refuses instances beyond its budget.
  ASSERT_EQ(run({"gen", "--seed", "2", "--grid", "5", "5", "-o", path("g.json")}).code, 0);
  auto big = run({"solve", "--graph", path("g.json"), "--radius", "1", "--method", "exact"});
  EXPECT_EQ(big.code, 2);
  EXPECT_FALSE(big.err.empty());
}

TEST_F(Cli, SupportAndCells) {
  write("p5.json", graph_to_json(p5()).dump());
  write("balls.json", balls_to_json(p5_balls()).dump());
  auto r = run({"support", "--graph", path("p5.json"), "--balls", path("balls.json"), "--report", path("rep.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["kind"], "dual");
  EXPECT_EQ(doc["edges"], Json::array({Json::array({A, E})}));
  EXPECT_EQ(read("rep.json")["pass"], true);

  write("red.json", balls_to_json({{A, 1, 2}, {E, 5, 2}}).dump());
  write("blue.json", balls_to_json({{10, 3, 0}}).dump());
  for (std::string mode : {"pipeline", "shortcut"}) {
    auto s = run({"support", "--graph", path("p5.json"), "--red", path("red.json"), "--blue", path("blue.json"),
                  "--mode", mode});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(Json::parse(s.out)["kind"], "intersection");
  }

  write("star.json", graph_to_json(star3()).dump());
  write("star_balls.json", balls_to_json(star3_balls()).dump());
  auto c = run({"cells", "--graph", path("star.json"), "--balls", path("star_balls.json"), "-o", path("cells.json")});
  ASSERT_EQ(c.code, 0) << c.err;
  auto cells = read("cells.json");
  EXPECT_EQ(cells["profile"]["1"], 3);
  EXPECT_EQ(cells["profile"]["3"], 1);
}

TEST_F(Cli, GenWithBallsRoundTrips) {
  ASSERT_EQ(run({"gen", "--seed", "4", "--grid", "4", "3", "-o", path("g.json"), "--balls", "5", "--max-radius", "3",
                 "--balls-out", path("b.json")})
                .code,
            0);
  auto g = graph_from_json(read("g.json"));
  EXPECT_EQ(g.vertex_count(), 12u);
  auto balls = balls_from_json(read("b.json"));
  EXPECT_EQ(balls.size(), 5u);
  for (const auto& b : balls) {
    EXPECT_TRUE(g.index_of(b.center));
    EXPECT_LE(b.radius, 3);
  }
}

TEST_F(Cli, BinaryEndToEnd) {
  std::string bin = RDOM_CLI_PATH;
  auto sh = [&](const std::string& cmd) {
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  ASSERT_EQ(sh(bin + " gen --seed 3 --grid 4 4 -o " + path("g.json")), 0);
  ASSERT_EQ(sh(bin + " solve --graph " + path("g.json") + " --radius 2 --method greedy -o " + path("s.json")), 0);
  EXPECT_EQ(sh(bin + " verify --graph " + path("g.json") + " --solution " + path("s.json") + " --radius 2"), 0);
  EXPECT_EQ(sh(bin + " verify --graph " + path("g.json") + " --solution " + path("s.json") + " --radius 0 2>/dev/null"), 1);
  EXPECT_EQ(sh(bin + " frobnicate 2>/dev/null"), 2);
}
