#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BLOCH_IDS_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "bloch_ids_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("list prints the whole catalog") {
  const Run r = run("list");
  CHECK(r.status == 0);
  for (const char* id : {"z_d(1)", "z_d(2)", "t4_4", "t3_6", "t6_3", "kagome", "t3_12_12", "t3_3_4_2", "t4_8_8",
                         "t3_2_4_3_4", "t3_4_6_4", "t4_6_12", "t3_4_6", "non_archimedean_example"}) {
    CAPTURE(id);
    CHECK(r.out.find(id) != std::string::npos);
  }
}

TEST_CASE("dispersion on a one-point grid") {
  const Run r = run("dispersion --tiling t6_3 --grid 1");
  CHECK(r.status == 0);
  CHECK(r.out == "theta1,theta2,lambda1,lambda2\n3.1415926535897931,3.1415926535897931,0.66666666666666674,1.3333333333333333\n");
}

TEST_CASE("closed-form IDS of kagome through the CLI") {
  const Run r = run("ids --tiling \"(3.6)^2\" --method closed --emin 1.6 --emax 2 --steps 2");
  CHECK(r.status == 0);
  std::istringstream in(r.out);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "E,N");
  CHECK(first.rfind("1.6000000000000001,", 0) == 0);
  CHECK(std::stod(first.substr(first.find(',') + 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("numeric IDS output is byte-identical across runs and thread counts") {
  const std::string args = "ids --tiling t3_4_6_4 --grid 48 --steps 40";
  const Run a = run(args);
  const Run b = run("--seed 7 " + args);
  const std::string capped = std::string("BLOCH_IDS_THREADS=1 ") + BLOCH_IDS_BIN + " " + args;
  FILE* pipe = popen(capped.c_str(), "r");
  std::string c;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) c.append(buf, n);
  pclose(pipe);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c);
}

TEST_CASE("config file values apply below explicit flags") {
  const auto cfg = scratch("cfg.json");
  write(cfg, R"({"grid": 16, "emin": 0.5, "emax": 1.5, "steps": 3})");
  const Run r = run("--config " + cfg.string() + " ids --tiling t4_4");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("E,N\n0.5,", 0) == 0);
  const Run o = run("--config " + cfg.string() + " ids --tiling t4_4 --steps 2");
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 3);

  write(cfg, R"({"grid": 16, "colour": 1})");
  CHECK(run("--config " + cfg.string() + " ids --tiling t4_4").status == 1);
}

TEST_CASE("verify exit codes") {
  const Run all = run("verify --all");
  CHECK(all.status == 0);
  CHECK(all.out.front() == '[');
  CHECK(run("verify --tiling kagome").status == 0);
}

TEST_CASE("usage and io errors") {
  CHECK(run("").status == 1);
  CHECK(run("ids --tiling nope").status == 1);
  CHECK(run("ids --tiling t4_4 --steps 1").status == 1);
  CHECK(run("ids --tiling t4_8_8 --method closed").status == 1);
  CHECK(run("ids --tiling t4_4 --grid 0").status == 1);
  CHECK(run("verify --tiling kagome --all").status == 1);
  CHECK(run("oracle --tiling t4_6_12 --n 100").status == 1);
  CHECK(run("graph --load /nonexistent/g.json validate").status == 3);
  CHECK(run("dispersion --tiling t4_4 --grid 2 --out /nonexistent/dir/x.csv").status == 3);
}

TEST_CASE("graph documents") {
  CHECK(run("graph --load /dev/null export").status == 1);

  const auto src = scratch("ring.json");
  write(src, R"({"name": "ring", "dimension": 1, "vertices": ["a"], "edges": [["a", "a", [1]]]})");
  const Run exported = run("graph --load " + src.string() + " export");
  CHECK(exported.status == 0);
  const auto doc = scratch("ring_export.json");
  write(doc, exported.out);
  CHECK(run("graph --load " + doc.string() + " export").out == exported.out);
  CHECK(run("graph --load " + doc.string() + " validate").status == 0);

  const Run ids = run("graph --load " + doc.string() + " ids --grid 512 --emin 1 --emax 2 --steps 2");
  CHECK(ids.status == 0);
  CHECK(ids.out == "E,N\n1,0.5\n2,1\n");

  const auto broken = scratch("broken.json");
  write(broken, R"({"name": "bad", "dimension": 2, "vertices": ["a", "b"], "edges": [["a", "a", [1, 0]]]})");
  const Run v = run("graph --load " + broken.string() + " validate");
  CHECK(v.status == 2);
  CHECK(v.out.find("has degree 0") != std::string::npos);
}
