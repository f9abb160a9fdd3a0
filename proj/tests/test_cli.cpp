#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "modsign/cli.hpp"
#include "modsign/io.hpp"
#include "modsign/report.hpp"

using namespace modsign;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path dir;
  std::string delta;
  std::string cm32;
  Workspace() {
    dir = fs::temp_directory_path() / ("modsign_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    delta = (dir / "delta.json").string();
    cm32 = (dir / "cm32.json").string();
    REQUIRE(run({"expand-eta", "--spec", "1:24", "--terms", "6000", "--out", delta}).code == 0);
    REQUIRE(run({"expand-eta", "--spec", "4:2,8:2", "--terms", "6000", "--level", "32", "--out", cm32}).code == 0);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("predict prints exact densities") {
    auto r = run({"predict", "--thm", "1", "--reps", "1", "--nu", "1", "--phi", "0/1", "--character", "trivial"});
    CHECK(r.code == 0);
    CHECK(r.out == "1/2 1/2 1\n");
    r = run({"predict", "--thm", "3", "--reps", "1", "--phi", "0/1", "--case", "cm-f"});
    CHECK(r.out == "3/4 1/4 1\n");
    r = run({"predict", "--thm", "2", "--theta", "1/4"});
    CHECK(r.out == "1/4 1/4 1/2 1/2\n");
    r = run({"predict", "--thm", "1", "--phi", "1/2"});
    CHECK(r.out == "0 0 0\n");
    CHECK(run({"predict", "--thm", "1", "--reps", "3", "--character", "4:1"}).code == 2);
    CHECK(run({"predict", "--thm", "1", "--nu", "2"}).code == 2);
    CHECK(run({"predict", "--thm", "4"}).code == 2);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"predict", "--no-such-flag"}).code == 2);
    CHECK(run({"predict", "--phi", "x"}).code == 2);
    CHECK(run({"st-test", "--form", "/nonexistent.json", "--xmax", "100"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("experiments on a small Delta file") {
    Workspace w;
    auto r = run({"st-test", "--form", w.delta, "--xmax", "6000", "--measure", "st", "--tol", "0.1"});
    CHECK(r.code == 0);
    CHECK(run({"st-test", "--form", w.delta, "--xmax", "6000", "--measure", "st", "--tol", "0.0001"}).code == 1);
    CHECK(run({"sign-density", "--form", w.delta, "--nu", "2", "--predict", "--xmax", "6000"}).code == 2);
    CHECK(run({"sign-density", "--form", w.delta, "--nu", "1", "--predict", "--xmax", "6000", "--tol", "0.1"}).code == 0);
    CHECK(run({"fixed-prime", "--form", w.delta, "--p", "2", "--nu-max", "100000"}).code == 0);
    CHECK(run({"fixed-prime", "--theta", "1/5", "--nu-max", "50"}).code == 0);
    CHECK(run({"fixed-prime", "--form", w.delta, "--p", "7000", "--nu-max", "10"}).code == 2);
    CHECK(run({"oscillate", "--form", w.delta, "--primes", "100", "--min-changes", "10"}).code == 0);
    CHECK(run({"oscillate", "--lift", w.delta, "--k", "6", "--p", "3", "--nu-max", "200", "--min-changes", "5"}).code == 0);
    CHECK(run({"validate", "--form", w.delta}).code == 0);
    r = run({"angles", "--form", w.delta, "--xmax", "100", "--csv", w.path("angles.csv")});
    CHECK(r.code == 0);
    CHECK(io::read_file(w.path("angles.csv")).rfind("p,theta,normalized,boundary,vanishing\n2,", 0) == 0);
  }

  TEST_CASE("shimura subcommand checks") {
    Workspace w;
    auto r = run({"shimura", "--lift", w.delta, "--k", "6", "--check", "coeff", "--n", "3", "--bound", "5000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("a(1*3^2) = 9") != std::string::npos);
    CHECK(run({"shimura", "--lift", w.delta, "--k", "6", "--check", "gf"}).code == 0);
    CHECK(run({"shimura", "--lift", w.delta, "--k", "6", "--check", "forward", "--n-max", "50"}).code == 0);
    const std::string half = w.path("half.json");
    CHECK(run({"shimura", "--lift", w.delta, "--k", "6", "--check", "emit", "--n-max", "60", "--out", half}).code == 0);
    CHECK(run({"shimura", "--lift", w.delta, "--k", "6", "--check", "forward", "--n-max", "60", "--half", half}).code == 0);
    CHECK(run({"validate", "--half", half}).code == 0);
    r = run({"conjecture", "--half", half, "--xmax", "10000", "--part", "im"});
    CHECK(r.code == 0);
    CHECK(r.out.find("trivial") != std::string::npos);
    CHECK(run({"conjecture", "--half", half, "--xmax", "0"}).code == 2);
    CHECK(run({"shimura", "--lift", w.cm32, "--k", "1", "--t", "1", "--check", "density", "--xmax", "6000", "--case", "cm-f",
               "--tol", "0.1"})
              .code == 0);
    CHECK(run({"shimura", "--lift", w.delta, "--k", "5", "--check", "gf"}).code == 2);
  }

  TEST_CASE("validation failures exit with 2") {
    Workspace w;
    std::string text = io::read_file(w.delta);
    text.replace(text.find("\"-24\""), 5, "\"-91\"");
    const std::string bad = w.path("bad.json");
    io::write_file(bad, text);
    const auto r = run({"validate", "--form", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("p=2") != std::string::npos);
  }

  TEST_CASE("reports are identical across thread counts except for runtime") {
    Workspace w;
    const std::vector<std::vector<std::string>> experiments = {
        {"st-test", "--form", w.delta, "--xmax", "6000", "--tol", "0.2"},
        {"sign-density", "--form", w.delta, "--nu", "3", "--phi", "1/4", "--xmax", "6000", "--predict", "--tol", "0.2"},
        {"shimura", "--lift", w.cm32, "--k", "1", "--t", "2", "--check", "density", "--xmax", "6000", "--case", "cm-other", "--tol", "0.2"},
        {"expand-eta", "--spec", "4:6", "--terms", "3000", "--level", "16", "--character", "16:1,0", "--out", w.path("cm3.json")}};
    for (const auto& args : experiments) {
      std::vector<std::string> one = {"--threads", "1", "--report", w.path("one.json")};
      std::vector<std::string> four = {"--threads", "4", "--report", w.path("four.json")};
      one.insert(one.end(), args.begin(), args.end());
      four.insert(four.end(), args.begin(), args.end());
      REQUIRE(run(one).code == 0);
      REQUIRE(run(four).code == 0);
      const std::string a = io::read_file(w.path("one.json"));
      const std::string b = io::read_file(w.path("four.json"));
      CHECK(report_without_runtime(a) == report_without_runtime(b));
      CHECK(a.find("\"runtime_seconds\"") != std::string::npos);
    }
  }
}
