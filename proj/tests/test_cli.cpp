#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("crsym_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = work_dir() / ("stdout." + std::to_string(counter));
  const fs::path err = work_dir() / ("stderr." + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(CRSYM_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("validate accepts a descriptor file and reports the shape") {
  const fs::path f = work_dir() / "descr_I.json";
  spit(f, R"({"form":"I","p":1,"q":0})");
  const RunResult r = run_cli("validate " + f.string());
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("valid").get<bool>());
  CHECK(j.at("regular").get<bool>());
  CHECK(j.at("n").get<int>() == 1);
  CHECK(j.at("kernel_rank").get<int>() == 1);
  CHECK(j.at("dim_M").get<int>() == 5);
  CHECK(j.contains("alpha"));
}

TEST_CASE("validate exits 1 on a degenerate form with a written report") {
  const fs::path f = work_dir() / "degenerate.json";
  spit(f, R"({"hermitian":[[0]],"operators":[[[1]]]})");
  const fs::path out = work_dir() / "degenerate_report.json";
  const RunResult r =
      run_cli("validate " + f.string() + " --out " + out.string());
  CHECK(r.code == 1);
  CHECK(r.err.find("invalid input") != std::string::npos);
  const json j = json::parse(slurp(out));
  CHECK(j.at("error").get<std::string>() == "validation");
}

TEST_CASE("classify exits 2 on a non-regular symbol") {
  const fs::path f = work_dir() / "nonregular.json";
  spit(f, R"({"hermitian":[[1,0],[0,1]],"operators":[[[1,0],[0,2]]]})");
  const RunResult r = run_cli("classify " + f.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("not regular") != std::string::npos);
}

TEST_CASE("normal forms can be given by flags instead of a file") {
  const RunResult r = run_cli("classify --form II --p 1");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("family").get<std::string>() == "II");
  CHECK(j.at("p").get<int>() == 1);
  CHECK(j.at("verified").get<bool>());

  const RunResult b =
      run_cli("classify --form nilpotent --blocks 3+,1-");
  REQUIRE(b.code == 0);
  const json jb = json::parse(b.out);
  CHECK(jb.at("family").get<std::string>() == "nilpotent");

  const RunResult c =
      run_cli("classify --form non_nilpotent --profile 2,1,1,1,-1");
  REQUIRE(c.code == 0);
  const json jc = json::parse(c.out);
  CHECK(jc.at("family").get<std::string>() == "non_nilpotent");
  CHECK(jc.at("alpha_sign").get<int>() == -1);
}

TEST_CASE("prolong emits the complete graded algebra") {
  const RunResult r = run_cli("prolong --form I --p 1 --q 0");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("total_complex").get<int>() == 10);
  CHECK_FALSE(j.at("capped").get<bool>());
  CHECK(j.at("dims").at("(0,0)").get<int>() == 2);
  CHECK(j.at("dims").at("(2,0)").get<int>() == 1);
  CHECK(j.at("field").get<std::string>() == "gaussian_rational");
}

TEST_CASE("identify names the real form") {
  const RunResult r = run_cli("identify --form II --p 1");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("name").get<std::string>() == "so*(6)");
  CHECK(j.at("matched_golden").get<bool>());
  CHECK(j.at("fingerprint").at("dim").get<int>() == 15);
}

TEST_CASE("golden emits models and rejects bad names") {
  const RunResult r = run_cli("golden \"so(4,3)\"");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("name").get<std::string>() == "so(4,3)");
  CHECK(j.at("fingerprint").at("semisimple").get<bool>());

  const RunResult bad = run_cli("golden \"so(1,1)\"");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("invalid input") != std::string::npos);
}

TEST_CASE("saved prolongations replay through check-jacobi") {
  const fs::path f = work_dir() / "prolong_21.json";
  const RunResult w =
      run_cli("prolong --form nilpotent --blocks 2+ --out " + f.string());
  REQUIRE(w.code == 0);
  const RunResult r = run_cli("check-jacobi " + f.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("jacobi_ok").get<bool>());
  CHECK(j.at("involution_ok").get<bool>());
  CHECK(j.at("triples_checked").get<int>() > 0);
}

TEST_CASE("repeated runs produce identical bytes") {
  const fs::path f1 = work_dir() / "rep1.json";
  const fs::path f2 = work_dir() / "rep2.json";
  REQUIRE(run_cli("prolong --form I --p 2 --q 1 --out " + f1.string()).code == 0);
  REQUIRE(run_cli("prolong --form I --p 2 --q 1 --out " + f2.string()).code == 0);
  const std::string a = slurp(f1);
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(f2));
}

TEST_CASE("table renders csv and markdown") {
  const RunResult csv = run_cli("table 5 --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("dim_M,family,total_dim,identified") != std::string::npos);
  const bool has_row =
      csv.out.find("5,I(p=1,q=0),10,\"so(3,2)\"") != std::string::npos ||
      csv.out.find("5,I(p=1,q=0),10,so(3,2)") != std::string::npos;
  CHECK(has_row);

  const RunResult md = run_cli("table 5 --format md");
  REQUIRE(md.code == 0);
  CHECK(md.out.find("| I(p=1,q=0) | 10 | so(3,2) |") != std::string::npos);

  const RunResult bad = run_cli("table 6");
  CHECK(bad.code == 1);
}

TEST_CASE("bad invocations exit 1") {
  CHECK(run_cli("bogus-subcommand").code == 1);
  CHECK(run_cli("classify").code == 1);
  CHECK(run_cli("classify --form I").code == 1);
  CHECK(run_cli("prolong --form II --p 1 --max-degree 0").code == 1);
  CHECK(run_cli("prolong --form II --p 1 --verify sometimes").code == 1);
}
