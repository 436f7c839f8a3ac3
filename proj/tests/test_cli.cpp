// End-to-end checks of the command-line interface: file formats, exit codes,
// and pipeline composition.  Spawns the built binary.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "mlrank/json_io.hpp"

#ifndef MLRANK_CLI_PATH
#define MLRANK_CLI_PATH "mlrank"
#endif

using namespace mlrank;

namespace {

std::string tmpdir() {
  static std::string dir = [] {
    std::string d = "/tmp/mlrank_cli_test_XXXXXX";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s", d.c_str());
    REQUIRE(mkdtemp(buf) != nullptr);
    return std::string(buf);
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = std::string(MLRANK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate, rank, decompose, verify") {
  std::string dir = tmpdir();
  std::string m = dir + "/m.json", d = dir + "/d.json";
  CHECK(run("gen --example intro-diag --q 2 --out " + m) == 0);

  CHECK(run("rank --kind comm --in " + m + " --out " + dir + "/r.json") == 0);
  json r = read_json_file(dir + "/r.json");
  CHECK(r["value"] == 3);
  CHECK(r["exact"] == true);

  CHECK(run("rank --kind max --in " + m + " --out " + dir + "/rmax.json") == 0);
  CHECK(read_json_file(dir + "/rmax.json")["value"] == 2);

  CHECK(run("decompose-d1 --in " + m + " --out " + d) == 0);
  CHECK(run("verify --matrix " + m + " --decomp " + d) == 0);

  // a perturbed matrix of the same shape must fail verification with code 1
  std::string m2 = dir + "/m2.json";
  FormMatrix M = matrix_from_json(read_json_file(m));
  M.set(0, 0, MultilinearForm(M.field(), {1}, M.n()));
  write_json_file(m2, matrix_to_json(M));
  CHECK(run("verify --matrix " + m2 + " --decomp " + d) == 1);

  // mismatched shapes are an input error, not a verification failure
  std::string m3 = dir + "/m3.json";
  CHECK(run("gen --example intro-skew --q 2 --out " + m3) == 0);
  CHECK(run("verify --matrix " + m3 + " --decomp " + d) == 2);
}

TEST_CASE("decomposing the zero matrix yields an empty term list") {
  std::string dir = tmpdir();
  std::string m = dir + "/zero.json", d = dir + "/zerod.json";
  CHECK(run("gen --example random --q 3 --d 2 --n 2 --rows 3 --cols 3 --density 0 --seed 0 --out " +
            m) == 0);
  CHECK(run("decompose --in " + m + " --out " + d) == 0);
  json j = read_json_file(d);
  CHECK(j["terms"].empty());
  CHECK(run("verify --matrix " + m + " --decomp " + d) == 0);
}

TEST_CASE("general decomposition with extension") {
  std::string dir = tmpdir();
  std::string m = dir + "/f2.json", d = dir + "/f2d.json";
  CHECK(run("gen --example random --q 2 --d 2 --n 2 --rows 3 --cols 3 --density 0.6 --seed 4 --out " +
            m) == 0);
  CHECK(run("decompose --in " + m + " --allow-extension --out " + d) == 0);
  CHECK(run("verify --matrix " + m + " --decomp " + d) == 0);

  FormMatrix M = matrix_from_json(read_json_file(m));
  PartitionDecomposition D = decomposition_from_json(read_json_file(d));
  CHECK(decomposition_value(D) == M);
}

TEST_CASE("schur subcommand reproduces the worked example") {
  std::string dir = tmpdir();
  std::string m = dir + "/ex.json", p = dir + "/pt.json", out = dir + "/sc.json";
  CHECK(run("gen --example ex45 --q 7 --out " + m) == 0);
  std::ofstream(p) << "[[[1],[0]],[[1],[0]]]";
  CHECK(run("schur --in " + m + " --rows 0 --cols 0 --point " + p + " --out " + out) == 0);
  json j = read_json_file(out);
  CHECK(j["terms"].size() == 4);
  FormMatrix rem = matrix_from_json(j["remainder"]);
  CHECK(rem.rows() == 5);

  // singular pivot: exit code 2
  std::ofstream(p) << "[[[0],[1]],[[1],[0]]]";
  CHECK(run("schur --in " + m + " --rows 0 --cols 0 --point " + p + " --out " + out) == 2);
}

TEST_CASE("tensor pipeline and exit codes") {
  std::string dir = tmpdir();
  std::string t = dir + "/t.json";
  CHECK(run("gen --example random-tensor --q 2 --n 2 --density 0.5 --seed 9 --out " + t) == 0);
  CHECK(run("tensor --op ar --in " + t + " --out " + dir + "/ar.json") == 0);
  CHECK(run("tensor --op slice --in " + t + " --out " + dir + "/sl.json") == 0);
  CHECK(run("tensor --op flatten --in " + t + " --out " + dir + "/fl.json") == 0);

  json ar = read_json_file(dir + "/ar.json");
  json sl = read_json_file(dir + "/sl.json");
  CHECK(ar["bias"] == sl["bias"]);

  CHECK(run("rank --kind comm --in " + dir + "/missing.json") == 2);
  CHECK(run("gen --example no-such-example --out " + t) == 2);
  // exhausted budget: exit code 3
  std::string big = dir + "/big.json";
  CHECK(run("gen --example random --q 7 --d 3 --n 3 --rows 2 --cols 2 --density 0.4 --seed 1 --out " +
            big) == 0);
  CHECK(run("rank --kind max --in " + big + " --budget 100") == 3);
}

TEST_CASE("worker cap does not change results") {
  std::string dir = tmpdir();
  std::string m = dir + "/tm.json";
  CHECK(run("gen --example random --q 3 --d 2 --n 2 --rows 4 --cols 4 --density 0.5 --seed 2 --out " +
            m) == 0);
  CHECK(run("rank --kind max --in " + m + " --out " + dir + "/t1.json") == 0);
  CHECK(run("--threads 2 rank --kind max --in " + m + " --out " + dir + "/t2.json") == 0);
  CHECK(read_json_file(dir + "/t1.json") == read_json_file(dir + "/t2.json"));
}

TEST_CASE("mult and multsz") {
  std::string dir = tmpdir();
  std::string p = dir + "/p.json";
  std::ofstream(p) << R"({"field":{"p":2,"k":1},"nvars":2,)"
                   << R"("terms":[{"exp":[1,1],"coef":[1]}]})";
  CHECK(run("mult --poly " + p + " --point 0,0") == 0);
  CHECK(run("multsz --poly " + p) == 0);
  std::ofstream(p) << R"({"field":{"p":2,"k":1},"nvars":2,"terms":[]})";
  CHECK(run("multsz --poly " + p) == 2);  // zero polynomial rejected
}

TEST_SUITE_END();
