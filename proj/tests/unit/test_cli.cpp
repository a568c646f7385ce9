#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = twistmap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("text output") {
  CHECK(run({"phi-prime", "5,4,3,3,2,2,1,1"}).out == "5,3,3,2,2,1,1,1,1,1,1\n");
  CHECK(run({"phi-prime", "-p", "2"}).out == "1,1\n");
  CHECK(run({"z-perm", "2", "-n", "3"}).out == "2,1,3\n");
}

TEST_CASE("exit codes") {
  CHECK(run({"phi-prime", "1,2"}).code == twistmap::cli::kUsage);
  CHECK(run({"no-such-command"}).code == twistmap::cli::kUsage);
  CHECK(run({"phi-prime"}).code == twistmap::cli::kUsage);
  CHECK(run({"z-perm", "2", "-n", "4"}).code == twistmap::cli::kUsage);
  CHECK(run({"table", "g2"}).code == twistmap::cli::kUsage);
  CHECK(run({"identity-check", "--max-n", "4", "--printed"}).code == twistmap::cli::kFalsified);
  CHECK(run({"identity-check", "--max-n", "6"}).code == twistmap::cli::kOk);
}

TEST_CASE("json schemas") {
  const json phi = run_json({"phi-prime", "2,2"});
  CHECK(phi["command"] == "phi-prime");
  CHECK(phi["status"] == "ok");
  CHECK(phi["input"] == "2,2");
  CHECK(phi["output"] == "1,1,1,1");

  const json psi = run_json({"psi-prime", "1,1"});
  CHECK(psi["output"] == "1,1");
  CHECK(psi["mu"].is_number_integer());
  CHECK(psi["fiber"].is_array());
  CHECK(psi["fiber"].size() == 2);

  const json ell = run_json({"phi-elliptic", "2,1"});
  CHECK(ell["output"] == "3:1,1:1");
  CHECK(ell["n"] == 4);

  const json id = run_json({"identity-check", "--max-n", "5"});
  CHECK(id["all_equal"] == true);
  CHECK(id["rows"].is_array());
  for (const auto& row : id["rows"]) {
    CHECK(row["ell"] == row["d"]);
    CHECK(row["ell"] == row["inversions"]);
  }

  const json table = run_json({"table", "d4"});
  CHECK(table["entries"].size() == 7);
  CHECK(table["targets"].size() == 5);
  CHECK(table["checksum"].is_string());
  const json one = run_json({"table", "e6", "--class", "E6(a1)!"});
  CHECK(one["target"] == "γ_4");
  CHECK(one["distinguished"] == true);

  const json z = run_json({"z-perm", "3,1"});
  CHECK(z["output"] == "2,3,4,1,5,6");
  CHECK(z["length"].is_number_integer());

  const json model = run_json({"standard-model", "2", "--char", "2"});
  CHECK(model["jordan_type"] == "3");
  CHECK(model["g"].is_array());

  const json xg = run_json({"enumerate-xg", "1,1", "--char", "2"});
  CHECK(xg["x_g"] == xg["s_g"]);
  CHECK(xg["round_trip"] == true);

  const json dl = run_json({"count-dl", "1", "-q", "2", "-m", "1"});
  CHECK(dl["levels"][0]["x_tilde"] == 3);

  const json classes = run_json({"oracle", "classes", "-n", "2", "--char", "2"});
  CHECK(classes["elements"] == 4);
  CHECK(classes["classes"].size() == 2);

  const json sigma = run_json({"oracle", "sigma", "-n", "2", "--char", "2", "-w", "z:1,1", "-m", "1"});
  CHECK(sigma["w"] == "2,1");
  CHECK(sigma["levels"].size() == 1);

  const json verify = run_json({"oracle", "verify", "-n", "2", "--char", "2", "-m", "1"});
  CHECK(verify["ok"] == true);
}

TEST_CASE("--out writes the JSON report") {
  const auto path = std::filesystem::temp_directory_path() / "twistmap_cli_test.json";
  std::filesystem::remove(path);
  const Run r = run({"--out", path.string(), "phi-prime", "3,2,2"});
  CHECK(r.code == 0);
  CHECK(r.out == "3,1,1,1,1\n");
  std::ifstream in(path);
  REQUIRE(in.good());
  const json j = json::parse(in);
  CHECK(j["output"] == "3,1,1,1,1");
  std::filesystem::remove(path);
}
