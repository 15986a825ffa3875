#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "anderson/estimator.hpp"
#include "anderson/formulas.hpp"
#include "cli.hpp"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "anderson-ids");
  std::ostringstream out, err;
  const int code = anderson::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream is(csv);
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("bounds") {
  const auto r = run({"bounds", "--p", "0.3", "--grid", "401"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  CHECK(rows.size() == 401);
  CHECK(r.out.find("energy,lower,upper,fp,free,lif_lo,lif_hi\n") != std::string::npos);
  CHECK(r.out.find("# p=0.3\n") != std::string::npos);
  const auto mid = split(rows[200]);
  CHECK(std::stod(mid[0]) == doctest::Approx(2.0));
  for (int c : {1, 2, 3}) CHECK(std::stod(mid[c]) == doctest::Approx(0.4117647058823529).epsilon(1e-10));
  // deep tail at 0.01: beta ~ 31.4
  const auto first = split(rows[0]);
  CHECK(std::stod(first[0]) == 0.01);
  for (int c : {1, 2, 3, 5, 6}) CHECK(std::stod(first[c]) < 1e-4);
  CHECK(std::stod(first[4]) == doctest::Approx(1.0 / anderson::beta(0.01)));
}

TEST_CASE("special-up-to injects exact special energies") {
  const auto r = run({"bounds", "--grid", "3", "--special-up-to", "4"});
  REQUIRE(r.code == 0);
  // 2 is both a grid point and the n = 2 special energy
  CHECK(data_rows(r.out).size() == 3 + 4);
}

TEST_CASE("ids is deterministic and validates input") {
  const std::vector<std::string> args{"ids", "--p", "0.3", "--zeta", "4", "--size", "2000", "--reps", "3", "--seed", "7",
                                      "--grid", "21"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("energy,value,stderr,p,zeta,L,reps,seed\n") != std::string::npos);
  CHECK(data_rows(a.out).size() == anderson::make_grid(21, 0.01, 3.99, 12).size());

  auto threads = args;
  threads.insert(threads.end(), {"--threads", "1"});
  CHECK(run(threads).out == a.out);

  auto wb = args;
  wb.push_back("--with-bounds");
  const auto c = run(wb);
  REQUIRE(c.code == 0);
  CHECK(c.out.find("energy,value,stderr,p,zeta,L,reps,seed,lower,upper,fp,free\n") != std::string::npos);

  CHECK(run({"ids", "--size", "0"}).code == 2);
  CHECK(run({"ids", "--p", "1.5"}).code == 2);
  CHECK(run({"ids", "--mode", "sideways"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("resource guard exit code") {
  setenv("ANDERSON_IDS_MAX_SIZE", "1000", 1);
  CHECK(run({"ids", "--size", "1001", "--grid", "3", "--special-up-to", "0", "--reps", "1"}).code == 3);
  unsetenv("ANDERSON_IDS_MAX_SIZE");
}

TEST_CASE("verify") {
  const auto r = run({"verify", "interlacing", "--trials", "20", "--max-size", "100"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["command"] == "verify");
  CHECK(doc["config"]["trials"] == "20");
  CHECK(doc["reports"][0]["name"] == "interlacing");
  CHECK(doc["reports"][0]["status"] == "PASS");
  CHECK(r.err.find("interlacing") != std::string::npos);

  CHECK(run({"verify", "theorem1", "--zeta", "3"}).code == 2);
  CHECK(run({"verify", "bogus"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  const auto t = run({"verify", "theorem1", "--p", "0.3", "--zeta", "4", "--size", "5000", "--reps", "3", "--grid", "21"});
  CHECK(t.code == 0);
}

TEST_CASE("conjecture table") {
  const auto r = run({"conjecture", "--p", "0.3", "--n", "3", "--zetas", "2,2.5,3,4,20", "--size", "5000", "--reps", "3"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  CHECK(rows.size() == 10);
  CHECK(r.out.find("zeta,n,branch,estimate,stderr,closed_form,proved") != std::string::npos);
  for (const auto& row : rows) {
    const auto f = split(row);
    const double zeta = std::stod(f[0]);
    const bool proved = f[6] == "true";
    if (f[2] == "upper") CHECK(proved == (zeta >= 3.0));
  }
  CHECK(run({"conjecture", "--zetas", "1.5,4"}).code == 2);
}

TEST_CASE("special, blockids, lemma5 and --out") {
  const auto s = run({"special", "--p", "0.3", "--n-max", "5"});
  REQUIRE(s.code == 0);
  CHECK(data_rows(s.out).size() == 4);

  const auto b = run({"blockids", "--p", "0.5", "--variant", "ceil_m1", "--n", "10000", "--grid", "5",
                      "--special-up-to", "0"});
  REQUIRE(b.code == 0);
  CHECK(data_rows(b.out).size() == 5);
  CHECK(run({"blockids", "--variant", "nope"}).code == 2);

  const auto l = run({"lemma5", "--p", "0.5", "--n-list", "1000,10000", "--reps", "5"});
  REQUIRE(l.code == 0);
  CHECK(data_rows(l.out).size() == 2);
  CHECK(run({"lemma5", "--n-list", "10"}).code == 2);

  const auto path = (std::filesystem::temp_directory_path() / "anderson_cli_out.csv").string();
  const auto o = run({"special", "--n-max", "3", "--out", path});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(data_rows(ss.str()).size() == 2);
  std::filesystem::remove(path);
}
