#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(POLYBERN_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pmf") {
  CHECK(run("pmf 1/5 3/10 1/2 --exact").out == "7/25 47/100 11/50 3/100\n");
  CHECK(run("pmf --exact").out == "1\n");
  CHECK(run("pmf 0.5 --float").out == "0.5 0.5\n");
  CHECK(run("pmf 0.3 0.5").out == "7/20 1/2 3/20\n");
  CHECK(run("pmf 1/0").code == 2);
  CHECK(run("pmf 0.1234567890123").code == 2);
  CHECK(run("pmf 3/2").code == 2);
  CHECK(run("pmf 1/2 --exact --float").code == 2);
}

TEST_CASE("entropy") {
  auto r = run("entropy 1/2 1/2");
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(std::stod(run("entropy 1/5 3/10 --family tsallis --q 0").out) == 2.0);
  CHECK(run("entropy 1/2 --family renyi").code == 2);
}

TEST_CASE("derivative") {
  auto fair = nlohmann::json::parse(run("derivative 1/2 1/2 --family shannon --method mixing").out);
  CHECK(fair["schema"] == 1);
  CHECK(std::abs(fair["first"].get<double>()) <= 1e-12);
  auto quarter = nlohmann::json::parse(run("derivative 1/4 1/2 --family shannon --method direct").out);
  CHECK(quarter["first"].get<double>() == doctest::Approx(0.130812).epsilon(1e-6));
  CHECK(quarter["bound_check"] == true);
  auto fd = nlohmann::json::parse(run("derivative 1/4 1/2 --method fd --h 1e-5").out);
  CHECK(std::abs(fd["first"].get<double>() - quarter["first"].get<double>()) <= 1e-6);
  auto ts = nlohmann::json::parse(run("derivative 0.49 0.5 --family tsallis --q 3 --method direct").out);
  CHECK(ts["first"].get<double>() < 0.0);
  CHECK(run("derivative 1/4 1/2 --family tsallis --q 1").code == 2);
  CHECK(run("derivative 1/4 1/2 --family renyi --q 1").code == 2);
  CHECK(run("derivative 1/4 1 --method fd").code == 2);
  CHECK(run("derivative 1/4 1/3 --method mixing").code == 2);
}

TEST_CASE("mixing") {
  auto j = nlohmann::json::parse(run("mixing 1/4 1/2 --rmax 2").out);
  CHECK(j["alphas"] == nlohmann::json::array({"0", "3/4", "1"}));
  CHECK(j["odd_moments"][0] == "-3/128");
  CHECK(j["s_chains"][0]["s_values"] == nlohmann::json::array({"-3/32", "0"}));
}

TEST_CASE("verify") {
  CHECK(run("verify 1/4 1/2 --suite all --rmax 5").code == 0);
  auto fair = run("verify 1/2 1/2 --suite monotonicity");
  CHECK(fair.code == 0);
  CHECK(nlohmann::json::parse(fair.out)["equality_attained"] == true);
  auto gated = run("verify 3/4 1/2 --suite monotonicity");
  CHECK(gated.code == 0);
  auto gj = nlohmann::json::parse(gated.out);
  CHECK(gj["summary"]["skipped"] == 1);
  CHECK(gj["checks"][0]["status"] == "skipped");
  CHECK(run("verify 1/5 3/10 1/2 --suite appendix").code == 0);
  CHECK(run("verify 1/5 3/10 1/2 --suite identities --seed 4").code == 0);
  CHECK(run("verify 1/4 --suite nonsense").code == 2);
}

TEST_CASE("sweep") {
  auto grid = run("sweep --n 2 --p-min 0.1 --p-max 0.5 --p-step 0.1");
  CHECK(grid.code == 0);
  std::istringstream lines(grid.out);
  std::string line;
  std::size_t rows = 0;
  std::getline(lines, line);
  CHECK(line.rfind("index,n,params,", 0) == 0);
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",true") != std::string::npos);
  }
  CHECK(rows == 5);

  const std::string a = "polybern_cli_sweep_a.csv";
  const std::string b = "polybern_cli_sweep_b.csv";
  CHECK(run("sweep --mode random --samples 200 --seed 7 --n 5 --out " + a).code == 0);
  CHECK(run("sweep --mode random --samples 200 --seed 7 --n 5 --out " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  std::remove(a.c_str());
  std::remove(b.c_str());

  auto ts = run("sweep --mode random --samples 50 --seed 2 --n 4 --q 0.5 --q 1.0 --q 1.5 --q 2.0 --format json");
  CHECK(ts.code == 0);
  auto j = nlohmann::json::parse(ts.out);
  for (const auto& row : j["rows"]) {
    CHECK(row["tsallis_nonnegative"] == true);
    for (const auto& t : row["tsallis"]) CHECK(t["derivative"].get<double>() >= -1e-12);
  }
  CHECK(run("sweep --n 2 --out /nonexistent-dir/x.csv").code == 2);
  CHECK(run("sweep --format xml").code == 2);
}

TEST_CASE("counterexample and search") {
  auto ce = nlohmann::json::parse(run("counterexample --q 3 --eps 0.01").out);
  CHECK(std::abs(ce["exact"].get<double>() - (-0.00187425)) <= 1e-9);
  CHECK(ce["leading"].get<double>() == doctest::Approx(-0.001875));
  CHECK(ce["negative"] == true);
  CHECK(run("counterexample --q 3 --eps 0.6").code == 2);

  auto s1 = run("search --samples 200 --seed 11");
  auto s2 = run("search --samples 200 --seed 11");
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
  CHECK(run("search --q-max 3").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
  CHECK(run("derivative --help").code == 0);
}
