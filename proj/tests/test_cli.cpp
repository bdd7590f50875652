#include "cli.hpp"

#include "borromean/named_states.hpp"
#include "borromean/parity.hpp"
#include "borromean/search.hpp"
#include "borromean/serialize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace borromean;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("borromean_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const PureState& psi) const {
    std::ofstream file(path(name));
    write_state(file, psi);
    return path(name);
  }

  std::string write_text(const std::string& name, const std::string& text) const {
    std::ofstream file(path(name));
    file << text;
    return path(name);
  }

  fs::path dir_;
};

Json parse(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_F(CliTest, GenGhz) {
  const CliRun r = run({"gen", "ghz", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  ASSERT_EQ(doc["amplitudes"].size(), 8U);
  for (std::size_t k = 0; k < 8; ++k) {
    const bool nonzero = doc["amplitudes"][k]["re"].get<double>() != 0.0;
    EXPECT_EQ(nonzero, k == 0 || k == 7) << k;
  }
}

TEST_F(CliTest, GenParity) {
  const CliRun r = run({"gen", "parity", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = parse(r.out);
  for (std::size_t k = 0; k < 8; ++k) {
    const bool even = k == 0 || k == 3 || k == 5 || k == 6;
    EXPECT_NEAR(doc["amplitudes"][k]["re"].get<double>(), even ? 0.5 : 0.0, 1e-15);
  }
}

TEST_F(CliTest, GenHaarIsDeterministicAndRoundTrips) {
  const CliRun a = run({"gen", "haar", "--dims", "2,3,2", "--seed", "7"});
  const CliRun b = run({"gen", "haar", "--dims", "2,3,2", "--seed", "7", "--out", path("haar.json")});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  std::ifstream file(path("haar.json"));
  const std::string written((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  EXPECT_EQ(a.out, written);

  std::istringstream in(a.out);
  const PureState parsed = read_state(in);
  const PureState direct = haar_random_state(SiteDims({2, 3, 2}), 7);
  EXPECT_EQ(parsed.dims(), direct.dims());
  EXPECT_LE((parsed.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_F(CliTest, StateFileRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = haar_random_state(SiteDims({3, 2, 2}), seed);
    std::ostringstream out;
    write_state(out, psi);
    std::istringstream in(out.str());
    EXPECT_LE((read_state(in).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST_F(CliTest, GenErrors) {
  EXPECT_EQ(run({"gen", "ghz"}).code, 2);
  EXPECT_EQ(run({"gen", "haar"}).code, 2);
  EXPECT_EQ(run({"gen", "bogus", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"gen", "parity", "--n", "12"}).code, 2);
  const CliRun r = run({"gen", "haar", "--dims", "2,1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, AnalyzeExitCodes) {
  std::vector<ComplexVector> factors;
  for (int s = 0; s < 3; ++s) factors.push_back(haar_random_state(SiteDims({2}), 60 + s).amplitudes());
  const CliRun product = run({"analyze", write("product.json", product_state(factors))});
  EXPECT_EQ(product.code, 0) << product.err;
  EXPECT_LE(parse(product.out)["result"]["borromean"]["max_deviation"].get<double>(), 1e-12);

  const CliRun ghz = run({"analyze", write("ghz.json", ghz_state(3))});
  EXPECT_EQ(ghz.code, 1);
  const Json result = parse(ghz.out)["result"];
  EXPECT_NEAR(result["borromean"]["max_deviation"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(parse(ghz.out)["exit_code"], 1);

  const std::string full = parse(run({"gen", "ghz", "--n", "3"}).out).dump();
  EXPECT_EQ(run({"analyze", write_text("truncated.json", full.substr(0, full.size() / 2))}).code, 2);
  EXPECT_EQ(run({"analyze", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"analyze", write("bell.json", bell_state())}).code, 2);
  EXPECT_EQ(run({"analyze", write_text("short.json", R"({"dims":[2,2],"amplitudes":[{"re":1,"im":0}]})")}).code, 2);
}

TEST_F(CliTest, SchmidtReports) {
  const CliRun bell = run({"schmidt", write("bell.json", bell_state()), "--restarts", "16"});
  ASSERT_EQ(bell.code, 0) << bell.err;
  const Json values = parse(bell.out)["result"]["normal_form"]["coefficients"]["values"];
  EXPECT_NEAR(std::hypot(values[0]["re"].get<double>(), values[0]["im"].get<double>()), 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(std::hypot(values[3]["re"].get<double>(), values[3]["im"].get<double>()), 1.0 / std::sqrt(2.0), 1e-6);

  const CliRun w = run({"schmidt", write("w.json", w_state(3))});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_NEAR(parse(w.out)["result"]["normal_form"]["achieved_overlap"].get<double>(), 2.0 / 3.0, 1e-6);
  EXPECT_FALSE(parse(w.out)["result"]["vanishing_cascade"].empty());

  std::vector<ComplexVector> factors;
  for (int s = 0; s < 3; ++s) factors.push_back(haar_random_state(SiteDims({2}), 70 + s).amplitudes());
  const CliRun product = run({"schmidt", write("product.json", product_state(factors))});
  ASSERT_EQ(product.code, 0) << product.err;
  const Json result = parse(product.out)["result"];
  EXPECT_TRUE(result["vanishing_cascade"].empty());
  EXPECT_NEAR(result["normal_form"]["coefficients"]["values"][0]["re"].get<double>(), 1.0, 1e-10);

  EXPECT_EQ(run({"schmidt", write("mixed_dims.json", haar_random_state(SiteDims({2, 3, 2}), 1))}).code, 2);
}

TEST_F(CliTest, SchmidtIsDeterministic) {
  const std::string state = write("haar.json", haar_random_state(SiteDims::uniform(3, 2), 3));
  const CliRun a = run({"schmidt", state, "--seed", "4", "--restarts", "16"});
  const CliRun b = run({"schmidt", state, "--seed", "4", "--restarts", "16"});
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, Classical) {
  const CliRun uniform = run({"classical", "--p", "0.5,0.5"});
  EXPECT_EQ(uniform.code, 0);
  EXPECT_NEAR(parse(uniform.out)["result"]["check"]["full_joint_gap"].get<double>(), 0.5, 1e-12);

  const CliRun biased = run({"classical", "--p", "0.3,0.6"});
  EXPECT_EQ(biased.code, 1);
  EXPECT_NEAR(parse(biased.out)["result"]["check"]["drop_one_gaps"][2].get<double>(), 0.084, 1e-12);

  EXPECT_EQ(run({"classical", "--p", "1.3"}).code, 2);
  EXPECT_EQ(run({"classical", "--p", "0.5"}).code, 2);
}

TEST_F(CliTest, Parity) {
  const CliRun two = run({"parity", "--n", "2", "--state-out", path("parity.json")});
  EXPECT_EQ(two.code, 0) << two.err;
  const Json result = parse(two.out)["result"];
  EXPECT_LE(result["max_abs_difference"].get<double>(), 1e-12);
  EXPECT_EQ(result["density_matrix_non_borromean"], true);
  std::ifstream state(path("parity.json"));
  EXPECT_LE((read_state(state).amplitudes() - parity_state(2).amplitudes()).cwiseAbs().maxCoeff(), 1e-15);

  EXPECT_EQ(run({"parity", "--n", "3"}).code, 0);
  EXPECT_EQ(run({"parity", "--n", "1"}).code, 0);
  EXPECT_EQ(run({"parity", "--n", "0"}).code, 2);
}

TEST_F(CliTest, CampaignAndSearch) {
  const CliRun campaign = run({"campaign", "--dims", "2,2,2", "--samples", "100", "--seed", "7", "--inject", "ghz,product"});
  EXPECT_EQ(campaign.code, 0) << campaign.err;
  const Json c = parse(campaign.out);
  EXPECT_EQ(c["result"]["counterexample_count"], 0);
  EXPECT_EQ(c["result"]["records"].size(), 102U);
  EXPECT_EQ(c["config"]["seed"], 7);

  const CliRun search = run({"search", "--dims", "2,2,2", "--floor", "0", "--restarts", "8", "--seed", "1"});
  EXPECT_EQ(search.code, 0) << search.err;
  EXPECT_LE(parse(search.out)["result"]["best_borromean_deviation"].get<double>(), 1e-6);

  const CliRun ghz_start = run({"search", "--dims", "2,2,2", "--restarts", "1", "--start", "ghz", "--iterations", "200"});
  EXPECT_EQ(ghz_start.code, 0) << ghz_start.err;
  EXPECT_EQ(parse(ghz_start.out)["result"]["trajectories"][0]["from_start_state"], true);

  EXPECT_EQ(run({"campaign", "--dims", "2,2"}).code, 2);
  EXPECT_EQ(run({"search", "--dims", "2,2"}).code, 2);
  EXPECT_EQ(run({"search", "--dims", "2,x,2"}).code, 2);
}

TEST_F(CliTest, ReportsAreReproducibleFromTheirConfig) {
  const CliRun a = run({"campaign", "--dims", "2,3,2", "--samples", "20", "--seed", "5"});
  const Json config = parse(a.out)["config"];
  std::vector<std::string> args{"campaign", "--samples", std::to_string(config["sample_count"].get<int>()), "--seed",
                                std::to_string(config["seed"].get<std::uint64_t>())};
  std::string dims;
  for (const auto& d : config["dims"]) dims += (dims.empty() ? "" : ",") + std::to_string(d.get<int>());
  args.insert(args.end(), {"--dims", dims});
  EXPECT_EQ(run(args).out, a.out);
}
