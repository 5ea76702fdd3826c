#include "rabi_qpt/cli.hpp"
#include "rabi_qpt/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace rabi_qpt;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "rabi-qpt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(ParseAxis, InclusiveLinspace) {
  const SweepAxis a = cli::parse_axis("chi:0:0.6:61");
  EXPECT_EQ(a.parameter, AxisParameter::chi);
  ASSERT_EQ(a.values.size(), 61u);
  EXPECT_EQ(a.values.front(), 0.0);
  EXPECT_DOUBLE_EQ(a.values.back(), 0.6);
  EXPECT_DOUBLE_EQ(a.values[10], 0.1);
  EXPECT_EQ(cli::parse_axis("Omega_over_omega:20:40:1").values, std::vector<double>{20.0});
}

TEST(ParseAxis, RejectsMalformedInput) {
  EXPECT_THROW(cli::parse_axis("chi:0:1"), InvalidArgument);
  EXPECT_THROW(cli::parse_axis("chi:0:1:0"), InvalidArgument);
  EXPECT_THROW(cli::parse_axis("chi:a:1:3"), InvalidArgument);
  EXPECT_THROW(cli::parse_axis("lambda:0:1:3"), InvalidArgument);
}

TEST(ParseLists, IntegersAndQuantities) {
  EXPECT_EQ(cli::parse_int_list("0,1"), (std::vector<int>{0, 1}));
  EXPECT_THROW(cli::parse_int_list("0,-1"), InvalidArgument);
  EXPECT_THROW(cli::parse_int_list("x"), InvalidArgument);
  EXPECT_EQ(cli::parse_quantity_list("all").size(), 7u);
  EXPECT_EQ(cli::parse_quantity_list("entropy,gap"),
            (std::vector<Quantity>{Quantity::entropy, Quantity::gap}));
  EXPECT_THROW(cli::parse_quantity_list("entropy,bogus"), InvalidArgument);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(cli::format_number(0.1414213562373095), "0.141421356237");
  EXPECT_EQ(cli::format_number(1.0), "1");
  EXPECT_EQ(cli::format_number(-0.0), "0");
}

TEST(CriticalPointCommand, SinglePhotonExample) {
  const Outcome r = run({"critical-point", "--alpha", "0", "--g0", "0.245", "--n", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("chi_c,0.141421356237"), std::string::npos);
  EXPECT_NE(r.out.find("phase_above,SP"), std::string::npos);
}

TEST(CriticalPointCommand, StandardRabiExampleAsJson) {
  const Outcome r = run({"critical-point", "--alpha", "0", "--n", "0", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["chi_c"].get<double>(), 1.0);
  EXPECT_EQ(doc["phase_below"], "NP");
}

TEST(CriticalPointCommand, ReversedTransitionAndPhaseAtChi) {
  const Outcome r = run({"critical-point", "--alpha", "1.5", "--g0-ratio", "0.26", "--n", "1",
                         "--chi", "0.2", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["chi_c"].get<double>(), 0.282843, 1e-6);
  EXPECT_EQ(doc["phase_below"], "SP");
  EXPECT_EQ(doc["phase"], "SP");
  EXPECT_NEAR(doc["chi_n"].get<double>(), std::sqrt(2.0), 1e-12);
}

TEST(CriticalPointCommand, NoCriticalPointIsReported) {
  const Outcome r = run({"critical-point", "--alpha", "1", "--n", "1", "--g0", "0.1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "NoCriticalPoint");
}

TEST(SweepCommand, RowCountContract) {
  const Outcome r = run({"sweep", "--axis", "chi:0:0.6:61", "--n", "0,1", "--Omega-ratio", "10",
                         "--g0-ratio", "0.245", "--fock-dim", "150", "--quantities",
                         "psi_q_numeric,entropy", "--no-timestamp"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u + 61u * 2u * 2u);
  EXPECT_EQ(rows[1], "axis1,axis2,n,quantity,value,flag");
  EXPECT_EQ(rows[2].rfind("0,,0,psi_q_numeric,", 0), 0u);
}

TEST(SweepCommand, ByteIdenticalWithoutTimestamp) {
  const std::vector<std::string> args{"sweep", "--axis", "chi:0.1:0.3:3", "--axis2",
                                      "Omega_over_omega:5:10:2", "--n", "1", "--g0", "0.245",
                                      "--fock-dim", "120", "--no-timestamp"};
  EXPECT_EQ(run(args).out, run(args).out);
  const Outcome stamped = run({"sweep", "--axis", "chi:0.1:0.3:3", "--fock-dim", "50"});
  EXPECT_EQ(stamped.out.rfind("# generated ", 0), 0u);
}

TEST(SweepCommand, NullRowsForUndefinedFrame) {
  const Outcome r = run({"sweep", "--axis", "g0_over_omega:0.2:0.3:3", "--n", "1", "--chi",
                         "0.3", "--fock-dim", "60", "--quantities", "entropy", "--no-timestamp"});
  EXPECT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[3], "0.25,,1,entropy,null,frame_undefined");
  EXPECT_EQ(rows[4], "0.3,,1,entropy,null,frame_undefined");
}

TEST(SweepCommand, JsonFormat) {
  const Outcome r = run({"sweep", "--axis", "chi:0.1:0.2:2", "--fock-dim", "40", "--quantities",
                         "gap", "--format", "json", "--no-timestamp"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["axis1"], "chi");
  EXPECT_TRUE(doc["axis2"].is_null());
  EXPECT_FALSE(doc.contains("generated"));
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["flag"], "ok");
}

TEST(SweepCommand, UsageErrors) {
  EXPECT_NE(run({"sweep", "--fock-dim", "40"}).code, 0);
  EXPECT_NE(run({"sweep", "--axis", "chi:0:1:3", "--quantities", "bogus"}).code, 0);
  EXPECT_NE(run({"sweep", "--axis", "chi:0:1:3", "--format", "xml"}).code, 0);
  EXPECT_NE(run({"sweep", "--axis", "chi:0:1:3", "--unknown-flag", "1"}).code, 0);
  EXPECT_NE(run({}).code, 0);
}

TEST(ConfigFile, ValuesAppliedAndFlagsOverride) {
  const std::string path = temp_path("rabi_qpt_cli_config.json");
  {
    std::ofstream f(path);
    f << R"({"alpha": 1.5, "g0-ratio": 0.26, "n": 1, "chi": 0.35, "format": "json"})";
  }
  const Outcome from_file = run({"critical-point", "--config", path});
  EXPECT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(nlohmann::json::parse(from_file.out)["phase"], "NP");
  const Outcome overridden = run({"critical-point", "--config", path, "--chi", "0.2"});
  EXPECT_EQ(nlohmann::json::parse(overridden.out)["phase"], "SP");
  std::remove(path.c_str());
}

TEST(ConfigFile, UnknownKeysRejected) {
  const std::string path = temp_path("rabi_qpt_cli_bad_config.json");
  {
    std::ofstream f(path);
    f << R"({"alpha": 0.0, "lambda": 0.3})";
  }
  const Outcome r = run({"critical-point", "--config", path});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("lambda"), std::string::npos);
  std::remove(path.c_str());
}

TEST(ConfigFile, SweepListsFromArrays) {
  const std::string path = temp_path("rabi_qpt_cli_sweep_config.json");
  {
    std::ofstream f(path);
    f << R"({"axis": "chi:0.1:0.2:2", "n": [0, 1], "quantities": ["gap"], "fock-dim": 40,
             "no-timestamp": true})";
  }
  const Outcome r = run({"sweep", "--config", path});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 2u + 2u * 2u);
  std::remove(path.c_str());
}

TEST(OutputFile, WrittenInsteadOfStdout) {
  const std::string path = temp_path("rabi_qpt_cli_out.csv");
  const Outcome r = run({"critical-point", "--output", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "quantity,value");
  std::remove(path.c_str());
}

TEST(WignerCommand, VacuumGrid) {
  const Outcome r = run({"wigner", "--state", "G0", "--fock-dim", "20", "--nx", "3", "--ny", "3",
                         "--x-min", "-1", "--x-max", "1", "--y-min", "-1", "--y-max", "1",
                         "--fixed-grid", "--no-timestamp"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], "x,y,W");
  EXPECT_EQ(rows[5], "0,0,0.636619772368");
}

TEST(WignerCommand, CatStatesNeedSuperradiantPhase) {
  const Outcome r = run({"wigner", "--state", "cat_plus", "--chi", "0.3", "--fock-dim", "40"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "WrongPhase");
  EXPECT_NE(run({"wigner", "--state", "bogus", "--fock-dim", "20"}).code, 0);
}

TEST(WignerCommand, ProjectedCatHasNegativity) {
  const Outcome r = run({"wigner", "--state", "projected", "--chi", "1.4", "--Omega", "8",
                         "--fock-dim", "200", "--nx", "61", "--ny", "61", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_LT(doc["min"].get<double>(), -0.01);
  EXPECT_NEAR(doc["integral"].get<double>(), 1.0, 0.02);
}

TEST(ValidateCommand, PassesAtAdequateTruncation) {
  const Outcome r = run({"validate", "--alpha", "1.5", "--g0", "0.26", "--n", "1", "--Omega",
                         "10", "--chi", "0.2", "--fock-dim", "500"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(ValidateCommand, FailsWhenTruncationIsTooSmall) {
  const Outcome r = run({"validate", "--alpha", "1.5", "--g0", "0.26", "--n", "1", "--Omega",
                         "10", "--chi", "0.2", "--fock-dim", "60", "--format", "json"});
  EXPECT_EQ(r.code, 1);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_FALSE(doc["passed"].get<bool>());
}

TEST(ValidateCommand, SkipsFrameComparisonWhenLabFrameIsTruncated) {
  const Outcome r = run({"validate", "--g0", "0.245", "--n", "1", "--Omega", "10", "--chi", "0.3",
                         "--fock-dim", "300", "--format", "json"});
  const auto doc = nlohmann::json::parse(r.out);
  bool seen = false;
  for (const auto& check : doc["checks"]) {
    if (check["check"] == "frame_equivalence") {
      seen = true;
      EXPECT_EQ(check["status"], "SKIP");
      EXPECT_TRUE(check["value"].is_null());
    }
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(r.code, 0) << r.out;
}
