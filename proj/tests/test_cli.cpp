#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "") {
  const std::string log = testing_support::tmp_path("cli_stdout.txt");
  const std::string cmd = env + " \"" + MIMICNET_CLI + "\" " + args + " > \"" + log + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string p(const std::string& name) { return "\"" + testing_support::tmp_path("cli/" + name) + "\""; }
std::string raw(const std::string& name) { return testing_support::tmp_path("cli/" + name); }

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fs::create_directories(testing_support::tmp_path("cli"));
    ASSERT_EQ(cli("synth --sbox PRESENT --nand -o " + p("present.bench")).code, 0);
    ASSERT_EQ(cli("synth --sbox DES_S1 --nand -o " + p("des_s1.bench")).code, 0);
    ASSERT_EQ(cli("synth --sbox PRESENT -o " + p("present_sop.bench")).code, 0);
  }
};

}  // namespace

TEST_F(Cli, SynthAndLevelize) {
  auto n = mimicnet::parse_bench(slurp(raw("present.bench")));
  EXPECT_TRUE(mimicnet::structurally_equal(n, testing_support::nand("PRESENT")));
  CliRun r = cli("levelize " + p("present.bench"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("0\t4\t", 0), 0u) << r.out;
}

TEST_F(Cli, DisguiseVerifyPipeline) {
  CliRun d = cli("disguise -f " + p("present.bench") + " -a " + p("des_s1.bench") + " -o " + p("out") + " --seed 7");
  ASSERT_EQ(d.code, 0) << d.out;
  for (const char* ext : {".bench", ".cmap", ".outmap", ".inmap", ".json"}) {
    EXPECT_TRUE(fs::exists(raw(std::string("out") + ext))) << ext;
  }
  json rep = json::parse(slurp(raw("out.json")));
  EXPECT_TRUE(rep["validation"]["ok"].get<bool>());
  EXPECT_EQ(rep["parameters"]["seed"], 7);
  EXPECT_EQ(rep["matching"]["padding"], "align");

  CliRun v = cli("verify --design " + p("out") + " --against " + p("present.bench"));
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.out.rfind("PASS", 0), 0u);
  CliRun bad = cli("verify --design " + p("out") + " --against " + p("des_s1.bench"));
  EXPECT_EQ(bad.code, 1) << bad.out;

  // same command, same bytes
  const std::string first = slurp(raw("out.json"));
  ASSERT_EQ(cli("disguise -f " + p("present.bench") + " -a " + p("des_s1.bench") + " -o " + p("out") +
                " --seed 7 --jobs 4").code,
            0);
  EXPECT_EQ(slurp(raw("out.json")), first);
}

TEST_F(Cli, AttackIsReproducibleAcrossJobs) {
  const std::string base = "attack --device " + p("present_sop.bench") +
                           " --key 0x9 --model present --traces 3000 --sigma 2.0 --seed 1";
  ASSERT_EQ(cli(base + " --jobs 1 -o " + p("a1.json")).code, 0);
  ASSERT_EQ(cli(base + " --jobs 8 -o " + p("a8.json")).code, 0);
  EXPECT_EQ(slurp(raw("a1.json")), slurp(raw("a8.json")));
  json r = json::parse(slurp(raw("a1.json")));
  EXPECT_EQ(r["rank"], 1);
  EXPECT_EQ(r["rank_max"], 16);
  EXPECT_EQ(r["differential_traces"].size(), 16u);
}

TEST_F(Cli, GeCsv) {
  CliRun r = cli("ge --device " + p("present_sop.bench") +
              " --model PRESENT --traces 100,200 --experiments 4 --sigma 2 --seed 3 -o " + p("ge.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  std::string csv = slurp(raw("ge.csv"));
  EXPECT_EQ(csv.rfind("traces,ge,ge_bits,variant\n100,", 0), 0u) << csv;
}

TEST_F(Cli, ClassifyPpaReport) {
  ASSERT_EQ(cli("disguise -f " + p("present.bench") + " -a " + p("des_s1.bench") + " -o " + p("rep") + " --seed 2").code,
            0);
  fs::create_directories(raw("train/PRESENT"));
  fs::create_directories(raw("train/DES"));
  fs::create_directories(raw("train/AES"));
  fs::copy_file(raw("present.bench"), raw("train/PRESENT/present.bench"), fs::copy_options::overwrite_existing);
  fs::copy_file(raw("des_s1.bench"), raw("train/DES/des_s1.bench"), fs::copy_options::overwrite_existing);
  ASSERT_EQ(cli("synth --sbox DES_S5 --nand -o " + p("train/DES/des_s5.bench")).code, 0);
  ASSERT_EQ(cli("synth --sbox AES --nand -o " + p("train/AES/aes.bench")).code, 0);

  CliRun c = cli("classify --train " + p("train") + " --design " + p("rep") + " --as PRESENT --mimic DES -o " +
              p("cls.json"));
  ASSERT_EQ(c.code, 0) << c.out;
  json cj = json::parse(slurp(raw("cls.json")));
  EXPECT_TRUE(cj.contains("f1_mimicry"));

  ASSERT_EQ(cli("ppa --design " + p("rep") + " --against " + p("des_s1.bench") + " --seed 1 -o " + p("ppa.json")).code,
            0);
  const std::string dev = "--design " + p("rep") + " --key 0x9 --traces 2000 --sigma 2 --seed 4 --no-delta";
  ASSERT_EQ(cli("attack " + dev + " --model DES_S1 -o " + p("dec.json")).code, 0);
  ASSERT_EQ(cli("attack --device " + p("present_sop.bench") +
                " --key 0x9 --traces 2000 --sigma 2 --seed 4 --no-delta --model PRESENT -o " + p("leak.json"))
                .code,
            0);
  CliRun m = cli("report --leak " + p("leak.json") + " --deceptive " + p("dec.json") + " --classify " + p("cls.json") +
              " --ppa " + p("ppa.json") + " --disguise " + p("rep.json") + " -o " + p("report.json"));
  ASSERT_EQ(m.code, 0) << m.out;
  json rep = json::parse(slurp(raw("report.json")));
  EXPECT_TRUE(rep["dpa"].contains("score_dpa"));
  EXPECT_TRUE(rep["gnn"].contains("score_gnn"));
  EXPECT_GE(rep["overhead"]["area_ratio"].get<double>(), 1.0);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  CliRun missing = cli("disguise -f " + p("present.bench") + " -a " + p("des_s1.bench") + " -o " + p("x"));
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.out.find("--seed"), std::string::npos) << missing.out;
  EXPECT_EQ(cli("attack --device " + p("present_sop.bench") +
                " --key 1 --model PRESENT --traces 10 --seed 1 --agg median")
                .code,
            2);
  EXPECT_EQ(cli("levelize " + p("does_not_exist.bench")).code, 1);
  EXPECT_EQ(cli("synth --sbox NOPE").code, 1);

  std::ofstream(raw("bad.cost")) << "p_conn = lots\n";
  CliRun env = cli("disguise -f " + p("present.bench") + " -a " + p("des_s1.bench") + " -o " + p("y") + " --seed 1",
                "MIMICNET_COST_CONFIG=" + p("bad.cost"));
  EXPECT_EQ(env.code, 1) << env.out;
}
