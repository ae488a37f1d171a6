#include "config.hpp"
#include "experiment.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

using namespace ultradist;
using ultradist::cli::ConfigError;
using ultradist::cli::ConfigFile;
using namespace ultradist::cli;

namespace {
std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}
}  // namespace

TEST(Config, SectionsCommentsAndTypes) {
  ConfigFile c = ConfigFile::parse("name = demo\n# comment\n[grid]\npoints = 201 ; trailing\nwidths = 1, 2.5\n"
                                   "[flags]\non = true\n",
                                   "t.cfg");
  EXPECT_EQ(c.get_string("", "name", ""), "demo");
  EXPECT_EQ(c.get_size("grid", "points", 0), 201u);
  EXPECT_EQ(c.get_doubles("grid", "widths", {}), (std::vector<double>{1.0, 2.5}));
  EXPECT_TRUE(c.get_bool("flags", "on", false));
  EXPECT_EQ(c.get_double("grid", "missing", 7.5), 7.5);
  EXPECT_NO_THROW(c.reject_unused());
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_NE(error_of([] { ConfigFile::parse("[a]\nno equals sign\n", "t.cfg"); }).find("t.cfg:2"), std::string::npos);
  EXPECT_NE(error_of([] { ConfigFile::parse("[a]\nk = 1\nk = 2\n", "t.cfg"); }).find("t.cfg:3"), std::string::npos);
  EXPECT_NE(error_of([] { ConfigFile::parse("[broken\n", "t.cfg"); }).find("t.cfg:1"), std::string::npos);
  EXPECT_NE(error_of([] {
              ConfigFile c = ConfigFile::parse("[g]\n\npoints = many\n", "t.cfg");
              c.get_size("g", "points", 1);
            }).find("t.cfg:3"),
            std::string::npos);
}

TEST(Config, UnknownKeysAreRejected) {
  ConfigFile c = ConfigFile::parse("[g]\npoints = 3\ntypo = 4\n", "t.cfg");
  c.get_size("g", "points", 1);
  const std::string msg = error_of([&] { c.reject_unused(); });
  EXPECT_NE(msg.find("t.cfg:3"), std::string::npos);
  EXPECT_NE(msg.find("typo"), std::string::npos);
}

TEST(Experiment, LoadsConfigAndSeedOverride) {
  const std::string path = write_temp("ultradist_cfg_ok.cfg",
                                      "name = probe\n[weights]\ngevrey = 2\n[integrability]\ndistribution = delta\n"
                                      "n0 = 10\n[corpus]\nseed = 5\n");
  const Experiment e = load_experiment(path, std::nullopt);
  EXPECT_EQ(e.name, "probe");
  EXPECT_EQ(e.harness.n0, 10u);
  EXPECT_EQ(e.harness.seed, 5u);
  EXPECT_EQ(load_experiment(path, 99).harness.seed, 99u);
}

TEST(Experiment, BadValuesAreConfigErrors) {
  const std::string path = write_temp("ultradist_cfg_bad.cfg", "[integrability]\ndistribution = delta\n\n[grid]\npoints = 1\n");
  const std::string msg = error_of([&] { load_experiment(path, std::nullopt); });
  EXPECT_NE(msg.find(":5"), std::string::npos) << msg;
}

TEST(Experiment, SpecParsers) {
  EXPECT_EQ(parse_rseq_spec("linear:3", 5)[2], 6.0);
  EXPECT_EQ(parse_rseq_spec("list:1,2,3", 2)[2], 3.0);
  EXPECT_TRUE(parse_weights_spec("gevrey:2", 10).is_exact());
  EXPECT_EQ(parse_distribution_spec("delta_prime").atoms().at(0).order, 1u);
  EXPECT_EQ(parse_distribution_spec("exploding:4").densities().size(), 4u);
  EXPECT_THROW(parse_rseq_spec("cubic:2", 5), std::invalid_argument);
}
