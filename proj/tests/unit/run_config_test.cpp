#include <gtest/gtest.h>

#include <fstream>

#include "dqtsc/errors.hpp"
#include "dqtsc/run_config.hpp"
#include "temp_dir.hpp"

using namespace dqtsc;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_run_config(text).validate();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(RunConfig, DefaultsFromEmptyObject) {
  const RunConfig c = parse_run_config("{}");
  EXPECT_EQ(c.agent, AgentKind::Dqtsca);
  EXPECT_EQ(c.train.epochs, 1600);
  EXPECT_EQ(c.train.gamma, 0.95);
  EXPECT_EQ(c.train.batch_size, 16u);
  EXPECT_EQ(c.train.max_size, 500000u);
  EXPECT_EQ(c.train.min_size, 50000u);
  EXPECT_EQ(c.train.sim_len, 4500);
  EXPECT_EQ(c.train.exp_refill, 200);
  EXPECT_EQ(c.sim.v_max, 13.89);
  EXPECT_NO_THROW(c.validate());
}

TEST(RunConfig, ParsesKeys) {
  const RunConfig c = parse_run_config(R"({"agent": "stsca", "epochs": 5, "gamma": 0.5,
      "workers": 3, "out_dir": "x/y", "record_wall_time": false, "left_flow": 110})");
  EXPECT_EQ(c.agent, AgentKind::Stsca);
  EXPECT_EQ(c.train.epochs, 5);
  EXPECT_EQ(c.train.gamma, 0.5);
  EXPECT_EQ(c.train.workers, 3);
  EXPECT_EQ(c.out_dir, "x/y");
  EXPECT_FALSE(c.train.record_wall_time);
  EXPECT_EQ(c.left_flow, 110.0);
}

TEST(RunConfig, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"gamma": 1.5})"), "gamma");
  EXPECT_EQ(field_of(R"({"gammma": 0.9})"), "gammma");
  EXPECT_EQ(field_of(R"({"epochs": "ten"})"), "epochs");
  EXPECT_EQ(field_of(R"({"epochs": 1.5})"), "epochs");
  EXPECT_EQ(field_of(R"({"max_size": -4})"), "max_size");
  EXPECT_EQ(field_of(R"({"agent": "sarsa"})"), "agent");
  EXPECT_EQ(field_of(R"({"record_wall_time": 1})"), "record_wall_time");
  EXPECT_EQ(field_of(R"({"through_flow": 2000})"), "through_flow");
  EXPECT_EQ(field_of(R"({"dt": 0.5})"), "dt");
  EXPECT_EQ(field_of("[1, 2]"), "config");
  EXPECT_EQ(field_of("{not json"), "config");
}

TEST(RunConfig, DumpParseRoundTrip) {
  RunConfig c;
  c.agent = AgentKind::Stsca;
  c.train.seed = 99;
  c.train.gamma = 0.8;
  c.train.rmsprop.learning_rate = 1e-4;
  c.sim.min_gap = 2.0;
  c.right_flow = 120;
  const std::string text = dump_run_config(c);
  const RunConfig back = parse_run_config(text);
  EXPECT_EQ(dump_run_config(back), text);
  EXPECT_EQ(back.train.seed, 99u);
  EXPECT_EQ(back.train.rmsprop.learning_rate, 1e-4);
}

TEST(RunConfig, LoadFromFile) {
  testing_support::TempDir dir;
  {
    std::ofstream out(dir / "c.json");
    out << R"({"seed": 4})";
  }
  EXPECT_EQ(load_run_config(dir / "c.json").train.seed, 4u);
  try {
    load_run_config(dir / "missing.json");
    ADD_FAILURE();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "config");
  }
}
