#include "tssb/errors.hpp"
#include "tssb/io/config.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tssb;
using namespace tssb::io;

namespace {

std::string field_of(const std::string &text) {
  try {
    (void)parse_config_text(text);
  } catch (const ConfigError &e) {
    return e.field();
  }
  return "";
}

} // namespace

TEST(Config, EmptyObjectGivesToyDefaults) {
  const RunConfig c = parse_config_text("{}");
  EXPECT_EQ(c.fit.K, 2);
  EXPECT_EQ(c.fit.D, 3);
  EXPECT_EQ(c.fit.iters, 400);
  EXPECT_EQ(c.fit.restarts, 100);
  EXPECT_EQ(c.dimension(), 2);
  const TreeShape t = c.shape();
  const Hyperparams h = c.materialize(2);
  const Hyperparams toy = Hyperparams::toy(t);
  EXPECT_EQ(h.a, toy.a);
  EXPECT_EQ(h.b, toy.b);
  EXPECT_EQ(h.nu, toy.nu);
  EXPECT_EQ(h.u, toy.u);
  EXPECT_TRUE(h.V.isApprox(toy.V, 1e-15));
  for (NodeId s = 0; s < t.node_count(); ++s)
    EXPECT_TRUE(h.W[s].isApprox(toy.W[s], 1e-15));
  for (NodeId s = 0; s < t.inner_count(); ++s)
    EXPECT_EQ(h.alpha[s], toy.alpha[s]);
  EXPECT_EQ(h.root_mean, Eigen::VectorXd::Zero(2));
}

TEST(Config, DepthScaledValues) {
  const RunConfig c = parse_config_text(
      R"({"K": 3, "D": 2, "a": {"base": 100, "depth_factor": 0.1}})");
  const TreeShape t = c.shape();
  const Hyperparams h = c.materialize(2);
  for (NodeId s = 0; s < t.inner_count(); ++s)
    EXPECT_NEAR(h.a[s], 100.0 * std::pow(0.1, t.node_depth(s)), 1e-12);
}

TEST(Config, FullMatricesAndVectors) {
  const RunConfig c = parse_config_text(
      R"({"V": [[2, 0.5], [0.5, 1]], "root_mean": [1, -1], "alpha": [1, 2]})");
  EXPECT_EQ(c.dimension(), 2);
  const Hyperparams h = c.materialize(2);
  EXPECT_EQ(h.V(0, 1), 0.5);
  EXPECT_EQ(h.root_mean(1), -1.0);
  EXPECT_EQ(h.alpha[0](1), 2.0);
}

TEST(Config, ViolationsNameTheField) {
  EXPECT_EQ(field_of(R"({"nu": 1, "p": 2})"), "nu");
  EXPECT_EQ(field_of(R"({"K": 1})"), "K");
  EXPECT_EQ(field_of(R"({"restarts": 0})"), "restarts");
  EXPECT_EQ(field_of(R"({"bogus": 1})"), "bogus");
  EXPECT_EQ(field_of(R"({"a": -1})"), "a");
  EXPECT_EQ(field_of(R"({"V": [[1, 2], [0, 1]]})"), "V");
  EXPECT_EQ(field_of(R"({"W": [[1, 2], [2, 1]]})"), "W");
  EXPECT_EQ(field_of(R"({"alpha": [1, 2, 3]})"), "alpha");
  EXPECT_EQ(field_of(R"({"p": 3, "root_mean": [0, 0]})"), "root_mean");
  EXPECT_EQ(field_of(R"({"generator": "x"})"), "generator");
  EXPECT_EQ(field_of("[1]"), "<document>");
  EXPECT_EQ(field_of("{"), "<document>");
}

TEST(Config, MissingFile) {
  EXPECT_THROW((void)parse_config("/nonexistent/tssb.json"), IoError);
}
