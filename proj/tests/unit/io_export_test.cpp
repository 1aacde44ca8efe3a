#include "tssb/generative.hpp"
#include "tssb/io/export.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

using namespace tssb;

namespace {

FitResult fit_toy(int D, std::size_t n) {
  FitConfig c;
  c.K = 2;
  c.D = D;
  c.iters = 60;
  c.restarts = 3;
  c.seed = 5;
  return fit(sample_toy_dataset(n, 21).points,
             Hyperparams::toy(TreeShape(2, D)), c);
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

} // namespace

TEST(DotExport, SmallTreeStructure) {
  const FitResult r = fit_toy(1, 30);
  const std::string dot = io::format_dot(r);
  const std::regex node_stmt(R"(^\s*n(\d+) \[label=\"[^\"]*\"(, style=dashed)?\];$)");
  const std::regex edge_stmt(R"(^\s*n(\d+) -> n(\d+);$)");
  const auto ls = lines(dot);
  ASSERT_GE(ls.size(), 2u);
  EXPECT_EQ(ls.front(), "digraph tssb {");
  EXPECT_EQ(ls.back(), "}");
  int nodes = 0, edges = 0;
  for (std::size_t k = 1; k + 1 < ls.size(); ++k) {
    std::smatch m;
    if (std::regex_match(ls[k], m, edge_stmt)) {
      ++edges;
      EXPECT_EQ(m[1].str(), "0");
    } else if (std::regex_match(ls[k], m, node_stmt)) {
      ++nodes;
    } else {
      EXPECT_EQ(ls[k], "  node [shape=box];");
    }
  }
  EXPECT_EQ(nodes, 3);
  EXPECT_EQ(edges, 2);
}

TEST(DotExport, DashedBelowMassThreshold) {
  const FitResult r = fit_toy(1, 30);
  const std::string all_dashed = io::format_dot(r, 1e9);
  const std::string plain = io::format_dot(r);
  EXPECT_EQ(lines(all_dashed).size(), lines(plain).size());
  std::size_t count = 0;
  for (std::size_t pos = 0;
       (pos = all_dashed.find("style=dashed", pos)) != std::string::npos; ++pos)
    ++count;
  EXPECT_EQ(count, 3u);
  EXPECT_EQ(io::format_dot(r, 0.0).find("dashed"), std::string::npos);
}

TEST(DotExport, RootLabelNearDataMean) {
  const GeneratedData d = sample_toy_dataset(200, 21);
  const FitResult r = fit_toy(3, 200);
  const Eigen::VectorXd mean = d.points.colwise().mean().transpose();
  const std::string dot = io::format_dot(r);
  const std::regex root(R"(n0 \[label=\"0\\nm=\(([-0-9.e+]+), ([-0-9.e+]+)\))");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(dot, m, root)) << dot.substr(0, 200);
  EXPECT_NEAR(std::stod(m[1].str()), mean(0), 1.0);
  EXPECT_NEAR(std::stod(m[2].str()), mean(1), 1.0);
}

TEST(Assignments, OneRowPerPoint) {
  const FitResult r = fit_toy(3, 200);
  const auto ls = lines(io::format_assignments(r));
  ASSERT_EQ(ls.size(), 201u);
  EXPECT_EQ(ls[0], "row,map_node,map_prob,depth");
  const std::regex row(R"(^(\d+),(\d+),([0-9.e+-]+),(\d+)$)");
  for (std::size_t k = 1; k < ls.size(); ++k) {
    std::smatch m;
    ASSERT_TRUE(std::regex_match(ls[k], m, row)) << ls[k];
    EXPECT_EQ(std::stoul(m[1].str()), k - 1);
    const auto node = static_cast<NodeId>(std::stoul(m[2].str()));
    EXPECT_EQ(node, r.map_nodes[k - 1]);
    EXPECT_EQ(std::stoi(m[4].str()), r.shape.node_depth(node));
    const double p = std::stod(m[3].str());
    EXPECT_GT(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}
