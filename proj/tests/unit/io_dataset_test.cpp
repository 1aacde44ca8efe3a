#include "tssb/errors.hpp"
#include "tssb/io/dataset.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace tssb;
using namespace tssb::io;

namespace {

std::size_t line_of(const std::string &text) {
  try {
    (void)parse_csv_dataset(text);
  } catch (const ParseError &e) {
    return e.line();
  }
  return 0;
}

} // namespace

TEST(CsvDataset, PlainNumbers) {
  const Dataset d = parse_csv_dataset("1,2\n3.5,-4e-3\n\n5,6\n");
  ASSERT_EQ(d.n(), 3u);
  ASSERT_EQ(d.p(), 2);
  EXPECT_EQ(d.values(1, 1), -4e-3);
  EXPECT_EQ(d.values(2, 0), 5.0);
  EXPECT_FALSE(d.labels.has_value());
}

TEST(CsvDataset, HeaderAndLabels) {
  const Dataset d = parse_csv_dataset("\xEF\xBB\xBFx,y,label\n1,2,0\n3,4,6\n");
  ASSERT_EQ(d.p(), 2);
  ASSERT_TRUE(d.labels.has_value());
  EXPECT_EQ(*d.labels, (std::vector<long>{0, 6}));
  const Dataset plain = parse_csv_dataset("x,y\r\n1,2\r\n");
  EXPECT_EQ(plain.p(), 2);
  EXPECT_FALSE(plain.labels.has_value());
}

TEST(CsvDataset, ErrorsCarryTheLine) {
  EXPECT_EQ(line_of("1,2\n3\n"), 2u);
  EXPECT_EQ(line_of("x,y\n1,2\n3,abc\n"), 3u);
  EXPECT_EQ(line_of("1,2\nnan,1\n"), 2u);
  EXPECT_EQ(line_of("1,inf\n"), 1u);
  EXPECT_NE(line_of("x,y\n"), 0u);
  EXPECT_NE(line_of(""), 0u);
  EXPECT_EQ(line_of("x,label\n1,0.5\n"), 2u);
}

TEST(CsvDataset, RoundTripIsLossless) {
  Dataset d;
  d.values.resize(3, 2);
  d.values << 0.1, 1.0 / 3.0, -1e-300, 12345.678901234567, 2.0, -0.0;
  d.labels = std::vector<long>{1, 2, 3};
  const Dataset back = parse_csv_dataset(format_csv_dataset(d));
  EXPECT_EQ(back.values, d.values);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(format_csv_dataset(back), format_csv_dataset(d));
}

TEST(CsvDataset, FileIo) {
  const auto dir = std::filesystem::temp_directory_path() / "tssb_csv_test";
  std::filesystem::create_directories(dir);
  Dataset d;
  d.values = Eigen::MatrixXd::Identity(2, 2);
  write_csv_dataset(d, dir / "a.csv");
  EXPECT_EQ(read_csv_dataset(dir / "a.csv").values, d.values);
  EXPECT_THROW((void)read_csv_dataset(dir / "missing.csv"), IoError);
  std::filesystem::remove_all(dir);
}
