#include "tssb/metrics.hpp"

#include "tssb/errors.hpp"

#include <map>
#include <utility>

namespace tssb {

namespace {

double pairs(double count) { return 0.5 * count * (count - 1.0); }

} // namespace

double adjusted_rand_index(const std::vector<long> &a,
                           const std::vector<long> &b) {
  if (a.size() != b.size())
    throw DomainError("labelings have different lengths");
  if (a.size() < 2)
    throw DomainError("adjusted Rand index needs at least two items");

  std::map<std::pair<long, long>, double> joint;
  std::map<long, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto &[key, c] : joint)
    index += pairs(c);
  for (const auto &[key, c] : rows)
    sum_rows += pairs(c);
  for (const auto &[key, c] : cols)
    sum_cols += pairs(c);

  const double expected = sum_rows * sum_cols / pairs(double(a.size()));
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected)
    return 1.0;
  return (index - expected) / (maximum - expected);
}

} // namespace tssb
