#include "gterrain/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "gterrain/error.hpp"

namespace gterrain {

namespace {

// Neumaier-compensated sum in extended precision.
class CompensatedSum {
public:
  void add(long double x) noexcept {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const noexcept { return sum_ + carry_; }

private:
  long double sum_ = 0;
  long double carry_ = 0;
};

double pearson_over(std::span<const VertexId> ball, std::span<const double> a, std::span<const double> b,
                    bool& flat) {
  auto [amin, amax] = std::minmax_element(ball.begin(), ball.end(), [&](VertexId x, VertexId y) { return a[x] < a[y]; });
  auto [bmin, bmax] = std::minmax_element(ball.begin(), ball.end(), [&](VertexId x, VertexId y) { return b[x] < b[y]; });
  flat = a[*amin] == a[*amax] || b[*bmin] == b[*bmax];
  if (flat) return 0.0;

  const auto count = static_cast<long double>(ball.size());
  CompensatedSum sa, sb;
  for (VertexId u : ball) {
    sa.add(a[u]);
    sb.add(b[u]);
  }
  const long double mean_a = sa.value() / count, mean_b = sb.value() / count;
  CompensatedSum caa, cbb, cab;
  for (VertexId u : ball) {
    const long double da = a[u] - mean_a, db = b[u] - mean_b;
    caa.add(da * da);
    cbb.add(db * db);
    cab.add(da * db);
  }
  const long double cov_ab = cab.value() / count;
  const long double var_a = caa.value() / count, var_b = cbb.value() / count;
  const long double r = cov_ab / (std::sqrt(var_a) * std::sqrt(var_b));
  return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

}  // namespace

LciResult local_correlation(const Graph& graph, std::span<const double> field_a, std::span<const double> field_b,
                            int hops) {
  const std::size_t n = graph.vertex_count();
  if (field_a.size() != n || field_b.size() != n)
    throw Error(ErrorKind::size_mismatch, "correlated fields must cover every vertex");
  if (hops < 1) throw Error(ErrorKind::invalid_argument, "hops must be >= 1");

  LciResult result{std::vector<double>(n, 0.0), 0};
  std::vector<VertexId> ball;
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<VertexId> frontier, next;
  for (VertexId v = 0; v < n; ++v) {
    ball.assign(1, v);
    const std::uint32_t mark = v + 1;
    stamp[v] = mark;
    frontier.assign(1, v);
    for (int h = 0; h < hops && !frontier.empty(); ++h) {
      next.clear();
      for (VertexId x : frontier)
        for (VertexId y : graph.neighbors(x))
          if (stamp[y] != mark) {
            stamp[y] = mark;
            next.push_back(y);
            ball.push_back(y);
          }
      frontier.swap(next);
    }
    std::sort(ball.begin(), ball.end());  // fixed summation order
    bool flat = false;
    result.values[v] = pearson_over(ball, field_a, field_b, flat);
    if (flat) ++result.zero_variance;
  }
  return result;
}

double global_correlation(std::span<const double> lci) {
  if (lci.empty()) throw Error(ErrorKind::empty_graph, "global correlation of an empty graph");
  CompensatedSum sum;
  for (double x : lci) sum.add(x);
  return static_cast<double>(sum.value() / static_cast<long double>(lci.size()));
}

std::vector<double> outlier_scores(std::span<const double> lci) {
  std::vector<double> out(lci.size());
  std::transform(lci.begin(), lci.end(), out.begin(), [](double x) { return -x; });
  return out;
}

CorrelationField correlate(const Graph& graph, std::string name_a, std::span<const double> field_a,
                           std::string name_b, std::span<const double> field_b, int hops) {
  LciResult local = local_correlation(graph, field_a, field_b, hops);
  CorrelationField out;
  out.field_a = std::move(name_a);
  out.field_b = std::move(name_b);
  out.hops = hops;
  out.gci = global_correlation(local.values);
  out.outlier = outlier_scores(local.values);
  out.lci = std::move(local.values);
  out.zero_variance = local.zero_variance;
  return out;
}

}  // namespace gterrain
