#include "milnorlab/cluster.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "milnorlab/errors.hpp"

namespace milnorlab {

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<std::size_t>> single_linkage(
    const std::vector<std::vector<double>>& points, double h) {
  if (!(h > 0.0)) throw Error("single linkage requires a positive radius");
  std::size_t n = points.size();
  if (n == 0) return {};

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist(points[i], points[j]) <= h) uf.unite(i, j);

  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);

  auto point_less = [&](std::size_t a, std::size_t b) {
    if (points[a] != points[b]) return points[a] < points[b];
    return a < b;
  };

  std::vector<std::vector<std::size_t>> clusters;
  clusters.reserve(by_root.size());
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end(), point_less);
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [&](const auto& a, const auto& b) { return point_less(a.front(), b.front()); });
  return clusters;
}

double median_nn_distance(const std::vector<std::vector<double>>& points) {
  std::size_t n = points.size();
  if (n < 2) return 0.0;
  std::vector<double> nn(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) best = std::min(best, dist(points[i], points[j]));
    nn[i] = best;
  }
  std::nth_element(nn.begin(), nn.begin() + static_cast<long>(n / 2), nn.end());
  return nn[n / 2];
}

std::size_t local_dim(const std::vector<std::vector<double>>& cluster, std::size_t k,
                      double rel_threshold, double abs_floor) {
  std::size_t n = cluster.size();
  if (k < 1 || n < k + 1)
    throw ClusterTooSmall("local dimension needs at least k+1 points, k >= 1");
  std::size_t ambient = cluster[0].size();

  std::vector<std::size_t> votes;
  votes.reserve(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double da = dist(cluster[a], cluster[i]), db = dist(cluster[b], cluster[i]);
      if (da != db) return da < db;
      return a < b;  // the point itself (distance 0) sorts first
    });

    Eigen::MatrixXd nb(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(ambient));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < ambient; ++c)
        nb(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            cluster[order[r + 1]][c];
    Eigen::RowVectorXd mean = nb.colwise().mean();
    nb.rowwise() -= mean;
    Eigen::MatrixXd cov = nb.transpose() * nb / static_cast<double>(k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const auto& lambda = eig.eigenvalues();  // ascending
    double top = lambda(lambda.size() - 1);
    double cut = std::max(rel_threshold * top, abs_floor);
    std::size_t d = 0;
    for (Eigen::Index e = 0; e < lambda.size(); ++e)
      if (lambda(e) >= cut) ++d;
    votes.push_back(d);
  }

  std::map<std::size_t, std::size_t> counts;
  for (auto v : votes) ++counts[v];
  std::size_t best_dim = 0, best_count = 0;
  for (const auto& [dim, count] : counts)
    if (count > best_count) {  // map order makes ties favor the smaller dim
      best_dim = dim;
      best_count = count;
    }
  return best_dim;
}

}  // namespace milnorlab
