#include <Eigen/Dense>
#include <cmath>

#include "namesound/error.hpp"
#include "namesound/eval.hpp"

namespace namesound::eval {

PcaResult pca_2d(std::span<const Name> names, std::span<const std::vector<double>> rows) {
  if (rows.size() < 2) throw Error(ErrorKind::TooFew, "PCA needs at least two embeddings");
  if (names.size() != rows.size()) throw Error(ErrorKind::DimensionMismatch, "one name per row required");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(r.size()) != d) {
      throw Error(ErrorKind::DimensionMismatch, "row '" + names[static_cast<std::size_t>(i)].normalized() +
                                                    "' has dim " + std::to_string(r.size()));
    }
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = r[static_cast<std::size_t>(j)];
  }
  x.rowwise() -= x.colwise().mean();
  const double dof = static_cast<double>(n - 1);

  // Eigenvalues come back ascending; the top two are at the end.
  Eigen::MatrixXd components(d, 2);
  Eigen::Vector2d variance;
  if (n <= d) {
    const Eigen::MatrixXd gram = x * x.transpose() / dof;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    for (int c = 0; c < 2; ++c) {
      const Eigen::Index col = n - 1 - c;
      variance(c) = col >= 0 ? solver.eigenvalues()(col) : 0.0;
      components.col(c) = col >= 0 ? Eigen::VectorXd(x.transpose() * solver.eigenvectors().col(col))
                                   : Eigen::VectorXd::Zero(d);
    }
  } else {
    const Eigen::MatrixXd cov = x.transpose() * x / dof;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    for (int c = 0; c < 2; ++c) {
      const Eigen::Index col = d - 1 - c;
      variance(c) = col >= 0 ? solver.eigenvalues()(col) : 0.0;
      components.col(c) = col >= 0 ? Eigen::VectorXd(solver.eigenvectors().col(col)) : Eigen::VectorXd::Zero(d);
    }
  }

  const double scale = std::max(variance(0), 0.0);
  for (int c = 0; c < 2; ++c) {
    const double norm = components.col(c).norm();
    if (variance(c) <= 1e-12 * scale || scale == 0.0 || norm == 0.0) {
      components.col(c).setZero();
      variance(c) = std::max(variance(c), 0.0);
      continue;
    }
    components.col(c) /= norm;
    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < d; ++j) {
      if (std::abs(components(j, c)) > std::abs(components(arg, c))) arg = j;
    }
    if (components(arg, c) < 0.0) components.col(c) = -components.col(c);
  }

  const Eigen::MatrixXd projected = x * components;
  PcaResult result;
  result.variance = {variance(0), variance(1)};
  result.points.reserve(rows.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    result.points.push_back({names[static_cast<std::size_t>(i)], projected(i, 0), projected(i, 1)});
  }
  return result;
}

PcaResult pca_2d(std::span<const embed::Embedding> embeddings) {
  std::vector<Name> names;
  std::vector<std::vector<double>> rows;
  names.reserve(embeddings.size());
  rows.reserve(embeddings.size());
  for (const auto& e : embeddings) {
    names.push_back(e.name());
    rows.push_back(e.vector());
  }
  return pca_2d(names, rows);
}

}  // namespace namesound::eval
