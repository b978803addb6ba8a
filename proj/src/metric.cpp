#include "splitspan/metric.hpp"

#include <set>

#include "splitspan/error.hpp"

namespace splitspan {

std::optional<std::size_t> FiniteMetric::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

FiniteMetric validate_metric(const RatMatrix& matrix, std::vector<std::string> labels) {
  const std::size_t n = matrix.size();
  if (labels.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "label count " + std::to_string(labels.size()) +
                                                " does not match matrix side " + std::to_string(n));
  }
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "a metric space needs at least two points");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != n) {
    throw Error(ErrorCode::InvalidArgument, "point labels must be distinct");
  }

  const auto name = [&](std::size_t i) { return labels[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (!matrix(i, i).is_zero()) {
      throw Error(ErrorCode::InvalidArgument, "non-zero diagonal entry at " + name(i), {i, i});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix(i, j).sign() < 0) {
        throw Error(ErrorCode::NegativeEntry,
                    "negative distance between " + name(i) + " and " + name(j), {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix(i, j) != matrix(j, i)) {
        throw Error(ErrorCode::NotSymmetric,
                    "d(" + name(i) + "," + name(j) + ") != d(" + name(j) + "," + name(i) + ")",
                    {i, j});
      }
      if (matrix(i, j).is_zero()) {
        throw Error(ErrorCode::ZeroOffDiagonal,
                    "zero distance between distinct points " + name(i) + " and " + name(j), {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (matrix(i, j) > matrix(i, k) + matrix(k, j)) {
          throw Error(ErrorCode::TriangleViolation,
                      "triangle inequality fails: d(" + name(i) + "," + name(j) + ") = " +
                          matrix(i, j).str() + " > d(" + name(i) + "," + name(k) + ") + d(" +
                          name(k) + "," + name(j) + ")",
                      {i, j, k});
        }
      }
    }
  }

  FiniteMetric m;
  m.labels_ = std::move(labels);
  m.dist_ = matrix;
  return m;
}

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace splitspan
