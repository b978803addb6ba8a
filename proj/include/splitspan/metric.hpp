#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splitspan/rational.hpp"

namespace splitspan {

/// Dense square matrix stored row-major.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n, fill) {}

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RatMatrix = SquareMatrix<Rat>;

/// A finite metric space (X, d) with exact rational distances.
///
/// Instances are only produced by validate_metric (or by code that derives
/// them from an already valid metric), so holders may rely on the axioms:
/// zero diagonal, positive symmetric off-diagonal, triangle inequality.
class FiniteMetric {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] std::optional<std::size_t> index_of(const std::string& label) const;

  [[nodiscard]] const Rat& operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  [[nodiscard]] const RatMatrix& matrix() const noexcept { return dist_; }

  friend bool operator==(const FiniteMetric&, const FiniteMetric&) = default;

 private:
  friend FiniteMetric validate_metric(const RatMatrix& matrix, std::vector<std::string> labels);

  std::vector<std::string> labels_;
  RatMatrix dist_;
};

/// Checks the metric axioms and returns the validated space.
///
/// Throws Error with code NotSymmetric (witness i, j), NegativeEntry (i, j),
/// ZeroOffDiagonal (i, j) or TriangleViolation (i, j, k) where
/// d(i, j) > d(i, k) + d(k, j). A non-zero diagonal, a label/side mismatch or
/// duplicate labels raise InvalidArgument.
FiniteMetric validate_metric(const RatMatrix& matrix, std::vector<std::string> labels);

/// Default labels "1", "2", ..., "n".
std::vector<std::string> numbered_labels(std::size_t n);

}  // namespace splitspan
