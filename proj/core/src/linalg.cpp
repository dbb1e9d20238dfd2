#include "holodet/linalg.hpp"

#include <cmath>

namespace holodet {

double operator_norm2(const Matrix<ComplexFloat>& m, int iterations) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Matrix<ComplexFloat> gram = m.conjugate_transpose() * m;
  const std::size_t n = gram.rows();
  // Deterministic, non-degenerate start vector.
  std::vector<ComplexFloat> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i)};
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<ComplexFloat> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += gram(i, j) * v[j];
    }
    double norm = 0;
    for (const auto& x : w) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (auto& x : w) x /= norm;
    double next = norm;
    v = std::move(w);
    if (std::abs(next - lambda) <= 1e-15 * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

}  // namespace holodet
