#include "holodet/blockdet.hpp"

namespace holodet {

long long integral_coefficient(const std::vector<int>& n, const CycleMultiset& c, const std::vector<int>& valuations) {
  long long num = 1;
  for (int na : n) num *= factorial(na);
  long long den = c.factorial();
  for (const auto& [i, m] : c.entries) {
    for (int k = 0; k < m; ++k) den *= valuations[static_cast<std::size_t>(i)];
  }
  if (num % den != 0) {
    throw InvariantError("non-integral coefficient " + std::to_string(num) + "/" + std::to_string(den) +
                         " in the integer-coefficient expansion");
  }
  return num / den;
}

std::vector<std::vector<MultiPoly>> shifted_powers(const std::vector<MultiPoly>& z, const std::vector<int>& n,
                                                   const std::vector<std::size_t>& t_indices) {
  std::vector<std::vector<MultiPoly>> out;
  for (std::size_t b = 0; b < n.size(); ++b) {
    std::vector<MultiPoly> zp{MultiPoly(GaussianRational(1))};
    for (int k = 1; k <= n[b]; ++k) zp.push_back(zp.back() * z[b]);
    std::vector<MultiPoly> row;
    for (int m = 0; m <= n[b]; ++m) {
      MultiPoly sum;
      for (int k = 0; k <= m; ++k) {
        MultiPoly tk = MultiPoly::variable(t_indices[b], static_cast<std::uint16_t>(k));
        sum += (tk * zp[static_cast<std::size_t>(m - k)]).scaled(GaussianRational(binomial(m, k)));
      }
      row.push_back(std::move(sum));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace holodet
