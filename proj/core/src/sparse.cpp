#include "dgelast/sparse.hpp"

#include <algorithm>

#include "dgelast/errors.hpp"

namespace dgelast {

void SparseSystem::multiply(std::span<const double> x, std::span<double> y) const {
  for (int row = 0; row < n_dof; ++row) {
    double acc = 0.0;
    for (std::int64_t k = row_offsets[row]; k < row_offsets[row + 1]; ++k) acc += vals[k] * x[cols[k]];
    y[row] = acc;
  }
}

std::vector<double> SparseSystem::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_dof, 0.0);
  multiply(x, y);
  return y;
}

double SparseSystem::coeff(int row, int col) const {
  const auto begin = cols.begin() + row_offsets[row];
  const auto end = cols.begin() + row_offsets[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) return 0.0;
  return vals[it - cols.begin()];
}

double& SparseSystem::coeff_ref(int row, int col) {
  const auto begin = cols.begin() + row_offsets[row];
  const auto end = cols.begin() + row_offsets[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col)
    throw ContractError("SparseSystem: entry (" + std::to_string(row) + "," + std::to_string(col) +
                        ") outside the stored pattern");
  return vals[it - cols.begin()];
}

} // namespace dgelast
