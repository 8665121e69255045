#ifndef DGELAST_SPARSE_HPP
#define DGELAST_SPARSE_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace dgelast {

/// Compressed-row matrix plus right-hand side. Column indices are strictly
/// increasing within each row. block_size records the contiguous dof block
/// per element (2 * n_local for assembled systems, 1 otherwise) and drives
/// the block-Jacobi preconditioner.
struct SparseSystem {
  int n_dof = 0;
  int block_size = 1;
  std::vector<std::int64_t> row_offsets; // size n_dof + 1
  std::vector<int> cols;
  std::vector<double> vals;
  std::vector<double> rhs;

  std::int64_t nnz() const { return static_cast<std::int64_t>(vals.size()); }

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(const std::vector<double>& x) const;

  /// Stored value at (row, col); 0 when the entry is not in the pattern.
  double coeff(int row, int col) const;

  /// Reference to a stored entry; throws ContractError if (row, col) is
  /// outside the pattern.
  double& coeff_ref(int row, int col);
};

} // namespace dgelast

#endif
