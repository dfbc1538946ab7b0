#pragma once

#include "difem/tet_mesh.hpp"
#include "difem/vec3.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace difem {

// Symmetric sparse operator with one 3x3 block per vertex pair (component-
// blocked unknowns: [v0x v0y v0z v1x ...]) plus the right-hand side.
class SparseSystem {
 public:
  // Sparsity from the vertex adjacency of the mesh (including diagonal).
  explicit SparseSystem(const TetMesh& mesh);

  std::size_t block_rows() const { return row_ptr_.size() - 1; }
  std::size_t size() const { return 3 * block_rows(); }
  std::size_t nonzero_blocks() const { return col_.size(); }

  void add_block(int32_t i, int32_t j, const Mat3& m);
  const Mat3* find_block(int32_t i, int32_t j) const;

  std::vector<double>& rhs() { return rhs_; }
  const std::vector<double>& rhs() const { return rhs_; }

  void matvec(const std::vector<double>& x, std::vector<double>& y) const;

  // max |A_ij - A_ji| over stored entries, relative to the largest entry.
  double symmetry_error() const;

  // 3x3 inverses of the diagonal blocks (block-Jacobi preconditioner).
  std::vector<Mat3> diagonal_block_inverses() const;

  // MatrixMarket coordinate dumps for debugging.
  void write_matrix_market(const std::string& path) const;
  void write_rhs_market(const std::string& path) const;

 private:
  std::vector<int32_t> row_ptr_;
  std::vector<int32_t> col_;  // sorted within each row
  std::vector<Mat3> blocks_;
  std::vector<double> rhs_;
};

}  // namespace difem
