#include "difem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace difem {

SparseSystem::SparseSystem(const TetMesh& mesh) {
  const std::size_t nv = mesh.vertex_count();
  // collect vertex pairs per row, then dedupe
  std::vector<std::vector<int32_t>> adj(nv);
  for (const auto& tet : mesh.tets)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) adj[tet.v[a]].push_back(tet.v[b]);

  row_ptr_.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    auto& row = adj[v];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    row_ptr_[v + 1] = row_ptr_[v] + static_cast<int32_t>(row.size());
  }
  col_.reserve(row_ptr_[nv]);
  for (std::size_t v = 0; v < nv; ++v) {
    col_.insert(col_.end(), adj[v].begin(), adj[v].end());
    adj[v].clear();
    adj[v].shrink_to_fit();
  }
  blocks_.assign(col_.size(), Mat3{});
  rhs_.assign(3 * nv, 0.0);
}

void SparseSystem::add_block(int32_t i, int32_t j, const Mat3& m) {
  const auto begin = col_.begin() + row_ptr_[i];
  const auto end = col_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j)
    throw std::invalid_argument("SparseSystem::add_block: entry outside sparsity pattern");
  Mat3& dst = blocks_[it - col_.begin()];
  for (int k = 0; k < 9; ++k) dst.a[k] += m.a[k];
}

const Mat3* SparseSystem::find_block(int32_t i, int32_t j) const {
  const auto begin = col_.begin() + row_ptr_[i];
  const auto end = col_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return nullptr;
  return &blocks_[it - col_.begin()];
}

void SparseSystem::matvec(const std::vector<double>& x, std::vector<double>& y) const {
  const std::size_t nb = block_rows();
  y.assign(3 * nb, 0.0);
  for (std::size_t i = 0; i < nb; ++i) {
    double y0 = 0.0, y1 = 0.0, y2 = 0.0;
    for (int32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const double* b = blocks_[k].a.data();
      const double* xj = &x[3 * col_[k]];
      y0 += b[0] * xj[0] + b[1] * xj[1] + b[2] * xj[2];
      y1 += b[3] * xj[0] + b[4] * xj[1] + b[5] * xj[2];
      y2 += b[6] * xj[0] + b[7] * xj[1] + b[8] * xj[2];
    }
    y[3 * i] = y0;
    y[3 * i + 1] = y1;
    y[3 * i + 2] = y2;
  }
}

double SparseSystem::symmetry_error() const {
  double max_entry = 0.0, max_diff = 0.0;
  for (std::size_t i = 0; i < block_rows(); ++i)
    for (int32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const int32_t j = col_[k];
      const Mat3& a = blocks_[k];
      const Mat3* bt = find_block(j, static_cast<int32_t>(i));
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          max_entry = std::max(max_entry, std::abs(a(r, c)));
          const double other = bt ? (*bt)(c, r) : 0.0;
          max_diff = std::max(max_diff, std::abs(a(r, c) - other));
        }
    }
  return max_entry > 0.0 ? max_diff / max_entry : 0.0;
}

std::vector<Mat3> SparseSystem::diagonal_block_inverses() const {
  std::vector<Mat3> inv(block_rows());
  for (std::size_t i = 0; i < block_rows(); ++i) {
    const Mat3* d = find_block(static_cast<int32_t>(i), static_cast<int32_t>(i));
    if (!d) throw std::runtime_error("SparseSystem: missing diagonal block");
    const Mat3& m = *d;
    const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    if (std::abs(det) < 1e-300) throw std::runtime_error("SparseSystem: singular diagonal block");
    const double id = 1.0 / det;
    Mat3& o = inv[i];
    o(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) * id;
    o(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) * id;
    o(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) * id;
    o(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) * id;
    o(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) * id;
    o(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) * id;
    o(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) * id;
    o(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) * id;
    o(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) * id;
  }
  return inv;
}

void SparseSystem::write_matrix_market(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  std::size_t nnz = 0;
  for (const auto& b : blocks_)
    for (double v : b.a)
      if (v != 0.0) ++nnz;
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << size() << ' ' << size() << ' ' << nnz << '\n';
  char buf[64];
  for (std::size_t i = 0; i < block_rows(); ++i)
    for (int32_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          const double v = blocks_[k](r, c);
          if (v == 0.0) continue;
          std::snprintf(buf, sizeof buf, "%zu %d %.16e\n", 3 * i + r + 1,
                        3 * col_[k] + c + 1, v);
          out << buf;
        }
}

void SparseSystem::write_rhs_market(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "%%MatrixMarket matrix array real general\n";
  out << rhs_.size() << " 1\n";
  char buf[32];
  for (double v : rhs_) {
    std::snprintf(buf, sizeof buf, "%.16e\n", v);
    out << buf;
  }
}

}  // namespace difem
