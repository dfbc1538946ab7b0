#include "difem/vtk.hpp"

#include <fstream>
#include <stdexcept>

namespace difem {

void write_vtk(const std::string& path, const TetMesh& mesh,
               const std::vector<std::pair<std::string, const ScalarField*>>& scalars,
               const std::vector<std::pair<std::string, const VectorField*>>& vectors) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_vtk: cannot open " + path);
  out.precision(12);
  out << "# vtk DataFile Version 3.0\n"
      << "difem mesh\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertex_count() << " double\n";
  for (const Vec3& v : mesh.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
  out << "CELLS " << mesh.tet_count() << ' ' << 5 * mesh.tet_count() << '\n';
  for (const auto& t : mesh.tets)
    out << "4 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << t.v[3] << '\n';
  out << "CELL_TYPES " << mesh.tet_count() << '\n';
  for (std::size_t i = 0; i < mesh.tet_count(); ++i) out << "10\n";

  if (!scalars.empty() || !vectors.empty()) {
    out << "POINT_DATA " << mesh.vertex_count() << '\n';
    for (const auto& [name, f] : scalars) {
      if (f->values.size() != mesh.vertex_count())
        throw std::invalid_argument("write_vtk: field size mismatch for " + name);
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : f->values) out << v << '\n';
    }
    for (const auto& [name, f] : vectors) {
      if (f->values.size() != mesh.vertex_count())
        throw std::invalid_argument("write_vtk: field size mismatch for " + name);
      out << "VECTORS " << name << " double\n";
      for (const Vec3& v : f->values) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
    }
  }
  if (!out) throw std::runtime_error("write_vtk: write failure on " + path);
}

}  // namespace difem
