#pragma once

#include "difem/fields.hpp"

#include <string>
#include <utility>
#include <vector>

namespace difem {

// Legacy ASCII VTK unstructured-grid dump of a tet mesh with optional nodal
// point data; meant for quick inspection in ParaView.
void write_vtk(const std::string& path, const TetMesh& mesh,
               const std::vector<std::pair<std::string, const ScalarField*>>& scalars = {},
               const std::vector<std::pair<std::string, const VectorField*>>& vectors = {});

}  // namespace difem
