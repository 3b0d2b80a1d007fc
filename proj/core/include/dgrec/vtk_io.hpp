#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dgrec/mesh.hpp"
#include "dgrec/space.hpp"

namespace dgrec {

// Legacy ASCII VTK unstructured grid with shared points, triangle cells and
// an integer subdomain cell field.  Optional extra per-element scalar fields.
void write_mesh_vtk(const std::string& path, const Triangulation& mesh,
                    const std::vector<std::pair<std::string, Eigen::VectorXd>>&
                        cell_fields = {});

// Reads the subset written by write_mesh_vtk (points, triangle cells,
// subdomain tags) and rebuilds the connectivity.  Throws std::runtime_error
// on malformed input.
Triangulation read_mesh_vtk(const std::string& path);

// Solution export that preserves interelement discontinuities: every triangle
// gets its own three corner points, POINT_DATA carries the one-sided corner
// traces.  The subdomain tag and any extra per-element scalars go to
// CELL_DATA.
void write_solution_vtk(const std::string& path, const DgSolution& uh,
                        const std::vector<std::pair<std::string, Eigen::VectorXd>>&
                            cell_fields = {});

}  // namespace dgrec
