#include "dgrec/vtk_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dgrec {

namespace {

void write_header(std::ostream& os, const std::string& title) {
  os << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
}

void write_cell_scalars(std::ostream& os,
                        const std::vector<std::pair<std::string, Eigen::VectorXd>>& fields) {
  for (const auto& [name, values] : fields) {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g\n", values[i]);
      os << buf;
    }
  }
}

}  // namespace

void write_mesh_vtk(const std::string& path, const Triangulation& mesh,
                    const std::vector<std::pair<std::string, Eigen::VectorXd>>& cell_fields) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_mesh_vtk: cannot open " + path);
  write_header(os, "mesh");
  os << "POINTS " << mesh.num_vertices() << " double\n";
  char buf[96];
  for (const auto& p : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g 0\n", p.x(), p.y());
    os << buf;
  }
  os << "CELLS " << mesh.num_tris() << " " << 4 * mesh.num_tris() << "\n";
  for (const auto& t : mesh.tris) os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  os << "CELL_TYPES " << mesh.num_tris() << "\n";
  for (int t = 0; t < mesh.num_tris(); ++t) os << "5\n";
  os << "CELL_DATA " << mesh.num_tris() << "\n";
  os << "SCALARS subdomain int 1\nLOOKUP_TABLE default\n";
  for (int tag : mesh.subdomain) os << tag << "\n";
  write_cell_scalars(os, cell_fields);
  if (!os) throw std::runtime_error("write_mesh_vtk: write failed for " + path);
}

Triangulation read_mesh_vtk(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_mesh_vtk: cannot open " + path);
  Triangulation mesh;
  std::string line, word;
  bool have_points = false, have_cells = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    if (!(ls >> word)) continue;
    if (word == "POINTS") {
      int n = 0;
      if (!(ls >> n) || n < 0) throw std::runtime_error("read_mesh_vtk: bad POINTS count");
      mesh.vertices.resize(n);
      for (int i = 0; i < n; ++i) {
        double x, y, z;
        if (!(is >> x >> y >> z))
          throw std::runtime_error("read_mesh_vtk: truncated POINTS block");
        mesh.vertices[i] = {x, y};
      }
      have_points = true;
    } else if (word == "CELLS") {
      int n = 0, total = 0;
      if (!(ls >> n >> total)) throw std::runtime_error("read_mesh_vtk: bad CELLS header");
      mesh.tris.resize(n);
      for (int i = 0; i < n; ++i) {
        int k, a, b, c;
        if (!(is >> k >> a >> b >> c) || k != 3)
          throw std::runtime_error("read_mesh_vtk: only triangle cells are supported");
        mesh.tris[i] = {a, b, c};
      }
      have_cells = true;
    } else if (word == "SCALARS") {
      std::string name;
      ls >> name;
      if (name == "subdomain") {
        std::getline(is, line);  // LOOKUP_TABLE
        mesh.subdomain.resize(mesh.tris.size());
        for (size_t i = 0; i < mesh.tris.size(); ++i) {
          if (!(is >> mesh.subdomain[i]))
            throw std::runtime_error("read_mesh_vtk: truncated subdomain block");
        }
      }
    }
  }
  if (!have_points || !have_cells)
    throw std::runtime_error("read_mesh_vtk: missing POINTS or CELLS in " + path);
  if (mesh.subdomain.empty()) mesh.subdomain.assign(mesh.tris.size(), 0);
  mesh.finalize();
  return mesh;
}

void write_solution_vtk(const std::string& path, const DgSolution& uh,
                        const std::vector<std::pair<std::string, Eigen::VectorXd>>& cell_fields) {
  const Triangulation& mesh = uh.space->mesh();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_solution_vtk: cannot open " + path);
  write_header(os, "solution");
  const int nt = mesh.num_tris();
  os << "POINTS " << 3 * nt << " double\n";
  char buf[96];
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d& p = mesh.vertices[mesh.tris[t][k]];
      std::snprintf(buf, sizeof(buf), "%.17g %.17g 0\n", p.x(), p.y());
      os << buf;
    }
  }
  os << "CELLS " << nt << " " << 4 * nt << "\n";
  for (int t = 0; t < nt; ++t)
    os << "3 " << 3 * t << " " << 3 * t + 1 << " " << 3 * t + 2 << "\n";
  os << "CELL_TYPES " << nt << "\n";
  for (int t = 0; t < nt; ++t) os << "5\n";
  os << "POINT_DATA " << 3 * nt << "\n";
  os << "SCALARS u double 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d& p = mesh.vertices[mesh.tris[t][k]];
      std::snprintf(buf, sizeof(buf), "%.17g\n", uh.value(t, p));
      os << buf;
    }
  }
  os << "CELL_DATA " << nt << "\n";
  os << "SCALARS subdomain int 1\nLOOKUP_TABLE default\n";
  for (int tag : mesh.subdomain) os << tag << "\n";
  write_cell_scalars(os, cell_fields);
  if (!os) throw std::runtime_error("write_solution_vtk: write failed for " + path);
}

}  // namespace dgrec
