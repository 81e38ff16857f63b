#pragma once

#include <string>
#include <vector>

#include "foil/integrator.hpp"
#include "foil/mesh.hpp"
#include "foil/vec3.hpp"

namespace foil {

enum class PointFormat { xyz, ply };
enum class MeshFormat { obj, ply };

// Formats are keyed by file extension: .xyz/.ply for points, .obj/.ply for
// meshes. Anything else is a configuration error.
PointFormat point_format_from_path(const std::string& path);
MeshFormat mesh_format_from_path(const std::string& path);

// XYZ: one "x y z" line per point, '#' comment lines and blank lines skipped.
// PLY: ASCII with float/double x, y, z properties on the vertex element.
// Parse failures name the offending line; an empty cloud is an error.
std::vector<Vec3> load_points(const std::string& path);
std::vector<Vec3> load_points(const std::string& path, PointFormat format);

void write_points(const std::vector<Vec3>& points, const std::string& path);
void write_points(const std::vector<Vec3>& points, const std::string& path, PointFormat format);

// OBJ: v/f records with 1-based indices; PLY: ASCII vertex + face elements.
// Triangles only. Loaded meshes carry no fixed flags.
TriMesh load_mesh(const std::string& path);
TriMesh load_mesh(const std::string& path, MeshFormat format);

// Deterministic byte output: identical meshes produce identical files.
void write_mesh(const TriMesh& mesh, const std::string& path);
void write_mesh(const TriMesh& mesh, const std::string& path, MeshFormat format);

// CSV with one row per iteration and floats at 17 significant digits, so a
// replay of the same run compares byte-identical.
extern const char* const kDiagnosticsHeader;
void write_diagnostics(const std::vector<IterationStats>& history, const std::string& path);

// Shortest round-trip-exact decimal rendering used by all writers (%.17g).
std::string format_double(double value);

}  // namespace foil
