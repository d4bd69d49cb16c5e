#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dupin/cyclide.hpp"

namespace dupin::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MeshVertex {
    Vec3 position = Vec3::Zero();
    bool atInfinity = false;
    double u = 0.0;
    double t = 0.0;
};

struct MeshMetadata {
    std::string construction;
    std::string familyType;
    int family = 0;
    int member = -1;
    std::vector<double> singularParameters;
    int droppedVertices = 0;
    int droppedQuads = 0;

    bool operator==(const MeshMetadata&) const = default;
};

struct QuadMesh {
    std::vector<MeshVertex> vertices;
    std::vector<std::array<int, 4>> quads;
    MeshMetadata metadata;
};

bool operator==(const MeshVertex& a, const MeshVertex& b);
bool operator==(const QuadMesh& a, const QuadMesh& b);

// Empty when the mesh is valid, otherwise the first violation.
std::string validate(const QuadMesh& m);

// Rows follow t, columns follow u. Quads touching a point at infinity are left out
// and counted in droppedQuads; rows on either side of a skipped parameter are not joined.
QuadMesh mesh_from_grid(const SphereGrid& grid, bool closeU, bool closeT);

// Row-major rows x cols patch of point spheres with the given parameters.
QuadMesh mesh_from_patch(const std::vector<Vec6>& points, int rows, int cols, const std::vector<double>& u,
                         const std::vector<double>& t);

// Appends b to a with shifted indices; metadata of a is kept, drop counts are summed.
void append(QuadMesh& a, const QuadMesh& b);

// Drops infinity vertices and their quads, reindexing the rest.
QuadMesh strip_infinity(const QuadMesh& m);

enum class MeshFormat { Obj, Json };

std::string to_obj(const QuadMesh& m);
nlohmann::json to_json(const QuadMesh& m);
QuadMesh mesh_from_json(const nlohmann::json& j);

// Strips infinity vertices and the quads using them, then writes the file.
// Throws std::invalid_argument on out-of-range quad indices.
void export_mesh(const QuadMesh& m, MeshFormat format, const std::string& path);
QuadMesh read_mesh_json(const std::string& path);

struct Polylines {
    std::vector<std::vector<Vec3>> lines;
};

// A polyline is split where it passes through infinity.
Polylines polylines_from_points(const std::vector<std::vector<Vec6>>& lines);

std::string to_obj(const Polylines& p);
nlohmann::json to_json(const Polylines& p);
void export_polylines(const Polylines& p, MeshFormat format, const std::string& path);

std::string format_number(double x);
void write_text(const std::string& path, const std::string& text);

} // namespace dupin::io
