#include "dupin/export/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "dupin/euclid.hpp"

namespace dupin::io {

namespace {

MeshVertex vertex_of(const Vec6& x, double u, double t)
{
    MeshVertex v;
    v.u = u;
    v.t = t;
    if (is_infinity(x))
        v.atInfinity = true;
    else
        v.position = point_of(x);
    return v;
}

void add_quad(QuadMesh& m, std::array<int, 4> q)
{
    for (int i : q) {
        if (m.vertices[static_cast<std::size_t>(i)].atInfinity) {
            ++m.metadata.droppedQuads;
            return;
        }
    }
    m.quads.push_back(q);
}

bool gap_between(const std::vector<double>& skipped, double a, double b)
{
    return std::any_of(skipped.begin(), skipped.end(), [&](double s) { return s > a && s < b; });
}

} // namespace

bool operator==(const MeshVertex& a, const MeshVertex& b)
{
    return a.position == b.position && a.atInfinity == b.atInfinity && a.u == b.u && a.t == b.t;
}

bool operator==(const QuadMesh& a, const QuadMesh& b)
{
    return a.vertices == b.vertices && a.quads == b.quads && a.metadata == b.metadata;
}

std::string validate(const QuadMesh& m)
{
    const int n = static_cast<int>(m.vertices.size());
    for (std::size_t k = 0; k < m.quads.size(); ++k) {
        for (int i : m.quads[k]) {
            if (i < 0 || i >= n)
                return "quad " + std::to_string(k) + " index out of range";
            if (m.vertices[static_cast<std::size_t>(i)].atInfinity)
                return "quad " + std::to_string(k) + " uses a vertex at infinity";
        }
    }
    return {};
}

QuadMesh mesh_from_grid(const SphereGrid& grid, bool closeU, bool closeT)
{
    QuadMesh m;
    const int rows = static_cast<int>(grid.rows());
    const int cols = static_cast<int>(grid.cols());
    m.metadata.singularParameters = grid.skipped;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.vertices.push_back(vertex_of(grid.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                                           grid.u[static_cast<std::size_t>(j)], grid.t[static_cast<std::size_t>(i)]));
    if (rows < 2 || cols < 2)
        return m;

    const int colSpan = closeU ? cols : cols - 1;
    auto idx = [&](int i, int j) { return i * cols + j % cols; };
    for (int i = 0; i < rows; ++i) {
        const int next = i + 1;
        if (next == rows) {
            const bool wrapGap = !grid.skipped.empty()
                && (grid.skipped.front() < grid.t.front() || grid.skipped.back() > grid.t.back());
            if (!closeT || rows < 3 || wrapGap)
                break;
        } else if (gap_between(grid.skipped, grid.t[static_cast<std::size_t>(i)],
                               grid.t[static_cast<std::size_t>(next)])) {
            continue;
        }
        const int n = next % rows;
        for (int j = 0; j < colSpan; ++j)
            add_quad(m, {idx(i, j), idx(i, j + 1), idx(n, j + 1), idx(n, j)});
    }
    return m;
}

QuadMesh mesh_from_patch(const std::vector<Vec6>& points, int rows, int cols, const std::vector<double>& u,
                         const std::vector<double>& t)
{
    QuadMesh m;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.vertices.push_back(vertex_of(points[static_cast<std::size_t>(i * cols + j)],
                                           u[static_cast<std::size_t>(j)], t[static_cast<std::size_t>(i)]));
    for (int i = 0; i + 1 < rows; ++i)
        for (int j = 0; j + 1 < cols; ++j)
            add_quad(m, {i * cols + j, i * cols + j + 1, (i + 1) * cols + j + 1, (i + 1) * cols + j});
    return m;
}

void append(QuadMesh& a, const QuadMesh& b)
{
    const int offset = static_cast<int>(a.vertices.size());
    a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
    for (auto q : b.quads) {
        for (int& i : q)
            i += offset;
        a.quads.push_back(q);
    }
    a.metadata.droppedQuads += b.metadata.droppedQuads;
    a.metadata.droppedVertices += b.metadata.droppedVertices;
}

QuadMesh strip_infinity(const QuadMesh& m)
{
    QuadMesh out;
    out.metadata = m.metadata;
    std::vector<int> remap(m.vertices.size(), -1);
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        if (m.vertices[i].atInfinity) {
            ++out.metadata.droppedVertices;
            continue;
        }
        remap[i] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(m.vertices[i]);
    }
    for (const auto& q : m.quads) {
        std::array<int, 4> r{};
        bool keep = true;
        for (int k = 0; k < 4; ++k) {
            r[static_cast<std::size_t>(k)] = remap[static_cast<std::size_t>(q[static_cast<std::size_t>(k)])];
            keep = keep && r[static_cast<std::size_t>(k)] >= 0;
        }
        if (keep)
            out.quads.push_back(r);
        else
            ++out.metadata.droppedQuads;
    }
    return out;
}

std::string format_number(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

std::string to_obj(const QuadMesh& m)
{
    std::string s;
    for (const auto& v : m.vertices) {
        s += "v " + format_number(v.position.x()) + ' ' + format_number(v.position.y()) + ' '
            + format_number(v.position.z()) + '\n';
    }
    for (const auto& q : m.quads)
        s += "f " + std::to_string(q[0] + 1) + ' ' + std::to_string(q[1] + 1) + ' ' + std::to_string(q[2] + 1) + ' '
            + std::to_string(q[3] + 1) + '\n';
    return s;
}

nlohmann::json to_json(const QuadMesh& m)
{
    using nlohmann::json;
    json vertices = json::array(), infinity = json::array(), params = json::array(), quads = json::array();
    for (const auto& v : m.vertices) {
        vertices.push_back({v.position.x(), v.position.y(), v.position.z()});
        infinity.push_back(v.atInfinity);
        params.push_back({v.u, v.t});
    }
    for (const auto& q : m.quads)
        quads.push_back(q);
    const auto& md = m.metadata;
    return {{"vertices", vertices},
            {"infinity", infinity},
            {"params", params},
            {"quads", quads},
            {"metadata",
             {{"construction", md.construction},
              {"familyType", md.familyType},
              {"family", md.family},
              {"member", md.member},
              {"singularParameters", md.singularParameters},
              {"droppedVertices", md.droppedVertices},
              {"droppedQuads", md.droppedQuads}}}};
}

QuadMesh mesh_from_json(const nlohmann::json& j)
{
    QuadMesh m;
    const auto& vertices = j.at("vertices");
    const auto& infinity = j.at("infinity");
    const auto& params = j.at("params");
    if (infinity.size() != vertices.size() || params.size() != vertices.size())
        throw std::invalid_argument("vertex arrays differ in length");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        MeshVertex v;
        v.position = {vertices[i].at(0).get<double>(), vertices[i].at(1).get<double>(),
                      vertices[i].at(2).get<double>()};
        v.atInfinity = infinity[i].get<bool>();
        v.u = params[i].at(0).get<double>();
        v.t = params[i].at(1).get<double>();
        m.vertices.push_back(v);
    }
    for (const auto& q : j.at("quads"))
        m.quads.push_back(q.get<std::array<int, 4>>());
    const auto& md = j.at("metadata");
    m.metadata.construction = md.at("construction").get<std::string>();
    m.metadata.familyType = md.at("familyType").get<std::string>();
    m.metadata.family = md.at("family").get<int>();
    m.metadata.member = md.at("member").get<int>();
    m.metadata.singularParameters = md.at("singularParameters").get<std::vector<double>>();
    m.metadata.droppedVertices = md.at("droppedVertices").get<int>();
    m.metadata.droppedQuads = md.at("droppedQuads").get<int>();
    if (const std::string err = validate(m); !err.empty())
        throw std::invalid_argument(err);
    return m;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

void export_mesh(const QuadMesh& m, MeshFormat format, const std::string& path)
{
    const int n = static_cast<int>(m.vertices.size());
    for (const auto& q : m.quads) {
        if (std::any_of(q.begin(), q.end(), [n](int i) { return i < 0 || i >= n; }))
            throw std::invalid_argument("quad index out of range");
    }
    const QuadMesh clean = strip_infinity(m);
    write_text(path, format == MeshFormat::Obj ? to_obj(clean) : to_json(clean).dump(1) + '\n');
}

QuadMesh read_mesh_json(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    try {
        return mesh_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

Polylines polylines_from_points(const std::vector<std::vector<Vec6>>& lines)
{
    Polylines out;
    for (const auto& line : lines) {
        std::vector<Vec3> cur;
        for (const Vec6& x : line) {
            if (is_infinity(x)) {
                if (cur.size() > 1)
                    out.lines.push_back(cur);
                cur.clear();
                continue;
            }
            cur.push_back(point_of(x));
        }
        if (cur.size() > 1)
            out.lines.push_back(cur);
    }
    return out;
}

std::string to_obj(const Polylines& p)
{
    std::string s;
    for (const auto& line : p.lines)
        for (const Vec3& x : line)
            s += "v " + format_number(x.x()) + ' ' + format_number(x.y()) + ' ' + format_number(x.z()) + '\n';
    int base = 1;
    for (const auto& line : p.lines) {
        s += 'l';
        for (std::size_t i = 0; i < line.size(); ++i)
            s += ' ' + std::to_string(base + static_cast<int>(i));
        s += '\n';
        base += static_cast<int>(line.size());
    }
    return s;
}

nlohmann::json to_json(const Polylines& p)
{
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& line : p.lines) {
        nlohmann::json pts = nlohmann::json::array();
        for (const Vec3& x : line)
            pts.push_back({x.x(), x.y(), x.z()});
        lines.push_back(pts);
    }
    return {{"polylines", lines}};
}

void export_polylines(const Polylines& p, MeshFormat format, const std::string& path)
{
    write_text(path, format == MeshFormat::Obj ? to_obj(p) : to_json(p).dump(1) + '\n');
}

} // namespace dupin::io
