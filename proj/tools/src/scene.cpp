#include "dupin/export/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>

#include "dupin/export/mesh.hpp"

namespace dupin::io {

using nlohmann::json;

ConfigError::ConfigError(std::string pointer, const std::string& message)
    : std::runtime_error((pointer.empty() ? std::string("config") : pointer) + ": " + message),
      pointer_(std::move(pointer))
{
}

const char* to_string(Construction c) noexcept
{
    switch (c) {
    case Construction::Cyclide: return "cyclide";
    case Construction::Lame: return "lame";
    case Construction::Blend: return "blend";
    case Construction::Subdivide: return "subdivide";
    case Construction::Cube: return "cube";
    case Construction::Net: return "net";
    }
    return "unknown";
}

std::optional<Construction> construction_from_name(std::string_view name)
{
    for (Construction c : {Construction::Cyclide, Construction::Lame, Construction::Blend, Construction::Subdivide,
                           Construction::Cube, Construction::Net}) {
        if (name == to_string(c))
            return c;
    }
    if (name == "discrete-net")
        return Construction::Net;
    return std::nullopt;
}

namespace {

// A JSON value together with its pointer, for error reporting.
class Node {
public:
    Node(const json& value, json::json_pointer ptr) : value_(&value), ptr_(std::move(ptr)) {}

    const json& value() const { return *value_; }
    std::string path() const { return ptr_.to_string(); }

    [[noreturn]] void error(const std::string& message) const { throw ConfigError(path(), message); }

    bool has(const std::string& key) const { return value_->contains(key); }

    Node at(const std::string& key) const
    {
        if (!has(key))
            throw ConfigError((ptr_ / key).to_string(), "missing required key");
        return {value_->at(key), ptr_ / key};
    }

    Node at(std::size_t i) const { return {value_->at(i), ptr_ / i}; }

    std::size_t size() const { return value_->size(); }

    const Node& object(std::initializer_list<const char*> allowed) const
    {
        if (!value_->is_object())
            error("expected an object");
        for (const auto& item : value_->items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; }))
                throw ConfigError((ptr_ / item.key()).to_string(), "unknown key");
        }
        return *this;
    }

    double number() const
    {
        if (!value_->is_number())
            error("expected a number");
        const double x = value_->get<double>();
        if (!std::isfinite(x))
            error("expected a finite number");
        return x;
    }

    int integer(int lo, int hi) const
    {
        if (!value_->is_number_integer())
            error("expected an integer");
        const auto x = value_->get<long long>();
        if (x < lo || x > hi)
            error("expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(x);
    }

    bool boolean() const
    {
        if (!value_->is_boolean())
            error("expected true or false");
        return value_->get<bool>();
    }

    std::string string() const
    {
        if (!value_->is_string())
            error("expected a string");
        return value_->get<std::string>();
    }

    const Node& array(std::size_t n) const
    {
        if (!value_->is_array() || (n > 0 && value_->size() != n))
            error(n > 0 ? "expected an array of " + std::to_string(n) + " entries" : "expected an array");
        return *this;
    }

    Vec3 vec3() const
    {
        array(3);
        return {at(0).number(), at(1).number(), at(2).number()};
    }

    std::vector<double> numbers() const
    {
        array(0);
        std::vector<double> out;
        for (std::size_t i = 0; i < size(); ++i)
            out.push_back(at(i).number());
        return out;
    }

private:
    const json* value_;
    json::json_pointer ptr_;
};

using PrimitiveTable = std::map<std::string, Primitive>;

Primitive parse_primitive(const Node& n)
{
    n.object({"sphere", "plane", "point", "circle"});
    if (n.size() != 1)
        n.error("expected exactly one of sphere, plane, point, circle");
    Primitive p;
    if (n.has("sphere")) {
        const Node s = n.at("sphere");
        s.object({"center", "radius"});
        const double r = s.at("radius").number();
        if (r == 0.0)
            s.at("radius").error("radius must be nonzero; use a point");
        p.kind = Primitive::Kind::Sphere;
        p.sphere = EuclidSphere::sphere(s.at("center").vec3(), r);
    } else if (n.has("plane")) {
        const Node s = n.at("plane");
        s.object({"normal", "offset"});
        const Vec3 normal = s.at("normal").vec3();
        if (normal.norm() == 0.0)
            s.at("normal").error("normal must be nonzero");
        p.kind = Primitive::Kind::Plane;
        p.sphere = EuclidSphere::plane(normal, s.at("offset").number());
    } else if (n.has("point")) {
        p.kind = Primitive::Kind::Point;
        p.sphere = EuclidSphere::point(n.at("point").vec3());
    } else {
        const Node c = n.at("circle");
        c.array(3);
        p.kind = Primitive::Kind::Circle;
        for (std::size_t i = 0; i < 3; ++i)
            p.circle[i] = c.at(i).vec3();
    }
    return p;
}

const Primitive& reference(const Node& n, const PrimitiveTable& table)
{
    const std::string name = n.string();
    const auto it = table.find(name);
    if (it == table.end())
        n.error("undefined primitive '" + name + "'");
    return it->second;
}

EuclidSphere sphere_reference(const Node& n, const PrimitiveTable& table)
{
    const Primitive& p = reference(n, table);
    if (!p.sphere)
        n.error("primitive '" + n.string() + "' is a circle, expected a sphere, plane or point");
    return *p.sphere;
}

std::array<Vec3, 3> circle_reference(const Node& n, const PrimitiveTable& table)
{
    const Primitive& p = reference(n, table);
    if (p.kind != Primitive::Kind::Circle)
        n.error("primitive '" + n.string() + "' is not a circle");
    return p.circle;
}

Vec6 parse_complex(const Node& n, const PrimitiveTable& table)
{
    n.object({"vector", "sphere", "spaceForm", "p"});
    const int forms = int(n.has("vector")) + int(n.has("sphere")) + int(n.has("spaceForm"));
    if (forms != 1)
        n.error("expected exactly one of vector, sphere, spaceForm");
    if (n.has("vector")) {
        if (n.has("p"))
            n.at("p").error("not allowed with vector");
        const Node v = n.at("vector");
        v.array(6);
        Vec6 out;
        for (std::size_t i = 0; i < 6; ++i)
            out[static_cast<Eigen::Index>(i)] = v.at(i).number();
        if (out.norm() == 0.0)
            v.error("vector must be nonzero");
        return out;
    }
    const double kappa = n.has("p") ? n.at("p").number() : 0.0;
    const PointSphereComplex p = PointSphereComplex::standard();
    Vec6 base;
    if (n.has("sphere")) {
        base = lift(sphere_reference(n.at("sphere"), table)).rep();
    } else {
        if (n.at("spaceForm").string() != "euclidean")
            n.at("spaceForm").error("only \"euclidean\" is supported");
        base = euclidean_space_form(p).q;
    }
    // Replace the p-component.
    return base + (inner(base, p.rep()) + kappa) * p.rep();
}

SurfaceInput parse_surface(const Node& n, const PrimitiveTable& table)
{
    n.object({"torus", "spheres", "transform"});
    if (n.has("torus") == n.has("spheres"))
        n.error("expected exactly one of torus, spheres");
    SurfaceInput s;
    if (n.has("torus")) {
        const Node t = n.at("torus");
        t.object({"spine", "tube", "allowSingular"});
        s.spine = t.at("spine").number();
        s.tube = t.at("tube").number();
        s.allowSingular = t.has("allowSingular") && t.at("allowSingular").boolean();
    } else {
        s.torus = false;
        const Node list = n.at("spheres");
        list.array(3);
        for (std::size_t i = 0; i < 3; ++i)
            s.spheres.push_back(sphere_reference(list.at(i), table));
    }
    if (n.has("transform"))
        s.transform = parse_complex(n.at("transform"), table);
    return s;
}

int family_index(const Node& n)
{
    return n.integer(1, 2);
}

EvolveInput parse_evolve(const Node& n)
{
    EvolveInput e;
    if (n.has("family"))
        e.family = family_index(n.at("family"));
    if (n.has("base"))
        e.base = n.at("base").number();
    return e;
}

double positive(const Node& n)
{
    const double x = n.number();
    if (x <= 0.0)
        n.error("expected a positive number");
    return x;
}

std::array<double, 2> range(const Node& n)
{
    n.array(2);
    return {n.at(0).number(), n.at(1).number()};
}

} // namespace

SceneConfig parse_config(const json& doc, std::optional<Construction> verb)
{
    const Node root(doc, json::json_pointer());
    root.object({"kind", "name", "samples", "thresholds", "output", "primitives", "surface", "cyclide", "lame",
                 "blend", "subdivide", "cube", "net"});

    SceneConfig cfg;
    if (root.has("kind")) {
        const auto kind = construction_from_name(root.at("kind").string());
        if (!kind)
            root.at("kind").error("unknown construction kind");
        if (verb && *verb != *kind)
            root.at("kind").error(std::string("does not match the verb '") + to_string(*verb) + "'");
        cfg.kind = *kind;
    } else if (verb) {
        cfg.kind = *verb;
    } else {
        root.at("kind");
    }

    if (root.has("name")) {
        const Node n = root.at("name");
        cfg.name = n.string();
        const bool ok = !cfg.name.empty() && std::all_of(cfg.name.begin(), cfg.name.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
        });
        if (!ok)
            n.error("name must be non-empty and use only letters, digits, '_' and '-'");
    }

    if (root.has("samples")) {
        const Node s = root.at("samples");
        s.object({"u", "t"});
        if (s.has("u"))
            cfg.uSamples = s.at("u").integer(3, 4096);
        if (s.has("t"))
            cfg.tSamples = s.at("t").integer(2, 4096);
    }

    if (root.has("thresholds")) {
        const Node t = root.at("thresholds");
        t.object({"incidence", "circleFit", "angle", "relation", "selfSimilarity", "rank"});
        auto set = [&](const char* key, double& field) {
            if (t.has(key))
                field = positive(t.at(key));
        };
        set("incidence", cfg.thresholds.incidence);
        set("circleFit", cfg.thresholds.circleFit);
        set("angle", cfg.thresholds.angle);
        set("relation", cfg.thresholds.relation);
        set("selfSimilarity", cfg.thresholds.selfSimilarity);
        set("rank", cfg.thresholds.rank);
    }

    if (root.has("output")) {
        const Node o = root.at("output");
        o.object({"directory", "format"});
        if (o.has("directory"))
            cfg.outputDirectory = o.at("directory").string();
        if (o.has("format")) {
            const std::string f = o.at("format").string();
            if (f == "obj") {
                cfg.writeObj = true;
                cfg.writeJson = false;
            } else if (f == "json") {
                cfg.writeObj = false;
                cfg.writeJson = true;
            } else if (f == "both") {
                cfg.writeObj = cfg.writeJson = true;
            } else {
                o.at("format").error("expected \"obj\", \"json\" or \"both\"");
            }
        }
    }

    PrimitiveTable table;
    if (root.has("primitives")) {
        const Node prims = root.at("primitives");
        if (!prims.value().is_object())
            prims.error("expected an object");
        for (const auto& item : prims.value().items())
            table.emplace(item.key(), parse_primitive(prims.at(item.key())));
    }

    const bool needsSurface = cfg.kind != Construction::Blend;
    if (root.has("surface"))
        cfg.surface = parse_surface(root.at("surface"), table);
    else if (needsSurface)
        root.at("surface");

    // Only the block of the selected kind is read; others are rejected to catch typos.
    for (Construction c : {Construction::Cyclide, Construction::Lame, Construction::Blend, Construction::Subdivide,
                           Construction::Cube, Construction::Net}) {
        if (c != cfg.kind && root.has(to_string(c)))
            root.at(to_string(c)).error(std::string("block does not belong to kind '") + to_string(cfg.kind) + "'");
    }

    switch (cfg.kind) {
    case Construction::Cyclide:
        if (root.has("cyclide"))
            cfg.evolve = parse_evolve(root.at("cyclide").object({"family", "base"}));
        break;
    case Construction::Lame: {
        const Node n = root.at("lame");
        n.object({"complex", "members", "trajectories", "trajectorySamples"});
        cfg.lame.complex = parse_complex(n.at("complex"), table);
        cfg.lame.members = n.at("members").numbers();
        if (cfg.lame.members.empty())
            n.at("members").error("expected at least one member parameter");
        if (n.has("trajectories"))
            cfg.lame.trajectories = n.at("trajectories").integer(0, 1024);
        if (n.has("trajectorySamples"))
            cfg.lame.trajectorySamples = n.at("trajectorySamples").integer(3, 4096);
        break;
    }
    case Construction::Blend: {
        const Node n = root.at("blend");
        n.object({"s1", "s2", "circle", "branch"});
        cfg.blend.s1 = sphere_reference(n.at("s1"), table);
        cfg.blend.s2 = sphere_reference(n.at("s2"), table);
        cfg.blend.circle = circle_reference(n.at("circle"), table);
        if (n.has("branch")) {
            const std::string b = n.at("branch").string();
            if (b != "+" && b != "-")
                n.at("branch").error("expected \"+\" or \"-\"");
            cfg.blend.plusBranch = b == "+";
        }
        break;
    }
    case Construction::Subdivide: {
        const Node n = root.at("subdivide");
        n.object({"family", "from", "to", "depth", "otherPatch"});
        if (n.has("family"))
            cfg.subdivide.family = family_index(n.at("family"));
        cfg.subdivide.from = n.at("from").number();
        cfg.subdivide.to = n.at("to").number();
        if (n.has("depth"))
            cfg.subdivide.depth = n.at("depth").integer(0, 12);
        if (n.has("otherPatch"))
            cfg.subdivide.otherPatch = n.at("otherPatch").boolean();
        break;
    }
    case Construction::Cube: {
        const Node n = root.at("cube");
        n.object({"complex", "u", "v", "b", "faceSamples"});
        cfg.cube.complex = parse_complex(n.at("complex"), table);
        cfg.cube.box = {range(n.at("u")), range(n.at("v")), range(n.at("b"))};
        if (n.has("faceSamples"))
            cfg.cube.faceSamples = n.at("faceSamples").integer(2, 512);
        break;
    }
    case Construction::Net: {
        if (!root.has("net"))
            break;
        const Node n = root.at("net");
        n.object({"family", "base", "parameters"});
        cfg.net.evolve = parse_evolve(n);
        if (n.has("parameters"))
            cfg.net.parameters = n.at("parameters").numbers();
        break;
    }
    }
    return cfg;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("not valid JSON: ") + e.what());
    }
}

} // namespace dupin::io
