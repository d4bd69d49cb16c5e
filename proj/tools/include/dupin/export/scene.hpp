#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dupin/apps.hpp"
#include "dupin/euclid.hpp"

namespace dupin::io {

// Schema violation at a JSON pointer into the config document.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string& message);

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

enum class Construction { Cyclide, Lame, Blend, Subdivide, Cube, Net };

const char* to_string(Construction c) noexcept;
std::optional<Construction> construction_from_name(std::string_view name);

struct Primitive {
    enum class Kind { Sphere, Plane, Point, Circle };
    Kind kind = Kind::Sphere;
    // Sphere, plane or point.
    std::optional<EuclidSphere> sphere;
    // Circle through three points.
    std::array<Vec3, 3> circle{};
};

struct SurfaceInput {
    bool torus = true;
    double spine = 2.0;
    double tube = 1.0;
    bool allowSingular = false;
    std::vector<EuclidSphere> spheres;
    std::optional<Vec6> transform;
};

struct Thresholds {
    double incidence = 1e-8;
    double circleFit = 1e-8;
    double angle = 1e-6;
    double relation = 1e-7;
    double selfSimilarity = 1e-9;
    double rank = 1e-8;
};

struct EvolveInput {
    int family = 1;
    double base = 0.0;
};

struct LameInput {
    Vec6 complex = Vec6::Zero();
    std::vector<double> members;
    int trajectories = 8;
    int trajectorySamples = 33;
};

struct BlendInput {
    EuclidSphere s1 = EuclidSphere::infinity();
    EuclidSphere s2 = EuclidSphere::infinity();
    std::array<Vec3, 3> circle{};
    bool plusBranch = true;
};

struct SubdivideInput {
    int family = 1;
    double from = 0.0;
    double to = 0.0;
    int depth = 3;
    bool otherPatch = false;
};

struct CubeInput {
    Vec6 complex = Vec6::Zero();
    CubeBox box{};
    int faceSamples = 8;
};

struct NetInput {
    EvolveInput evolve;
    // Empty: uniform rows from the t sample count.
    std::vector<double> parameters;
};

struct SceneConfig {
    Construction kind = Construction::Cyclide;
    std::string name = "scene";
    int uSamples = 32;
    int tSamples = 32;
    Thresholds thresholds;
    std::string outputDirectory = ".";
    bool writeObj = true;
    bool writeJson = false;
    std::optional<SurfaceInput> surface;
    EvolveInput evolve;
    LameInput lame;
    BlendInput blend;
    SubdivideInput subdivide;
    CubeInput cube;
    NetInput net;
};

// The verb fills in a missing "kind" and must agree with a present one.
SceneConfig parse_config(const nlohmann::json& doc, std::optional<Construction> verb = {});

// IoError when unreadable, ConfigError with an empty pointer when not JSON.
nlohmann::json read_json_file(const std::string& path);

} // namespace dupin::io
