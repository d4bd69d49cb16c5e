#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dupin/cyclide.hpp"
#include "dupin/dc_system.hpp"

namespace dupin {

struct BlendSpec {
    OrientedSphere s1;
    OrientedSphere s2;
    Circle gamma1;
};

struct BlendOptions {
    bool plusBranch = true;
    int uSamples = 32;
    int tSamples = 17;
};

struct BlendResult {
    LinearSphereComplex a;
    Circle gamma2;
    OrientedSphere q1;
    OrientedSphere q2;
    // Empty when q1 and q2 do not span a pencil with p.
    std::optional<MSpherePencil> pencil;
    DupinCyclide cyclide;
    // Rows run from gamma1 (first) to gamma2 (last).
    SphereGrid surface;
    // Largest on-surface residual of the pencil-evolved grid; negative without a pencil.
    double pencilResidual = -1.0;
};

BlendResult blend(const BlendSpec& spec, const PointSphereComplex& p, const BlendOptions& options = {});

struct Subdivision {
    int family = 1;
    std::vector<double> params;
    std::vector<Circle> circles;
};

// Parameter of the midpoint sphere between ta and tb on the arc starting at ta.
double midpoint_parameter(const CurvatureSphereFamily& fam, double ta, double tb,
                          const PointSphereComplex& p);

Subdivision subdivide(const DupinCyclide& d, const OrientedSphere& s1, const OrientedSphere& s2, int depth,
                      const PointSphereComplex& p, bool otherPatch = false);

struct DiscreteNet {
    std::vector<int> dims;
    std::vector<Vec6> vertices;

    const Vec6& at(int i, int j) const { return vertices[static_cast<std::size_t>(i * dims[1] + j)]; }
};

// Smallest over largest singular value of the four normalized vectors.
double concircularity(const std::array<Vec6, 4>& quad);

// Worst concircularity over all elementary quads of a 2D net.
double max_quad_ratio(const DiscreteNet& net);

DiscreteNet discrete_net(const std::vector<Vec6>& c0, const std::vector<LinearSphereComplex>& inversions,
                         const PointSphereComplex& p);

struct CubeBox {
    std::array<double, 2> u;
    std::array<double, 2> v;
    std::array<double, 2> b;
};

struct CubeFace {
    // 0: u fixed, 1: v fixed, 2: family parameter fixed.
    int axis = 0;
    int side = 0;
    std::array<int, 4> corners{};
    // Row-major samples over the two free parameters.
    int samples = 0;
    std::vector<Vec6> patch;
};

struct CyclidicCube {
    // Corner (i, j, k) at index i + 2 j + 4 k.
    DiscreteNet corners;
    std::array<CubeFace, 6> faces;
    std::array<double, 6> faceRatios{};
    // Crossing angles of the face pairs along the 12 edges, sampled at edge midpoints.
    std::array<double, 12> edgeAngles{};
};

CyclidicCube cyclidic_cube(const LameFamily& family, const CubeBox& box, const PointSphereComplex& p,
                           int faceSamples = 8);

} // namespace dupin
