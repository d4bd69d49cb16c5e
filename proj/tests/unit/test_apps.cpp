#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dupin/apps.hpp"
#include "oracles.hpp"

using namespace dupin;

namespace {

const PointSphereComplex P = PointSphereComplex::standard();
constexpr double kPi = std::numbers::pi;

template <class F>
ErrorCode code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

OrientedSphere sph(const Vec3& c, double r)
{
    return lift(EuclidSphere::sphere(c, r));
}

double incidence(const Vec6& x, const Vec6& s)
{
    return std::abs(inner(x, s)) / (x.norm() * s.norm());
}

// Lie image of the torus: a Ribaucour transform by a generic complex.
DupinCyclide generic_cyclide()
{
    Vec6 a;
    a << 0.3, -0.2, 0.5, 0.4, 1.1, 0.2;
    return ribaucour_transform(cyclide_from_torus(2, 1), LinearSphereComplex(a)).deltaHat;
}

void check_blend(const BlendSpec& spec)
{
    const BlendResult r = blend(spec, P);
    EXPECT_LT(membership_residual(r.cyclide.d1(), spec.s1.rep()), 1e-8);
    EXPECT_LT(membership_residual(r.cyclide.d1(), spec.s2.rep()), 1e-8);
    for (int k = 0; k < 12; ++k) {
        const Vec6 s = curvature_family(r.cyclide, 2).at(0.5 * k);
        EXPECT_LT(incidence(s, spec.s1.rep()), 1e-8);
        EXPECT_LT(incidence(s, spec.s2.rep()), 1e-8);
    }
    const SphereGrid& g = r.surface;
    ASSERT_GE(g.rows(), 2u);
    for (std::size_t c = 0; c < g.cols(); ++c) {
        EXPECT_LT(incidence(g.at(0, c), spec.s1.rep()), 1e-10);
        EXPECT_LT(incidence(g.at(g.rows() - 1, c), spec.s2.rep()), 1e-8);
        EXPECT_LT(on_circle_residual(r.gamma2, g.at(g.rows() - 1, c)), 1e-8);
    }
    for (const Vec6& x : g.points)
        EXPECT_LT(on_surface_residual(r.cyclide, x), 1e-8);
    for (int k = 0; k < 16; ++k)
        EXPECT_LT(incidence(lie_inversion(r.a, spec.gamma1.point(0.4 * k)), spec.s2.rep()), 1e-10);
    EXPECT_NEAR(angle(r.q2, spec.s2, P), kPi / 2, 1e-6);
    EXPECT_NEAR(angle(r.q1, spec.s1, P), kPi / 2, 1e-6);
    EXPECT_LT(circle_on_sphere_residual(spec.gamma1, r.q1.rep()), 1e-10);
    EXPECT_LT(circle_on_sphere_residual(r.gamma2, r.q2.rep()), 1e-10);
    if (r.pencil)
        EXPECT_LT(r.pencilResidual, 1e-8);

    BlendOptions other;
    other.plusBranch = false;
    const BlendResult r2 = blend(spec, P, other);
    EXPECT_LT(subspace_distance(r2.cyclide.d1(), r.cyclide.d1()), 1e-8);
}

} // namespace

TEST(Blend, ConcentricSpheres)
{
    const BlendSpec spec{sph({0, 0, 0}, 1), sph({0, 0, 0}, 2),
                         circle_through_points({1, 0, 0}, {0, 1, 0}, {-1, 0, 0})};
    check_blend(spec);
    const BlendResult r = blend(spec, P);
    // Spheres of radius 3/2 centred on the circle of radius 1/2 touch both; the envelope is a spindle torus.
    for (const Vec6& x : r.surface.points) {
        const Vec3 y = point_of(x);
        const double rho = std::hypot(y.x(), y.y());
        const double outer = std::abs((rho - 0.5) * (rho - 0.5) + y.z() * y.z() - 2.25);
        const double inner_ = std::abs((rho + 0.5) * (rho + 0.5) + y.z() * y.z() - 2.25);
        EXPECT_LT(std::min(outer, inner_), 1e-9);
    }
}

TEST(Blend, GenericSpheres)
{
    const double h = std::sqrt(0.75);
    check_blend({sph({0, 0, 0}, 1), sph({3, 0.5, 0.2}, 0.5),
                 circle_through_points({0.5, h, 0}, {0.5, 0, h}, {0.5, -h, 0})});
    check_blend({sph({0, 0, 0}, 1), sph({1.5, 1, -0.5}, -0.8),
                 circle_through_points({0.5, h, 0}, {0.5, 0, h}, {0.5, -h, 0})});
}

TEST(Blend, Errors)
{
    const Circle equator = circle_through_points({1, 0, 0}, {0, 1, 0}, {-1, 0, 0});
    EXPECT_EQ(code_of([&] { blend({sph({0, 0, 0}, 2), sph({0, 0, 0}, 3), equator}, P); }), ErrorCode::NotOnSphere);
    EXPECT_EQ(code_of([&] { blend({sph({0, 0, 0}, 1), sph({0, 0, 0}, 1), equator}, P); }), ErrorCode::DegeneratePair);
    // Oriented contact.
    EXPECT_EQ(code_of([&] { blend({sph({0, 0, 0}, 1), sph({2, 0, 0}, -1), equator}, P); }),
              ErrorCode::DegeneratePair);
}

TEST(Subdivide, TorusHalves)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const CurvatureSphereFamily fam = curvature_family(d, 1);
    const OrientedSphere s1 = curvature_sphere(fam, 0.0), s2 = curvature_sphere(fam, kPi);
    const Subdivision a = subdivide(d, s1, s2, 1, P);
    ASSERT_EQ(a.params.size(), 3u);
    EXPECT_NEAR(a.params[1], kPi / 2, 1e-12);
    const Subdivision b = subdivide(d, s1, s2, 1, P, true);
    EXPECT_NEAR(b.params[1], -kPi / 2, 1e-12);

    const Subdivision zero = subdivide(d, s1, s2, 0, P);
    ASSERT_EQ(zero.circles.size(), 2u);
    EXPECT_LT(subspace_distance(zero.circles[0].gamma(), curvature_circle(d, 1, 0.0, P).gamma()), 1e-12);
    EXPECT_LT(subspace_distance(zero.circles[1].gamma(), curvature_circle(d, 1, kPi, P).gamma()), 1e-12);
}

TEST(Subdivide, DepthThreeSelfSimilar)
{
    for (const DupinCyclide& d : {cyclide_from_torus(2, 1), generic_cyclide()}) {
        for (int family : {1, 2}) {
            const CurvatureSphereFamily fam = curvature_family(d, family);
            const auto roots = singular_parameters(fam, P);
            const double ta = 0.4, tb = 2.1;
            bool singular = false;
            for (double r : roots)
                singular = singular || (r > ta - 0.05 && r < tb + 0.05);
            if (singular)
                continue;
            const Subdivision s = subdivide(d, curvature_sphere(fam, ta), curvature_sphere(fam, tb), 3, P);
            ASSERT_EQ(s.params.size(), 9u);
            ASSERT_EQ(s.circles.size(), 9u);
            for (std::size_t k = 1; k < s.params.size(); ++k)
                EXPECT_GT(s.params[k], s.params[k - 1]);
            for (std::size_t k = 0; k + 2 < s.params.size(); ++k) {
                // Midpoint sphere lies in the complex swapping its neighbours and is fixed by it.
                const Vec6 x = fam.at(s.params[k]), m = fam.at(s.params[k + 1]), y = fam.at(s.params[k + 2]);
                const Vec6 a = inner(y, P.rep()) * x - inner(x, P.rep()) * y;
                if (k % 2 == 0)
                    EXPECT_LT(incidence(m, a), 1e-9);
                EXPECT_LT(projective_distance(lie_inversion(LinearSphereComplex(a), x), y), 1e-9);
            }
            for (std::size_t k = 0; k < s.circles.size(); ++k)
                EXPECT_LT(circle_on_sphere_residual(s.circles[k], fam.at(s.params[k])), 1e-9);
        }
    }
}

TEST(Subdivide, Errors)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const OrientedSphere s1 = curvature_sphere(curvature_family(d, 1), 0.3);
    EXPECT_EQ(code_of([&] { subdivide(d, s1, s1, 2, P); }), ErrorCode::SameSphere);
    EXPECT_EQ(code_of([&] { subdivide(d, s1, curvature_sphere(curvature_family(d, 2), 0.3), 2, P); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { subdivide(d, s1, curvature_sphere(curvature_family(d, 1), 1.0), -1, P); }),
              ErrorCode::InvalidArgument);
}

TEST(DiscreteNet, TorusEvolution)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const EvolutionMap e(curvature_family(d, 1), 0.0, P);
    const Circle c = curvature_circle(d, 1, 0.0, P);
    std::vector<Vec6> c0;
    for (int j = 0; j < 12; ++j)
        c0.push_back(c.point(2 * kPi * j / 12));
    std::vector<LinearSphereComplex> inv;
    for (int k = 1; k <= 8; ++k)
        inv.push_back(e.complex(2 * kPi * k / 9));
    const DiscreteNet net = discrete_net(c0, inv, P);
    ASSERT_EQ(net.dims, (std::vector<int>{9, 12}));
    for (const Vec6& x : net.vertices)
        EXPECT_NEAR(oracle::torus_implicit(point_of(x), 2, 1), 0.0, 1e-10);
    EXPECT_LT(max_quad_ratio(net), 1e-8);
}

TEST(DiscreteNet, SingleInversion)
{
    oracle::Rng rng(61);
    const Circle c = circle_through_points({1, 2, 0}, {0, -1, 1}, {3, 0, 2});
    std::vector<Vec6> c0;
    for (int j = 0; j < 7; ++j)
        c0.push_back(c.point(0.9 * j));
    for (int i = 0; i < 20; ++i) {
        Vec6 a = rng.vec6();
        a[5] = 0.0;
        const DiscreteNet net = discrete_net(c0, {LinearSphereComplex(a)}, P);
        ASSERT_EQ(net.dims, (std::vector<int>{2, 7}));
        EXPECT_LT(max_quad_ratio(net), 1e-8);
    }
    // A random quad is not concircular.
    EXPECT_GT(concircularity({lift_point({0, 0, 0}).rep(), lift_point({1, 0, 0}).rep(), lift_point({0, 1, 0}).rep(),
                              lift_point({0, 0, 1}).rep()}),
              1e-3);
}

TEST(DiscreteNet, RefinementKeepsCoarseRows)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const EvolutionMap e(curvature_family(d, 1), 0.0, P);
    const Circle c = curvature_circle(d, 1, 0.0, P);
    std::vector<Vec6> c0;
    for (int j = 0; j < 6; ++j)
        c0.push_back(c.point(2 * kPi * j / 6));
    std::vector<LinearSphereComplex> coarse, fine;
    for (int k = 1; k <= 8; ++k) {
        fine.push_back(e.complex(kPi * k / 9));
        if (k % 2 == 0)
            coarse.push_back(e.complex(kPi * k / 9));
    }
    const DiscreteNet a = discrete_net(c0, coarse, P), b = discrete_net(c0, fine, P);
    for (int k = 0; k < a.dims[0]; ++k)
        for (int j = 0; j < a.dims[1]; ++j)
            EXPECT_EQ(normalized(a.at(k, j)), normalized(b.at(2 * k, j)));
}

TEST(DiscreteNet, NotMLie)
{
    const std::vector<Vec6> c0{lift_point({0, 0, 0}).rep(), lift_point({1, 0, 0}).rep()};
    EXPECT_EQ(code_of([&] { discrete_net(c0, {LinearSphereComplex(basis_vector(1) + 0.5 * P.rep())}, P); }),
              ErrorCode::NotMLie);
}

TEST(Cube, TypeOneTorus)
{
    const LameFamily fam(cyclide_from_torus(2, 1), LinearSphereComplex(basis_vector(5) - basis_vector(4) + 0.7 * P.rep()), P);
    const CyclidicCube cube = cyclidic_cube(fam, {{0.3, 1.2}, {0.5, 1.4}, {-6.0, -3.0}}, P);
    ASSERT_EQ(cube.corners.vertices.size(), 8u);
    for (double r : cube.faceRatios)
        EXPECT_LT(r, 1e-8);
    for (double a : cube.edgeAngles)
        EXPECT_NEAR(a, kPi / 2, 1e-6);
    for (const CubeFace& f : cube.faces) {
        ASSERT_EQ(f.patch.size(), 64u);
        const auto& v = cube.corners.vertices;
        EXPECT_LT(projective_distance(f.patch.front(), v[static_cast<std::size_t>(f.corners[0])]), 1e-12);
    }
}

TEST(Cube, GenericFamilies)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    Vec6 a2, a3;
    a2 << 0.5, 0.3, 0.2, 0.55, 0.45, 0.3;
    a3 << 0.2, 0.3, 0.1, 0.2, 1.5, -0.4;
    for (const Vec6& a : {a2, a3}) {
        const LameFamily fam(d, LinearSphereComplex(a), P);
        const CyclidicCube cube = cyclidic_cube(fam, {{0.3, 1.2}, {0.5, 1.4}, {0.05, 0.6}}, P);
        for (double r : cube.faceRatios)
            EXPECT_LT(r, 1e-8) << to_string(fam.type());
        for (double e : cube.edgeAngles)
            EXPECT_NEAR(e, kPi / 2, 1e-6) << to_string(fam.type());
    }
}

TEST(Cube, MirroredFacesGiveConcircularDiagonals)
{
    const LameFamily fam(cyclide_from_torus(2, 1), LinearSphereComplex(basis_vector(5) + 0.3 * basis_vector(2)), P);
    ASSERT_EQ(fam.type(), FamilyType::Type3);
    const double b0 = 0.2;
    const CyclidicCube cube = cyclidic_cube(fam, {{0.3, 1.2}, {0.5, 1.4}, {b0, mirrored_parameter(fam, b0)}}, P);
    const auto& v = cube.corners.vertices;
    EXPECT_LT(concircularity({v[0], v[3], v[7], v[4]}), 1e-8);
    EXPECT_LT(concircularity({v[1], v[2], v[6], v[5]}), 1e-8);

    const CyclidicCube plain = cyclidic_cube(fam, {{0.3, 1.2}, {0.5, 1.4}, {b0, 1.0}}, P);
    const auto& w = plain.corners.vertices;
    EXPECT_GT(concircularity({w[0], w[3], w[7], w[4]}), 1e-6);
}

TEST(Cube, SingularBoxes)
{
    const DupinCyclide d = cyclide_from_torus(2, 1);
    const LameFamily t1(d, LinearSphereComplex(basis_vector(5) - basis_vector(4) + 0.7 * P.rep()), P);
    EXPECT_EQ(code_of([&] { cyclidic_cube(t1, {{0.3, 1.2}, {0.5, 1.4}, {-1.0, 1.0}}, P); }), ErrorCode::SingularBox);
    const LameFamily t2(d, LinearSphereComplex(basis_vector(1)), P);
    EXPECT_EQ(code_of([&] { cyclidic_cube(t2, {{0.3, 1.2}, {0.5, 1.4}, {0.5, 1.0}}, P); }), ErrorCode::SingularBox);
    EXPECT_EQ(code_of([&] { cyclidic_cube(t2, {{0.3, 1.2}, {0.5, 1.4}, {3.8, 4.0}}, P); }), ErrorCode::SingularBox);

    Vec6 a, b, c;
    a << 0, 0, 0, 1, 1, 0;
    b << 0, 0, 1, 0, 0, 0.5;
    c << 0, 0, 0, -1, 1, 0;
    const DupinCyclide cone = DupinCyclide::from_family(make_basis({a, b, c}));
    const double root = singular_parameters(curvature_family(cone, 1), P)[0];
    const LameFamily t3(cone, LinearSphereComplex(basis_vector(5) + 0.3 * basis_vector(2)), P);
    EXPECT_EQ(code_of([&] { cyclidic_cube(t3, {{root - 0.1, root + 0.1}, {0.5, 1.4}, {0.1, 0.5}}, P); }),
              ErrorCode::SingularBox);
}
