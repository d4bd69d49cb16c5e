#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "dupin/euclid.hpp"
#include "dupin/minkowski.hpp"
#include "dupin/subspace.hpp"
#include "oracles.hpp"

using namespace dupin;

namespace {

const PointSphereComplex P = PointSphereComplex::standard();

OrientedSphere sphere(double x, double y, double z, double r)
{
    return OrientedSphere(oracle::sphere_coords({x, y, z}, r));
}

LinearSphereComplex random_complex(oracle::Rng& rng)
{
    for (;;) {
        const Vec6 v = rng.vec6();
        if (std::abs(inner(v, v)) > 0.05)
            return LinearSphereComplex(v);
    }
}

} // namespace

TEST(Inner, BasisVectors)
{
    EXPECT_DOUBLE_EQ(inner(basis_vector(1), basis_vector(1)), 1.0);
    EXPECT_DOUBLE_EQ(inner(basis_vector(6), basis_vector(6)), -1.0);
    EXPECT_DOUBLE_EQ(inner(basis_vector(2), basis_vector(5)), 0.0);
}

TEST(Inner, UnitSphereLiftIsNull)
{
    const Vec6 s = oracle::sphere_coords({0, 0, 0}, 1.0);
    EXPECT_DOUBLE_EQ(inner(s, s), 0.0);
}

TEST(Inner, SymmetricBilinear)
{
    oracle::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec6 a = rng.vec6(), b = rng.vec6(), c = rng.vec6();
        EXPECT_NEAR(inner(a, b), inner(b, a), 1e-15);
        EXPECT_NEAR(inner(2.0 * a + c, b), 2.0 * inner(a, b) + inner(c, b), 1e-14);
        EXPECT_NEAR(inner(a, b), oracle::form(a, b), 1e-15);
    }
}

TEST(LieInversion, AxisAndFixedHyperplane)
{
    const LinearSphereComplex a(basis_vector(1));
    EXPECT_TRUE(same_point(lie_inversion(a, a.rep()), -a.rep()));
    const Vec6 x = basis_vector(3) + basis_vector(5);
    EXPECT_EQ(lie_inversion(a, x), x);
    Vec6 expected = -basis_vector(1) + basis_vector(5);
    EXPECT_EQ(lie_inversion(a, Vec6(basis_vector(1) + basis_vector(5))), expected);
}

TEST(LieInversion, ParabolicRejected)
{
    const LinearSphereComplex a(basis_vector(1) + basis_vector(5));
    EXPECT_EQ(a.kind(), ComplexKind::Parabolic);
    try {
        lie_inversion(a, basis_vector(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParabolicComplex);
    }
}

TEST(LieInversion, Properties)
{
    oracle::Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const LinearSphereComplex a = random_complex(rng);
        const Vec6 v = rng.vec6(), w = rng.vec6();
        EXPECT_LT((lie_inversion(a, lie_inversion(a, v)) - v).norm(), 1e-12 * (1.0 + v.norm()));
        const double scale = a.rep().squaredNorm() * v.norm() * w.norm() / std::abs(inner(a.rep(), a.rep()));
        EXPECT_NEAR(inner(lie_inversion(a, v), lie_inversion(a, w)), inner(v, w), 1e-12 * (1.0 + scale));
    }
}

TEST(LieInversion, MLieFixesPointComplex)
{
    oracle::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        Vec6 v = rng.vec6();
        v[5] = 0.0;
        if (std::abs(inner(v, v)) < 0.05)
            continue;
        const LinearSphereComplex a(v);
        EXPECT_EQ(lie_inversion(a, P.rep()), P.rep());
    }
}

TEST(ComplexKind, Classification)
{
    EXPECT_EQ(LinearSphereComplex(basis_vector(1)).kind(), ComplexKind::Elliptic);
    EXPECT_EQ(LinearSphereComplex(basis_vector(5)).kind(), ComplexKind::Hyperbolic);
    EXPECT_EQ(LinearSphereComplex(basis_vector(4) + basis_vector(6)).kind(), ComplexKind::Parabolic);
}

TEST(ComplexFromPair, SameSphereIsDegenerate)
{
    const OrientedSphere s = sphere(0, 0, 0, 1);
    try {
        complex_from_sphere_pair(s, s, P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegeneratePair);
    }
}

TEST(ComplexFromPair, ConcentricSpheres)
{
    const OrientedSphere s1 = sphere(0, 0, 0, 1), s2 = sphere(0, 0, 0, 2);
    const LinearSphereComplex a = complex_from_sphere_pair(s1, s2, P);
    EXPECT_NEAR(inner(a.rep(), P.rep()), 0.0, 1e-12 * a.rep().norm());
    EXPECT_LT(oracle::line_distance(lie_inversion(a, s1.rep()), s2.rep()), 1e-12);
    EXPECT_LT(oracle::line_distance(lie_inversion(a, lie_inversion(a, s1.rep())), s1.rep()), 1e-12);
}

TEST(ComplexFromPair, RandomPairs)
{
    oracle::Rng rng(14);
    for (int i = 0; i < 200; ++i) {
        const OrientedSphere s1 = sphere(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.radius(0.2, 2));
        const OrientedSphere s2 = sphere(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.radius(0.2, 2));
        const LinearSphereComplex a = complex_from_sphere_pair(s1, s2, P);
        EXPECT_LE(std::abs(inner(a.rep(), P.rep())), 1e-12 * a.rep().norm() * 10);
        EXPECT_LT(oracle::line_distance(lie_inversion(a, s1.rep()), s2.rep()), 1e-10);
    }
}

TEST(FourSpheres, TorusTubeSpheres)
{
    const double pi = std::numbers::pi;
    auto tube = [](double th) { return sphere(2 * std::cos(th), 2 * std::sin(th), 0, 1); };
    const OrientedSphere a0 = tube(0), a1 = tube(pi / 2), a2 = tube(pi), a3 = tube(1.5 * pi);
    // Four coplanar-centered spheres of equal radius lie in a 3-space, so a relation exists.
    const LinearSphereComplex a = inversion_from_four_spheres(a0, a1, a2, a3);
    EXPECT_LT(oracle::line_distance(lie_inversion(a, a0.rep()), a1.rep()), 1e-10);
    EXPECT_LT(oracle::line_distance(lie_inversion(a, a3.rep()), a2.rep()), 1e-10);
}

TEST(FourSpheres, MatchesPairConstruction)
{
    const OrientedSphere s1 = sphere(0, 0, 0, 1), s2 = sphere(3, 1, 0, 0.5);
    const LinearSphereComplex a = inversion_from_four_spheres(s1, s2, s2, s1);
    const LinearSphereComplex b = complex_from_sphere_pair(s1, s2, P);
    EXPECT_LT(oracle::line_distance(a.rep(), b.rep()), 1e-10);
}

TEST(FourSpheres, ContactViolation)
{
    // Internally tangent with matching orientation.
    const OrientedSphere s1 = sphere(0, 0, 0, 2), s2 = sphere(1, 0, 0, 1);
    ASSERT_NEAR(inner(s1.rep(), s2.rep()), 0.0, 1e-12);
    try {
        inversion_from_four_spheres(s1, s2, sphere(5, 0, 0, 1), sphere(-5, 0, 0, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ContactViolation);
    }
}

TEST(FourSpheres, NoLinearRelation)
{
    try {
        inversion_from_four_spheres(sphere(0, 0, 0, 1), sphere(3, 0, 0, 1), sphere(0, 4, 1, 0.5),
                                    sphere(1, -4, 2, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoLinearRelation);
    }
}

TEST(Angle, Examples)
{
    const OrientedSphere s = sphere(0, 0, 0, 1);
    EXPECT_NEAR(angle(s, s, P), 0.0, 1e-12);
    const OrientedSphere plane(oracle::plane_coords({0, 0, 1}, 0.0));
    EXPECT_NEAR(angle(s, plane, P), std::numbers::pi / 2, 1e-12);
    try {
        angle(s, sphere(0, 0, 0, 3), P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonIntersecting);
    }
    try {
        angle(s, OrientedSphere(oracle::sphere_coords({1, 0, 0}, 0.0)), P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointSphereArgument);
    }
}

TEST(Angle, PreservedByMLieInversions)
{
    oracle::Rng rng(15);
    int checked = 0;
    while (checked < 200) {
        const oracle::V3 c1 = rng.vec3(-1, 1);
        const double r1 = rng.uniform(0.5, 1.5);
        const oracle::V3 c2 = c1 + rng.unit3() * rng.uniform(0.1, 1.9);
        const double r2 = rng.uniform(0.5, 1.5);
        if ((c1 - c2).norm() >= r1 + r2 || (c1 - c2).norm() <= std::abs(r1 - r2))
            continue;
        Vec6 av = rng.vec6();
        av[5] = 0.0;
        if (std::abs(inner(av, av)) < 0.05)
            continue;
        const LinearSphereComplex a(av);
        const OrientedSphere s1(oracle::sphere_coords(c1, r1)), s2(oracle::sphere_coords(c2, r2));
        const OrientedSphere t1 = lie_inversion(a, s1), t2 = lie_inversion(a, s2);
        if (std::abs(inner(t1.rep(), P.rep())) < 1e-6 * t1.rep().norm()
            || std::abs(inner(t2.rep(), P.rep())) < 1e-6 * t2.rep().norm())
            continue;
        EXPECT_NEAR(angle(t1, t2, P), angle(s1, s2, P), 1e-9);
        ++checked;
    }
}

TEST(Orthogonal, Examples)
{
    const OrientedSphere s = sphere(0, 0, 0, 1);
    EXPECT_TRUE(orthogonal(s, OrientedSphere(oracle::plane_coords({0, 0, 1}, 0.0)), P));
    EXPECT_TRUE(orthogonal(OrientedSphere(oracle::sphere_coords({1, 0, 0}, 0.0)), s, P));
    EXPECT_FALSE(orthogonal(s, s, P));
}

TEST(EllipticSpheres, UnitSphere)
{
    const LinearSphereComplex a(basis_vector(4));
    const auto [sp, sm] = elliptic_complex_spheres(a, P);
    EXPECT_LT(oracle::line_distance(sp.rep(), oracle::sphere_coords({0, 0, 0}, 1.0)), 1e-12);
    EXPECT_LT(oracle::line_distance(sm.rep(), oracle::sphere_coords({0, 0, 0}, -1.0)), 1e-12);
    EXPECT_LT(oracle::line_distance(lie_inversion(a, sp.rep()), sm.rep()), 1e-12);
}

TEST(EllipticSpheres, NoRealSpheres)
{
    try {
        elliptic_complex_spheres(LinearSphereComplex(basis_vector(5)), P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoRealSpheres);
    }
}

TEST(Subspace, ComplementAndSignature)
{
    const Basis b = make_basis({basis_vector(1), basis_vector(2), basis_vector(5)});
    EXPECT_EQ(signature(b), (Signature{2, 1, 0}));
    const Basis c = complement(b);
    EXPECT_EQ(c.cols(), 3);
    EXPECT_EQ(signature(c), (Signature{2, 1, 0}));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(inner(b.col(i), c.col(j)), 0.0, 1e-14);
}

TEST(Subspace, PseudoOrthonormalFromNullColumns)
{
    // Two null columns spanning a Lorentzian plane plus a spacelike one.
    const Basis b = make_basis({Vec6(basis_vector(1) + basis_vector(5)), Vec6(basis_vector(1) - basis_vector(5)),
                                Vec6(basis_vector(2) + 0.3 * basis_vector(1))});
    const Basis q = pseudo_orthonormal(b);
    const Eigen::MatrixXd g = gram(q);
    Eigen::Matrix3d expected = Eigen::Matrix3d::Identity();
    expected(2, 2) = -1.0;
    EXPECT_LT((g - expected).norm(), 1e-12);
    EXPECT_LT(subspace_distance(q, b), 1e-12);
}

TEST(Subspace, DegenerateSpanRejected)
{
    const Basis b = make_basis({Vec6(basis_vector(1) + basis_vector(5)), basis_vector(2)});
    EXPECT_EQ(signature(b), (Signature{1, 0, 1}));
    try {
        pseudo_orthonormal(b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSpan);
    }
}

TEST(Normalization, Deterministic)
{
    const Vec6 v = -3.0 * basis_vector(2) + basis_vector(4);
    const Vec6 n = normalized(v);
    EXPECT_NEAR(n.norm(), 1.0, 1e-15);
    EXPECT_GT(n[1], 0.0);
    EXPECT_EQ(normalized(-v), n);
}
