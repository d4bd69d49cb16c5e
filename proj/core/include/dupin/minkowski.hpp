#pragma once

#include <utility>

#include <Eigen/Dense>

#include "dupin/error.hpp"

// Vectors of R^{4,2}: e1..e4 spacelike, e5, e6 timelike.

namespace dupin {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec3 = Eigen::Vector3d;

namespace tol {
inline constexpr double light = 1e-9;
inline constexpr double projective = 1e-9;
inline constexpr double orthogonal = 1e-9;
} // namespace tol

double inner(const Vec6& v, const Vec6& w) noexcept;

// e_i with 1-based index, matching the coordinate names x1..x6.
Vec6 basis_vector(int i);

// |<v,v>| / |v|^2, zero for lightlike v.
double light_residual(const Vec6& v);
bool is_lightlike(const Vec6& v, double eps = tol::light);

// Unit Euclidean norm, first nonzero coordinate positive.
Vec6 normalized(const Vec6& v);

// Sine of the angle between the lines spanned by v and w.
double projective_distance(const Vec6& v, const Vec6& w);
bool same_point(const Vec6& v, const Vec6& w, double eps = tol::projective);

class OrientedSphere {
public:
    explicit OrientedSphere(const Vec6& rep);

    const Vec6& rep() const noexcept { return rep_; }

private:
    Vec6 rep_;
};

class PointSphereComplex {
public:
    // Rescales to <p,p> = -1; throws InvalidArgument unless timelike.
    explicit PointSphereComplex(const Vec6& rep);

    static PointSphereComplex standard();

    const Vec6& rep() const noexcept { return rep_; }

private:
    Vec6 rep_;
};

enum class ComplexKind { Parabolic, Hyperbolic, Elliptic };

const char* to_string(ComplexKind kind) noexcept;
ComplexKind classify_complex(const Vec6& a);

class LinearSphereComplex {
public:
    explicit LinearSphereComplex(const Vec6& rep);

    const Vec6& rep() const noexcept { return rep_; }
    ComplexKind kind() const noexcept { return kind_; }

private:
    Vec6 rep_;
    ComplexKind kind_;
};

class ContactElement {
public:
    ContactElement(const OrientedSphere& s1, const OrientedSphere& s2);

    const OrientedSphere& s1() const noexcept { return s1_; }
    const OrientedSphere& s2() const noexcept { return s2_; }

    // The unique point sphere of the pencil.
    Vec6 point_sphere(const PointSphereComplex& p) const;

private:
    OrientedSphere s1_;
    OrientedSphere s2_;
};

Vec6 lie_inversion(const LinearSphereComplex& a, const Vec6& r);
OrientedSphere lie_inversion(const LinearSphereComplex& a, const OrientedSphere& s);

// Reverses orientation: the reflection in p-perp.
Vec6 flip_orientation(const Vec6& s, const PointSphereComplex& p);

LinearSphereComplex complex_from_sphere_pair(const OrientedSphere& s1,
                                             const OrientedSphere& s2,
                                             const PointSphereComplex& p);

// Complex a with sigma_a(s1) ~ s2 and sigma_a(s4) ~ s3. If the linear relation
// is not unique the p-orthogonal solution is returned.
LinearSphereComplex inversion_from_four_spheres(const OrientedSphere& s1,
                                                const OrientedSphere& s2,
                                                const OrientedSphere& s3,
                                                const OrientedSphere& s4,
                                                const PointSphereComplex& p
                                                = PointSphereComplex::standard());

// Unclamped cosine of the intersection angle.
double inversive_distance(const OrientedSphere& s1, const OrientedSphere& s2,
                          const PointSphereComplex& p);
double angle(const OrientedSphere& s1, const OrientedSphere& s2, const PointSphereComplex& p);

// <v, w + <w,p>p> / (|v||w|)
double orthogonality_residual(const Vec6& v, const Vec6& w, const PointSphereComplex& p);
bool orthogonal(const OrientedSphere& s1, const OrientedSphere& s2, const PointSphereComplex& p,
                double eps = tol::orthogonal);

// The two lightlike directions of span(a, p), "+" root first.
std::pair<OrientedSphere, OrientedSphere> elliptic_complex_spheres(const LinearSphereComplex& a,
                                                                   const PointSphereComplex& p);

} // namespace dupin
