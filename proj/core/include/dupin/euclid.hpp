#pragma once

#include <vector>

#include "dupin/incidence.hpp"
#include "dupin/minkowski.hpp"

namespace dupin {

class EuclidSphere {
public:
    enum class Kind { Sphere, Plane, Point, Infinity };

    static EuclidSphere sphere(const Vec3& center, double signedRadius);
    // Plane n.x = offset; the normal is normalized.
    static EuclidSphere plane(const Vec3& normal, double offset);
    static EuclidSphere point(const Vec3& position);
    static EuclidSphere infinity();

    Kind kind() const noexcept { return kind_; }
    const Vec3& center() const noexcept { return v_; }
    double radius() const noexcept { return s_; }
    const Vec3& normal() const noexcept { return v_; }
    double offset() const noexcept { return s_; }
    const Vec3& position() const noexcept { return v_; }

private:
    EuclidSphere(Kind kind, const Vec3& v, double s) : kind_(kind), v_(v), s_(s) {}

    Kind kind_;
    Vec3 v_;
    double s_;
};

OrientedSphere lift(const EuclidSphere& s);
OrientedSphere lift_point(const Vec3& x);
EuclidSphere project(const Vec6& v);

// Position of a finite point sphere; throws unless project() gives a point.
Vec3 point_of(const Vec6& v);

struct SpaceForm {
    Vec6 q;
    double curvature;
};

SpaceForm euclidean_space_form(const PointSphereComplex& p);

struct CircleSample {
    Vec3 x;
    bool at_infinity;
};

std::vector<CircleSample> sample_circle_euclidean(const Circle& c, int n);

Circle circle_through_points(const Vec3& a, const Vec3& b, const Vec3& c,
                             const PointSphereComplex& p = PointSphereComplex::standard());

// True when v projects to the infinity direction within tolerance.
bool is_infinity(const Vec6& v, double eps = 1e-10);

} // namespace dupin
