#include "dupin/euclid.hpp"

#include <cmath>
#include <numbers>

namespace dupin {

EuclidSphere EuclidSphere::sphere(const Vec3& center, double signedRadius)
{
    if (!center.allFinite() || !std::isfinite(signedRadius))
        fail(ErrorCode::InvalidArgument, "sphere data must be finite");
    if (signedRadius == 0.0)
        return point(center);
    return EuclidSphere(Kind::Sphere, center, signedRadius);
}

EuclidSphere EuclidSphere::plane(const Vec3& normal, double offset)
{
    const double n = normal.norm();
    if (!normal.allFinite() || !std::isfinite(offset) || n == 0.0)
        fail(ErrorCode::InvalidArgument, "plane needs a finite nonzero normal");
    return EuclidSphere(Kind::Plane, normal / n, offset / n);
}

EuclidSphere EuclidSphere::point(const Vec3& position)
{
    if (!position.allFinite())
        fail(ErrorCode::InvalidArgument, "point must be finite");
    return EuclidSphere(Kind::Point, position, 0.0);
}

EuclidSphere EuclidSphere::infinity()
{
    return EuclidSphere(Kind::Infinity, Vec3::Zero(), 0.0);
}

OrientedSphere lift(const EuclidSphere& s)
{
    Vec6 v;
    switch (s.kind()) {
    case EuclidSphere::Kind::Sphere:
    case EuclidSphere::Kind::Point: {
        const Vec3& c = s.center();
        const double r = s.radius();
        const double c2 = c.squaredNorm();
        v << c[0], c[1], c[2], 0.5 * (1.0 - c2 + r * r), 0.5 * (1.0 + c2 - r * r), r;
        break;
    }
    case EuclidSphere::Kind::Plane: {
        const Vec3& n = s.normal();
        v << n[0], n[1], n[2], -s.offset(), s.offset(), 1.0;
        break;
    }
    case EuclidSphere::Kind::Infinity:
        v << 0.0, 0.0, 0.0, -1.0, 1.0, 0.0;
        break;
    }
    return OrientedSphere(v);
}

OrientedSphere lift_point(const Vec3& x)
{
    return lift(EuclidSphere::point(x));
}

EuclidSphere project(const Vec6& v)
{
    if (!is_lightlike(v))
        fail(ErrorCode::NotLightlike);
    const double n = v.norm();
    const double w = v[3] + v[4];
    if (std::abs(w) < 1e-10 * n) {
        if (std::abs(v[5]) < 1e-10 * n)
            return EuclidSphere::infinity();
        return EuclidSphere::plane(v.head<3>() / v[5], -v[3] / v[5]);
    }
    const Vec6 u = v / w;
    if (std::abs(u[5]) < 1e-12 * u.norm())
        return EuclidSphere::point(u.head<3>());
    return EuclidSphere::sphere(u.head<3>(), u[5]);
}

Vec3 point_of(const Vec6& v)
{
    const EuclidSphere s = project(v);
    if (s.kind() == EuclidSphere::Kind::Point)
        return s.position();
    if (s.kind() == EuclidSphere::Kind::Sphere && std::abs(s.radius()) < 1e-9 * (1.0 + s.center().norm()))
        return s.center();
    fail(ErrorCode::InvalidArgument, "vector is not a finite point sphere");
}

bool is_infinity(const Vec6& v, double eps)
{
    const double n = v.norm();
    return std::abs(v[3] + v[4]) < eps * n && std::abs(v[5]) < 1e-6 * n;
}

SpaceForm euclidean_space_form(const PointSphereComplex& p)
{
    const Vec6 q = basis_vector(5) - basis_vector(4);
    if (std::abs(inner(q, p.rep())) > 1e-12)
        fail(ErrorCode::UnsupportedChart, "Euclidean chart needs the standard point sphere complex");
    return {q, -inner(q, q)};
}

std::vector<CircleSample> sample_circle_euclidean(const Circle& c, int n)
{
    if (n < 3)
        fail(ErrorCode::InvalidArgument, "need at least 3 samples");
    std::vector<CircleSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double u = 2.0 * std::numbers::pi * k / n;
        const Vec6 v = c.point(u);
        if (is_infinity(v))
            out.push_back({Vec3::Zero(), true});
        else
            out.push_back({v.head<3>() / (v[3] + v[4]), false});
    }
    return out;
}

Circle circle_through_points(const Vec3& a, const Vec3& b, const Vec3& c, const PointSphereComplex& p)
{
    return Circle(make_basis({lift_point(a).rep(), lift_point(b).rep(), lift_point(c).rep()}), p);
}

} // namespace dupin
