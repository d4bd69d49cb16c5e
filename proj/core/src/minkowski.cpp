#include "dupin/minkowski.hpp"

#include <algorithm>
#include <cmath>

#include "dupin/subspace.hpp"

namespace dupin {

double inner(const Vec6& v, const Vec6& w) noexcept
{
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2] + v[3] * w[3] - v[4] * w[4] - v[5] * w[5];
}

Vec6 basis_vector(int i)
{
    if (i < 1 || i > 6)
        fail(ErrorCode::InvalidArgument, "basis index out of range");
    Vec6 e = Vec6::Zero();
    e[i - 1] = 1.0;
    return e;
}

double light_residual(const Vec6& v)
{
    const double n2 = v.squaredNorm();
    if (n2 == 0.0)
        return 0.0;
    return std::abs(inner(v, v)) / n2;
}

bool is_lightlike(const Vec6& v, double eps)
{
    return v.squaredNorm() > 0.0 && light_residual(v) <= eps;
}

Vec6 normalized(const Vec6& v)
{
    const double n = v.norm();
    if (n == 0.0)
        fail(ErrorCode::InvalidArgument, "zero vector has no projective class");
    Vec6 u = v / n;
    for (int i = 0; i < 6; ++i) {
        if (std::abs(u[i]) > 1e-12) {
            if (u[i] < 0.0)
                u = -u;
            break;
        }
    }
    return u;
}

double projective_distance(const Vec6& v, const Vec6& w)
{
    const double nv = v.norm();
    const double nw = w.norm();
    if (nv == 0.0 || nw == 0.0)
        return 1.0;
    const Vec6 a = v / nv;
    const Vec6 b = w / nw;
    return (a - a.dot(b) * b).norm();
}

bool same_point(const Vec6& v, const Vec6& w, double eps)
{
    return projective_distance(v, w) < eps;
}

OrientedSphere::OrientedSphere(const Vec6& rep) : rep_(rep)
{
    if (!rep.allFinite() || rep.squaredNorm() == 0.0)
        fail(ErrorCode::NotLightlike, "sphere representative must be finite and nonzero");
    if (light_residual(rep) > tol::light)
        fail(ErrorCode::NotLightlike, "sphere representative is off the light cone");
}

PointSphereComplex::PointSphereComplex(const Vec6& rep)
{
    const double q = inner(rep, rep);
    if (!rep.allFinite() || !(q < -1e-12 * rep.squaredNorm()))
        fail(ErrorCode::InvalidArgument, "point sphere complex must be timelike");
    rep_ = rep / std::sqrt(-q);
}

PointSphereComplex PointSphereComplex::standard()
{
    return PointSphereComplex(basis_vector(6));
}

const char* to_string(ComplexKind kind) noexcept
{
    switch (kind) {
    case ComplexKind::Parabolic: return "parabolic";
    case ComplexKind::Hyperbolic: return "hyperbolic";
    case ComplexKind::Elliptic: return "elliptic";
    }
    return "unknown";
}

ComplexKind classify_complex(const Vec6& a)
{
    const double q = inner(a, a);
    if (std::abs(q) < tol::light * a.squaredNorm())
        return ComplexKind::Parabolic;
    return q < 0.0 ? ComplexKind::Hyperbolic : ComplexKind::Elliptic;
}

LinearSphereComplex::LinearSphereComplex(const Vec6& rep) : rep_(rep), kind_(ComplexKind::Parabolic)
{
    if (!rep.allFinite() || rep.squaredNorm() == 0.0)
        fail(ErrorCode::InvalidArgument, "complex representative must be finite and nonzero");
    kind_ = classify_complex(rep);
}

ContactElement::ContactElement(const OrientedSphere& s1, const OrientedSphere& s2) : s1_(s1), s2_(s2)
{
    const Vec6& a = s1.rep();
    const Vec6& b = s2.rep();
    if (std::abs(inner(a, b)) > tol::light * a.norm() * b.norm())
        fail(ErrorCode::InvalidArgument, "contact element spheres are not in oriented contact");
    if (projective_distance(a, b) < tol::projective)
        fail(ErrorCode::DegenerateInput, "contact element needs two distinct spheres");
}

Vec6 ContactElement::point_sphere(const PointSphereComplex& p) const
{
    const Vec6& a = s1_.rep();
    const Vec6& b = s2_.rep();
    Vec6 m = inner(b, p.rep()) * a - inner(a, p.rep()) * b;
    if (m.norm() < 1e-14 * a.norm() * b.norm())
        fail(ErrorCode::DegenerateInput, "contact element of two point spheres");
    return m;
}

Vec6 lie_inversion(const LinearSphereComplex& a, const Vec6& r)
{
    const Vec6& v = a.rep();
    const double q = inner(v, v);
    if (a.kind() == ComplexKind::Parabolic)
        fail(ErrorCode::ParabolicComplex);
    return r - (2.0 * inner(r, v) / q) * v;
}

OrientedSphere lie_inversion(const LinearSphereComplex& a, const OrientedSphere& s)
{
    return OrientedSphere(lie_inversion(a, s.rep()));
}

Vec6 flip_orientation(const Vec6& s, const PointSphereComplex& p)
{
    return s + 2.0 * inner(s, p.rep()) * p.rep();
}

LinearSphereComplex complex_from_sphere_pair(const OrientedSphere& s1, const OrientedSphere& s2,
                                             const PointSphereComplex& p)
{
    const Vec6& x = s1.rep();
    const Vec6& y = s2.rep();
    const double xp = inner(x, p.rep());
    const double yp = inner(y, p.rep());
    const double scale = x.norm() * y.norm();
    if (std::abs(xp) < 1e-12 * x.norm() && std::abs(yp) < 1e-12 * y.norm())
        fail(ErrorCode::DegeneratePair, "both spheres are point spheres");
    const Vec6 a = yp * x - xp * y;
    if (a.norm() < 1e-12 * scale)
        fail(ErrorCode::DegeneratePair, "spheres coincide");
    // Tangent spheres give a parabolic complex, which has no inversion.
    if (classify_complex(a) == ComplexKind::Parabolic)
        fail(ErrorCode::DegeneratePair, "spheres are in oriented contact");
    return LinearSphereComplex(a);
}

LinearSphereComplex inversion_from_four_spheres(const OrientedSphere& s1, const OrientedSphere& s2,
                                                const OrientedSphere& s3, const OrientedSphere& s4,
                                                const PointSphereComplex& p)
{
    const Vec6* s[4] = {&s1.rep(), &s2.rep(), &s3.rep(), &s4.rep()};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (projective_distance(*s[i], *s[j]) < tol::projective)
                continue;
            if (std::abs(inner(*s[i], *s[j])) < tol::light * s[i]->norm() * s[j]->norm())
                fail(ErrorCode::ContactViolation, "two of the four spheres are in oriented contact");
        }
    }

    Eigen::Matrix<double, 6, 4> m;
    const double sign[4] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i)
        m.col(i) = sign[i] * *s[i] / s[i]->norm();

    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 4>> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh = 1e-8 * sv[0];
    if (sv[3] > thresh)
        fail(ErrorCode::NoLinearRelation, "the four spheres are linearly independent");

    Eigen::Vector4d alpha = svd.matrixV().col(3);
    if (sv[2] <= thresh) {
        // Two-dimensional relation space: pick the member whose complex is p-orthogonal.
        const Eigen::Vector4d n1 = svd.matrixV().col(2);
        const Eigen::Vector4d n2 = svd.matrixV().col(3);
        auto complex_of = [&](const Eigen::Vector4d& c) {
            return Vec6(c[0] * m.col(0) + c[1] * m.col(1));
        };
        const double g1 = inner(complex_of(n1), p.rep());
        const double g2 = inner(complex_of(n2), p.rep());
        if (std::abs(g1) + std::abs(g2) > 0.0)
            alpha = g2 * n1 - g1 * n2;
    }
    for (int i = 0; i < 4; ++i) {
        if (std::abs(alpha[i]) < 1e-10 * alpha.norm())
            fail(ErrorCode::NoLinearRelation, "degenerate linear relation");
    }
    const Vec6 a = alpha[0] * m.col(0) + alpha[1] * m.col(1);
    if (classify_complex(a) == ComplexKind::Parabolic)
        fail(ErrorCode::ContactViolation, "resulting complex is parabolic");
    return LinearSphereComplex(a);
}

double inversive_distance(const OrientedSphere& s1, const OrientedSphere& s2,
                          const PointSphereComplex& p)
{
    const Vec6& x = s1.rep();
    const Vec6& y = s2.rep();
    const double xp = inner(x, p.rep());
    const double yp = inner(y, p.rep());
    if (std::abs(xp) < 1e-12 * x.norm() || std::abs(yp) < 1e-12 * y.norm())
        fail(ErrorCode::PointSphereArgument);
    return 1.0 - inner(x, y) * inner(p.rep(), p.rep()) / (xp * yp);
}

double angle(const OrientedSphere& s1, const OrientedSphere& s2, const PointSphereComplex& p)
{
    const double c = inversive_distance(s1, s2, p);
    if (std::abs(c) > 1.0 + 1e-9)
        fail(ErrorCode::NonIntersecting);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double orthogonality_residual(const Vec6& v, const Vec6& w, const PointSphereComplex& p)
{
    const double n = v.norm() * w.norm();
    if (n == 0.0)
        return 0.0;
    return std::abs(inner(v, w + inner(w, p.rep()) * p.rep())) / n;
}

bool orthogonal(const OrientedSphere& s1, const OrientedSphere& s2, const PointSphereComplex& p,
                double eps)
{
    return orthogonality_residual(s1.rep(), s2.rep(), p) < eps;
}

std::pair<OrientedSphere, OrientedSphere> elliptic_complex_spheres(const LinearSphereComplex& a,
                                                                   const PointSphereComplex& p)
{
    // <a + l p, a + l p> = <a,a> + 2 l <a,p> - l^2
    const Vec6& v = a.rep();
    const double ap = inner(v, p.rep());
    const double disc = ap * ap + inner(v, v);
    if (disc < -tol::light * v.squaredNorm())
        fail(ErrorCode::NoRealSpheres);
    const double root = std::sqrt(std::max(disc, 0.0));
    return {OrientedSphere(v + (ap + root) * p.rep()), OrientedSphere(v + (ap - root) * p.rep())};
}

} // namespace dupin
