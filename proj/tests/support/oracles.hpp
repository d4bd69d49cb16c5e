#pragma once

// Euclidean reference computations used to check the model independently.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using V3 = Eigen::Vector3d;
using V6 = Eigen::Matrix<double, 6, 1>;

inline double form(const V6& a, const V6& b)
{
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += a[i] * b[i];
    return s - a[4] * b[4] - a[5] * b[5];
}

// Hexaspherical coordinates written out by hand.
inline V6 sphere_coords(const V3& c, double r)
{
    V6 v;
    const double c2 = c.dot(c);
    v << c.x(), c.y(), c.z(), (1.0 - c2 + r * r) / 2.0, (1.0 + c2 - r * r) / 2.0, r;
    return v;
}

inline V6 plane_coords(const V3& unitNormal, double offset)
{
    V6 v;
    v << unitNormal.x(), unitNormal.y(), unitNormal.z(), -offset, offset, 1.0;
    return v;
}

inline V3 position(const V6& v)
{
    return v.head<3>() / (v[3] + v[4]);
}

inline double torus_implicit(const V3& x, double R, double r)
{
    const double rho = std::hypot(x.x(), x.y()) - R;
    return rho * rho + x.z() * x.z() - r * r;
}

// Outward unit normal of the torus around the z-axis.
inline V3 torus_normal(const V3& x, double R)
{
    const V3 axial(x.x(), x.y(), 0.0);
    return (x - R * axial.normalized()).normalized();
}

// Unit tangent at x of a fitted circle.
inline V3 circle_tangent(const V3& center, const V3& normal, const V3& x)
{
    return normal.cross(x - center).normalized();
}

// Dihedral angle of two intersecting spheres from the law of cosines.
inline double sphere_angle(const V3& c1, double r1, const V3& c2, double r2)
{
    const double d2 = (c1 - c2).squaredNorm();
    return std::acos(std::clamp((r1 * r1 + r2 * r2 - d2) / (2.0 * r1 * r2), -1.0, 1.0));
}

struct CircleFit {
    V3 center;
    V3 normal;
    double radius;
    double residual;
};

// Plane by SVD, then an algebraic circle fit inside it; residual is the
// largest radial deviation relative to the radius.
inline CircleFit fit_circle(const std::vector<V3>& pts)
{
    V3 mean = V3::Zero();
    for (const auto& p : pts)
        mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::MatrixXd m(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = pts[i] - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const V3 e1 = svd.matrixU().col(0);
    const V3 e2 = svd.matrixU().col(1);
    const V3 n = svd.matrixU().col(2);

    Eigen::MatrixXd a(static_cast<Eigen::Index>(pts.size()), 3);
    Eigen::VectorXd b(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const V3 d = pts[i] - mean;
        const double x = d.dot(e1), y = d.dot(e2);
        const auto k = static_cast<Eigen::Index>(i);
        a(k, 0) = 2.0 * x;
        a(k, 1) = 2.0 * y;
        a(k, 2) = 1.0;
        b(k) = x * x + y * y;
    }
    const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
    const double rad = std::sqrt(sol[2] + sol[0] * sol[0] + sol[1] * sol[1]);
    const V3 c = mean + sol[0] * e1 + sol[1] * e2;
    double worst = 0.0;
    for (const auto& p : pts) {
        const V3 d = p - c;
        const double off = d.dot(n);
        const double inPlane = (d - off * n).norm();
        worst = std::max(worst, std::hypot(inPlane - rad, off) / rad);
    }
    return {c, n, rad, worst};
}

// Largest distance from the best-fit line, relative to the point spread.
inline double line_residual(const std::vector<V3>& pts)
{
    V3 mean = V3::Zero();
    for (const auto& p : pts)
        mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::MatrixXd m(3, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        m.col(static_cast<Eigen::Index>(i)) = pts[i] - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const V3 dir = svd.matrixU().col(0);
    double spread = 0.0, worst = 0.0;
    for (const auto& p : pts) {
        const V3 d = p - mean;
        spread = std::max(spread, d.norm());
        worst = std::max(worst, (d - d.dot(dir) * dir).norm());
    }
    return worst / std::max(spread, 1.0);
}

// Sine of the angle between two lines.
inline double line_distance(const V6& a, const V6& b)
{
    const V6 x = a.normalized();
    const V6 y = b.normalized();
    return (x - x.dot(y) * y).norm();
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

    V3 vec3(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    V6 vec6(double lo = -1.0, double hi = 1.0)
    {
        V6 v;
        for (int i = 0; i < 6; ++i)
            v[i] = uniform(lo, hi);
        return v;
    }

    V3 unit3()
    {
        V3 v;
        do {
            v = vec3(-1.0, 1.0);
        } while (v.norm() < 1e-3 || v.norm() > 1.0);
        return v.normalized();
    }

    // Nonzero radius with |r| in [lo, hi].
    double radius(double lo, double hi)
    {
        const double r = uniform(lo, hi);
        return uniform(0.0, 1.0) < 0.5 ? -r : r;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace oracle
