#include "dupin/cyclide.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dupin/euclid.hpp"

namespace dupin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double t)
{
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    return r;
}

// Distance on the parameter circle.
double circular_gap(double a, double b)
{
    const double d = wrap(a - b);
    return std::min(d, kTwoPi - d);
}

double cross_residual(const Basis& a, const Basis& b)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            const Vec6 x = a.col(i);
            const Vec6 y = b.col(j);
            worst = std::max(worst, std::abs(inner(x, y)) / (x.norm() * y.norm()));
        }
    }
    return worst;
}

bool near_any(double t, const std::vector<double>& roots)
{
    for (double r : roots)
        if (circular_gap(t, r) < kSingularGap)
            return true;
    return false;
}

Vec6 p_orthogonal_part(const Vec6& s, const PointSphereComplex& p)
{
    return s + inner(s, p.rep()) * p.rep();
}

} // namespace

DupinCyclide::DupinCyclide(const Basis& d1, const Basis& d2)
{
    if (d1.cols() != 3 || d2.cols() != 3)
        fail(ErrorCode::DegenerateSpan, "each family plane needs 3 columns");
    if (signature(d1) != Signature{2, 1, 0} || signature(d2) != Signature{2, 1, 0})
        fail(ErrorCode::DegenerateSpan, "family planes must have signature (2,1)");
    if (cross_residual(d1, d2) > 1e-8)
        fail(ErrorCode::DegenerateSpan, "family planes are not orthogonal");
    d1_ = pseudo_orthonormal(d1);
    d2_ = pseudo_orthonormal(d2);
}

DupinCyclide DupinCyclide::from_family(const Basis& d1)
{
    if (signature(d1) != Signature{2, 1, 0})
        fail(ErrorCode::DegenerateSpan, "family plane must have signature (2,1)");
    return DupinCyclide(d1, complement(d1));
}

const Basis& DupinCyclide::plane(int index) const
{
    if (index == 1)
        return d1_;
    if (index == 2)
        return d2_;
    fail(ErrorCode::InvalidArgument, "family index must be 1 or 2");
}

CurvatureSphereFamily::CurvatureSphereFamily(const DupinCyclide& parent, int index)
    : index_(index), basis_(parent.plane(index)), other_(parent.plane(3 - index))
{
}

Vec6 CurvatureSphereFamily::at(double t) const
{
    return std::cos(t) * basis_.col(0) + std::sin(t) * basis_.col(1) + basis_.col(2);
}

Vec6 CurvatureSphereFamily::derivative(double t) const
{
    return -std::sin(t) * basis_.col(0) + std::cos(t) * basis_.col(1);
}

double CurvatureSphereFamily::parameter_of(const Vec6& s) const
{
    if (membership_residual(basis_, s) > 1e-8)
        fail(ErrorCode::InvalidArgument, "sphere is not in the family plane");
    const double c3 = -inner(s, basis_.col(2));
    if (c3 == 0.0)
        fail(ErrorCode::InvalidArgument, "vector is not a sphere of the family");
    const double g = c3 < 0.0 ? -1.0 : 1.0;
    return wrap(std::atan2(g * inner(s, basis_.col(1)), g * inner(s, basis_.col(0))));
}

DupinCyclide cyclide_from_torus(double spineRadius, double tubeRadius, bool allowSingular)
{
    const double R = spineRadius;
    const double r = tubeRadius;
    if (!(R > 0.0) || !(r > 0.0) || (!allowSingular && !(R > r)))
        fail(ErrorCode::DegenerateTorus);
    auto tube = [&](double th) {
        return lift(EuclidSphere::sphere(Vec3(R * std::cos(th), R * std::sin(th), 0.0), r)).rep();
    };
    const double pi = std::numbers::pi;
    const Vec6 b1 = (tube(0.0) - tube(pi)) / (2.0 * R);
    const Vec6 b2 = (tube(0.5 * pi) - tube(1.5 * pi)) / (2.0 * R);
    const Vec6 b3 = (tube(0.0) + tube(pi)) / (2.0 * R);
    return DupinCyclide::from_family(make_basis({b1, b2, b3}));
}

DupinCyclide cyclide_from_curvature_spheres(const OrientedSphere& a, const OrientedSphere& b,
                                            const OrientedSphere& c)
{
    return DupinCyclide::from_family(make_basis({a.rep(), b.rep(), c.rep()}));
}

CurvatureSphereFamily curvature_family(const DupinCyclide& d, int index)
{
    return CurvatureSphereFamily(d, index);
}

OrientedSphere curvature_sphere(const CurvatureSphereFamily& fam, double t)
{
    return OrientedSphere(fam.at(t));
}

std::vector<double> singular_parameters(const CurvatureSphereFamily& fam, const PointSphereComplex& p)
{
    if (membership_residual(fam.basis(), p.rep()) < 1e-9)
        fail(ErrorCode::CircleFamily);
    const double a = inner(fam.basis().col(0), p.rep());
    const double b = inner(fam.basis().col(1), p.rep());
    const double c = inner(fam.basis().col(2), p.rep());
    const double R = std::hypot(a, b);
    const double phi = std::atan2(b, a);
    std::vector<double> roots;
    if (std::abs(R - std::abs(c)) <= 1e-9 * (R + std::abs(c))) {
        roots.push_back(wrap(c < 0.0 ? phi : phi + std::numbers::pi));
    } else if (std::abs(c) < R) {
        const double w = std::acos(-c / R);
        roots.push_back(wrap(phi + w));
        roots.push_back(wrap(phi - w));
        std::sort(roots.begin(), roots.end());
    }
    return roots;
}

ContactElement contact_element(const DupinCyclide& d, double u, double v)
{
    return ContactElement(OrientedSphere(curvature_family(d, 1).at(u)),
                          OrientedSphere(curvature_family(d, 2).at(v)));
}

Vec6 surface_point(const DupinCyclide& d, double u, double v, const PointSphereComplex& p)
{
    return contact_element(d, u, v).point_sphere(p);
}

double on_surface_residual(const DupinCyclide& d, const Vec6& x)
{
    const Vec6 y = project_onto(d.d1(), x);
    return std::abs(inner(y, y)) / x.squaredNorm();
}

Circle curvature_circle(const DupinCyclide& d, int index, double t, const PointSphereComplex& p)
{
    return curvature_circle(CurvatureSphereFamily(d, index), t, p);
}

Circle curvature_circle(const CurvatureSphereFamily& fam, double t, const PointSphereComplex& p)
{
    const Basis span = concat(make_basis({fam.at(t)}), fam.other());
    const Basis gamma = intersect(span, complement(make_basis({p.rep()})));
    if (gamma.cols() != 3)
        fail(ErrorCode::DegenerateSpan, "curvature circle span is not 3-dimensional");
    return Circle(gamma, p);
}

EvolutionMap::EvolutionMap(const CurvatureSphereFamily& fam, double t0, const PointSphereComplex& p)
    : fam_(fam), t0_(t0), p_(p)
{
    const Vec6 s0 = fam.at(t0);
    if (std::abs(inner(s0, p.rep())) < 1e-9 * s0.norm())
        fail(ErrorCode::SingularParameter, "base curvature sphere is a point sphere");
}

LinearSphereComplex EvolutionMap::complex(double t) const
{
    if (circular_gap(t, t0_) < 1e-12)
        fail(ErrorCode::BaseParameter);
    const Vec6 s0 = fam_.at(t0_);
    const Vec6 s = fam_.at(t);
    const double sp = inner(s, p_.rep());
    if (std::abs(sp) < 1e-9 * s.norm())
        fail(ErrorCode::SingularParameter);
    return LinearSphereComplex(sp * s0 - inner(s0, p_.rep()) * s);
}

Vec6 EvolutionMap::apply(double t, const Vec6& v) const
{
    if (circular_gap(t, t0_) < 1e-12)
        return v;
    return lie_inversion(complex(t), v);
}

LinearSphereComplex evolution_complex(const EvolutionMap& e, double t, const PointSphereComplex& p)
{
    if (std::abs(inner(p.rep(), e.p().rep()) + 1.0) > 1e-12)
        return EvolutionMap(e.family(), e.t0(), p).complex(t);
    return e.complex(t);
}

std::vector<double> uniform_parameters(int n)
{
    if (n < 1)
        fail(ErrorCode::InvalidArgument, "sample count must be positive");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = kTwoPi * k / n;
    return out;
}

SphereGrid evolve_circle(const EvolutionMap& e, const Circle& c0, int rSamples,
                         const std::vector<double>& tSamples)
{
    const CurvatureSphereFamily& fam = e.family();
    const Vec6 s0 = fam.at(e.t0());
    if (circle_on_sphere_residual(c0, s0) > 1e-8)
        fail(ErrorCode::NotCurvatureCircle, "circle does not lie on the base curvature sphere");
    const Basis span = concat(make_basis({s0}), fam.other());
    for (Eigen::Index i = 0; i < 3; ++i) {
        if (membership_residual(span, c0.gamma().col(i)) > 1e-8)
            fail(ErrorCode::NotCurvatureCircle, "circle is not a curvature circle");
    }

    const std::vector<double> roots = singular_parameters(fam, e.p());
    SphereGrid g;
    g.u = uniform_parameters(rSamples);
    std::vector<Vec6> base;
    base.reserve(g.u.size());
    for (double u : g.u)
        base.push_back(c0.point(u));

    for (double t : tSamples) {
        if (circular_gap(t, e.t0()) >= 1e-12 && near_any(t, roots)) {
            g.skipped.push_back(t);
            continue;
        }
        g.t.push_back(t);
        if (circular_gap(t, e.t0()) < 1e-12) {
            g.points.insert(g.points.end(), base.begin(), base.end());
            continue;
        }
        const LinearSphereComplex a = e.complex(t);
        for (const Vec6& x : base)
            g.points.push_back(lie_inversion(a, x));
    }
    return g;
}

std::pair<OrientedSphere, OrientedSphere> quer_spheres(const CurvatureSphereFamily& fam, double t,
                                                       const PointSphereComplex& p)
{
    const Vec6 s = fam.at(t);
    const Vec6 ds = fam.derivative(t);
    const double sp = inner(s, p.rep());
    if (std::abs(sp) < 1e-9 * s.norm())
        fail(ErrorCode::SingularParameter);
    // Derivative of s / <s,p>.
    const Vec6 d = (ds * sp - s * inner(ds, p.rep())) / (sp * sp);
    const double n2 = inner(d, d);
    if (!(n2 > 1e-12 * d.squaredNorm()))
        fail(ErrorCode::NonSpacelikeDerivative);
    const double n = std::sqrt(n2);
    return {OrientedSphere(d + n * p.rep()), OrientedSphere(d - n * p.rep())};
}

OrientedSphere evolve_from_pencil(const MSpherePencil& m, double t0, const OrientedSphere& s0, double t)
{
    const PointSphereComplex& p = m.p();
    const Vec6 q0 = m.at(t0);
    if (orthogonality_residual(s0.rep(), q0, p) > 1e-8)
        fail(ErrorCode::NotOrthogonal);
    if (circular_gap(t, t0) < 1e-12)
        return s0;
    const Vec6 q = m.at(t);
    const double qp = inner(q, p.rep());
    const double q0p = inner(q0, p.rep());
    if (std::abs(qp) < 1e-9 * q.norm() || std::abs(q0p) < 1e-9 * q0.norm()
        || std::abs(inner(q0, q)) < 1e-9 * q0.norm() * q.norm())
        fail(ErrorCode::OutsideJStar);
    const LinearSphereComplex a(qp * q0 - q0p * q);
    return OrientedSphere(lie_inversion(a, s0.rep()));
}

PencilSurface surface_from_pencil_and_circle(const MSpherePencil& m, double t0, const Circle& c,
                                             int uSamples, const std::vector<double>& tSamples)
{
    const PointSphereComplex& p = m.p();
    const Vec6 q0 = m.at(t0);
    if (circle_on_sphere_residual(c, q0) > 1e-8)
        fail(ErrorCode::CircleNotOnSphere);
    const double q0p = inner(q0, p.rep());
    if (std::abs(q0p) < 1e-9 * q0.norm())
        fail(ErrorCode::OutsideJStar, "base pencil sphere is a point sphere");

    PencilSurface out;
    out.singular = m.point_sphere_parameters();
    SphereGrid& g = out.grid;
    g.u = uniform_parameters(uSamples);
    std::vector<Vec6> base;
    for (double u : g.u)
        base.push_back(c.point(u));

    for (double t : tSamples) {
        if (circular_gap(t, t0) < 1e-12) {
            g.t.push_back(t);
            g.points.insert(g.points.end(), base.begin(), base.end());
            continue;
        }
        const Vec6 q = m.at(t);
        const double qp = inner(q, p.rep());
        if (near_any(t, out.singular) || std::abs(qp) < 1e-9 * q.norm()
            || std::abs(inner(q0, q)) < 1e-9 * q0.norm() * q.norm()) {
            g.skipped.push_back(t);
            continue;
        }
        const LinearSphereComplex a(qp * q0 - q0p * q);
        g.t.push_back(t);
        for (const Vec6& x : base)
            g.points.push_back(lie_inversion(a, x));
    }
    out.spherical = !g.points.empty() && rank(make_basis(g.points), 1e-9) <= 4;
    return out;
}

Vec6 sphere_through_circle_orthogonal_to(const Circle& c, const Vec6& q, const PointSphereComplex& p)
{
    const Vec6 qbar = p_orthogonal_part(q, p);
    const Basis plane = complement(concat(c.gamma(), make_basis({qbar})));
    if (plane.cols() != 2)
        fail(ErrorCode::DegenerateInput, "sphere is orthogonal to the circle");
    const Basis b = pseudo_orthonormal(plane);
    if (inner(b.col(0), b.col(0)) < 0.0 || inner(b.col(1), b.col(1)) > 0.0)
        fail(ErrorCode::DegenerateInput, "no real sphere through the circle");
    const Vec6 x1 = normalized(b.col(0) + b.col(1));
    const Vec6 x2 = normalized(b.col(0) - b.col(1));
    return inner(x1, p.rep()) <= inner(x2, p.rep()) ? x1 : x2;
}

Circle two_ortho_circle(const DupinCyclide& d, const ContactElement& f1, const ContactElement& f2,
                        const PointSphereComplex& p)
{
    const Basis a = make_basis({f1.s1().rep(), f1.s2().rep()});
    const Basis b = make_basis({f2.s1().rep(), f2.s2().rep()});
    if (subspace_distance(a, b) < 1e-9)
        fail(ErrorCode::CoincidentPoints);
    const Basis common = intersect(a, b);
    if (common.cols() == 0)
        fail(ErrorCode::FourPointIntersection, "contact elements share no sphere");
    const Vec6 s = common.col(0);
    if (membership_residual(d.d1(), s) > 1e-8 && membership_residual(d.d2(), s) > 1e-8)
        fail(ErrorCode::NoCommonCurvatureSphere);
    const Vec6 m1 = f1.point_sphere(p);
    const Vec6 m2 = f2.point_sphere(p);
    if (projective_distance(m1, m2) < tol::projective)
        fail(ErrorCode::CoincidentPoints);
    return Circle(make_basis({m1, m2, p_orthogonal_part(s, p)}), p);
}

SphereGrid two_ortho_cyclide(const EvolutionMap& e, const Circle& cTilde, int uSamples,
                             const std::vector<double>& tSamples)
{
    const PointSphereComplex& p = e.p();
    const auto [qp, qm] = quer_spheres(e.family(), e.t0(), p);
    if (circle_on_sphere_residual(cTilde, qp.rep()) > 1e-8
        && circle_on_sphere_residual(cTilde, qm.rep()) > 1e-8)
        fail(ErrorCode::NotOnQuerSphere);

    const Circle base = curvature_circle(e.family(), e.t0(), p);
    if (subspace_distance(base.gamma(), cTilde.gamma()) < 1e-9)
        fail(ErrorCode::NotOrthogonalToBaseCircle, "circle coincides with the base curvature circle");
    const Vec6 x = sphere_through_circle_orthogonal_to(base, qp.rep(), p);
    const Vec6 y = sphere_through_circle_orthogonal_to(cTilde, qp.rep(), p);
    if (orthogonality_residual(x, y, p) > 1e-8)
        fail(ErrorCode::NotOrthogonalToBaseCircle);

    const std::vector<double> roots = singular_parameters(e.family(), p);
    SphereGrid g;
    g.u = uniform_parameters(uSamples);
    std::vector<Vec6> start;
    for (double u : g.u)
        start.push_back(cTilde.point(u));
    for (double t : tSamples) {
        if (circular_gap(t, e.t0()) >= 1e-12 && near_any(t, roots)) {
            g.skipped.push_back(t);
            continue;
        }
        g.t.push_back(t);
        for (const Vec6& v : start)
            g.points.push_back(e.apply(t, v));
    }
    return g;
}

} // namespace dupin
