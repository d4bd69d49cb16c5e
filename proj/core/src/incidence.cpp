#include "dupin/incidence.hpp"

#include <cmath>
#include <numbers>

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

double sign_of(double x)
{
    return x < 0.0 ? -1.0 : 1.0;
}

} // namespace

Circle::Circle(const Basis& gamma, const PointSphereComplex& p)
{
    if (gamma.cols() != 3)
        fail(ErrorCode::DegenerateSpan, "circle needs a 3-dimensional span");
    for (Eigen::Index i = 0; i < 3; ++i) {
        const Vec6 g = gamma.col(i);
        if (std::abs(inner(g, p.rep())) > 1e-9 * g.norm())
            fail(ErrorCode::InvalidArgument, "circle span must consist of point spheres");
    }
    if (signature(gamma) != Signature{2, 1, 0})
        fail(ErrorCode::DegenerateSpan, "circle span must have signature (2,1)");
    gamma_ = pseudo_orthonormal(gamma);
    perp_ = pseudo_orthonormal(complement(gamma_));
}

Vec6 Circle::point(double u) const
{
    return std::cos(u) * gamma_.col(0) + std::sin(u) * gamma_.col(1) + gamma_.col(2);
}

OrientedSphere circle_point(const Circle& c, double u)
{
    return OrientedSphere(c.point(u));
}

Circle orthogonal_circle(const OrientedSphere& m1, const OrientedSphere& m2, const OrientedSphere& s,
                         const PointSphereComplex& p)
{
    for (const Vec6* m : {&m1.rep(), &m2.rep()}) {
        if (std::abs(inner(*m, p.rep())) > 1e-9 * m->norm())
            fail(ErrorCode::InvalidArgument, "circle points must be point spheres");
        if (orthogonality_residual(*m, s.rep(), p) > tol::orthogonal)
            fail(ErrorCode::NotOnSphere);
    }
    if (projective_distance(m1.rep(), m2.rep()) < tol::projective)
        fail(ErrorCode::CoincidentPoints);
    const Vec6 sbar = s.rep() + inner(s.rep(), p.rep()) * p.rep();
    return Circle(make_basis({m1.rep(), m2.rep(), sbar}), p);
}

Basis spheres_orthogonal_to_circle(const ContactElement& f, const ContactElement& fhat,
                                   const PointSphereComplex& p)
{
    const Basis a = make_basis({f.s1().rep(), f.s2().rep()});
    const Basis b = make_basis({fhat.s1().rep(), fhat.s2().rep()});
    const Basis common = intersect(a, b);
    if (common.cols() == 0)
        fail(ErrorCode::NoCommonSphere);
    if (common.cols() > 1)
        fail(ErrorCode::DegenerateInput, "contact elements coincide");
    const Basis s = orthonormal_span(concat(concat(a, b), make_basis({p.rep()})));
    if (s.cols() != 4)
        fail(ErrorCode::DegenerateSpan, "sphere space is not 4-dimensional");
    return s;
}

double on_circle_residual(const Circle& c, const Vec6& v)
{
    return membership_residual(c.gamma(), v);
}

double circle_on_sphere_residual(const Circle& c, const Vec6& s)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < 3; ++i) {
        const Vec6 g = c.gamma().col(i);
        worst = std::max(worst, std::abs(inner(g, s)) / (g.norm() * s.norm()));
    }
    return worst;
}

double circle_orthogonality_residual(const Circle& c, const Vec6& s, const PointSphereComplex& p)
{
    const Vec6 sbar = s + inner(s, p.rep()) * p.rep();
    return membership_residual(c.gamma(), sbar);
}

double circle_sphere_angle(const Circle& c, const Vec6& s, const PointSphereComplex& p)
{
    const Vec6 sbar = s + inner(s, p.rep()) * p.rep();
    const Vec6 g = project_onto(c.gamma(), sbar);
    const Vec6 h = sbar - g;
    return std::atan2(std::sqrt(std::abs(inner(g, g))), std::sqrt(std::max(inner(h, h), 0.0)));
}

const char* to_string(PencilKind kind) noexcept
{
    switch (kind) {
    case PencilKind::Pencil0: return "0-pencil";
    case PencilKind::Pencil1: return "1-pencil";
    case PencilKind::Pencil2: return "2-pencil";
    }
    return "unknown";
}

MSpherePencil::MSpherePencil(const OrientedSphere& s1, const OrientedSphere& s2,
                             const PointSphereComplex& p)
    : s1_(s1), s2_(s2), p_(p), kind_(PencilKind::Pencil0), sigma_(1.0), t1_(0.0), flipped_(false)
{
    const Vec6& pv = p.rep();
    const double a = inner(s1.rep(), pv);
    const double b = inner(s2.rep(), pv);
    if (std::abs(a) < 1e-12 * s1.rep().norm() || std::abs(b) < 1e-12 * s2.rep().norm())
        fail(ErrorCode::PointSphereArgument, "pencil generators must not be point spheres");
    if (membership_residual(make_basis({s2.rep(), pv}), s1.rep()) < 1e-9)
        fail(ErrorCode::DegeneratePencil);

    const double c = inversive_distance(s1, s2, p);
    if (std::abs(c) < 1.0 - 1e-9)
        kind_ = PencilKind::Pencil0;
    else if (std::abs(c) > 1.0 + 1e-9)
        kind_ = PencilKind::Pencil2;
    else
        kind_ = PencilKind::Pencil1;

    const Vec6 x1 = s1.rep() + a * pv;
    const Vec6 x2 = s2.rep() + b * pv;
    e_ = x1 / std::sqrt(inner(x1, x1));
    sigma_ = -sign_of(a);
    const Vec6 f0 = x2 - inner(x2, e_) * e_;
    const double ff = inner(f0, f0);

    switch (kind_) {
    case PencilKind::Pencil0: {
        f_ = f0 / std::sqrt(std::abs(ff));
        double ce = inner(x2, e_);
        double cf = inner(x2, f_);
        // s2 ~ x2^ + sigma2 p; the opposite sign is reached through -x2^.
        if (-sign_of(b) != sigma_) {
            ce = -ce;
            cf = -cf;
        }
        t1_ = wrap(std::atan2(cf, ce));
        break;
    }
    case PencilKind::Pencil2: {
        f_ = f0 / std::sqrt(std::abs(ff));
        const double alpha = inner(x2, e_);
        const double beta = -inner(x2, f_);
        t1_ = wrap(std::atan2(beta / alpha, -b / (alpha * sigma_)));
        break;
    }
    case PencilKind::Pencil1: {
        const double n = f0.norm();
        f_ = f0 / n;
        const double alpha = inner(x2, e_);
        flipped_ = std::abs(-b - sigma_ * alpha) > std::abs(-b + sigma_ * alpha);
        t1_ = wrap(2.0 * std::atan2(n, alpha));
        break;
    }
    }
}

Vec6 MSpherePencil::at(double t) const
{
    const Vec6& pv = p_.rep();
    switch (kind_) {
    case PencilKind::Pencil0:
        return std::cos(t) * e_ + std::sin(t) * f_ + sigma_ * pv;
    case PencilKind::Pencil2:
        return e_ + std::sin(t) * f_ + sigma_ * std::cos(t) * pv;
    case PencilKind::Pencil1:
        return std::cos(0.5 * t) * (e_ + sigma_ * pv) + std::sin(0.5 * t) * f_;
    }
    return Vec6::Zero();
}

Vec6 MSpherePencil::derivative(double t) const
{
    const Vec6& pv = p_.rep();
    switch (kind_) {
    case PencilKind::Pencil0:
        return -std::sin(t) * e_ + std::cos(t) * f_;
    case PencilKind::Pencil2:
        return std::cos(t) * f_ - sigma_ * std::sin(t) * pv;
    case PencilKind::Pencil1:
        return 0.5 * (-std::sin(0.5 * t) * (e_ + sigma_ * pv) + std::cos(0.5 * t) * f_);
    }
    return Vec6::Zero();
}

std::vector<double> MSpherePencil::point_sphere_parameters() const
{
    switch (kind_) {
    case PencilKind::Pencil0:
        return {};
    case PencilKind::Pencil1:
        return {std::numbers::pi};
    case PencilKind::Pencil2:
        return {0.5 * std::numbers::pi, 1.5 * std::numbers::pi};
    }
    return {};
}

Basis MSpherePencil::span() const
{
    return make_basis({s1_.rep(), s2_.rep(), p_.rep()});
}

MSpherePencil classify_pencil(const OrientedSphere& s1, const OrientedSphere& s2,
                              const PointSphereComplex& p)
{
    return MSpherePencil(s1, s2, p);
}

OrientedSphere pencil_sphere(const MSpherePencil& m, double t)
{
    return OrientedSphere(m.at(t));
}

} // namespace dupin
