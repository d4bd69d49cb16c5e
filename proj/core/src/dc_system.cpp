#include "dupin/dc_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dupin {

namespace {

using Mat6 = Eigen::Matrix<double, 6, 6>;

Mat6 reflection_matrix(const Vec6& v)
{
    Mat6 eta = Mat6::Identity();
    eta(4, 4) = -1.0;
    eta(5, 5) = -1.0;
    return Mat6::Identity() - (2.0 / inner(v, v)) * v * (eta * v).transpose();
}

Basis image(const LinearSphereComplex& a, const Basis& b)
{
    Basis out(6, b.cols());
    for (Eigen::Index i = 0; i < b.cols(); ++i)
        out.col(i) = lie_inversion(a, Vec6(b.col(i)));
    return out;
}

Vec6 euclidean_q()
{
    return basis_vector(5) - basis_vector(4);
}

struct EuclidNormal {
    Vec3 n;
    bool ok;
};

EuclidNormal normal_at(const Vec6& sphere, const Vec3& x)
{
    const EuclidSphere s = project(sphere);
    if (s.kind() == EuclidSphere::Kind::Plane)
        return {s.normal(), true};
    if (s.kind() == EuclidSphere::Kind::Sphere) {
        const Vec3 d = x - s.center();
        const double n = d.norm();
        if (n > 0.0)
            return {d / n, true};
    }
    return {Vec3::Zero(), false};
}

} // namespace

RibaucourPair ribaucour_transform(const DupinCyclide& d, const LinearSphereComplex& a,
                                  const PointSphereComplex& p)
{
    if (a.kind() == ComplexKind::Parabolic)
        fail(ErrorCode::ParabolicComplex);
    if (projective_distance(a.rep(), p.rep()) < tol::projective)
        fail(ErrorCode::PointSphereComplexArgument);
    return {d, a, DupinCyclide(image(a, d.d1()), image(a, d.d2()))};
}

Vec6 ribaucour_sphere(const RibaucourPair& pair, double u, double v)
{
    const Vec6 s1 = curvature_family(pair.delta, 1).at(u);
    const Vec6 s2 = curvature_family(pair.delta, 2).at(v);
    const Vec6& a = pair.a.rep();
    return inner(s2, a) * s1 - inner(s1, a) * s2;
}

DupinCyclide ribaucour_cyclide(const RibaucourPair& pair, int direction, double fixedParam,
                               double otherParam)
{
    if (direction != 1 && direction != 2)
        fail(ErrorCode::InvalidArgument, "direction must be 1 or 2");
    // r = <s2,a> s1 - <s1,a> s2 differentiated along the moving family; the fixed sphere is constant.
    const CurvatureSphereFamily moving = curvature_family(pair.delta, direction == 1 ? 2 : 1);
    const Vec6 fixed = curvature_family(pair.delta, direction).at(fixedParam);
    const Vec6& a = pair.a.rep();
    const double sign = direction == 1 ? 1.0 : -1.0;
    auto r = [&](const Vec6& m) -> Vec6 { return sign * (inner(m, a) * fixed - inner(fixed, a) * m); };
    const Vec6 m0 = moving.at(otherParam);
    const Vec6 m1 = moving.derivative(otherParam);
    const Vec6 m2 = moving.basis().col(2) - m0;
    const Vec6 r0 = r(m0);
    const Vec6 r1 = r(m1);
    const Vec6 r2 = r(m2);
    const Basis c = make_basis({r0, r1, r2});
    if (rank(c, 1e-7) < 3)
        fail(ErrorCode::DegenerateSpan, "Ribaucour sphere derivatives are dependent");
    return DupinCyclide::from_family(c);
}

const char* to_string(FamilyType type) noexcept
{
    switch (type) {
    case FamilyType::Type1: return "Type1";
    case FamilyType::Type2: return "Type2";
    case FamilyType::Type3: return "Type3";
    }
    return "unknown";
}

FamilyClassification classify_family(const LinearSphereComplex& a, const PointSphereComplex& p)
{
    if (projective_distance(a.rep(), p.rep()) < tol::projective)
        fail(ErrorCode::PointSphereComplexArgument);
    const Vec6 e1 = a.rep() + inner(a.rep(), p.rep()) * p.rep();
    const double q = inner(e1, e1);
    FamilyClassification out{FamilyType::Type1, {e1, 0.0}, e1, std::nullopt, false};
    if (std::abs(q) < tol::light * e1.squaredNorm()) {
        out.type = FamilyType::Type1;
        out.spaceForm = {e1, 0.0};
        const bool standard = std::abs(std::abs(p.rep()[5]) - 1.0) < 1e-12;
        out.concurrent = !standard || projective_distance(e1, euclidean_q()) > tol::projective;
        return out;
    }
    const Vec6 u = e1 / std::sqrt(std::abs(q));
    out.spaceForm = {u, -inner(u, u)};
    if (q > 0.0) {
        out.type = FamilyType::Type2;
        out.umbilic.emplace(OrientedSphere(u + p.rep()), OrientedSphere(u - p.rep()));
    } else {
        out.type = FamilyType::Type3;
    }
    return out;
}

LameFamily::LameFamily(const DupinCyclide& d, const LinearSphereComplex& a, const PointSphereComplex& p)
    : delta_(d), a_(a), p_(p), info_(classify_family(a, p)), u_(info_.spaceForm.q)
{
}

Vec6 LameFamily::direction(double param) const
{
    if (info_.type == FamilyType::Type1)
        return u_ + param * p_.rep();
    return std::cos(param) * u_ + std::sin(param) * p_.rep();
}

double LameFamily::parameter_of(const Vec6& b) const
{
    const double bp = inner(b, p_.rep());
    const Vec6 bu = b + bp * p_.rep();
    if (info_.type == FamilyType::Type1) {
        const double c = bu.dot(u_) / u_.squaredNorm();
        if (std::abs(c) < 1e-12 * b.norm() || (bu - c * u_).norm() > 1e-8 * b.norm())
            fail(ErrorCode::InvalidArgument, "vector is not of the form e1 + lambda p");
        return -bp / c;
    }
    const double alpha = inner(b, u_) / inner(u_, u_);
    if ((bu - alpha * u_).norm() > 1e-8 * b.norm())
        fail(ErrorCode::InvalidArgument, "vector is not in span(a, p)");
    return std::atan2(-bp, alpha);
}

std::vector<double> LameFamily::null_parameters() const
{
    const double pi = std::numbers::pi;
    switch (info_.type) {
    case FamilyType::Type1: return {0.0};
    case FamilyType::Type2: return {-0.75 * pi, -0.25 * pi, 0.25 * pi, 0.75 * pi};
    case FamilyType::Type3: return {};
    }
    return {};
}

bool LameFamily::is_null(double param) const
{
    return light_residual(direction(param)) < tol::light;
}

DupinCyclide LameFamily::member(double param) const
{
    if (is_null(param))
        fail(ErrorCode::NullDirection);
    const LinearSphereComplex b(direction(param));
    return DupinCyclide(image(b, delta_.d1()), image(b, delta_.d2()));
}

ContactElement LameFamily::member_contact_element(double param, double u, double v) const
{
    if (is_null(param))
        fail(ErrorCode::NullDirection);
    const LinearSphereComplex b(direction(param));
    const Vec6 s1 = curvature_family(delta_, 1).at(u);
    const Vec6 s2 = curvature_family(delta_, 2).at(v);
    return ContactElement(OrientedSphere(lie_inversion(b, s1)), OrientedSphere(lie_inversion(b, s2)));
}

Vec6 LameFamily::point(double u, double v, double param) const
{
    return member_contact_element(param, u, v).point_sphere(p_);
}

LameResult lame_family(const DupinCyclide& d, const LinearSphereComplex& a, const PointSphereComplex& p,
                       const std::vector<double>& params)
{
    LameResult out{LameFamily(d, a, p), {}, {}, {}};
    for (double t : params) {
        if (out.family.is_null(t)) {
            out.skipped.push_back(t);
            continue;
        }
        out.members.push_back({t, LinearSphereComplex(out.family.direction(t)), out.family.member(t)});
    }
    if (const auto& u = out.family.classification().umbilic) {
        out.umbilic.push_back(u->first);
        out.umbilic.push_back(u->second);
    }
    return out;
}

Circle congruence_circle(const RibaucourPair& pair, double u, double v, const PointSphereComplex& p)
{
    const ContactElement f = contact_element(pair.delta, u, v);
    const ContactElement fh = contact_element(pair.deltaHat, u, v);
    const Vec6 r = ribaucour_sphere(pair, u, v);
    return Circle(make_basis({f.point_sphere(p), fh.point_sphere(p), r + inner(r, p.rep()) * p.rep()}), p);
}

LinearSphereComplex connecting_complex(const LameFamily& fam, double from, double to)
{
    if (fam.is_null(from) || fam.is_null(to))
        fail(ErrorCode::NullDirection);
    const Vec6& p = fam.p().rep();
    const Mat6 t = reflection_matrix(p) * reflection_matrix(fam.direction(to))
                   * reflection_matrix(fam.direction(from));
    Eigen::Matrix<double, 6, 2> w;
    w.col(0) = fam.direction_basis() / fam.direction_basis().norm();
    w.col(1) = p;
    const Eigen::Matrix<double, 6, 2> m = (t + Mat6::Identity()) * w;
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 2>> svd(m, Eigen::ComputeFullV);
    if (svd.singularValues()[1] > 1e-8 * std::max(1.0, svd.singularValues()[0]))
        fail(ErrorCode::DegenerateInput, "composition is not a reflection");
    return LinearSphereComplex(w * svd.matrixV().col(1));
}

double mirrored_parameter(const LameFamily& fam, double param)
{
    const double pi = std::numbers::pi;
    switch (fam.type()) {
    case FamilyType::Type2: return 0.5 * pi - param;
    case FamilyType::Type3: return param - 0.5 * pi;
    case FamilyType::Type1: break;
    }
    fail(ErrorCode::InvalidArgument, "type 1 families have no reflection symmetry in e1");
}

std::vector<double> circle_surface_intersections(const Circle& c, const DupinCyclide& d, int samples,
                                                 double tolerance)
{
    auto g = [&](double u) {
        const Vec6 x = c.point(u);
        const Vec6 y = project_onto(d.d1(), x);
        return inner(y, y) / x.squaredNorm();
    };
    const double step = 2.0 * std::numbers::pi / samples;
    std::vector<double> out;
    double a = 0.0;
    double ga = g(a);
    for (int k = 1; k <= samples; ++k) {
        double b = k * step;
        double gb = g(b);
        if (ga == 0.0) {
            out.push_back(a);
        } else if (ga * gb < 0.0) {
            double lo = a, hi = b, glo = ga;
            while (hi - lo > tolerance) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (glo * gm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        a = b;
        ga = gb;
    }
    return out;
}

ParallelReport parallel_check(const LameResult& family, const SpaceForm& sf, const PointSphereComplex& p,
                              int samples)
{
    ParallelReport rep;
    const FamilyClassification& info = family.family.classification();
    const bool euclidean = std::abs(std::abs(p.rep()[5]) - 1.0) < 1e-12
                           && projective_distance(sf.q, euclidean_q()) < tol::projective;
    if (info.type != FamilyType::Type1 || info.concurrent || !euclidean
        || projective_distance(info.e1, sf.q) > tol::projective) {
        rep.reason = to_string(ErrorCode::UnsupportedChart);
        return rep;
    }
    rep.supported = true;
    const auto& members = family.members;
    if (members.size() < 2)
        return rep;

    std::vector<std::vector<double>> offsets(members.size() - 1);
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            const double u = 2.0 * std::numbers::pi * (i + 0.5) / samples;
            const double v = 2.0 * std::numbers::pi * (j + 0.25) / samples;
            std::vector<Vec3> xs;
            std::vector<Vec3> normals;
            for (const LameMember& m : members) {
                const ContactElement f = family.family.member_contact_element(m.param, u, v);
                const Vec3 x = point_of(f.point_sphere(p));
                xs.push_back(x);
                const EuclidNormal n = normal_at(f.s1().rep(), x);
                normals.push_back(n.ok ? n.n : Vec3::Zero());
            }
            Vec3 mean = Vec3::Zero();
            for (const Vec3& x : xs)
                mean += x;
            mean /= static_cast<double>(xs.size());
            Eigen::MatrixXd centered(3, static_cast<Eigen::Index>(xs.size()));
            for (std::size_t k = 0; k < xs.size(); ++k)
                centered.col(static_cast<Eigen::Index>(k)) = xs[k] - mean;
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
            const Vec3 dir = svd.matrixU().col(0);
            double extent = 0.0;
            for (std::size_t k = 0; k < xs.size(); ++k)
                extent = std::max(extent, (xs[k] - mean).norm());
            for (std::size_t k = 0; k < xs.size(); ++k) {
                const Vec3 d = xs[k] - mean;
                rep.maxCollinearity = std::max(rep.maxCollinearity,
                                               (d - d.dot(dir) * dir).norm() / std::max(extent, 1.0));
                if (normals[k].squaredNorm() > 0.0)
                    rep.maxNormalDeviation = std::max(rep.maxNormalDeviation, normals[k].cross(dir).norm());
            }
            for (std::size_t k = 0; k + 1 < xs.size(); ++k)
                offsets[k].push_back((xs[k + 1] - xs[k]).norm());
        }
    }
    for (const auto& o : offsets) {
        double mean = 0.0;
        for (double x : o)
            mean += x;
        mean /= static_cast<double>(o.size());
        double var = 0.0;
        for (double x : o)
            var += (x - mean) * (x - mean);
        rep.maxOffsetSpread = std::max(rep.maxOffsetSpread, std::sqrt(var / static_cast<double>(o.size())));
        rep.meanOffsets.push_back(mean);
    }
    return rep;
}

} // namespace dupin
