#include "dupin/apps.hpp"

#include <algorithm>
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

Basis image(const LinearSphereComplex& a, const Basis& b)
{
    Basis out(6, b.cols());
    for (Eigen::Index i = 0; i < b.cols(); ++i)
        out.col(i) = lie_inversion(a, Vec6(b.col(i)));
    return out;
}

int family_of(const DupinCyclide& d, const Vec6& s)
{
    if (membership_residual(d.d1(), s) < 1e-8)
        return 1;
    if (membership_residual(d.d2(), s) < 1e-8)
        return 2;
    return 0;
}

bool crosses(double lo, double hi, double x)
{
    return std::min(lo, hi) <= x && x <= std::max(lo, hi);
}

// Interval contains a value congruent to root modulo period.
bool hits_periodic(double lo, double hi, double root, double period)
{
    const double a = std::min(lo, hi);
    const double b = std::max(lo, hi);
    const double k = std::ceil((a - root) / period);
    return root + k * period <= b;
}

} // namespace

BlendResult blend(const BlendSpec& spec, const PointSphereComplex& p, const BlendOptions& options)
{
    const Vec6& s1 = spec.s1.rep();
    const Vec6& s2 = spec.s2.rep();
    if (circle_on_sphere_residual(spec.gamma1, s1) > 1e-8)
        fail(ErrorCode::NotOnSphere, "initial circle is not on the first sphere");
    const LinearSphereComplex a = complex_from_sphere_pair(spec.s1, spec.s2, p);

    const Circle gamma2(image(a, spec.gamma1.gamma()), p);
    Vec6 q1 = sphere_through_circle_orthogonal_to(spec.gamma1, s1, p);
    if (!options.plusBranch)
        q1 = flip_orientation(q1, p);
    const Vec6 q2 = lie_inversion(a, q1);

    // Spheres of the other family touch s1 along gamma1 and are orthogonal to s2.
    const double s12 = inner(s1, s2);
    Basis d2(6, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        const Vec6 m = spec.gamma1.gamma().col(i);
        d2.col(i) = inner(m, s2) * s1 - s12 * m;
    }
    if (rank(d2) < 3)
        fail(ErrorCode::DegeneratePair, "spheres do not determine a blending cyclide");
    const DupinCyclide cyc(complement(d2), d2);

    BlendResult out{a, gamma2, OrientedSphere(q1), OrientedSphere(q2), std::nullopt, cyc, {}, -1.0};

    const CurvatureSphereFamily fam(cyc, 1);
    const double t0 = fam.parameter_of(s1);
    const double t1 = fam.parameter_of(s2);
    const std::vector<double> roots = singular_parameters(fam, p);
    double span = wrap(t1 - t0);
    for (double r : roots) {
        if (wrap(r - t0) < span) {
            span -= kTwoPi;
            break;
        }
    }
    const int n = std::max(options.tSamples, 2);
    std::vector<double> ts;
    for (int k = 0; k < n; ++k)
        ts.push_back(t0 + span * k / (n - 1));
    const EvolutionMap e(fam, t0, p);
    out.surface = evolve_circle(e, spec.gamma1, options.uSamples, ts);

    try {
        const MSpherePencil m(OrientedSphere(q1), OrientedSphere(q2), p);
        std::vector<double> pts;
        for (int k = 1; k < n; ++k)
            pts.push_back(m.t1() * k / n);
        const PencilSurface ps = surface_from_pencil_and_circle(m, 0.0, spec.gamma1, options.uSamples, pts);
        double worst = 0.0;
        for (const Vec6& x : ps.grid.points)
            worst = std::max(worst, on_surface_residual(cyc, x));
        out.pencil = m;
        out.pencilResidual = worst;
    } catch (const Error& err) {
        if (err.code() != ErrorCode::DegeneratePencil && err.code() != ErrorCode::PointSphereArgument
            && err.code() != ErrorCode::OutsideJStar)
            throw;
    }
    return out;
}

double midpoint_parameter(const CurvatureSphereFamily& fam, double ta, double tb, const PointSphereComplex& p)
{
    const Vec6 sa = fam.at(ta);
    const Vec6 sb = fam.at(tb);
    const Vec6 a = inner(sb, p.rep()) * sa - inner(sa, p.rep()) * sb;
    const double A = inner(fam.basis().col(0), a);
    const double B = inner(fam.basis().col(1), a);
    const double C = inner(fam.basis().col(2), a);
    const double R = std::hypot(A, B);
    if (std::abs(R - std::abs(C)) <= 1e-12 * (R + std::abs(C)))
        fail(ErrorCode::DoubleRoot);
    if (std::abs(C) > R)
        fail(ErrorCode::NoMidpointSphere);
    const double phi = std::atan2(B, A);
    const double w = std::acos(-C / R);
    const double len = tb - ta;
    for (double r : {phi + w, phi - w}) {
        const double off = len >= 0.0 ? wrap(r - ta) : -wrap(ta - r);
        if (std::abs(off) > 0.0 && std::abs(off) < std::abs(len))
            return ta + off;
    }
    fail(ErrorCode::NoMidpointSphere, "no root inside the arc");
}

Subdivision subdivide(const DupinCyclide& d, const OrientedSphere& s1, const OrientedSphere& s2, int depth,
                      const PointSphereComplex& p, bool otherPatch)
{
    if (depth < 0)
        fail(ErrorCode::InvalidArgument, "depth must be non-negative");
    const int i1 = family_of(d, s1.rep());
    const int i2 = family_of(d, s2.rep());
    if (i1 == 0 || i1 != i2)
        fail(ErrorCode::InvalidArgument, "spheres are not curvature spheres of one family");
    if (projective_distance(s1.rep(), s2.rep()) < tol::projective)
        fail(ErrorCode::SameSphere);
    for (const Vec6* s : {&s1.rep(), &s2.rep()}) {
        if (std::abs(inner(*s, p.rep())) < 1e-9 * s->norm())
            fail(ErrorCode::SingularParameter, "subdivision spheres must be regular");
    }

    const CurvatureSphereFamily fam(d, i1);
    const double t1 = fam.parameter_of(s1.rep());
    const double t2 = fam.parameter_of(s2.rep());
    const double end = otherPatch ? t1 - wrap(t1 - t2) : t1 + wrap(t2 - t1);

    std::vector<double> params{t1, end};
    for (int level = 0; level < depth; ++level) {
        std::vector<double> next{params.front()};
        for (std::size_t k = 0; k + 1 < params.size(); ++k) {
            next.push_back(midpoint_parameter(fam, params[k], params[k + 1], p));
            next.push_back(params[k + 1]);
        }
        params = std::move(next);
    }
    Subdivision out;
    out.family = i1;
    out.params = params;
    for (double t : params)
        out.circles.push_back(curvature_circle(fam, t, p));
    return out;
}

double concircularity(const std::array<Vec6, 4>& quad)
{
    return singular_ratio(make_basis({quad[0], quad[1], quad[2], quad[3]}));
}

double max_quad_ratio(const DiscreteNet& net)
{
    if (net.dims.size() != 2)
        fail(ErrorCode::InvalidArgument, "quad ratios need a 2D net");
    double worst = 0.0;
    for (int i = 0; i + 1 < net.dims[0]; ++i) {
        for (int j = 0; j + 1 < net.dims[1]; ++j) {
            worst = std::max(worst, concircularity({net.at(i, j), net.at(i, j + 1), net.at(i + 1, j + 1),
                                                    net.at(i + 1, j)}));
        }
    }
    return worst;
}

DiscreteNet discrete_net(const std::vector<Vec6>& c0, const std::vector<LinearSphereComplex>& inversions,
                         const PointSphereComplex& p)
{
    for (const auto& a : inversions) {
        if (std::abs(inner(a.rep(), p.rep())) > 1e-9 * a.rep().norm())
            fail(ErrorCode::NotMLie);
    }
    for (const Vec6& x : c0) {
        if (std::abs(inner(x, p.rep())) > 1e-9 * x.norm() || !is_lightlike(x))
            fail(ErrorCode::InvalidArgument, "initial samples must be point spheres");
    }
    DiscreteNet net;
    net.dims = {static_cast<int>(inversions.size()) + 1, static_cast<int>(c0.size())};
    net.vertices = c0;
    for (const auto& a : inversions)
        for (const Vec6& x : c0)
            net.vertices.push_back(lie_inversion(a, x));
    return net;
}

CyclidicCube cyclidic_cube(const LameFamily& family, const CubeBox& box, const PointSphereComplex& p,
                           int faceSamples)
{
    const double pi = std::numbers::pi;
    const double period = family.type() == FamilyType::Type1 ? 0.0 : pi;
    for (double r : family.null_parameters()) {
        if (period == 0.0 ? crosses(box.b[0], box.b[1], r) : hits_periodic(box.b[0], box.b[1], r, period))
            fail(ErrorCode::SingularBox, "family parameter range contains a null direction");
    }
    for (int idx = 1; idx <= 2; ++idx) {
        const auto& range = idx == 1 ? box.u : box.v;
        for (double r : singular_parameters(curvature_family(family.delta(), idx), p)) {
            if (hits_periodic(range[0], range[1], r, 2.0 * pi))
                fail(ErrorCode::SingularBox, "curvature parameter range contains a singular sphere");
        }
    }

    auto x = [&](double u, double v, double b) { return family.point(u, v, b); };
    CyclidicCube cube;
    cube.corners.dims = {2, 2, 2};
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                cube.corners.vertices.push_back(x(box.u[i], box.v[j], box.b[k]));

    const std::array<std::array<int, 4>, 6> faceCorners{{{0, 2, 6, 4}, {1, 3, 7, 5}, {0, 1, 5, 4},
                                                         {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 5, 7, 6}}};
    const int n = std::max(faceSamples, 2);
    for (int f = 0; f < 6; ++f) {
        CubeFace& face = cube.faces[static_cast<std::size_t>(f)];
        face.axis = f / 2;
        face.side = f % 2;
        face.corners = faceCorners[static_cast<std::size_t>(f)];
        face.samples = n;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const double s = static_cast<double>(r) / (n - 1);
                const double w = static_cast<double>(c) / (n - 1);
                double par[3];
                const int free1 = face.axis == 0 ? 1 : 0;
                const int free2 = face.axis == 2 ? 1 : 2;
                const std::array<const std::array<double, 2>*, 3> ranges{&box.u, &box.v, &box.b};
                par[face.axis] = (*ranges[static_cast<std::size_t>(face.axis)])[static_cast<std::size_t>(face.side)];
                const auto& r1 = *ranges[static_cast<std::size_t>(free1)];
                const auto& r2 = *ranges[static_cast<std::size_t>(free2)];
                par[free1] = r1[0] + s * (r1[1] - r1[0]);
                par[free2] = r2[0] + w * (r2[1] - r2[0]);
                face.patch.push_back(x(par[0], par[1], par[2]));
            }
        }
        const auto& v = cube.corners.vertices;
        cube.faceRatios[static_cast<std::size_t>(f)] = concircularity(
            {v[static_cast<std::size_t>(face.corners[0])], v[static_cast<std::size_t>(face.corners[1])],
             v[static_cast<std::size_t>(face.corners[2])], v[static_cast<std::size_t>(face.corners[3])]});
    }

    // Face normals from central differences in the Euclidean chart.
    auto position = [&](const std::array<double, 3>& q) { return point_of(x(q[0], q[1], q[2])); };
    auto partial = [&](std::array<double, 3> q, int axis) {
        const double h = 1e-5;
        std::array<double, 3> a = q, b = q;
        a[static_cast<std::size_t>(axis)] += h;
        b[static_cast<std::size_t>(axis)] -= h;
        return Vec3((position(a) - position(b)) / (2.0 * h));
    };
    const std::array<const std::array<double, 2>*, 3> ranges{&box.u, &box.v, &box.b};
    int edge = 0;
    for (int along = 0; along < 3; ++along) {
        const int o1 = (along + 1) % 3;
        const int o2 = (along + 2) % 3;
        for (int s1 = 0; s1 < 2; ++s1) {
            for (int s2 = 0; s2 < 2; ++s2) {
                std::array<double, 3> q{};
                const auto& ra = *ranges[static_cast<std::size_t>(along)];
                q[static_cast<std::size_t>(along)] = 0.5 * (ra[0] + ra[1]);
                q[static_cast<std::size_t>(o1)] = (*ranges[static_cast<std::size_t>(o1)])[static_cast<std::size_t>(s1)];
                q[static_cast<std::size_t>(o2)] = (*ranges[static_cast<std::size_t>(o2)])[static_cast<std::size_t>(s2)];
                const Vec3 ta = partial(q, along);
                // Face with o1 fixed is spanned by along and o2; face with o2 fixed by along and o1.
                const Vec3 n1 = ta.cross(partial(q, o2));
                const Vec3 n2 = ta.cross(partial(q, o1));
                const double c = std::abs(n1.dot(n2)) / (n1.norm() * n2.norm());
                cube.edgeAngles[static_cast<std::size_t>(edge++)] = std::acos(std::min(c, 1.0));
            }
        }
    }
    return cube;
}

} // namespace dupin
