#pragma once

#include <utility>
#include <vector>

#include "dupin/incidence.hpp"
#include "dupin/minkowski.hpp"
#include "dupin/subspace.hpp"

namespace dupin {

// Orthogonal splitting of R^{4,2} into two (2,1)-planes, one per curvature sphere family.
class DupinCyclide {
public:
    DupinCyclide(const Basis& d1, const Basis& d2);

    // Second plane taken as the orthogonal complement of the first.
    static DupinCyclide from_family(const Basis& d1);

    const Basis& d1() const noexcept { return d1_; }
    const Basis& d2() const noexcept { return d2_; }
    const Basis& plane(int index) const;

private:
    Basis d1_;
    Basis d2_;
};

class CurvatureSphereFamily {
public:
    CurvatureSphereFamily(const DupinCyclide& parent, int index);

    int index() const noexcept { return index_; }
    const Basis& basis() const noexcept { return basis_; }
    const Basis& other() const noexcept { return other_; }

    // cos t b1 + sin t b2 + b3
    Vec6 at(double t) const;
    Vec6 derivative(double t) const;

    // Inverse of at() for a lightlike vector of the plane.
    double parameter_of(const Vec6& s) const;

private:
    int index_;
    Basis basis_;
    Basis other_;
};

DupinCyclide cyclide_from_torus(double spineRadius, double tubeRadius, bool allowSingular = false);

// Cyclide whose first family plane is spanned by three of its curvature spheres.
DupinCyclide cyclide_from_curvature_spheres(const OrientedSphere& a, const OrientedSphere& b,
                                            const OrientedSphere& c);

CurvatureSphereFamily curvature_family(const DupinCyclide& d, int index);
OrientedSphere curvature_sphere(const CurvatureSphereFamily& fam, double t);

// Roots in [0, 2pi) of <s(t), p> = 0, ascending; a tangential root counts once.
std::vector<double> singular_parameters(const CurvatureSphereFamily& fam, const PointSphereComplex& p);

ContactElement contact_element(const DupinCyclide& d, double u, double v);
Vec6 surface_point(const DupinCyclide& d, double u, double v, const PointSphereComplex& p);

// Zero iff the point sphere x lies on the cyclide.
double on_surface_residual(const DupinCyclide& d, const Vec6& x);

// Curvature circle along which s^index(t) touches the cyclide.
Circle curvature_circle(const DupinCyclide& d, int index, double t, const PointSphereComplex& p);
Circle curvature_circle(const CurvatureSphereFamily& fam, double t, const PointSphereComplex& p);

class EvolutionMap {
public:
    EvolutionMap(const CurvatureSphereFamily& fam, double t0, const PointSphereComplex& p);

    const CurvatureSphereFamily& family() const noexcept { return fam_; }
    double t0() const noexcept { return t0_; }
    const PointSphereComplex& p() const noexcept { return p_; }

    LinearSphereComplex complex(double t) const;

    // sigma_t(v); identity at the base parameter.
    Vec6 apply(double t, const Vec6& v) const;

private:
    CurvatureSphereFamily fam_;
    double t0_;
    PointSphereComplex p_;
};

LinearSphereComplex evolution_complex(const EvolutionMap& e, double t, const PointSphereComplex& p);

// Row-major grid of point spheres: one row per kept t, one column per u.
struct SphereGrid {
    std::vector<double> u;
    std::vector<double> t;
    std::vector<double> skipped;
    std::vector<Vec6> points;

    std::size_t rows() const noexcept { return t.size(); }
    std::size_t cols() const noexcept { return u.size(); }
    const Vec6& at(std::size_t row, std::size_t col) const { return points[row * u.size() + col]; }
};

std::vector<double> uniform_parameters(int n);

// Rows within this distance of a singular parameter are skipped.
inline constexpr double kSingularGap = 1e-6;

SphereGrid evolve_circle(const EvolutionMap& e, const Circle& c0, int rSamples,
                         const std::vector<double>& tSamples);

// "+" branch first.
std::pair<OrientedSphere, OrientedSphere> quer_spheres(const CurvatureSphereFamily& fam, double t,
                                                       const PointSphereComplex& p);

OrientedSphere evolve_from_pencil(const MSpherePencil& m, double t0, const OrientedSphere& s0,
                                  double t);

struct PencilSurface {
    SphereGrid grid;
    bool spherical = false;
    std::vector<double> singular;
};

PencilSurface surface_from_pencil_and_circle(const MSpherePencil& m, double t0, const Circle& c,
                                             int uSamples, const std::vector<double>& tSamples);

// Sphere containing the circle and meeting q orthogonally; the branch with <x,p> <= 0.
Vec6 sphere_through_circle_orthogonal_to(const Circle& c, const Vec6& q, const PointSphereComplex& p);

Circle two_ortho_circle(const DupinCyclide& d, const ContactElement& f1, const ContactElement& f2,
                        const PointSphereComplex& p);

SphereGrid two_ortho_cyclide(const EvolutionMap& e, const Circle& cTilde, int uSamples,
                             const std::vector<double>& tSamples);

} // namespace dupin
