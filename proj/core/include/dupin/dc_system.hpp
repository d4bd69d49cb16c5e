#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dupin/cyclide.hpp"
#include "dupin/euclid.hpp"

namespace dupin {

struct RibaucourPair {
    DupinCyclide delta;
    LinearSphereComplex a;
    DupinCyclide deltaHat;
};

RibaucourPair ribaucour_transform(const DupinCyclide& d, const LinearSphereComplex& a,
                                  const PointSphereComplex& p = PointSphereComplex::standard());

// Sphere shared by f(u,v) and its image: <s2,a> s1 - <s1,a> s2.
Vec6 ribaucour_sphere(const RibaucourPair& pair, double u, double v);

// Span of r and its first two derivatives along the other family's parameter,
// taken at (fixedParam, otherParam) for direction 1 and (otherParam, fixedParam) for 2.
// Derivatives are exact: the families are trigonometric in their parameter.
DupinCyclide ribaucour_cyclide(const RibaucourPair& pair, int direction, double fixedParam,
                               double otherParam = 0.0);

enum class FamilyType { Type1, Type2, Type3 };

const char* to_string(FamilyType type) noexcept;

struct FamilyClassification {
    FamilyType type;
    SpaceForm spaceForm;
    Vec6 e1;
    // Type 2 only: e1 + |e1| p and e1 - |e1| p.
    std::optional<std::pair<OrientedSphere, OrientedSphere>> umbilic;
    // Type 1 with e1 not a multiple of the Euclidean space form vector.
    bool concurrent = false;
};

FamilyClassification classify_family(const LinearSphereComplex& a, const PointSphereComplex& p);

// The complexes sigma_b(d), b in span(a, p). Types 2/3 use b = cos(beta) u + sin(beta) p with u
// the unit p-orthogonal part of a; type 1 uses b = e1 + lambda p. beta = pi/2 gives p itself,
// which reproduces d with reversed orientation.
class LameFamily {
public:
    LameFamily(const DupinCyclide& d, const LinearSphereComplex& a, const PointSphereComplex& p);

    const DupinCyclide& delta() const noexcept { return delta_; }
    const LinearSphereComplex& a() const noexcept { return a_; }
    const PointSphereComplex& p() const noexcept { return p_; }
    const FamilyClassification& classification() const noexcept { return info_; }
    FamilyType type() const noexcept { return info_.type; }
    // Unit for types 2/3, null for type 1.
    const Vec6& direction_basis() const noexcept { return u_; }

    Vec6 direction(double param) const;
    double parameter_of(const Vec6& b) const;
    std::vector<double> null_parameters() const;
    bool is_null(double param) const;

    DupinCyclide member(double param) const;
    ContactElement member_contact_element(double param, double u, double v) const;
    // Point of the triply orthogonal system at (u, v, param).
    Vec6 point(double u, double v, double param) const;

private:
    DupinCyclide delta_;
    LinearSphereComplex a_;
    PointSphereComplex p_;
    FamilyClassification info_;
    Vec6 u_;
};

struct LameMember {
    double param;
    LinearSphereComplex b;
    DupinCyclide cyclide;
};

struct LameResult {
    LameFamily family;
    std::vector<LameMember> members;
    std::vector<double> skipped;
    std::vector<OrientedSphere> umbilic;
};

LameResult lame_family(const DupinCyclide& d, const LinearSphereComplex& a, const PointSphereComplex& p,
                       const std::vector<double>& params);

// Circle of the cyclic congruence through the contact element f(u,v) of d and its image.
Circle congruence_circle(const RibaucourPair& pair, double u, double v,
                         const PointSphereComplex& p = PointSphereComplex::standard());

// Complex c in span(a, p) with sigma_c(member(from)) = flip(member(to)).
LinearSphereComplex connecting_complex(const LameFamily& fam, double from, double to);

// Parameter of the member that sigma_u maps member(param) to, up to orientation.
double mirrored_parameter(const LameFamily& fam, double param);

// Circle parameters where the circle crosses the cyclide, by sign change and bisection.
std::vector<double> circle_surface_intersections(const Circle& c, const DupinCyclide& d,
                                                 int samples = 720, double tolerance = 1e-10);

struct ParallelReport {
    bool supported = false;
    std::string reason;
    double maxCollinearity = 0.0;
    double maxNormalDeviation = 0.0;
    double maxOffsetSpread = 0.0;
    std::vector<double> meanOffsets;
};

// Euclidean check of a type 1 family with e1 along the Euclidean space form vector.
ParallelReport parallel_check(const LameResult& family, const SpaceForm& sf, const PointSphereComplex& p,
                              int samples = 8);

} // namespace dupin
