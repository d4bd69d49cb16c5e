#pragma once

#include <vector>

#include "dupin/minkowski.hpp"
#include "dupin/subspace.hpp"

namespace dupin {

// A circle as the (2,1)-plane of its point spheres plus the orthogonal plane.
class Circle {
public:
    Circle(const Basis& gamma, const PointSphereComplex& p);

    // b1, b2 spacelike, b3 timelike, Gram diag(1,1,-1).
    const Basis& gamma() const noexcept { return gamma_; }
    const Basis& gamma_perp() const noexcept { return perp_; }

    Vec6 point(double u) const;

private:
    Basis gamma_;
    Basis perp_;
};

OrientedSphere circle_point(const Circle& c, double u);

Circle orthogonal_circle(const OrientedSphere& m1, const OrientedSphere& m2, const OrientedSphere& s,
                         const PointSphereComplex& p);

// Basis of span(r, s, s^, p) for contact elements sharing the sphere r.
Basis spheres_orthogonal_to_circle(const ContactElement& f, const ContactElement& fhat,
                                   const PointSphereComplex& p);

// Relative residual of v lying in gamma.
double on_circle_residual(const Circle& c, const Vec6& v);

// Zero when every point of the circle lies on s.
double circle_on_sphere_residual(const Circle& c, const Vec6& s);

// Zero when s meets the circle orthogonally.
double circle_orthogonality_residual(const Circle& c, const Vec6& s, const PointSphereComplex& p);

// Angle between a sphere and a circle; pi/2 when orthogonal.
double circle_sphere_angle(const Circle& c, const Vec6& s, const PointSphereComplex& p);

enum class PencilKind { Pencil0, Pencil1, Pencil2 };

const char* to_string(PencilKind kind) noexcept;

class MSpherePencil {
public:
    MSpherePencil(const OrientedSphere& s1, const OrientedSphere& s2, const PointSphereComplex& p);

    const OrientedSphere& s1() const noexcept { return s1_; }
    const OrientedSphere& s2() const noexcept { return s2_; }
    const PointSphereComplex& p() const noexcept { return p_; }
    PencilKind kind() const noexcept { return kind_; }

    // Parameter of s2; if s2_flipped() it is the parameter of s2 with reversed orientation.
    double t1() const noexcept { return t1_; }
    bool s2_flipped() const noexcept { return flipped_; }

    Vec6 at(double t) const;
    Vec6 derivative(double t) const;

    // Parameters in [0, 2pi) where the pencil passes through a point sphere.
    std::vector<double> point_sphere_parameters() const;

    Basis span() const;

private:
    OrientedSphere s1_;
    OrientedSphere s2_;
    PointSphereComplex p_;
    PencilKind kind_;
    Vec6 e_;
    Vec6 f_;
    double sigma_;
    double t1_;
    bool flipped_;
};

MSpherePencil classify_pencil(const OrientedSphere& s1, const OrientedSphere& s2,
                              const PointSphereComplex& p);
OrientedSphere pencil_sphere(const MSpherePencil& m, double t);

} // namespace dupin
