#pragma once

#include <vector>

#include "dupin/minkowski.hpp"

namespace dupin {

// Columns span a subspace of R^{4,2}.
using Basis = Eigen::Matrix<double, 6, Eigen::Dynamic>;

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    bool operator==(const Signature&) const = default;
};

Basis make_basis(const std::vector<Vec6>& columns);
Basis concat(const Basis& a, const Basis& b);

Eigen::MatrixXd gram(const Basis& b);

// Euclidean orthonormal basis of the column span; tiny singular values dropped.
Basis orthonormal_span(const Basis& b, double rel = 1e-10);
int rank(const Basis& b, double rel = 1e-9);

// Smallest over largest singular value of the column-normalized matrix.
double singular_ratio(const Basis& b);

// Eigenvalues of the Gram matrix of an orthonormal span, threshold eps.
Signature signature(const Basis& b, double eps = 1e-9);

// Orthogonal complement with respect to the (4,2) form.
Basis complement(const Basis& b);

// Columns with Gram matrix diag(+1,..,+1,-1,..,-1), spacelike first. Columns
// that are already pseudo-orthonormal come back unchanged.
Basis pseudo_orthonormal(const Basis& b);

// Orthogonal projection onto a nondegenerate subspace.
Vec6 project_onto(const Basis& b, const Vec6& v);

// Relative Euclidean distance of v from span(b).
double membership_residual(const Basis& b, const Vec6& v);

// Largest sine of the principal angles; spans compared symmetrically.
double subspace_distance(const Basis& a, const Basis& b);

Basis intersect(const Basis& a, const Basis& b, double rel = 1e-9);

} // namespace dupin
