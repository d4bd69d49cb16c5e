#include "dupin/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace dupin {

namespace {

Eigen::Matrix<double, 6, 6> eta()
{
    Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Identity();
    m(4, 4) = -1.0;
    m(5, 5) = -1.0;
    return m;
}

double self_score(const Vec6& v)
{
    const double n2 = v.squaredNorm();
    return n2 == 0.0 ? 0.0 : std::abs(inner(v, v)) / n2;
}

bool is_pseudo_orthonormal(const Basis& b)
{
    const Eigen::MatrixXd g = gram(b);
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        if (std::abs(std::abs(g(i, i)) - 1.0) > 1e-12)
            return false;
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            if (i != j && std::abs(g(i, j)) > 1e-12)
                return false;
        }
    }
    return true;
}

Basis spacelike_first(const std::vector<Vec6>& cols)
{
    std::vector<Vec6> ordered;
    for (const auto& c : cols)
        if (inner(c, c) > 0.0)
            ordered.push_back(c);
    for (const auto& c : cols)
        if (inner(c, c) < 0.0)
            ordered.push_back(c);
    return make_basis(ordered);
}

} // namespace

Basis make_basis(const std::vector<Vec6>& columns)
{
    Basis b(6, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i)
        b.col(static_cast<Eigen::Index>(i)) = columns[i];
    return b;
}

Basis concat(const Basis& a, const Basis& b)
{
    Basis out(6, a.cols() + b.cols());
    out << a, b;
    return out;
}

Eigen::MatrixXd gram(const Basis& b)
{
    return b.transpose() * eta() * b;
}

Basis orthonormal_span(const Basis& b, double rel)
{
    if (b.cols() == 0)
        return Basis(6, 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0)
        return Basis(6, 0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > rel * sv[0])
        ++r;
    return svd.matrixU().leftCols(r);
}

int rank(const Basis& b, double rel)
{
    return static_cast<int>(orthonormal_span(b, rel).cols());
}

double singular_ratio(const Basis& b)
{
    Eigen::MatrixXd m = b;
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
        const double n = m.col(i).norm();
        if (n > 0.0)
            m.col(i) /= n;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[0] == 0.0)
        return 0.0;
    // With more columns than 6 the trailing singular values are structurally zero.
    return sv[sv.size() - 1] / sv[0];
}

Signature signature(const Basis& b, double eps)
{
    Signature sig;
    const Basis q = orthonormal_span(b);
    sig.zero = static_cast<int>(b.cols() - q.cols());
    if (q.cols() == 0)
        return sig;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram(q));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvalues()[i];
        if (l > eps)
            ++sig.positive;
        else if (l < -eps)
            ++sig.negative;
        else
            ++sig.zero;
    }
    return sig;
}

Basis complement(const Basis& b)
{
    if (b.cols() == 0)
        return Basis(Eigen::Matrix<double, 6, 6>::Identity());
    const Eigen::MatrixXd m = b.transpose() * eta();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv[r] > 1e-10 * sv[0])
        ++r;
    return svd.matrixV().rightCols(6 - r);
}

Basis pseudo_orthonormal(const Basis& b)
{
    if (b.cols() == 0)
        return b;
    if (rank(b) < b.cols())
        fail(ErrorCode::DegenerateSpan, "basis columns are linearly dependent");

    std::vector<Vec6> given;
    for (Eigen::Index i = 0; i < b.cols(); ++i)
        given.push_back(b.col(i));
    if (is_pseudo_orthonormal(b))
        return spacelike_first(given);

    const double eps = 1e-9;
    std::vector<Vec6> rest;
    for (const auto& v : given)
        rest.push_back(v / v.norm());
    std::vector<Vec6> out;
    while (!rest.empty()) {
        double best = 0.0;
        for (const auto& v : rest)
            best = std::max(best, self_score(v));
        std::size_t pick = rest.size();
        if (best > eps) {
            // First column that is comfortably non-null keeps the input order.
            for (std::size_t i = 0; i < rest.size(); ++i) {
                if (self_score(rest[i]) >= 0.1 * best) {
                    pick = i;
                    break;
                }
            }
        } else {
            // All remaining columns are null: combine the most correlated pair.
            double bestPair = 0.0;
            std::size_t pi = 0, pj = 0;
            for (std::size_t i = 0; i < rest.size(); ++i) {
                for (std::size_t j = i + 1; j < rest.size(); ++j) {
                    const double c = std::abs(inner(rest[i], rest[j]));
                    if (c > bestPair) {
                        bestPair = c;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (bestPair < eps)
                fail(ErrorCode::DegenerateSpan, "subspace is degenerate");
            rest[pi] += rest[pj];
            rest[pi] /= rest[pi].norm();
            pick = pi;
        }

        Vec6 v = rest[pick];
        const double q = inner(v, v);
        v /= std::sqrt(std::abs(q));
        const double s = q > 0.0 ? 1.0 : -1.0;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
        for (auto& w : rest) {
            for (int pass = 0; pass < 2; ++pass)
                w -= s * inner(w, v) * v;
            const double n = w.norm();
            if (n < 1e-12)
                fail(ErrorCode::DegenerateSpan, "subspace is degenerate");
            w /= n;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : out)
                v -= (inner(u, u) > 0.0 ? 1.0 : -1.0) * inner(v, u) * u;
        }
        v /= std::sqrt(std::abs(inner(v, v)));
        out.push_back(v);
    }
    return spacelike_first(out);
}

Vec6 project_onto(const Basis& b, const Vec6& v)
{
    const Eigen::MatrixXd g = gram(b);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible())
        fail(ErrorCode::DegenerateSpan, "projection onto a degenerate subspace");
    const Eigen::VectorXd rhs = b.transpose() * eta() * v;
    return b * lu.solve(rhs);
}

double membership_residual(const Basis& b, const Vec6& v)
{
    const double n = v.norm();
    if (n == 0.0)
        return 0.0;
    const Basis q = orthonormal_span(b);
    return (v - q * (q.transpose() * v)).norm() / n;
}

double subspace_distance(const Basis& a, const Basis& b)
{
    const Basis qa = orthonormal_span(a);
    const Basis qb = orthonormal_span(b);
    if (qa.cols() != qb.cols())
        return 1.0;
    if (qa.cols() == 0)
        return 0.0;
    const Eigen::MatrixXd r = qb - qa * (qa.transpose() * qb);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
    return std::min(1.0, svd.singularValues()[0]);
}

Basis intersect(const Basis& a, const Basis& b, double rel)
{
    const Basis qa = orthonormal_span(a);
    const Basis qb = orthonormal_span(b);
    if (qa.cols() == 0 || qb.cols() == 0)
        return Basis(6, 0);
    Eigen::MatrixXd m(6, qa.cols() + qb.cols());
    m << qa, -qb;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index n = m.cols();
    std::vector<Vec6> cols;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double s = i < sv.size() ? sv[i] : 0.0;
        if (s <= rel * sv[0])
            cols.push_back(qa * svd.matrixV().col(i).head(qa.cols()));
    }
    return orthonormal_span(make_basis(cols));
}

} // namespace dupin
