#include "lightcone/lorentz.hpp"

#include <cmath>
#include <string>

#include "lightcone/errors.hpp"

namespace lightcone {

MinkVec::MinkVec(Eigen::VectorXd coords) : coords_(std::move(coords)) {}

MinkVec::MinkVec(std::initializer_list<double> coords) : coords_(static_cast<Eigen::Index>(coords.size())) {
    Eigen::Index i = 0;
    for (double c : coords) coords_[i++] = c;
}

MinkVec MinkVec::zero(int dim) { return MinkVec(Eigen::VectorXd::Zero(dim)); }

MinkVec MinkVec::basis(int dim, int index) {
    if (index < 0 || index >= dim) throw UsageError("basis index out of range");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[index] = 1.0;
    return MinkVec(std::move(e));
}

MinkVec& MinkVec::operator+=(const MinkVec& o) {
    if (o.dim() != dim()) throw UsageError("dimension mismatch");
    coords_ += o.coords_;
    return *this;
}

MinkVec& MinkVec::operator-=(const MinkVec& o) {
    if (o.dim() != dim()) throw UsageError("dimension mismatch");
    coords_ -= o.coords_;
    return *this;
}

MinkVec& MinkVec::operator*=(double a) {
    coords_ *= a;
    return *this;
}

MinkVec operator+(MinkVec a, const MinkVec& b) { return a += b; }
MinkVec operator-(MinkVec a, const MinkVec& b) { return a -= b; }
MinkVec operator-(MinkVec a) { return a *= -1.0; }
MinkVec operator*(double a, MinkVec v) { return v *= a; }
MinkVec operator*(MinkVec v, double a) { return v *= a; }
MinkVec operator/(MinkVec v, double a) { return v *= 1.0 / a; }

double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != v.size()) {
        throw UsageError("inner: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
    }
    const Eigen::Index last = u.size() - 1;
    return u.head(last).dot(v.head(last)) - u[last] * v[last];
}

double inner(const MinkVec& u, const MinkVec& v) { return inner(u.coords(), v.coords()); }

Eigen::MatrixXd signature_matrix(int dim) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(dim, dim);
    j(dim - 1, dim - 1) = -1.0;
    return j;
}

CausalClass classify(const MinkVec& v, double tol) {
    const double e2 = v.coords().squaredNorm();
    if (e2 == 0.0) throw DegenerateInputError("classify: zero vector");
    const double q = inner(v, v);
    if (std::abs(q) <= tol * e2) return {Causal::lightlike, tol};
    return {q > 0 ? Causal::spacelike : Causal::timelike, tol};
}

Eigen::MatrixXd ideal_frame_gram(int dim) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
    g(dim - 2, dim - 2) = 0.0;
    g(dim - 1, dim - 1) = 0.0;
    g(dim - 2, dim - 1) = 1.0;
    g(dim - 1, dim - 2) = 1.0;
    return g;
}

double PseudoFrame::gram_residual() const { return (gram - ideal_frame_gram(dim())).cwiseAbs().maxCoeff(); }

namespace {

// Lorentz-orthogonal projection of v away from the orthonormal spacelike columns of q.
Eigen::VectorXd project_out(Eigen::VectorXd v, const Eigen::MatrixXd& q, int count) {
    for (int i = 0; i < count; ++i) v -= inner(v, Eigen::VectorXd(q.col(i))) * q.col(i);
    return v;
}

Eigen::VectorXd time_flipped(const Eigen::VectorXd& v) {
    Eigen::VectorXd w = v;
    w[w.size() - 1] = -w[w.size() - 1];
    return w;
}

}  // namespace

Eigen::VectorXd dual_null(const Eigen::VectorXd& f, const Eigen::MatrixXd& orthonormal) {
    // The time-flipped f has Euclidean-positive product with f, so its projection is never
    // orthogonal to f.
    Eigen::VectorXd w = project_out(time_flipped(f), orthonormal, static_cast<int>(orthonormal.cols()));
    const double wf = inner(w, f);
    if (std::abs(wf) < 1e-14 * f.squaredNorm()) throw DegenerateInputError("dual_null: f lies in the span");
    return (w - (inner(w, w) / (2.0 * wf)) * f) / wf;
}

PseudoFrame pseudo_orthonormalize(const std::vector<MinkVec>& spanning, double tol) {
    if (spanning.empty()) throw DegenerateInputError("pseudo_orthonormalize: empty input");
    const int dim = spanning.front().dim();
    const int count = static_cast<int>(spanning.size());
    if (dim < 3) throw UsageError("pseudo_orthonormalize: dimension must be at least 3");
    if (count != dim && count != dim - 1) {
        throw UsageError("pseudo_orthonormalize: expected n+1 or n+2 vectors");
    }
    for (const auto& v : spanning) {
        if (v.dim() != dim) throw UsageError("pseudo_orthonormalize: dimension mismatch");
    }
    const double cond = std::max(tol, 1e-10);
    const int sphere_part = count - 2;

    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < sphere_part; ++i) {
        const Eigen::VectorXd& v = spanning[i].coords();
        Eigen::VectorXd w = project_out(v, cols, i);
        const double q = inner(w, w);
        if (q <= cond * v.squaredNorm()) {
            throw DegenerateInputError("pseudo_orthonormalize: sphere part is not spacelike or is rank deficient");
        }
        cols.col(i) = w / std::sqrt(q);
    }

    // The last two inputs span a plane of signature (1,1) after projection.
    const Eigen::VectorXd& a_in = spanning[count - 2].coords();
    const Eigen::VectorXd& b_in = spanning[count - 1].coords();
    Eigen::VectorXd a = project_out(a_in, cols, sphere_part);
    Eigen::VectorXd b = project_out(b_in, cols, sphere_part);
    const double aa = inner(a, a), ab = inner(a, b), bb = inner(b, b);
    const double scale = a_in.squaredNorm() * b_in.squaredNorm();
    const double det = aa * bb - ab * ab;
    if (det >= -cond * scale) {
        throw DegenerateInputError("pseudo_orthonormalize: remaining plane is not of signature (1,1)");
    }

    // f: the null direction of span{a,b} closest to a.
    Eigen::VectorXd f;
    if (std::abs(aa) <= cond * a_in.squaredNorm()) {
        f = a;
    } else {
        // <a + x b, a + x b> = aa + 2 x ab + x^2 bb = 0
        double x;
        if (std::abs(bb) <= cond * b_in.squaredNorm()) {
            x = -aa / (2.0 * ab);
        } else {
            const double disc = std::sqrt(ab * ab - aa * bb);
            const double x1 = (-ab + disc) / bb, x2 = (-ab - disc) / bb;
            x = std::abs(x1) < std::abs(x2) ? x1 : x2;
        }
        f = a + x * b;
    }

    Eigen::MatrixXd sphere_cols = cols.leftCols(sphere_part);
    if (count == dim - 1) {
        // Complete s as the unit normal of (s_1..s_{n-1}, f, b).
        Eigen::MatrixXd span(dim, dim - 1);
        span << sphere_cols, f, b;
        Eigen::MatrixXd lowered = span.transpose() * signature_matrix(dim);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(lowered);
        if (lu.rank() < dim - 1) throw DegenerateInputError("pseudo_orthonormalize: rank deficient input");
        Eigen::VectorXd s = lu.kernel().col(0);
        const double q = inner(s, s);
        if (q <= 0) throw DegenerateInputError("pseudo_orthonormalize: completed normal is not spacelike");
        s /= std::sqrt(q);
        cols.col(sphere_part) = s;
        sphere_cols = cols.leftCols(sphere_part + 1);
    }
    const int n_sphere = static_cast<int>(sphere_cols.cols());
    // Remove residual components of f along the sphere part (f was built from projected
    // vectors, so this only cleans rounding).
    f = project_out(f, cols, n_sphere);
    Eigen::VectorXd fhat = dual_null(f, sphere_cols);
    cols.col(dim - 2) = f;
    cols.col(dim - 1) = fhat;

    if (count == dim - 1 && cols.determinant() < 0) cols.col(sphere_part) *= -1.0;

    PseudoFrame frame{cols, cols.transpose() * signature_matrix(dim) * cols};
    return frame;
}

}  // namespace lightcone
