#include "msymp/adjointb.hpp"

#include <cmath>
#include <stdexcept>

namespace msymp {

namespace {

void require_match(const VectorField3& a, const VectorField3& b) {
    if (!a.same_grid(b)) throw std::invalid_argument("vector fields live on different grids");
    for (int s = 0; s < 3; ++s)
        if (a.c[s].size() != static_cast<size_t>(a.n) * a.n * a.n ||
            b.c[s].size() != static_cast<size_t>(b.n) * b.n * b.n)
            throw std::invalid_argument("component array does not match the grid size");
}

}  // namespace

VectorField3 VectorField3::zeros(int n, double dx, double dy, double dz) {
    if (n < 3) throw std::invalid_argument("3D grid needs at least 3 nodes per axis");
    if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0))
        throw std::invalid_argument("grid spacings must be positive");
    VectorField3 f;
    f.n = n;
    f.dx = dx;
    f.dy = dy;
    f.dz = dz;
    for (auto& comp : f.c) comp.assign(static_cast<size_t>(n) * n * n, 0.0);
    return f;
}

namespace {

/// d(component)/d(axis) at one node, centered with periodic wrap.
double deriv(const VectorField3& f, int comp, int axis, int i, int j, int k) {
    const int n = f.n;
    int ip = i, jp = j, kp = k, im = i, jm = j, km = k;
    double h = 0.0;
    switch (axis) {
        case 0:
            ip = i + 1 == n ? 0 : i + 1;
            im = i == 0 ? n - 1 : i - 1;
            h = f.dx;
            break;
        case 1:
            jp = j + 1 == n ? 0 : j + 1;
            jm = j == 0 ? n - 1 : j - 1;
            h = f.dy;
            break;
        default:
            kp = k + 1 == n ? 0 : k + 1;
            km = k == 0 ? n - 1 : k - 1;
            h = f.dz;
            break;
    }
    return (f.c[comp][f.idx(ip, jp, kp)] - f.c[comp][f.idx(im, jm, km)]) / (2.0 * h);
}

}  // namespace

VectorField3 v_b(const VectorField3& B, const VectorField3& W) {
    require_match(B, W);
    VectorField3 out = VectorField3::zeros(B.n, B.dx, B.dy, B.dz);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j)
            for (int k = 0; k < B.n; ++k) {
                const size_t m = B.idx(i, j, k);
                for (int ci = 0; ci < 3; ++ci) {
                    double acc = 0.0;
                    for (int s = 0; s < 3; ++s)
                        acc += B.c[s][m] * (deriv(W, ci, s, i, j, k) - deriv(W, s, ci, i, j, k));
                    out.c[ci][m] = acc;
                }
            }
    return out;
}

VectorField3 v_dagger(const VectorField3& W, const VectorField3& B) {
    require_match(W, B);
    VectorField3 out = VectorField3::zeros(B.n, B.dx, B.dy, B.dz);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j)
            for (int k = 0; k < B.n; ++k) {
                const size_t m = B.idx(i, j, k);
                double div = 0.0;
                for (int s = 0; s < 3; ++s) div += deriv(B, s, s, i, j, k);
                for (int ci = 0; ci < 3; ++ci) {
                    double acc = -W.c[ci][m] * div;
                    for (int s = 0; s < 3; ++s) acc += W.c[s][m] * deriv(B, s, ci, i, j, k);
                    out.c[ci][m] = acc;
                }
            }
    return out;
}

std::array<double, 3> adjoint_identity_check(const VectorField3& B, const VectorField3& W) {
    const VectorField3 lhs = v_b(B, W);
    const VectorField3 rhs = v_dagger(W, B);
    const double dv = B.dx * B.dy * B.dz;
    std::array<double, 3> out{};
    for (int ci = 0; ci < 3; ++ci) {
        double sl = 0.0, sr = 0.0, scale = 0.0;
        for (size_t m = 0; m < lhs.c[ci].size(); ++m) {
            sl += lhs.c[ci][m];
            sr += rhs.c[ci][m];
            scale += std::abs(lhs.c[ci][m]) + std::abs(rhs.c[ci][m]);
        }
        const double denom = std::max(scale * dv, 1e-300);
        out[ci] = std::abs(sl - sr) * dv / denom;
    }
    return out;
}

VectorField3 discrete_curl(const VectorField3& A) {
    VectorField3 out = VectorField3::zeros(A.n, A.dx, A.dy, A.dz);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            for (int k = 0; k < A.n; ++k) {
                const size_t m = A.idx(i, j, k);
                out.c[0][m] = deriv(A, 2, 1, i, j, k) - deriv(A, 1, 2, i, j, k);
                out.c[1][m] = deriv(A, 0, 2, i, j, k) - deriv(A, 2, 0, i, j, k);
                out.c[2][m] = deriv(A, 1, 0, i, j, k) - deriv(A, 0, 1, i, j, k);
            }
    return out;
}

std::vector<double> divergence(const VectorField3& B) {
    std::vector<double> out(static_cast<size_t>(B.n) * B.n * B.n, 0.0);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j)
            for (int k = 0; k < B.n; ++k) {
                double acc = 0.0;
                for (int s = 0; s < 3; ++s) acc += deriv(B, s, s, i, j, k);
                out[B.idx(i, j, k)] = acc;
            }
    return out;
}

}  // namespace msymp
