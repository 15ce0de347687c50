#ifndef MSYMP_ADJOINTB_HPP
#define MSYMP_ADJOINTB_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace msymp {

/// Three-component vector field on a periodic uniform n x n x n grid.
struct VectorField3 {
    int n = 0;
    double dx = 0.0, dy = 0.0, dz = 0.0;
    std::array<std::vector<double>, 3> c;

    static VectorField3 zeros(int n, double dx, double dy, double dz);
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * n + j) * n + k;
    }
    bool same_grid(const VectorField3& o) const {
        return n == o.n && dx == o.dx && dy == o.dy && dz == o.dz;
    }
};

/// V_B(W)^i = B^s d_s W^i - B^s d_i W^s with centered periodic differences.
VectorField3 v_b(const VectorField3& B, const VectorField3& W);

/// Adjoint transport operator: V_W^+(B)^i = W^s d_i B^s - W^i d_s B^s.
VectorField3 v_dagger(const VectorField3& W, const VectorField3& B);

/// Per-component relative discrepancy between the volume sums of v_b(B, W)
/// and v_dagger(W, B); zero to rounding on periodic grids since both sides
/// reduce to the same sums under summation by parts.
std::array<double, 3> adjoint_identity_check(const VectorField3& B, const VectorField3& W);

/// Discrete curl of a vector potential; its centered divergence vanishes
/// exactly because the mixed difference operators commute.
VectorField3 discrete_curl(const VectorField3& A);

/// Centered divergence sampled on the same grid.
std::vector<double> divergence(const VectorField3& B);

}  // namespace msymp

#endif
