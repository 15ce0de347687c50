#ifndef MSYMP_EXTERIOR_HPP
#define MSYMP_EXTERIOR_HPP

#include <span>
#include <vector>

#include "msymp/system.hpp"

namespace msymp {

/// K^alpha evaluated at one state point. Stored dense; constructed
/// antisymmetrically so that entries + entries^T = 0 holds exactly.
struct SkewMatrix {
    int alpha = 0;
    int n = 0;
    std::vector<double> a;  ///< row-major n*n

    SkewMatrix() = default;
    SkewMatrix(int alpha_, int n_) : alpha(alpha_), n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
    /// Sets (i,j) and its mirror (j,i) = -value.
    void set(int i, int j, double value) {
        a[static_cast<size_t>(i) * n + j] = value;
        a[static_cast<size_t>(j) * n + i] = -value;
    }
    /// Max |K + K^T| over all entries; zero by construction for built matrices.
    double skewness_defect() const;
};

/// K^alpha_{jk} = dL^alpha_k/dz^j - dL^alpha_j/dz^k at z, filled from the
/// strict upper triangle so antisymmetry is exact.
SkewMatrix exterior_derivative(const OneFormCoeffs& omega, std::span<const double> z);

/// Max over all ordered triples (i,j,k) of
/// |dK_{ij}/dz_k + dK_{jk}/dz_i + dK_{ki}/dz_j| using the system's exact
/// second partials of the one-form coefficients.
double check_closure(const SystemDef& system, int alpha, std::span<const double> z);

/// Same cyclic sums with centered finite differences of the K entries
/// (fallback path; noisier than the analytic one).
double check_closure_fd(const SystemDef& system, int alpha, std::span<const double> z,
                        double step = 1e-5);

/// r_i = sum_alpha (K^alpha z_{,alpha})_i - dH/dz^i for pointwise derivative
/// data dz[alpha][j]. Throws std::invalid_argument on dimension mismatch.
std::vector<double> assemble_residual(const SystemDef& system, std::span<const double> z,
                                      std::span<const std::vector<double>> dz,
                                      const HookValues& hook = {});

/// L = sum_alpha sum_j L^alpha_j(z) z^j_{,alpha} - H(z).
double lagrangian_density(const SystemDef& system, std::span<const double> z,
                          std::span<const std::vector<double>> dz, const HookValues& hook = {});

}  // namespace msymp

#endif
