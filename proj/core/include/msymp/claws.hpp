#ifndef MSYMP_CLAWS_HPP
#define MSYMP_CLAWS_HPP

#include <optional>
#include <string>
#include <vector>

#include "msymp/dynamics.hpp"

namespace msymp {

/// Space-time sample array over the stored snapshots of a run: nt rows of
/// nx values with uniform spacings dt and dx. A linear ramp in x may ride
/// on top of the samples (x_slope), mirroring Field. Row derivatives use
/// periodic or one-sided x stencils according to xperiodic.
struct StArray {
    int nt = 0, nx = 0;
    double dt = 0.0, dx = 0.0;
    double x_slope = 0.0;
    bool xperiodic = true;
    std::vector<double> v;

    static StArray zeros(int nt, int nx, double dt, double dx, bool xperiodic = true);
    double& at(int k, int i) { return v[static_cast<size_t>(k) * nx + i]; }
    double at(int k, int i) const { return v[static_cast<size_t>(k) * nx + i]; }
};

/// Centered time derivative over snapshot rows (one-sided second-order at
/// the first and last row; exclude those rows from norms).
StArray st_ddt(const StArray& f);
/// Space derivative per row, ramp slope included.
StArray st_ddx(const StArray& f);
/// Derivative along independent-variable index a: 0 = t, 1 = x, 2 and 3
/// (slab directions with no grid extent) give exact zeros.
StArray st_deriv(const StArray& f, int a);

StArray operator+(const StArray& a, const StArray& b);
StArray operator-(const StArray& a, const StArray& b);

/// Discrete L2 norm sqrt(sum v^2 dx dt) and max norm, skipping skip_t rows
/// at both time ends.
double st_l2(const StArray& f, int skip_t = 1);
double st_linf(const StArray& f, int skip_t = 1);

/// d/dx F, or the metric-weighted divergence (1/w_i) d/dx(w F) when a node
/// weight array is supplied.
StArray st_flux_div(const StArray& flux, std::span<const double> weights = {});

/// Pointwise two-variable Jacobian d(f,g)/d(x^a,x^b) = f_{,a} g_{,b} -
/// f_{,b} g_{,a}. Throws std::invalid_argument when a == b.
StArray jacobian2(const StArray& f, const StArray& g, int a, int b);

/// Per-variable value and derivative arrays extracted from a history (or
/// built directly from manufactured sample arrays). Ramp slopes are
/// rejected: the law evaluators need periodic samples.
struct ColumnSet {
    const SystemDef* sys = nullptr;
    int nt = 0, nx = 0;
    double dt = 0.0, dx = 0.0;
    bool xperiodic = true;
    std::vector<StArray> val;  ///< per variable
    std::vector<StArray> dt_;  ///< time derivatives
    std::vector<StArray> dx_;  ///< space derivatives

    StatePoint state_at(int k, int i) const;
    /// Derivative tuple z^j_{,a} at one point; a beyond the grid extent
    /// gives zeros.
    StatePoint deriv_at(int k, int i, int a) const;
};

ColumnSet make_columns(const SystemDef& system, const FieldHistory& history);
ColumnSet make_columns(const SystemDef& system, const std::vector<StArray>& fields);

/// z_{,a}^T K^alpha(z) z_{,b} at every stored point.
StArray quadratic_form(const ColumnSet& cols, int alpha, int a, int b);

/// The same contraction grouped as coefficient-weighted variable Jacobians,
/// written out per system as an independent expression tree.
StArray jacobian_form(const ColumnSet& cols, int alpha, int a, int b);

/// L = L^alpha_j(z) z^j_{,alpha} - H at every stored point. Defined only
/// for systems with a pointwise Hamiltonian.
StArray lagrangian_array(const ColumnSet& cols);

/// Pullback stress tensor component T^alpha_beta = L^alpha_j z^j_{,beta} -
/// L delta^alpha_beta.
StArray pullback_array(const ColumnSet& cols, int alpha, int beta, const StArray& L);

/// One conservation law on a stored run: density, x-flux, their discrete
/// residual D_t density + D_x flux, and its norms over interior snapshots.
struct ConservationReport {
    std::string law;
    StArray density;
    StArray flux;
    StArray residual;
    double residual_l2 = 0.0;
    double residual_linf = 0.0;
    std::optional<double> order_estimate;
};

ConservationReport make_report(std::string law, StArray density, StArray flux,
                               std::span<const double> weights = {});

/// Translation conservation laws T^alpha_beta per beta, followed by the
/// physical energy/momentum forms they reduce to (and, for the flux form of
/// MHD, the unreduced variants that still carry the null-divergence terms).
std::vector<ConservationReport> pullback_laws(const SystemDef& system,
                                              const FieldHistory& history);

/// Structural conservation laws per independent-variable pair (a,b), a < b,
/// with density/flux built from the quadratic form.
std::vector<ConservationReport> symplecticity_laws(const SystemDef& system,
                                                   const FieldHistory& history);

/// Off-shell identity: the antisymmetrized derivative of the divergence
/// G_beta = D_alpha T^alpha_beta equals the divergence of the quadratic
/// form. Evaluates both sides on arbitrary smooth sample arrays and returns
/// the L2 norm of the difference (interior rows).
double cross_derivative_identity(const SystemDef& system, const std::vector<StArray>& fields,
                                 int beta, int gamma);

/// Flux of the translation symmetry in x^beta assembled from the symmetry
/// generators; equals the negated pullback tensor.
ConservationReport noether_flux(const SystemDef& system, const FieldHistory& history, int beta);

/// Discrete Hamilton's-equations check for one conjugate pair.
struct HamiltonReport {
    std::string pair;
    double q_l2 = 0.0, q_linf = 0.0;  ///< d q/dt - dH/d(p) discrepancy
    double p_l2 = 0.0, p_linf = 0.0;  ///< d p/dt + dH/d(q) discrepancy
};

/// Compares centered time derivatives of each conjugate pair against
/// functional derivatives of the discrete energy sum, obtained by
/// perturbing single nodes with the velocity rebuilt per evaluation.
std::vector<HamiltonReport> hamilton_check(const SystemDef& system, const FieldHistory& history);

/// Least-squares slope of log(residual) against log(dx); needs at least
/// three resolutions.
double estimate_order(std::span<const double> dx, std::span<const double> residual);

}  // namespace msymp

#endif
