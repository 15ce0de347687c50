#ifndef MSYMP_COVARIANT_HPP
#define MSYMP_COVARIANT_HPP

#include <functional>
#include <string>
#include <vector>

#include "msymp/claws.hpp"

namespace msymp {

/// Diagonal static spatial metric for 1D radial domains. sqrt_g is the
/// volume factor entering weighted divergences, g_rr the radial metric
/// coefficient, dln_sqrt_g the logarithmic derivative d/dr ln sqrt_g.
/// Grids must exclude coordinate singularities (sqrt_g > 0 on all nodes).
struct MetricDef {
    std::string name;  ///< cartesian | cylindrical-slab | user-diagonal
    std::function<double(double)> g_rr;
    std::function<double(double)> sqrt_g;
    std::function<double(double)> dln_sqrt_g;

    bool is_cartesian() const { return name == "cartesian"; }
};

MetricDef cartesian_metric();
/// Cylindrical slab: sqrt_g = r from the suppressed angular direction,
/// g_rr = 1.
MetricDef cylindrical_slab_metric();
MetricDef user_diagonal_metric(std::function<double(double)> g_rr,
                               std::function<double(double)> sqrt_g,
                               std::function<double(double)> dln_sqrt_g);

/// sqrt_g sampled on the grid nodes. Throws std::domain_error when the
/// metric degenerates (sqrt_g <= 0 or g_rr <= 0) on any node.
std::vector<double> metric_weights(const MetricDef& metric, const Grid1D& grid);

/// (1/sqrt_g) d/dr (sqrt_g L^r) with centered differences (one-sided at
/// bounded-grid edges).
std::vector<double> covariant_divergence(std::span<const double> L_r, const MetricDef& metric,
                                         const Grid1D& grid);

/// Pointwise residual of the metric form of the field equations:
/// sum_alpha K^alpha dz[alpha] - L_eval - dH/dz, where L_eval carries the
/// caller-evaluated divergence of the one-form coefficient fields (one
/// value per dependent variable).
std::vector<double> covariant_residual(const SystemDef& system, const MetricDef& metric,
                                       const StatePoint& z,
                                       std::span<const std::vector<double>> dz,
                                       std::span<const double> L_eval,
                                       const HookValues& hook = {});

/// Structural conservation laws with the metric-weighted flux divergence;
/// the Cartesian metric reproduces the flat results bitwise (same code
/// path with unit weights).
std::vector<ConservationReport> covariant_structural_check(const SystemDef& system,
                                                           const MetricDef& metric,
                                                           const FieldHistory& history);

/// Translation conservation law in the metric-weighted form. Time
/// translation (beta = 0) is a symmetry of every static-metric run and
/// uses the corrected Lagrangian density L + phi rho u dln_sqrt_g; space
/// translation is a symmetry only for the Cartesian metric, so beta = 1
/// with a curved metric throws std::invalid_argument. Curved-metric runs
/// are gas-dynamics only.
ConservationReport covariant_noether_flux(const SystemDef& system, const MetricDef& metric,
                                          const FieldHistory& history, int beta);

/// Radial gas-dynamics run: the flat stepper with every flux divergence
/// replaced by its metric-weighted form.
FieldHistory run_radial_gas(const SystemDef& system, const MetricDef& metric, const Grid1D& grid,
                            const std::string& family,
                            const std::map<std::string, double>& params, RunParams run);

}  // namespace msymp

#endif
