#include "msymp/covariant.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "msymp/exterior.hpp"
#include "msymp/systems.hpp"

namespace msymp {

MetricDef cartesian_metric() {
    MetricDef m;
    m.name = "cartesian";
    m.g_rr = [](double) { return 1.0; };
    m.sqrt_g = [](double) { return 1.0; };
    m.dln_sqrt_g = [](double) { return 0.0; };
    return m;
}

MetricDef cylindrical_slab_metric() {
    MetricDef m;
    m.name = "cylindrical-slab";
    m.g_rr = [](double) { return 1.0; };
    m.sqrt_g = [](double r) { return r; };
    m.dln_sqrt_g = [](double r) { return 1.0 / r; };
    return m;
}

MetricDef user_diagonal_metric(std::function<double(double)> g_rr,
                               std::function<double(double)> sqrt_g,
                               std::function<double(double)> dln_sqrt_g) {
    if (!g_rr || !sqrt_g || !dln_sqrt_g)
        throw std::invalid_argument("user metric needs all three coefficient functions");
    MetricDef m;
    m.name = "user-diagonal";
    m.g_rr = std::move(g_rr);
    m.sqrt_g = std::move(sqrt_g);
    m.dln_sqrt_g = std::move(dln_sqrt_g);
    return m;
}

std::vector<double> metric_weights(const MetricDef& metric, const Grid1D& grid) {
    validate(grid);
    std::vector<double> w(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const double r = grid.x(i);
        if (!(metric.g_rr(r) > 0.0))
            throw std::domain_error("metric coefficient g_rr is not positive on the grid");
        w[i] = metric.sqrt_g(r);
        if (!(w[i] > 0.0))
            throw std::domain_error("volume factor sqrt_g degenerates on the grid");
    }
    return w;
}

std::vector<double> covariant_divergence(std::span<const double> L_r, const MetricDef& metric,
                                         const Grid1D& grid) {
    if (static_cast<int>(L_r.size()) != grid.n)
        throw std::invalid_argument("field array does not match the grid");
    const std::vector<double> w = metric_weights(metric, grid);
    std::vector<double> wf(grid.n);
    for (int i = 0; i < grid.n; ++i) wf[i] = w[i] * L_r[i];
    std::vector<double> out = ddx(wf, grid);
    for (int i = 0; i < grid.n; ++i) out[i] /= w[i];
    return out;
}

std::vector<double> covariant_residual(const SystemDef& system, const MetricDef& metric,
                                       const StatePoint& z,
                                       std::span<const std::vector<double>> dz,
                                       std::span<const double> L_eval, const HookValues& hook) {
    (void)metric;
    if (static_cast<int>(L_eval.size()) != system.n_dep())
        throw std::invalid_argument("one divergence value per dependent variable is required");
    std::vector<double> r = assemble_residual(system, z, dz, hook);
    for (int i = 0; i < system.n_dep(); ++i) r[i] -= L_eval[i];
    return r;
}

std::vector<ConservationReport> covariant_structural_check(const SystemDef& system,
                                                           const MetricDef& metric,
                                                           const FieldHistory& history) {
    const std::vector<double> w = metric_weights(metric, history.grid);
    const ColumnSet cols = make_columns(system, history);
    static const char* names[4] = {"t", "x", "y", "z"};
    std::vector<ConservationReport> out;
    for (int a = 0; a < system.n_indep; ++a)
        for (int b = a + 1; b < system.n_indep; ++b) {
            std::string law = std::string("symplectic-") + names[a] + names[b];
            out.push_back(make_report(std::move(law), quadratic_form(cols, 0, a, b),
                                      quadratic_form(cols, 1, a, b), w));
        }
    return out;
}

ConservationReport covariant_noether_flux(const SystemDef& system, const MetricDef& metric,
                                          const FieldHistory& history, int beta) {
    if (beta < 0 || beta >= system.n_indep)
        throw std::invalid_argument("translation index out of range");
    if (!metric.is_cartesian()) {
        if (beta != 0)
            throw std::invalid_argument(
                "space translation is not a symmetry of a curved metric; only beta = 0 is "
                "conserved");
        if (kind_of(system) != SystemKind::gas1d)
            throw std::invalid_argument("curved-metric runs are gas-dynamics only");
    }
    const std::vector<double> w = metric_weights(metric, history.grid);
    const ColumnSet cols = make_columns(system, history);
    StArray L = lagrangian_array(cols);
    if (!metric.is_cartesian()) {
        // The solve extremizes the metric-weighted action with the density
        // correction phi rho u dln_sqrt_g; the correction carries no
        // derivative dependence, so the flux coefficients are unchanged.
        for (int k = 0; k < cols.nt; ++k)
            for (int i = 0; i < cols.nx; ++i) {
                const double dln = metric.dln_sqrt_g(history.grid.x(i));
                L.at(k, i) += dln * cols.val[gas::phi].at(k, i) * cols.val[gas::rho].at(k, i) *
                              cols.val[gas::u].at(k, i);
            }
    }
    static const char* names[4] = {"t", "x", "y", "z"};
    std::array<StArray, 2> N;
    StatePoint z(cols.val.size());
    for (int alpha = 0; alpha < 2; ++alpha) {
        N[alpha] = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
        const auto& form = system.oneforms.at(alpha);
        for (int k = 0; k < cols.nt; ++k)
            for (int i = 0; i < cols.nx; ++i) {
                for (size_t j = 0; j < cols.val.size(); ++j) z[j] = cols.val[j].at(k, i);
                double acc = alpha == beta ? L.at(k, i) : 0.0;
                const StatePoint db = cols.deriv_at(k, i, beta);
                for (size_t s = 0; s < cols.val.size(); ++s) {
                    if (form.coeffs[s].empty()) continue;
                    acc += -db[s] * form.coeff(static_cast<int>(s), z);
                }
                N[alpha].at(k, i) = acc;
            }
    }
    return make_report(std::string("noether-") + names[beta], std::move(N[0]), std::move(N[1]),
                       w);
}

FieldHistory run_radial_gas(const SystemDef& system, const MetricDef& metric, const Grid1D& grid,
                            const std::string& family,
                            const std::map<std::string, double>& params, RunParams run) {
    if (kind_of(system) != SystemKind::gas1d)
        throw std::invalid_argument("metric-weighted runs are gas-dynamics only");
    if (!metric.is_cartesian() && grid.periodic)
        throw std::invalid_argument("a curved metric needs a bounded grid");
    run.sqrtg = metric_weights(metric, grid);
    const FieldSet z0 = make_initial(system, grid, family, params);
    return run_simulation(system, z0, grid, run);
}

}  // namespace msymp
