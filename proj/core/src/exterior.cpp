#include "msymp/exterior.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace msymp {

int SystemDef::var(std::string_view name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("system '" + this->name + "': unknown variable '" +
                                std::string(name) + "'");
}

void SystemDef::check_admissible(std::span<const double> z) const {
    if (z.size() != vars.size())
        throw std::invalid_argument("system '" + name + "': state has wrong length");
    if (rho_index >= 0 && !(z[rho_index] > 0.0))
        throw std::domain_error("system '" + name + "': density must be > 0");
}

double SkewMatrix::skewness_defect() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double d = std::abs(at(i, j) + at(j, i));
            if (d > worst) worst = d;
        }
    return worst;
}

SkewMatrix exterior_derivative(const OneFormCoeffs& omega, std::span<const double> z) {
    const int n = static_cast<int>(omega.coeffs.size());
    SkewMatrix k(omega.alpha, n);
    for (int j = 0; j < n; ++j)
        for (int m = j + 1; m < n; ++m)
            k.set(j, m, omega.partial(m, j, z) - omega.partial(j, m, z));
    return k;
}

double check_closure(const SystemDef& system, int alpha, std::span<const double> z) {
    system.check_admissible(z);
    const OneFormCoeffs& omega = system.oneforms.at(alpha);
    const int n = system.n_dep();
    // dK_{ij}/dz_m = d2 L_j/(dz_m dz_i) - d2 L_i/(dz_m dz_j); constant for
    // degree-2 coefficients, so the cyclic sums are state-independent here.
    auto dk = [&](int i, int j, int m) {
        return omega.partial2(j, m, i) - omega.partial2(i, m, j);
    };
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                const double s = dk(i, j, m) + dk(j, m, i) + dk(m, i, j);
                if (std::abs(s) > worst) worst = std::abs(s);
            }
    return worst;
}

double check_closure_fd(const SystemDef& system, int alpha, std::span<const double> z,
                        double step) {
    system.check_admissible(z);
    const OneFormCoeffs& omega = system.oneforms.at(alpha);
    const int n = system.n_dep();
    std::vector<double> zp(z.begin(), z.end());
    // dK_{ij}/dz_m by centered difference of the derived entries.
    auto dk = [&](int i, int j, int m) {
        const double saved = zp[m];
        zp[m] = saved + step;
        const double kp = omega.partial(j, i, zp) - omega.partial(i, j, zp);
        zp[m] = saved - step;
        const double km = omega.partial(j, i, zp) - omega.partial(i, j, zp);
        zp[m] = saved;
        return (kp - km) / (2.0 * step);
    };
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) {
                const double s = dk(i, j, m) + dk(j, m, i) + dk(m, i, j);
                if (std::abs(s) > worst) worst = std::abs(s);
            }
    return worst;
}

std::vector<double> assemble_residual(const SystemDef& system, std::span<const double> z,
                                      std::span<const std::vector<double>> dz,
                                      const HookValues& hook) {
    system.check_admissible(z);
    const int n = system.n_dep();
    if (static_cast<int>(dz.size()) != system.n_indep)
        throw std::invalid_argument("assemble_residual: need one derivative vector per "
                                    "independent variable");
    for (const auto& d : dz)
        if (static_cast<int>(d.size()) != n)
            throw std::invalid_argument("assemble_residual: derivative vector length mismatch");

    std::vector<double> r(n, 0.0);
    for (int alpha = 0; alpha < system.n_indep; ++alpha) {
        const SkewMatrix k = exterior_derivative(system.oneforms[alpha], z);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += k.at(i, j) * dz[alpha][j];
            r[i] += s;
        }
    }
    std::vector<double> grad(n, 0.0);
    system.grad_hamiltonian(system, z, hook, grad);
    for (int i = 0; i < n; ++i) r[i] -= grad[i];
    return r;
}

double lagrangian_density(const SystemDef& system, std::span<const double> z,
                          std::span<const std::vector<double>> dz, const HookValues& hook) {
    system.check_admissible(z);
    if (static_cast<int>(dz.size()) != system.n_indep)
        throw std::invalid_argument("lagrangian_density: need one derivative vector per "
                                    "independent variable");
    double s = 0.0;
    for (int alpha = 0; alpha < system.n_indep; ++alpha) {
        const OneFormCoeffs& omega = system.oneforms[alpha];
        for (int j = 0; j < system.n_dep(); ++j)
            if (!omega.coeffs[j].empty()) s += omega.coeff(j, z) * dz[alpha][j];
    }
    return s - system.hamiltonian(system, z, hook);
}

}  // namespace msymp
