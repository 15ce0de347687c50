#include "msymp/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace msymp {

namespace {

int wrap(int i, int n) {
    if (i < 0) return i + n;
    if (i >= n) return i - n;
    return i;
}

/// Ramp-aware derivative of one field at one node (centered inside,
/// one-sided at the ends of a bounded grid).
double deriv_at(const Field& f, const Grid1D& g, int i) {
    const int n = g.n;
    const double inv2 = 1.0 / (2.0 * g.dx());
    double d;
    if (g.periodic) {
        d = (f.v[wrap(i + 1, n)] - f.v[wrap(i - 1, n)]) * inv2;
    } else if (i == 0) {
        d = (-3.0 * f.v[0] + 4.0 * f.v[1] - f.v[2]) * inv2;
    } else if (i == n - 1) {
        d = (3.0 * f.v[n - 1] - 4.0 * f.v[n - 2] + f.v[n - 3]) * inv2;
    } else {
        d = (f.v[i + 1] - f.v[i - 1]) * inv2;
    }
    return d + f.x_slope;
}

std::array<double, 3> velocity_at(SystemKind kind, const FieldSet& z, const Grid1D& g, int i) {
    std::array<double, 3> u{0.0, 0.0, 0.0};
    if (kind == SystemKind::gas1d) {
        const double rho = z[gas::rho].v[i];
        u[0] = deriv_at(z[gas::phi], g, i) - z[gas::beta].v[i] / rho * deriv_at(z[gas::S], g, i);
        return u;
    }
    const double rho = z[mhd::rho].v[i];
    const double base = deriv_at(z[mhd::phi], g, i) -
                        z[mhd::beta].v[i] / rho * deriv_at(z[mhd::S], g, i) -
                        z[mhd::lam].v[i] / rho * deriv_at(z[mhd::mu], g, i);
    if (kind == SystemKind::mhd_b) {
        const double dG2 = deriv_at(z[mhd::c2], g, i);
        const double dG3 = deriv_at(z[mhd::c3], g, i);
        const double dB1 = deriv_at(z[mhd::f1], g, i);
        u[0] = base + (dG3 * z[mhd::f3].v[i] + dG2 * z[mhd::f2].v[i]) / rho -
               z[mhd::c1].v[i] * dB1 / rho;
        u[1] = -(dG2 * z[mhd::f1].v[i] + z[mhd::c2].v[i] * dB1) / rho;
        u[2] = -(dG3 * z[mhd::f1].v[i] + z[mhd::c3].v[i] * dB1) / rho;
    } else {
        const double dA1 = deriv_at(z[mhd::f1], g, i);
        const double dA2 = deriv_at(z[mhd::f2], g, i);
        const double dA3 = deriv_at(z[mhd::f3], g, i);
        const double dg1 = deriv_at(z[mhd::c1], g, i);
        u[0] = base - (z[mhd::c2].v[i] * dA2 + z[mhd::c3].v[i] * dA3) / rho +
               dg1 * z[mhd::f1].v[i] / rho;
        u[1] = (z[mhd::c1].v[i] * dA2 + dg1 * z[mhd::f2].v[i]) / rho;
        u[2] = (z[mhd::c1].v[i] * dA3 + dg1 * z[mhd::f3].v[i]) / rho;
    }
    return u;
}

void require_layout(SystemKind kind, const FieldSet& z, const Grid1D& g) {
    const size_t want = kind == SystemKind::gas1d ? size_t(gas::count) : size_t(mhd::count);
    if (z.size() != want) throw std::invalid_argument("field set does not match the system");
    for (const auto& f : z)
        if (static_cast<int>(f.v.size()) != g.n)
            throw std::invalid_argument("field length does not match the grid");
    const int rho_slot = kind == SystemKind::gas1d ? int(gas::rho) : int(mhd::rho);
    for (double r : z[rho_slot].v)
        if (!(r > 0.0)) throw std::domain_error("density must stay positive");
}

}  // namespace

SystemKind kind_of(const SystemDef& system) {
    if (system.name == "gas1d") return SystemKind::gas1d;
    if (system.name == "mhd-b") return SystemKind::mhd_b;
    if (system.name == "mhd-a") return SystemKind::mhd_a;
    throw std::invalid_argument("no time stepper for system '" + system.name + "'");
}

std::vector<double> reconstruct_u_gas1d(const FieldSet& z, const Grid1D& grid) {
    require_layout(SystemKind::gas1d, z, grid);
    std::vector<double> u(grid.n);
    for (int i = 0; i < grid.n; ++i) u[i] = velocity_at(SystemKind::gas1d, z, grid, i)[0];
    return u;
}

std::array<std::vector<double>, 3> reconstruct_u_mhdB(const FieldSet& z, const Grid1D& grid) {
    require_layout(SystemKind::mhd_b, z, grid);
    std::array<std::vector<double>, 3> u;
    for (auto& c : u) c.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const auto ui = velocity_at(SystemKind::mhd_b, z, grid, i);
        for (int c = 0; c < 3; ++c) u[c][i] = ui[c];
    }
    return u;
}

std::array<std::vector<double>, 3> reconstruct_u_mhdA(const FieldSet& z, const Grid1D& grid) {
    require_layout(SystemKind::mhd_a, z, grid);
    std::array<std::vector<double>, 3> u;
    for (auto& c : u) c.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        const auto ui = velocity_at(SystemKind::mhd_a, z, grid, i);
        for (int c = 0; c < 3; ++c) u[c][i] = ui[c];
    }
    return u;
}

void sync_velocity(const SystemDef& system, FieldSet& z, const Grid1D& grid) {
    const SystemKind kind = kind_of(system);
    if (kind == SystemKind::gas1d) {
        z[gas::u].v = reconstruct_u_gas1d(z, grid);
        z[gas::u].x_slope = 0.0;
        return;
    }
    auto u = kind == SystemKind::mhd_b ? reconstruct_u_mhdB(z, grid) : reconstruct_u_mhdA(z, grid);
    for (int c = 0; c < 3; ++c) {
        z[mhd::ux + c].v = std::move(u[c]);
        z[mhd::ux + c].x_slope = 0.0;
    }
}

HookFields hook_fields_mhdA(const FieldSet& z, const Grid1D& grid, double mu0) {
    HookFields h;
    const std::vector<double> dA2 = ddx(z[mhd::f2], grid);
    const std::vector<double> dA3 = ddx(z[mhd::f3], grid);
    h.curl[0].assign(grid.n, 0.0);
    h.curl[1].resize(grid.n);
    h.curl[2].resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        h.curl[1][i] = -dA3[i];
        h.curl[2][i] = dA2[i];
    }
    // Current = curl of curl / mu0; with x-only dependence this reduces to
    // second derivatives of the transverse potential components.
    const std::vector<double> d2A2 = ddx(std::span<const double>(dA2), grid);
    const std::vector<double> d2A3 = ddx(std::span<const double>(dA3), grid);
    h.current[0].assign(grid.n, 0.0);
    h.current[1].resize(grid.n);
    h.current[2].resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        h.current[1][i] = -d2A2[i] / mu0;
        h.current[2][i] = -d2A3[i] / mu0;
    }
    return h;
}

double energy_cell(const SystemDef& system, const FieldSet& z, const Grid1D& grid, int i) {
    const SystemKind kind = kind_of(system);
    const auto u = velocity_at(kind, z, grid, i);
    if (kind == SystemKind::gas1d) {
        const EosValues v = eos_eval(system.eos, z[gas::rho].v[i], z[gas::S].v[i]);
        return 0.5 * z[gas::rho].v[i] * u[0] * u[0] + v.epsilon;
    }
    const EosValues v = eos_eval(system.eos, z[mhd::rho].v[i], z[mhd::S].v[i]);
    const double u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    double b2;
    if (kind == SystemKind::mhd_b) {
        b2 = z[mhd::f1].v[i] * z[mhd::f1].v[i] + z[mhd::f2].v[i] * z[mhd::f2].v[i] +
             z[mhd::f3].v[i] * z[mhd::f3].v[i];
    } else {
        const double c2 = -deriv_at(z[mhd::f3], grid, i);
        const double c3 = deriv_at(z[mhd::f2], grid, i);
        b2 = c2 * c2 + c3 * c3;
    }
    return 0.5 * z[mhd::rho].v[i] * u2 + v.epsilon + 0.5 * b2 / system.eos.mu0;
}

namespace {

using Slab = std::vector<std::vector<double>>;  // one rhs array per variable

std::vector<double> product(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

/// d/dx, or its metric-weighted form (1/w) d/dx(w f) when a weight is given.
std::vector<double> weighted_div(const std::vector<double>& f, const Grid1D& g,
                                 std::span<const double> w) {
    if (w.empty()) return ddx(std::span<const double>(f), g);
    std::vector<double> wf(f.size());
    for (size_t i = 0; i < f.size(); ++i) wf[i] = w[i] * f[i];
    std::vector<double> out = ddx(std::span<const double>(wf), g);
    for (size_t i = 0; i < out.size(); ++i) out[i] /= w[i];
    return out;
}

Slab rhs_gas1d(const FieldSet& z, const Grid1D& g, const EosParams& eos,
               std::span<const double> w) {
    require_layout(SystemKind::gas1d, z, g);
    const int n = g.n;
    const std::vector<double> u = reconstruct_u_gas1d(z, g);
    const std::vector<double> dS = ddx(z[gas::S], g);
    const std::vector<double> dphi = ddx(z[gas::phi], g);
    Slab k(gas::count, std::vector<double>(n, 0.0));
    std::vector<double> rho_u = product(z[gas::rho].v, u);
    std::vector<double> beta_u = product(z[gas::beta].v, u);
    const std::vector<double> div_rho_u = weighted_div(rho_u, g, w);
    const std::vector<double> div_beta_u = weighted_div(beta_u, g, w);
    for (int i = 0; i < n; ++i) {
        const EosValues v = eos_eval(eos, z[gas::rho].v[i], z[gas::S].v[i]);
        k[gas::rho][i] = -div_rho_u[i];
        k[gas::S][i] = -u[i] * dS[i];
        k[gas::beta][i] = -div_beta_u[i] - z[gas::rho].v[i] * v.T;
        k[gas::phi][i] = 0.5 * u[i] * u[i] - v.h - u[i] * dphi[i];
    }
    return k;
}

Slab rhs_mhd(const FieldSet& z, const Grid1D& g, const EosParams& eos, MhdForm form) {
    const SystemKind kind = form == MhdForm::B ? SystemKind::mhd_b : SystemKind::mhd_a;
    require_layout(kind, z, g);
    const int n = g.n;
    auto u = kind == SystemKind::mhd_b ? reconstruct_u_mhdB(z, g) : reconstruct_u_mhdA(z, g);
    const std::vector<double> du1 = ddx(std::span<const double>(u[0]), g);
    const std::vector<double> du2 = ddx(std::span<const double>(u[1]), g);
    const std::vector<double> du3 = ddx(std::span<const double>(u[2]), g);
    const std::vector<double> dS = ddx(z[mhd::S], g);
    const std::vector<double> dmu = ddx(z[mhd::mu], g);
    const std::vector<double> dphi = ddx(z[mhd::phi], g);
    const std::vector<double> div_rho_u = ddx(std::span<const double>(product(z[mhd::rho].v, u[0])), g);
    const std::vector<double> div_lam_u = ddx(std::span<const double>(product(z[mhd::lam].v, u[0])), g);
    const std::vector<double> div_beta_u = ddx(std::span<const double>(product(z[mhd::beta].v, u[0])), g);

    Slab k(mhd::count, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const EosValues v = eos_eval(eos, z[mhd::rho].v[i], z[mhd::S].v[i]);
        const double u2 = u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i];
        k[mhd::rho][i] = -div_rho_u[i];
        k[mhd::S][i] = -u[0][i] * dS[i];
        k[mhd::mu][i] = -u[0][i] * dmu[i];
        k[mhd::lam][i] = -div_lam_u[i];
        k[mhd::beta][i] = -div_beta_u[i] - z[mhd::rho].v[i] * v.T;
        k[mhd::phi][i] = 0.5 * u2 - v.h - u[0][i] * dphi[i];
    }

    if (form == MhdForm::B) {
        const std::vector<double> dB1 = ddx(z[mhd::f1], g);
        const std::vector<double> dG1 = ddx(z[mhd::c1], g);
        const std::vector<double> dG2 = ddx(z[mhd::c2], g);
        const std::vector<double> dG3 = ddx(z[mhd::c3], g);
        // Induction: curl(u x B) plus the advected-divergence term.
        std::vector<double> e3(n), e2(n);
        for (int i = 0; i < n; ++i) {
            e3[i] = u[0][i] * z[mhd::f2].v[i] - u[1][i] * z[mhd::f1].v[i];
            e2[i] = u[2][i] * z[mhd::f1].v[i] - u[0][i] * z[mhd::f3].v[i];
        }
        const std::vector<double> de3 = ddx(std::span<const double>(e3), g);
        const std::vector<double> de2 = ddx(std::span<const double>(e2), g);
        for (int i = 0; i < n; ++i) {
            const double imu = 1.0 / eos.mu0;
            k[mhd::f1][i] = -u[0][i] * dB1[i];
            k[mhd::f2][i] = -de3[i] - u[1][i] * dB1[i];
            k[mhd::f3][i] = de2[i] - u[2][i] * dB1[i];
            k[mhd::c1][i] = -u[0][i] * dG1[i] - z[mhd::c1].v[i] * du1[i] -
                            z[mhd::c2].v[i] * du2[i] - z[mhd::c3].v[i] * du3[i] -
                            z[mhd::f1].v[i] * imu;
            k[mhd::c2][i] = -u[0][i] * dG2[i] - z[mhd::f2].v[i] * imu;
            k[mhd::c3][i] = -u[0][i] * dG3[i] - z[mhd::f3].v[i] * imu;
        }
    } else {
        const std::vector<double> dA1 = ddx(z[mhd::f1], g);
        const std::vector<double> dA2 = ddx(z[mhd::f2], g);
        const std::vector<double> dA3 = ddx(z[mhd::f3], g);
        const std::vector<double> dg1 = ddx(z[mhd::c1], g);
        const std::vector<double> dg2 = ddx(z[mhd::c2], g);
        const std::vector<double> dg3 = ddx(z[mhd::c3], g);
        const HookFields hook = hook_fields_mhdA(z, g, eos.mu0);
        for (int i = 0; i < n; ++i) {
            k[mhd::f1][i] = -u[0][i] * dA1[i] -
                            (z[mhd::f1].v[i] * du1[i] + z[mhd::f2].v[i] * du2[i] +
                             z[mhd::f3].v[i] * du3[i]);
            k[mhd::f2][i] = -u[0][i] * dA2[i];
            k[mhd::f3][i] = -u[0][i] * dA3[i];
            k[mhd::c1][i] = -u[0][i] * dg1[i] - hook.current[0][i];
            k[mhd::c2][i] = -u[0][i] * dg2[i] - z[mhd::c2].v[i] * du1[i] +
                            z[mhd::c1].v[i] * du2[i] - hook.current[1][i];
            k[mhd::c3][i] = -u[0][i] * dg3[i] - z[mhd::c3].v[i] * du1[i] +
                            z[mhd::c1].v[i] * du3[i] - hook.current[2][i];
        }
    }
    return k;
}

void axpy(FieldSet& out, const FieldSet& z, double c, const Slab& k) {
    for (size_t j = 0; j < z.size(); ++j) {
        out[j].x_slope = z[j].x_slope;
        for (size_t i = 0; i < z[j].v.size(); ++i) out[j].v[i] = z[j].v[i] + c * k[j][i];
    }
}

template <class Rhs>
void rk4(FieldSet& z, double dt, Rhs rhs) {
    const Slab k1 = rhs(z);
    FieldSet zs = z;
    axpy(zs, z, 0.5 * dt, k1);
    const Slab k2 = rhs(zs);
    axpy(zs, z, 0.5 * dt, k2);
    const Slab k3 = rhs(zs);
    axpy(zs, z, dt, k3);
    const Slab k4 = rhs(zs);
    for (size_t j = 0; j < z.size(); ++j)
        for (size_t i = 0; i < z[j].v.size(); ++i)
            z[j].v[i] += dt / 6.0 * (k1[j][i] + 2.0 * k2[j][i] + 2.0 * k3[j][i] + k4[j][i]);
}

}  // namespace

void step_gas1d(FieldSet& z, const Grid1D& grid, const EosParams& eos, double dt,
                std::span<const double> sqrtg) {
    if (!sqrtg.empty() && static_cast<int>(sqrtg.size()) != grid.n)
        throw std::invalid_argument("step_gas1d: metric weight does not match the grid");
    rk4(z, dt, [&](const FieldSet& zs) { return rhs_gas1d(zs, grid, eos, sqrtg); });
}

void step_mhd(FieldSet& z, const Grid1D& grid, const EosParams& eos, MhdForm form, double dt) {
    rk4(z, dt, [&](const FieldSet& zs) { return rhs_mhd(zs, grid, eos, form); });
}

double cfl_dt(const SystemDef& system, const FieldSet& z, const Grid1D& grid, double cfl) {
    const SystemKind kind = kind_of(system);
    require_layout(kind, z, grid);
    if (!(cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
    double vmax = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        double speed;
        if (kind == SystemKind::gas1d) {
            const double cs = sound_speed(system.eos, z[gas::rho].v[i], z[gas::S].v[i]);
            speed = std::abs(velocity_at(kind, z, grid, i)[0]) + cs;
        } else {
            const double rho = z[mhd::rho].v[i];
            const double cs = sound_speed(system.eos, rho, z[mhd::S].v[i]);
            const auto u = velocity_at(kind, z, grid, i);
            double b2;
            if (kind == SystemKind::mhd_b) {
                b2 = z[mhd::f1].v[i] * z[mhd::f1].v[i] + z[mhd::f2].v[i] * z[mhd::f2].v[i] +
                     z[mhd::f3].v[i] * z[mhd::f3].v[i];
            } else {
                const double c2 = -deriv_at(z[mhd::f3], grid, i);
                const double c3 = deriv_at(z[mhd::f2], grid, i);
                b2 = c2 * c2 + c3 * c3;
            }
            const double va = std::sqrt(b2 / (system.eos.mu0 * rho));
            speed = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) + cs + va;
        }
        vmax = std::max(vmax, speed);
    }
    return cfl * grid.dx() / vmax;
}

int FieldHistory::var_index(std::string_view name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("history has no variable named '" + std::string(name) + "'");
}

double FieldHistory::value(int snap, int var, int node) const {
    return data[snap][var][node] + x_slopes[var] * grid.x(node);
}

FieldHistory run_simulation(const SystemDef& system, const FieldSet& z0, const Grid1D& grid,
                            const RunParams& params) {
    validate(grid);
    const SystemKind kind = kind_of(system);
    require_layout(kind, z0, grid);
    if (!(params.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (params.store_every < 1) throw std::invalid_argument("store_every must be >= 1");
    if (!params.sqrtg.empty()) {
        if (kind != SystemKind::gas1d)
            throw std::invalid_argument("metric-weighted runs support gas dynamics only");
        for (double w : params.sqrtg)
            if (!(w > 0.0)) throw std::invalid_argument("metric weight must be positive");
    }
    for (size_t j = 0; j < z0.size(); ++j) {
        const bool phi_slot = (kind == SystemKind::gas1d && j == gas::phi) ||
                              (kind != SystemKind::gas1d && j == mhd::phi);
        if (z0[j].x_slope != 0.0 && (!phi_slot || !grid.periodic))
            throw std::invalid_argument("only the flow potential may carry a ramp slope");
    }

    FieldSet z = z0;
    sync_velocity(system, z, grid);

    const double dt0 = params.dt > 0.0 ? params.dt : cfl_dt(system, z, grid, params.cfl);
    long nsteps = static_cast<long>(std::ceil(params.t_end / dt0 - 1e-9));
    if (nsteps < 1) nsteps = 1;
    nsteps = (nsteps + params.store_every - 1) / params.store_every * params.store_every;
    const double dt = params.t_end / static_cast<double>(nsteps);

    FieldHistory h;
    h.grid = grid;
    h.vars = system.vars;
    h.x_slopes.resize(z.size());
    for (size_t j = 0; j < z.size(); ++j) h.x_slopes[j] = z[j].x_slope;

    auto store = [&](double t) {
        h.times.push_back(t);
        std::vector<std::vector<double>> snap(z.size());
        for (size_t j = 0; j < z.size(); ++j) snap[j] = z[j].v;
        h.data.push_back(std::move(snap));
    };
    store(0.0);

    for (long s = 1; s <= nsteps; ++s) {
        const double t_new = params.t_end * static_cast<double>(s) / static_cast<double>(nsteps);
        try {
            if (kind == SystemKind::gas1d)
                step_gas1d(z, grid, system.eos, dt, params.sqrtg);
            else
                step_mhd(z, grid, system.eos, kind == SystemKind::mhd_b ? MhdForm::B : MhdForm::A,
                         dt);
        } catch (const std::domain_error& e) {
            std::ostringstream msg;
            msg << "solver aborted at t = " << t_new << ": " << e.what();
            throw SolverAbort(msg.str(), t_new);
        }
        for (size_t j = 0; j < z.size(); ++j)
            for (double y : z[j].v)
                if (!std::isfinite(y)) {
                    std::ostringstream msg;
                    msg << "solver aborted at t = " << t_new << ": non-finite value in "
                        << system.vars[j];
                    throw SolverAbort(msg.str(), t_new);
                }
        sync_velocity(system, z, grid);
        if (s % params.store_every == 0) store(t_new);
    }
    return h;
}

namespace {

/// Tracks which initial-condition parameters were consumed so unknown keys
/// can be rejected.
class ParamReader {
  public:
    explicit ParamReader(const std::map<std::string, double>& p) : remaining_(p) {}
    double get(const std::string& key, double fallback) {
        auto it = remaining_.find(key);
        if (it == remaining_.end()) return fallback;
        const double v = it->second;
        remaining_.erase(it);
        return v;
    }
    void finish(const std::string& family) const {
        if (remaining_.empty()) return;
        throw std::invalid_argument("unknown parameter '" + remaining_.begin()->first +
                                    "' for initial condition '" + family + "'");
    }

  private:
    std::map<std::string, double> remaining_;
};

}  // namespace

FieldSet make_initial(const SystemDef& system, const Grid1D& grid, const std::string& family,
                      const std::map<std::string, double>& params) {
    validate(grid);
    const SystemKind kind = kind_of(system);
    const int n = grid.n;
    FieldSet z(system.n_dep());
    for (auto& f : z) f.v.assign(n, 0.0);

    ParamReader p(params);
    const double rho0 = p.get("rho0", 1.0);
    const double S0 = p.get("S0", 0.0);
    if (!(rho0 > 0.0)) throw std::invalid_argument("rho0 must be positive");
    const int rho_slot = kind == SystemKind::gas1d ? int(gas::rho) : int(mhd::rho);
    const int S_slot = kind == SystemKind::gas1d ? int(gas::S) : int(mhd::S);
    const int phi_slot = kind == SystemKind::gas1d ? int(gas::phi) : int(mhd::phi);
    z[rho_slot].v.assign(n, rho0);
    z[S_slot].v.assign(n, S0);

    auto angle = [&](double k, int i) { return 2.0 * std::numbers::pi * k * (grid.x(i) - grid.x0) / grid.length; };

    if (family == "uniform") {
        const double beta0 = p.get("beta0", 0.0);
        const double phi0 = p.get("phi0", 0.0);
        const double u0 = p.get("u0", 0.0);
        const int beta_slot = kind == SystemKind::gas1d ? int(gas::beta) : int(mhd::beta);
        z[beta_slot].v.assign(n, beta0);
        z[phi_slot].v.assign(n, phi0);
        z[phi_slot].x_slope = u0;
        if (kind != SystemKind::gas1d) {
            z[mhd::lam].v.assign(n, p.get("lam0", 0.0));
            z[mhd::mu].v.assign(n, p.get("mu0", 0.0));
            if (kind == SystemKind::mhd_b) {
                z[mhd::f1].v.assign(n, p.get("Bx0", 0.0));
                z[mhd::f2].v.assign(n, p.get("By0", 0.0));
                z[mhd::f3].v.assign(n, p.get("Bz0", 0.0));
                z[mhd::c1].v.assign(n, p.get("Gx0", 0.0));
                z[mhd::c2].v.assign(n, p.get("Gy0", 0.0));
                z[mhd::c3].v.assign(n, p.get("Gz0", 0.0));
            } else {
                z[mhd::f1].v.assign(n, p.get("Ax0", 0.0));
                z[mhd::f2].v.assign(n, p.get("Ay0", 0.0));
                z[mhd::f3].v.assign(n, p.get("Az0", 0.0));
                z[mhd::c1].v.assign(n, p.get("gx0", 0.0));
                z[mhd::c2].v.assign(n, p.get("gy0", 0.0));
                z[mhd::c3].v.assign(n, p.get("gz0", 0.0));
            }
        }
    } else if (family == "acoustic") {
        if (kind != SystemKind::gas1d)
            throw std::invalid_argument("initial condition 'acoustic' is for gas dynamics");
        const double amp = p.get("amp", 0.01);
        const double samp = p.get("samp", 0.0);
        const double u0 = p.get("u0", 0.0);
        const double kmode = p.get("k", 1.0);
        const double c0 = sound_speed(system.eos, rho0, S0);
        // Right-moving linear sound wave: the velocity perturbation
        // c0*amp*sin tracks the density perturbation, entering through the
        // flow potential.
        const double phi_amp = -amp * c0 * grid.length / (2.0 * std::numbers::pi * kmode);
        for (int i = 0; i < n; ++i) {
            const double th = angle(kmode, i);
            z[gas::rho].v[i] = rho0 * (1.0 + amp * std::sin(th));
            z[gas::S].v[i] = S0 + samp * std::sin(th);
            z[gas::phi].v[i] = phi_amp * std::cos(th);
        }
        z[gas::phi].x_slope = u0;
    } else if (family == "alfven") {
        if (kind == SystemKind::gas1d)
            throw std::invalid_argument("initial condition 'alfven' needs an MHD system");
        const double samp = p.get("samp", 0.0);
        const double bt = p.get("bt", 0.1);
        const double b1 = p.get("b1", 0.1);
        const double gt = p.get("gt", 0.05);
        const double lamp = p.get("lamp", 0.05);
        const double kmode = p.get("k", 1.0);
        const double B0 = kind == SystemKind::mhd_b ? p.get("B0", 1.0) : 0.0;
        for (int i = 0; i < n; ++i) {
            const double th = angle(kmode, i);
            z[mhd::S].v[i] = S0 + samp * std::sin(th);
            z[mhd::f1].v[i] = B0 + b1 * std::sin(th);
            z[mhd::f2].v[i] = bt * std::sin(th);
            z[mhd::f3].v[i] = bt * std::cos(th);
            z[mhd::c1].v[i] = gt * std::sin(th);
            z[mhd::c2].v[i] = gt * std::cos(th);
            z[mhd::c3].v[i] = gt * std::sin(th);
            z[mhd::lam].v[i] = lamp * std::sin(th);
            z[mhd::mu].v[i] = lamp * std::cos(th);
        }
    } else if (family == "bump") {
        const double amp = p.get("amp", 0.2);
        const double center = p.get("center", 0.5);
        const double width = p.get("width", 0.25);
        const double xc = grid.x0 + center * grid.length;
        const double halfw = width * grid.length;
        for (int i = 0; i < n; ++i) {
            const double xi = (grid.x(i) - xc) / halfw;
            if (std::abs(xi) < 1.0) {
                const double c = std::cos(0.5 * std::numbers::pi * xi);
                const double w = std::pow(c, 6);
                z[rho_slot].v[i] = rho0 * (1.0 + amp * w);
            }
        }
    } else if (family == "stratified") {
        // Static equilibrium with uniform pressure: a density bump with the
        // entropy profile chosen pointwise so p(rho, S) stays at p(rho0, S0).
        // With beta = 0 and u = 0 the exact solution only drifts the
        // potentials (phi by -h(r) t, beta by -rho T(r) t).
        if (kind != SystemKind::gas1d)
            throw std::invalid_argument("initial condition 'stratified' is for gas dynamics");
        const double amp = p.get("amp", 0.2);
        const double center = p.get("center", 0.5);
        const double width = p.get("width", 0.25);
        const double phi0 = p.get("phi0", 0.0);
        const double xc = grid.x0 + center * grid.length;
        const double halfw = width * grid.length;
        z[gas::phi].v.assign(n, phi0);
        for (int i = 0; i < n; ++i) {
            const double xi = (grid.x(i) - xc) / halfw;
            double rho = rho0;
            if (std::abs(xi) < 1.0) {
                const double c = std::cos(0.5 * std::numbers::pi * xi);
                rho = rho0 * (1.0 + amp * std::pow(c, 6));
            }
            z[gas::rho].v[i] = rho;
            z[gas::S].v[i] = S0 + system.eos.c_v * system.eos.gamma * std::log(rho0 / rho);
        }
    } else {
        throw std::invalid_argument("unknown initial-condition family '" + family + "'");
    }
    p.finish(family);
    sync_velocity(system, z, grid);
    return z;
}

}  // namespace msymp
