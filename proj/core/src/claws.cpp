#include "msymp/claws.hpp"

#include <cmath>
#include <stdexcept>

#include "msymp/exterior.hpp"

namespace msymp {

namespace {

const char* indep_name(int a) {
    static const char* names[4] = {"t", "x", "y", "z"};
    if (a < 0 || a > 3) throw std::invalid_argument("independent-variable index out of range");
    return names[a];
}

void require_same_shape(const StArray& a, const StArray& b) {
    if (a.nt != b.nt || a.nx != b.nx || a.xperiodic != b.xperiodic)
        throw std::invalid_argument("sample arrays have different shapes");
}

void row_ddx(const double* f, double* out, int n, double dx, bool periodic) {
    const double inv2 = 1.0 / (2.0 * dx);
    if (periodic) {
        for (int i = 0; i < n; ++i) {
            const int ip = i + 1 == n ? 0 : i + 1;
            const int im = i == 0 ? n - 1 : i - 1;
            out[i] = (f[ip] - f[im]) * inv2;
        }
    } else {
        out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
        for (int i = 1; i < n - 1; ++i) out[i] = (f[i + 1] - f[i - 1]) * inv2;
        out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    }
}

StArray hadamard(const StArray& a, const StArray& b) {
    require_same_shape(a, b);
    if (a.x_slope != 0.0 || b.x_slope != 0.0)
        throw std::invalid_argument("pointwise products need ramp-free arrays");
    StArray out = StArray::zeros(a.nt, a.nx, a.dt, a.dx, a.xperiodic);
    for (size_t m = 0; m < out.v.size(); ++m) out.v[m] = a.v[m] * b.v[m];
    return out;
}

}  // namespace

StArray StArray::zeros(int nt, int nx, double dt, double dx, bool xperiodic) {
    StArray s;
    s.nt = nt;
    s.nx = nx;
    s.dt = dt;
    s.dx = dx;
    s.xperiodic = xperiodic;
    s.v.assign(static_cast<size_t>(nt) * nx, 0.0);
    return s;
}

StArray st_ddt(const StArray& f) {
    if (f.nt < 3) throw std::invalid_argument("time derivative needs at least 3 snapshots");
    StArray out = StArray::zeros(f.nt, f.nx, f.dt, f.dx, f.xperiodic);
    const double inv2 = 1.0 / (2.0 * f.dt);
    for (int i = 0; i < f.nx; ++i) {
        out.at(0, i) = (-3.0 * f.at(0, i) + 4.0 * f.at(1, i) - f.at(2, i)) * inv2;
        for (int k = 1; k < f.nt - 1; ++k) out.at(k, i) = (f.at(k + 1, i) - f.at(k - 1, i)) * inv2;
        out.at(f.nt - 1, i) =
            (3.0 * f.at(f.nt - 1, i) - 4.0 * f.at(f.nt - 2, i) + f.at(f.nt - 3, i)) * inv2;
    }
    return out;
}

StArray st_ddx(const StArray& f) {
    if (f.nx < 3) throw std::invalid_argument("space derivative needs at least 3 nodes");
    StArray out = StArray::zeros(f.nt, f.nx, f.dt, f.dx, f.xperiodic);
    for (int k = 0; k < f.nt; ++k)
        row_ddx(&f.v[static_cast<size_t>(k) * f.nx], &out.v[static_cast<size_t>(k) * f.nx], f.nx,
                f.dx, f.xperiodic);
    if (f.x_slope != 0.0)
        for (auto& y : out.v) y += f.x_slope;
    return out;
}

StArray st_deriv(const StArray& f, int a) {
    if (a == 0) return st_ddt(f);
    if (a == 1) return st_ddx(f);
    if (a == 2 || a == 3) return StArray::zeros(f.nt, f.nx, f.dt, f.dx, f.xperiodic);
    throw std::invalid_argument("independent-variable index out of range");
}

StArray operator+(const StArray& a, const StArray& b) {
    require_same_shape(a, b);
    StArray out = a;
    out.x_slope = a.x_slope + b.x_slope;
    for (size_t m = 0; m < out.v.size(); ++m) out.v[m] += b.v[m];
    return out;
}

StArray operator-(const StArray& a, const StArray& b) {
    require_same_shape(a, b);
    StArray out = a;
    out.x_slope = a.x_slope - b.x_slope;
    for (size_t m = 0; m < out.v.size(); ++m) out.v[m] -= b.v[m];
    return out;
}

double st_l2(const StArray& f, int skip_t) {
    double acc = 0.0;
    for (int k = skip_t; k < f.nt - skip_t; ++k)
        for (int i = 0; i < f.nx; ++i) {
            const double y = f.at(k, i) + f.x_slope * (i * f.dx);
            acc += y * y;
        }
    return std::sqrt(acc * f.dx * f.dt);
}

double st_linf(const StArray& f, int skip_t) {
    double m = 0.0;
    for (int k = skip_t; k < f.nt - skip_t; ++k)
        for (int i = 0; i < f.nx; ++i)
            m = std::max(m, std::abs(f.at(k, i) + f.x_slope * (i * f.dx)));
    return m;
}

StArray st_flux_div(const StArray& flux, std::span<const double> weights) {
    if (weights.empty()) return st_ddx(flux);
    if (flux.x_slope != 0.0)
        throw std::invalid_argument("weighted divergence needs a ramp-free flux");
    if (static_cast<int>(weights.size()) != flux.nx)
        throw std::invalid_argument("weight array does not match the flux");
    StArray wf = flux;
    for (int k = 0; k < flux.nt; ++k)
        for (int i = 0; i < flux.nx; ++i) wf.at(k, i) = weights[i] * flux.at(k, i);
    StArray out = st_ddx(wf);
    for (int k = 0; k < flux.nt; ++k)
        for (int i = 0; i < flux.nx; ++i) out.at(k, i) /= weights[i];
    return out;
}

StArray jacobian2(const StArray& f, const StArray& g, int a, int b) {
    require_same_shape(f, g);
    if (a == b) throw std::invalid_argument("jacobian2: the two directions must differ");
    const StArray fa = st_deriv(f, a);
    const StArray gb = st_deriv(g, b);
    const StArray fb = st_deriv(f, b);
    const StArray ga = st_deriv(g, a);
    return hadamard(fa, gb) - hadamard(fb, ga);
}

StatePoint ColumnSet::state_at(int k, int i) const {
    StatePoint z(val.size());
    for (size_t j = 0; j < val.size(); ++j) z[j] = val[j].at(k, i);
    return z;
}

StatePoint ColumnSet::deriv_at(int k, int i, int a) const {
    StatePoint d(val.size(), 0.0);
    if (a == 0)
        for (size_t j = 0; j < val.size(); ++j) d[j] = dt_[j].at(k, i);
    else if (a == 1)
        for (size_t j = 0; j < val.size(); ++j) d[j] = dx_[j].at(k, i);
    else if (a != 2 && a != 3)
        throw std::invalid_argument("independent-variable index out of range");
    return d;
}

namespace {

ColumnSet finish_columns(const SystemDef& system, ColumnSet cols) {
    cols.sys = &system;
    cols.dt_.reserve(cols.val.size());
    cols.dx_.reserve(cols.val.size());
    for (const auto& f : cols.val) {
        cols.dt_.push_back(st_ddt(f));
        cols.dx_.push_back(st_ddx(f));
    }
    return cols;
}

}  // namespace

ColumnSet make_columns(const SystemDef& system, const FieldHistory& history) {
    if (history.vars != system.vars)
        throw std::invalid_argument("history variables do not match the system");
    if (history.n_snaps() < 3)
        throw std::invalid_argument("law evaluation needs at least 3 snapshots");
    for (double s : history.x_slopes)
        if (s != 0.0)
            throw std::invalid_argument("law evaluation needs ramp-free histories");
    ColumnSet cols;
    cols.nt = history.n_snaps();
    cols.nx = history.grid.n;
    cols.dt = history.times[1] - history.times[0];
    cols.dx = history.grid.dx();
    cols.xperiodic = history.grid.periodic;
    cols.val.reserve(system.vars.size());
    for (size_t j = 0; j < system.vars.size(); ++j) {
        StArray f = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
        for (int k = 0; k < cols.nt; ++k)
            for (int i = 0; i < cols.nx; ++i) f.at(k, i) = history.data[k][j][i];
        cols.val.push_back(std::move(f));
    }
    return finish_columns(system, std::move(cols));
}

ColumnSet make_columns(const SystemDef& system, const std::vector<StArray>& fields) {
    if (fields.size() != system.vars.size())
        throw std::invalid_argument("field count does not match the system");
    for (size_t j = 1; j < fields.size(); ++j) require_same_shape(fields[0], fields[j]);
    for (const auto& f : fields)
        if (f.x_slope != 0.0)
            throw std::invalid_argument("law evaluation needs ramp-free sample arrays");
    ColumnSet cols;
    cols.nt = fields[0].nt;
    cols.nx = fields[0].nx;
    cols.dt = fields[0].dt;
    cols.dx = fields[0].dx;
    cols.xperiodic = fields[0].xperiodic;
    cols.val = fields;
    return finish_columns(system, std::move(cols));
}

namespace {

/// K^alpha entries are linear in the state; tabulating the constant part
/// and the per-variable slopes once makes the pointwise contraction cheap.
struct LinearSkew {
    struct Entry {
        int i, j;
        double c0;
        std::vector<std::pair<int, double>> lin;
    };
    std::vector<Entry> entries;

    static LinearSkew build(const SystemDef& sys, int alpha) {
        const int n = sys.n_dep();
        const StatePoint zero(n, 0.0);
        const SkewMatrix k0 = exterior_derivative(sys.oneforms.at(alpha), zero);
        std::vector<SkewMatrix> km;
        km.reserve(n);
        for (int m = 0; m < n; ++m) {
            StatePoint e(n, 0.0);
            e[m] = 1.0;
            km.push_back(exterior_derivative(sys.oneforms.at(alpha), e));
        }
        LinearSkew out;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Entry e{i, j, k0.at(i, j), {}};
                for (int m = 0; m < n; ++m) {
                    const double slope = km[m].at(i, j) - e.c0;
                    if (slope != 0.0) e.lin.emplace_back(m, slope);
                }
                if (e.c0 != 0.0 || !e.lin.empty()) out.entries.push_back(std::move(e));
            }
        return out;
    }

    double eval_entry(const Entry& e, const StatePoint& z) const {
        double c = e.c0;
        for (const auto& [m, s] : e.lin) c += s * z[m];
        return c;
    }
};

}  // namespace

StArray quadratic_form(const ColumnSet& cols, int alpha, int a, int b) {
    const LinearSkew lin = LinearSkew::build(*cols.sys, alpha);
    StArray out = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    StatePoint z(cols.val.size());
    for (int k = 0; k < cols.nt; ++k)
        for (int i = 0; i < cols.nx; ++i) {
            for (size_t j = 0; j < cols.val.size(); ++j) z[j] = cols.val[j].at(k, i);
            const StatePoint da = cols.deriv_at(k, i, a);
            const StatePoint db = cols.deriv_at(k, i, b);
            double acc = 0.0;
            for (const auto& e : lin.entries)
                acc += lin.eval_entry(e, z) * (da[e.i] * db[e.j] - db[e.i] * da[e.j]);
            out.at(k, i) = acc;
        }
    return out;
}

namespace {

/// Variable-pair Jacobian built from the precomputed derivative columns.
StArray jac(const ColumnSet& c, int v1, int v2, int a, int b) {
    const StArray& f_a = a == 0 ? c.dt_[v1] : c.dx_[v1];
    const StArray& g_b = b == 0 ? c.dt_[v2] : c.dx_[v2];
    const StArray& f_b = b == 0 ? c.dt_[v1] : c.dx_[v1];
    const StArray& g_a = a == 0 ? c.dt_[v2] : c.dx_[v2];
    StArray out = StArray::zeros(c.nt, c.nx, c.dt, c.dx, c.xperiodic);
    const bool za = a >= 2, zb = b >= 2;
    if (za && zb) return out;
    for (size_t m = 0; m < out.v.size(); ++m) {
        const double fa = za ? 0.0 : f_a.v[m];
        const double gb = zb ? 0.0 : g_b.v[m];
        const double fb = zb ? 0.0 : f_b.v[m];
        const double ga = za ? 0.0 : g_a.v[m];
        out.v[m] = fa * gb - fb * ga;
    }
    return out;
}

StArray scaled(const StArray& coeff, const StArray& x) { return hadamard(coeff, x); }

}  // namespace

StArray jacobian_form(const ColumnSet& cols, int alpha, int a, int b) {
    const SystemDef& sys = *cols.sys;
    if (a == b) throw std::invalid_argument("jacobian_form: the two directions must differ");
    auto J = [&](int v1, int v2) { return jac(cols, v1, v2, a, b); };
    if (sys.name == "gas1d") {
        if (alpha == 0) return J(gas::phi, gas::rho) + J(gas::beta, gas::S);
        if (alpha != 1) throw std::invalid_argument("gas dynamics has no such flux direction");
        return scaled(cols.val[gas::rho], J(gas::phi, gas::u)) +
               scaled(cols.val[gas::u], J(gas::phi, gas::rho)) +
               scaled(cols.val[gas::beta], J(gas::u, gas::S)) +
               scaled(cols.val[gas::u], J(gas::beta, gas::S));
    }
    if (sys.name != "mhd-b" && sys.name != "mhd-a")
        throw std::invalid_argument("no tabulated Jacobian form for system '" + sys.name + "'");
    const bool bform = sys.name == "mhd-b";
    StArray gas_part = J(mhd::phi, mhd::rho) + J(mhd::beta, mhd::S) + J(mhd::lam, mhd::mu);
    StArray mag_diag = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    for (int s = 0; s < 3; ++s) mag_diag = mag_diag + J(mhd::c1 + s, mhd::f1 + s);
    if (alpha == 0) return gas_part + mag_diag;
    if (alpha < 1 || alpha > 3) throw std::invalid_argument("flux direction out of range");
    const int d = alpha - 1;
    const int ud = mhd::ux + d;
    StArray out = scaled(cols.val[mhd::beta], J(ud, mhd::S)) +
                  scaled(cols.val[mhd::lam], J(ud, mhd::mu)) -
                  scaled(cols.val[mhd::rho], J(ud, mhd::phi));
    if (bform) {
        out = out + scaled(cols.val[ud], gas_part + mag_diag);
        for (int s = 0; s < 3; ++s)
            out = out + scaled(cols.val[mhd::c1 + s], J(mhd::ux + s, mhd::f1 + d));
        for (int s = 0; s < 3; ++s) {
            if (s == d) continue;
            out = out - scaled(cols.val[mhd::f1 + s], J(ud, mhd::c1 + s));
            out = out + scaled(cols.val[mhd::f1 + d], J(mhd::ux + s, mhd::c1 + s));
        }
        return out;
    }
    out = out + scaled(cols.val[ud], gas_part) + scaled(cols.val[ud], mag_diag);
    for (int s = 0; s < 3; ++s) {
        if (s != d) out = out + scaled(cols.val[mhd::c1 + s], J(ud, mhd::f1 + s));
        out = out + scaled(cols.val[mhd::f1 + s], J(mhd::c1 + d, mhd::ux + s));
    }
    StArray offdiag = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    for (int s = 0; s < 3; ++s)
        if (s != d) offdiag = offdiag + J(mhd::ux + s, mhd::f1 + s);
    return out - scaled(cols.val[mhd::c1 + d], offdiag);
}

StArray lagrangian_array(const ColumnSet& cols) {
    const SystemDef& sys = *cols.sys;
    if (sys.needs_hook)
        throw std::invalid_argument(
            "Lagrangian sampling needs a pointwise Hamiltonian; the vector-potential "
            "formulation does not have one");
    StArray out = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    StatePoint z(cols.val.size());
    for (int k = 0; k < cols.nt; ++k)
        for (int i = 0; i < cols.nx; ++i) {
            for (size_t j = 0; j < cols.val.size(); ++j) z[j] = cols.val[j].at(k, i);
            double acc = -sys.hamiltonian(sys, z, HookValues{});
            for (int alpha = 0; alpha < sys.n_indep && alpha < 2; ++alpha) {
                const auto& form = sys.oneforms[alpha];
                const StArray* d = alpha == 0 ? cols.dt_.data() : cols.dx_.data();
                for (size_t j = 0; j < cols.val.size(); ++j) {
                    if (form.coeffs[j].empty()) continue;
                    acc += form.coeff(static_cast<int>(j), z) * d[j].at(k, i);
                }
            }
            out.at(k, i) = acc;
        }
    return out;
}

StArray pullback_array(const ColumnSet& cols, int alpha, int beta, const StArray& L) {
    const SystemDef& sys = *cols.sys;
    StArray out = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    if (beta < 2) {
        const auto& form = sys.oneforms.at(alpha);
        const StArray* d = beta == 0 ? cols.dt_.data() : cols.dx_.data();
        StatePoint z(cols.val.size());
        for (int k = 0; k < cols.nt; ++k)
            for (int i = 0; i < cols.nx; ++i) {
                for (size_t j = 0; j < cols.val.size(); ++j) z[j] = cols.val[j].at(k, i);
                double acc = 0.0;
                for (size_t j = 0; j < cols.val.size(); ++j) {
                    if (form.coeffs[j].empty()) continue;
                    acc += form.coeff(static_cast<int>(j), z) * d[j].at(k, i);
                }
                out.at(k, i) = acc;
            }
    }
    if (alpha == beta) out = out - L;
    return out;
}

ConservationReport make_report(std::string law, StArray density, StArray flux,
                               std::span<const double> weights) {
    ConservationReport r;
    r.law = std::move(law);
    r.residual = st_ddt(density) + st_flux_div(flux, weights);
    r.density = std::move(density);
    r.flux = std::move(flux);
    r.residual_l2 = st_l2(r.residual);
    r.residual_linf = st_linf(r.residual);
    return r;
}

namespace {

struct EosColumns {
    StArray eps, p, h, T;
};

EosColumns eos_columns(const ColumnSet& cols, int rho_slot, int S_slot) {
    EosColumns e;
    e.eps = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    e.p = e.eps;
    e.h = e.eps;
    e.T = e.eps;
    for (int k = 0; k < cols.nt; ++k)
        for (int i = 0; i < cols.nx; ++i) {
            const EosValues v =
                eos_eval(cols.sys->eos, cols.val[rho_slot].at(k, i), cols.val[S_slot].at(k, i));
            e.eps.at(k, i) = v.epsilon;
            e.p.at(k, i) = v.p;
            e.h.at(k, i) = v.h;
            e.T.at(k, i) = v.T;
        }
    return e;
}

void append_gas_physical(const ColumnSet& cols, std::vector<ConservationReport>& out) {
    const EosColumns eos = eos_columns(cols, gas::rho, gas::S);
    StArray D = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    StArray F = D, Dm = D, Fm = D;
    for (size_t m = 0; m < D.v.size(); ++m) {
        const double rho = cols.val[gas::rho].v[m];
        const double u = cols.val[gas::u].v[m];
        D.v[m] = 0.5 * rho * u * u + eos.eps.v[m];
        F.v[m] = rho * u * (0.5 * u * u + eos.h.v[m]);
        Dm.v[m] = -rho * u;
        Fm.v[m] = -(eos.p.v[m] + rho * u * u);
    }
    out.push_back(make_report("energy", std::move(D), std::move(F)));
    out.push_back(make_report("momentum", std::move(Dm), std::move(Fm)));
}

void append_mhdB_physical(const ColumnSet& cols, std::vector<ConservationReport>& out) {
    const EosColumns eos = eos_columns(cols, mhd::rho, mhd::S);
    const double mu0 = cols.sys->eos.mu0;
    StArray D = StArray::zeros(cols.nt, cols.nx, cols.dt, cols.dx, cols.xperiodic);
    StArray F = D, Dm = D, Fm = D, Xe = D, Xm = D;
    for (size_t m = 0; m < D.v.size(); ++m) {
        const double rho = cols.val[mhd::rho].v[m];
        const double u1 = cols.val[mhd::ux].v[m], u2 = cols.val[mhd::uy].v[m],
                     u3 = cols.val[mhd::uz].v[m];
        const double B1 = cols.val[mhd::f1].v[m], B2 = cols.val[mhd::f2].v[m],
                     B3 = cols.val[mhd::f3].v[m];
        const double G1 = cols.val[mhd::c1].v[m], G2 = cols.val[mhd::c2].v[m],
                     G3 = cols.val[mhd::c3].v[m];
        const double phi = cols.val[mhd::phi].v[m];
        const double u2n = u1 * u1 + u2 * u2 + u3 * u3;
        const double b2 = B1 * B1 + B2 * B2 + B3 * B3;
        const double E1 = -(u2 * B3 - u3 * B2);
        const double E2 = -(u3 * B1 - u1 * B3);
        const double E3 = -(u1 * B2 - u2 * B1);
        D.v[m] = 0.5 * rho * u2n + eos.eps.v[m] + 0.5 * b2 / mu0;
        F.v[m] = u1 * (0.5 * rho * u2n + eos.eps.v[m] + eos.p.v[m]) + (E2 * B3 - E3 * B2) / mu0;
        Dm.v[m] = -rho * u1;
        Fm.v[m] = -(rho * u1 * u1 + eos.p.v[m] + 0.5 * b2 / mu0 - B1 * B1 / mu0);
        Xe.v[m] = E2 * G3 - E3 * G2 + rho * phi * u1;
        Xm.v[m] = rho * phi + G1 * B1 + G2 * B2 + G3 * B3 - G1 * B1;
    }
    out.push_back(make_report("energy", D, F));
    out.push_back(make_report("momentum", Dm, Fm));
    out.push_back(make_report("energy-raw", D - st_ddx(Xe), F + st_ddt(Xe)));
    out.push_back(make_report("momentum-raw", Dm + st_ddx(Xm), Fm - st_ddt(Xm)));
}

}  // namespace

std::vector<ConservationReport> pullback_laws(const SystemDef& system,
                                              const FieldHistory& history) {
    const ColumnSet cols = make_columns(system, history);
    const StArray L = lagrangian_array(cols);
    std::vector<ConservationReport> out;
    for (int beta = 0; beta < system.n_indep; ++beta)
        out.push_back(make_report(std::string("pullback-") + indep_name(beta),
                                  pullback_array(cols, 0, beta, L),
                                  pullback_array(cols, 1, beta, L)));
    if (system.name == "gas1d")
        append_gas_physical(cols, out);
    else if (system.name == "mhd-b")
        append_mhdB_physical(cols, out);
    return out;
}

std::vector<ConservationReport> symplecticity_laws(const SystemDef& system,
                                                   const FieldHistory& history) {
    const ColumnSet cols = make_columns(system, history);
    std::vector<ConservationReport> out;
    for (int a = 0; a < system.n_indep; ++a)
        for (int b = a + 1; b < system.n_indep; ++b) {
            std::string law = std::string("symplectic-") + indep_name(a) + indep_name(b);
            out.push_back(make_report(std::move(law), quadratic_form(cols, 0, a, b),
                                      quadratic_form(cols, 1, a, b)));
        }
    return out;
}

double cross_derivative_identity(const SystemDef& system, const std::vector<StArray>& fields,
                                 int beta, int gamma) {
    if (beta == gamma)
        throw std::invalid_argument("cross-derivative identity needs two distinct directions");
    const ColumnSet cols = make_columns(system, fields);
    const StArray L = lagrangian_array(cols);
    auto divergence_of_pullback = [&](int b) {
        return st_ddt(pullback_array(cols, 0, b, L)) + st_ddx(pullback_array(cols, 1, b, L));
    };
    const StArray Gb = divergence_of_pullback(beta);
    const StArray Gg = divergence_of_pullback(gamma);
    const StArray lhs = st_deriv(Gb, gamma) - st_deriv(Gg, beta);
    const StArray rhs =
        st_ddt(quadratic_form(cols, 0, gamma, beta)) + st_ddx(quadratic_form(cols, 1, gamma, beta));
    return st_l2(lhs - rhs, 2);
}

ConservationReport noether_flux(const SystemDef& system, const FieldHistory& history, int beta) {
    const ColumnSet cols = make_columns(system, history);
    const StArray L = lagrangian_array(cols);
    // Translation generators: unit shift of x^beta, fields dragged along
    // (characteristic -z^j_{,beta}), no divergence correction.
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
    return make_report(std::string("noether-") + indep_name(beta), std::move(N[0]),
                       std::move(N[1]));
}

namespace {

std::vector<std::pair<int, int>> conjugate_pairs(SystemKind kind) {
    if (kind == SystemKind::gas1d) return {{gas::rho, gas::phi}, {gas::S, gas::beta}};
    std::vector<std::pair<int, int>> p = {
        {mhd::rho, mhd::phi}, {mhd::S, mhd::beta}, {mhd::mu, mhd::lam}};
    for (int s = 0; s < 3; ++s) p.emplace_back(mhd::f1 + s, mhd::c1 + s);
    return p;
}

/// dH/d(f_j) of the discrete energy sum, via central differencing of the
/// node value with the energy re-summed over the affected neighborhood.
std::vector<double> functional_derivative(const SystemDef& sys, FieldSet& z, const Grid1D& g,
                                          int var) {
    const int n = g.n;
    double scale = 1.0;
    for (double y : z[var].v) scale = std::max(scale, std::abs(y));
    const double eps = 1e-5 * scale;
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        const double saved = z[var].v[j];
        double plus = 0.0, minus = 0.0;
        z[var].v[j] = saved + eps;
        for (int w = -2; w <= 2; ++w) {
            int i = (j + w) % n;
            if (i < 0) i += n;
            plus += energy_cell(sys, z, g, i);
        }
        z[var].v[j] = saved - eps;
        for (int w = -2; w <= 2; ++w) {
            int i = (j + w) % n;
            if (i < 0) i += n;
            minus += energy_cell(sys, z, g, i);
        }
        z[var].v[j] = saved;
        out[j] = (plus - minus) / (2.0 * eps);
    }
    return out;
}

}  // namespace

std::vector<HamiltonReport> hamilton_check(const SystemDef& system, const FieldHistory& history) {
    const SystemKind kind = kind_of(system);
    if (history.n_snaps() < 3)
        throw std::invalid_argument("Hamilton check needs at least 3 snapshots");
    for (double s : history.x_slopes)
        if (s != 0.0) throw std::invalid_argument("Hamilton check needs ramp-free histories");
    const auto pairs = conjugate_pairs(kind);
    const Grid1D& g = history.grid;
    const double dt_out = history.times[1] - history.times[0];
    const int nt = history.n_snaps();

    struct Acc {
        double q2 = 0.0, qi = 0.0, p2 = 0.0, pi = 0.0;
    };
    std::vector<Acc> acc(pairs.size());

    FieldSet z(system.n_dep());
    for (int k = 1; k + 1 < nt; ++k) {
        for (int j = 0; j < system.n_dep(); ++j) {
            z[j].v = history.data[k][j];
            z[j].x_slope = 0.0;
        }
        for (size_t m = 0; m < pairs.size(); ++m) {
            const auto [q, p] = pairs[m];
            const std::vector<double> dHdp = functional_derivative(system, z, g, p);
            const std::vector<double> dHdq = functional_derivative(system, z, g, q);
            for (int i = 0; i < g.n; ++i) {
                const double qt =
                    (history.data[k + 1][q][i] - history.data[k - 1][q][i]) / (2.0 * dt_out);
                const double pt =
                    (history.data[k + 1][p][i] - history.data[k - 1][p][i]) / (2.0 * dt_out);
                const double rq = qt - dHdp[i];
                const double rp = pt + dHdq[i];
                acc[m].q2 += rq * rq;
                acc[m].p2 += rp * rp;
                acc[m].qi = std::max(acc[m].qi, std::abs(rq));
                acc[m].pi = std::max(acc[m].pi, std::abs(rp));
            }
        }
    }
    std::vector<HamiltonReport> out;
    for (size_t m = 0; m < pairs.size(); ++m) {
        HamiltonReport r;
        r.pair = system.vars[pairs[m].first] + "/" + system.vars[pairs[m].second];
        r.q_l2 = std::sqrt(acc[m].q2 * g.dx() * dt_out);
        r.p_l2 = std::sqrt(acc[m].p2 * g.dx() * dt_out);
        r.q_linf = acc[m].qi;
        r.p_linf = acc[m].pi;
        out.push_back(std::move(r));
    }
    return out;
}

double estimate_order(std::span<const double> dx, std::span<const double> residual) {
    if (dx.size() != residual.size() || dx.size() < 3)
        throw std::invalid_argument("order estimation needs at least 3 resolutions");
    const size_t n = dx.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> X(n), Y(n);
    for (size_t i = 0; i < n; ++i) {
        X[i] = std::log(dx[i]);
        Y[i] = std::log(std::max(residual[i], 1e-300));
        mx += X[i];
        my += Y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        num += (X[i] - mx) * (Y[i] - my);
        den += (X[i] - mx) * (X[i] - mx);
    }
    return num / den;
}

}  // namespace msymp
