#include "msymp/systems.hpp"

#include <stdexcept>

namespace msymp {

namespace {

double gas_hamiltonian(const SystemDef& sys, std::span<const double> z, const HookValues&) {
    const EosValues v = eos_eval(sys.eos, z[gas::rho], z[gas::S]);
    return v.epsilon - 0.5 * z[gas::rho] * z[gas::u] * z[gas::u];
}

void gas_grad_hamiltonian(const SystemDef& sys, std::span<const double> z, const HookValues&,
                          std::span<double> g) {
    const EosValues v = eos_eval(sys.eos, z[gas::rho], z[gas::S]);
    for (auto& x : g) x = 0.0;
    g[gas::u] = -z[gas::rho] * z[gas::u];
    g[gas::rho] = v.h - 0.5 * z[gas::u] * z[gas::u];
    g[gas::S] = z[gas::rho] * v.T;
}

double mhdB_hamiltonian(const SystemDef& sys, std::span<const double> z, const HookValues&) {
    const EosValues v = eos_eval(sys.eos, z[mhd::rho], z[mhd::S]);
    const double b2 = z[mhd::f1] * z[mhd::f1] + z[mhd::f2] * z[mhd::f2] + z[mhd::f3] * z[mhd::f3];
    const double u2 = z[mhd::ux] * z[mhd::ux] + z[mhd::uy] * z[mhd::uy] + z[mhd::uz] * z[mhd::uz];
    return v.epsilon + 0.5 * b2 / sys.eos.mu0 - 0.5 * z[mhd::rho] * u2;
}

void mhdB_grad_hamiltonian(const SystemDef& sys, std::span<const double> z, const HookValues&,
                           std::span<double> g) {
    const EosValues v = eos_eval(sys.eos, z[mhd::rho], z[mhd::S]);
    const double u2 = z[mhd::ux] * z[mhd::ux] + z[mhd::uy] * z[mhd::uy] + z[mhd::uz] * z[mhd::uz];
    for (auto& x : g) x = 0.0;
    for (int i = 0; i < 3; ++i) {
        g[mhd::ux + i] = -z[mhd::rho] * z[mhd::ux + i];
        g[mhd::f1 + i] = z[mhd::f1 + i] / sys.eos.mu0;
    }
    g[mhd::rho] = v.h - 0.5 * u2;
    g[mhd::S] = z[mhd::rho] * v.T;
}

double mhdA_hamiltonian(const SystemDef& sys, std::span<const double> z, const HookValues& hook) {
    const EosValues v = eos_eval(sys.eos, z[mhd::rho], z[mhd::S]);
    const double b2 = hook.curl[0] * hook.curl[0] + hook.curl[1] * hook.curl[1] +
                      hook.curl[2] * hook.curl[2];
    const double u2 = z[mhd::ux] * z[mhd::ux] + z[mhd::uy] * z[mhd::uy] + z[mhd::uz] * z[mhd::uz];
    return v.epsilon + 0.5 * b2 / sys.eos.mu0 - 0.5 * z[mhd::rho] * u2;
}

void mhdA_grad_hamiltonian(const SystemDef& sys, std::span<const double> z, const HookValues& hook,
                           std::span<double> g) {
    const EosValues v = eos_eval(sys.eos, z[mhd::rho], z[mhd::S]);
    const double u2 = z[mhd::ux] * z[mhd::ux] + z[mhd::uy] * z[mhd::uy] + z[mhd::uz] * z[mhd::uz];
    for (auto& x : g) x = 0.0;
    for (int i = 0; i < 3; ++i) {
        g[mhd::ux + i] = -z[mhd::rho] * z[mhd::ux + i];
        // The magnetic energy varies with the potential only through its
        // curl; the corresponding gradient slot is the current density,
        // which the caller evaluates on the grid.
        g[mhd::f1 + i] = hook.current[i];
    }
    g[mhd::rho] = v.h - 0.5 * u2;
    g[mhd::S] = z[mhd::rho] * v.T;
}

OneFormCoeffs empty_form(int alpha, int n) {
    OneFormCoeffs w;
    w.alpha = alpha;
    w.coeffs.resize(n);
    return w;
}

}  // namespace

SystemDef gas1d_system(const EosParams& eos) {
    validate(eos);
    SystemDef s;
    s.name = "gas1d";
    s.vars = {"u", "rho", "S", "beta", "phi"};
    s.n_indep = 2;
    s.eos = eos;
    s.rho_index = gas::rho;
    s.hamiltonian = &gas_hamiltonian;
    s.grad_hamiltonian = &gas_grad_hamiltonian;

    OneFormCoeffs w0 = empty_form(0, gas::count);
    w0.coeffs[gas::rho] = QuadPoly::var(gas::phi);
    w0.coeffs[gas::S] = QuadPoly::var(gas::beta);

    OneFormCoeffs w1 = empty_form(1, gas::count);
    w1.coeffs[gas::u] = QuadPoly::product(gas::rho, gas::phi);
    w1.coeffs[gas::rho] = QuadPoly::product(gas::u, gas::phi);
    w1.coeffs[gas::S] = QuadPoly::product(gas::u, gas::beta);

    s.oneforms = {w0, w1};
    return s;
}

SystemDef mhdB_system(const EosParams& eos) {
    validate(eos);
    SystemDef s;
    s.name = "mhd-b";
    s.vars = {"ux", "uy", "uz", "rho", "S", "mu", "Bx", "By", "Bz",
              "Gamx", "Gamy", "Gamz", "lam", "beta", "phi"};
    s.n_indep = 4;
    s.eos = eos;
    s.rho_index = mhd::rho;
    s.hamiltonian = &mhdB_hamiltonian;
    s.grad_hamiltonian = &mhdB_grad_hamiltonian;

    OneFormCoeffs w0 = empty_form(0, mhd::count);
    w0.coeffs[mhd::rho] = QuadPoly::var(mhd::phi);
    w0.coeffs[mhd::S] = QuadPoly::var(mhd::beta);
    w0.coeffs[mhd::mu] = QuadPoly::var(mhd::lam);
    for (int i = 0; i < 3; ++i) w0.coeffs[mhd::f1 + i] = QuadPoly::var(mhd::c1 + i);
    s.oneforms.push_back(w0);

    for (int d = 0; d < 3; ++d) {
        OneFormCoeffs w = empty_form(d + 1, mhd::count);
        const int ud = mhd::ux + d;
        w.coeffs[mhd::rho] = QuadPoly::product(mhd::phi, ud);
        w.coeffs[mhd::S] = QuadPoly::product(mhd::beta, ud);
        w.coeffs[mhd::mu] = QuadPoly::product(mhd::lam, ud);
        for (int i = 0; i < 3; ++i) {
            // Velocity slot: (rho phi + C.F) on the diagonal, minus C_i F^d.
            if (i == d) {
                QuadPoly p = QuadPoly::product(mhd::rho, mhd::phi);
                for (int t = 0; t < 3; ++t)
                    if (t != d) p.add_product(mhd::c1 + t, mhd::f1 + t, 1.0);
                w.coeffs[mhd::ux + i] = p;
            } else {
                QuadPoly p;
                p.add_product(mhd::c1 + i, mhd::f1 + d, -1.0);
                w.coeffs[mhd::ux + i] = p;
            }
            w.coeffs[mhd::f1 + i] = QuadPoly::product(mhd::c1 + i, ud);
        }
        s.oneforms.push_back(w);
    }
    return s;
}

SystemDef mhdA_system(const EosParams& eos) {
    validate(eos);
    SystemDef s;
    s.name = "mhd-a";
    s.vars = {"ux", "uy", "uz", "rho", "S", "mu", "Ax", "Ay", "Az",
              "gamx", "gamy", "gamz", "lam", "beta", "phi"};
    s.n_indep = 4;
    s.eos = eos;
    s.rho_index = mhd::rho;
    s.needs_hook = true;
    s.hamiltonian = &mhdA_hamiltonian;
    s.grad_hamiltonian = &mhdA_grad_hamiltonian;

    OneFormCoeffs w0 = empty_form(0, mhd::count);
    w0.coeffs[mhd::rho] = QuadPoly::var(mhd::phi);
    w0.coeffs[mhd::S] = QuadPoly::var(mhd::beta);
    w0.coeffs[mhd::mu] = QuadPoly::var(mhd::lam);
    for (int i = 0; i < 3; ++i) w0.coeffs[mhd::f1 + i] = QuadPoly::var(mhd::c1 + i);
    s.oneforms.push_back(w0);

    for (int d = 0; d < 3; ++d) {
        OneFormCoeffs w = empty_form(d + 1, mhd::count);
        const int ud = mhd::ux + d;
        w.coeffs[mhd::rho] = QuadPoly::product(mhd::phi, ud);
        w.coeffs[mhd::S] = QuadPoly::product(mhd::beta, ud);
        w.coeffs[mhd::mu] = QuadPoly::product(mhd::lam, ud);
        for (int i = 0; i < 3; ++i) {
            // Velocity slot: rho phi on the diagonal plus c_d A^i throughout.
            QuadPoly p;
            if (i == d) p = QuadPoly::product(mhd::rho, mhd::phi);
            p.add_product(mhd::c1 + d, mhd::f1 + i, 1.0);
            w.coeffs[mhd::ux + i] = p;
            w.coeffs[mhd::f1 + i] = QuadPoly::product(ud, mhd::c1 + i);
        }
        s.oneforms.push_back(w);
    }
    return s;
}

StatePoint map_A_to_B(std::span<const double> Z) {
    if (Z.size() != mhd::count)
        throw std::invalid_argument("map_A_to_B: expected a 15-component state");
    StatePoint out(Z.begin(), Z.end());
    for (int i = 0; i < 3; ++i) {
        out[mhd::f1 + i] = Z[mhd::c1 + i];
        out[mhd::c1 + i] = -Z[mhd::f1 + i];
    }
    return out;
}

SkewMatrix reference_k_gas1d(int alpha, std::span<const double> z) {
    SkewMatrix k(alpha, gas::count);
    if (alpha == 0) {
        k.set(gas::phi, gas::rho, 1.0);
        k.set(gas::beta, gas::S, 1.0);
    } else if (alpha == 1) {
        k.set(gas::u, gas::S, z[gas::beta]);
        k.set(gas::u, gas::phi, -z[gas::rho]);
        k.set(gas::rho, gas::phi, -z[gas::u]);
        k.set(gas::S, gas::beta, -z[gas::u]);
    } else {
        throw std::invalid_argument("reference_k_gas1d: alpha must be 0 or 1");
    }
    return k;
}

namespace {

/// Accumulates raw (i,j) contributions and antisymmetrizes at the end,
/// mirroring how the tabulated matrices are presented.
struct RawTable {
    int n;
    std::vector<double> a;
    explicit RawTable(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
    void add(int i, int j, double v) { a[static_cast<size_t>(i) * n + j] += v; }
    SkewMatrix antisymmetrize(int alpha) const {
        SkewMatrix k(alpha, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                k.set(i, j, a[static_cast<size_t>(i) * n + j] - a[static_cast<size_t>(j) * n + i]);
        return k;
    }
};

}  // namespace

SkewMatrix reference_k_mhdB(int alpha, std::span<const double> z) {
    RawTable t(mhd::count);
    if (alpha == 0) {
        t.add(mhd::phi, mhd::rho, 1.0);
        t.add(mhd::beta, mhd::S, 1.0);
        t.add(mhd::lam, mhd::mu, 1.0);
        for (int s = 0; s < 3; ++s) t.add(mhd::c1 + s, mhd::f1 + s, 1.0);
        return t.antisymmetrize(alpha);
    }
    if (alpha < 1 || alpha > 3)
        throw std::invalid_argument("reference_k_mhdB: alpha must be 0..3");
    const int d = alpha - 1;
    const int ud = mhd::ux + d;
    // Conjugate-coefficient column for the flux component in direction d.
    for (int i = 0; i < 3; ++i) t.add(mhd::ux + i, mhd::f1 + d, z[mhd::c1 + i]);
    // Field-magnitude entries: B^d pairs the two off-direction velocity
    // slots with their conjugates; the other components sit transposed.
    for (int s = 0; s < 3; ++s) {
        if (s == d) continue;
        t.add(mhd::ux + s, mhd::c1 + s, z[mhd::f1 + d]);
        t.add(mhd::c1 + s, ud, z[mhd::f1 + s]);
    }
    for (int s = 0; s < 3; ++s) t.add(mhd::c1 + s, mhd::f1 + s, z[ud]);
    t.add(mhd::beta, mhd::S, z[ud]);
    t.add(mhd::lam, mhd::mu, z[ud]);
    t.add(mhd::phi, mhd::rho, z[ud]);
    t.add(ud, mhd::S, z[mhd::beta]);
    t.add(ud, mhd::mu, z[mhd::lam]);
    t.add(ud, mhd::phi, -z[mhd::rho]);
    return t.antisymmetrize(alpha);
}

SkewMatrix reference_k_mhdA(int alpha, std::span<const double> z) {
    RawTable t(mhd::count);
    if (alpha == 0) {
        t.add(mhd::phi, mhd::rho, 1.0);
        t.add(mhd::beta, mhd::S, 1.0);
        t.add(mhd::lam, mhd::mu, 1.0);
        for (int s = 0; s < 3; ++s) t.add(mhd::c1 + s, mhd::f1 + s, 1.0);
        return t.antisymmetrize(alpha);
    }
    if (alpha < 1 || alpha > 3)
        throw std::invalid_argument("reference_k_mhdA: alpha must be 0..3");
    const int d = alpha - 1;
    const int ud = mhd::ux + d;
    t.add(ud, mhd::S, z[mhd::beta]);
    t.add(ud, mhd::mu, z[mhd::lam]);
    t.add(mhd::beta, mhd::S, z[ud]);
    t.add(mhd::lam, mhd::mu, z[ud]);
    t.add(mhd::phi, mhd::rho, z[ud]);
    t.add(mhd::phi, ud, z[mhd::rho]);
    for (int s = 0; s < 3; ++s) {
        if (s != d) {
            t.add(mhd::f1 + s, mhd::ux + s, z[mhd::c1 + d]);
            t.add(ud, mhd::f1 + s, z[mhd::c1 + s]);
        }
        // As tabulated, the conjugate row for the flux direction spans all
        // velocity and potential columns.
        t.add(mhd::c1 + d, mhd::ux + s, z[mhd::f1 + s]);
        t.add(mhd::c1 + d, mhd::f1 + s, z[ud]);
    }
    return t.antisymmetrize(alpha);
}

SkewMatrix reference_k(const SystemDef& system, int alpha, std::span<const double> z) {
    if (system.name == "gas1d") return reference_k_gas1d(alpha, z);
    if (system.name == "mhd-b") return reference_k_mhdB(alpha, z);
    if (system.name == "mhd-a") return reference_k_mhdA(alpha, z);
    throw std::invalid_argument("reference_k: no tabulated matrices for system '" + system.name +
                                "'");
}

std::vector<FixtureMismatch> compare_reference(const SystemDef& system, int alpha,
                                               std::span<const double> z, double tol) {
    const SkewMatrix derived = exterior_derivative(system.oneforms.at(alpha), z);
    const SkewMatrix ref = reference_k(system, alpha, z);
    std::vector<FixtureMismatch> out;
    for (int i = 0; i < derived.n; ++i)
        for (int j = i + 1; j < derived.n; ++j) {
            const double a = ref.at(i, j);
            const double b = derived.at(i, j);
            const double diff = a > b ? a - b : b - a;
            if (diff > tol) out.push_back({alpha, i, j, a, b});
        }
    return out;
}

}  // namespace msymp
