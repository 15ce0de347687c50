#ifndef MSYMP_SYSTEMS_HPP
#define MSYMP_SYSTEMS_HPP

#include <span>
#include <string>
#include <vector>

#include "msymp/exterior.hpp"
#include "msymp/system.hpp"

namespace msymp {

/// Variable slots for 1D gas dynamics, state z = (u, rho, S, beta, phi).
namespace gas {
enum : int { u = 0, rho = 1, S = 2, beta = 3, phi = 4, count = 5 };
}

/// Shared slot layout for the two 15-variable MHD formulations, state
/// z = (u^1,u^2,u^3, rho, S, mu, f^1,f^2,f^3, c_1,c_2,c_3, lambda, beta, phi)
/// where f is the magnetic field B or the vector potential A, and c is the
/// respective conjugate potential (Gamma for B, gamma for A).
namespace mhd {
enum : int {
    ux = 0,
    uy = 1,
    uz = 2,
    rho = 3,
    S = 4,
    mu = 5,
    f1 = 6,
    f2 = 7,
    f3 = 8,
    c1 = 9,
    c2 = 10,
    c3 = 11,
    lam = 12,
    beta = 13,
    phi = 14,
    count = 15
};
}

/// 1D gas dynamics in Clebsch variables; independent variables (t, x).
SystemDef gas1d_system(const EosParams& eos = {});

/// MHD with the magnetic field B evolved directly; independent variables
/// (t, x, y, z). H = eps + |B|^2/(2 mu0) - rho|u|^2/2.
SystemDef mhdB_system(const EosParams& eos = {});

/// MHD with an advected vector potential A; independent variables
/// (t, x, y, z). The magnetic energy uses curl A, supplied via HookValues.
SystemDef mhdA_system(const EosParams& eos = {});

/// Canonical map from the potential formulation to the field formulation:
/// the field slots receive the A-form conjugate (B* = c), the conjugate
/// slots receive the negated potential (C* = -f); all other slots copy.
StatePoint map_A_to_B(std::span<const double> Z);

/// Tabulated reference matrices transcribed entry-by-entry from the source
/// tables, kept separate from the derived path for cross-checking.
SkewMatrix reference_k_gas1d(int alpha, std::span<const double> z);
SkewMatrix reference_k_mhdB(int alpha, std::span<const double> z);
SkewMatrix reference_k_mhdA(int alpha, std::span<const double> z);
SkewMatrix reference_k(const SystemDef& system, int alpha, std::span<const double> z);

/// One entry where the derived matrix and the tabulated reference disagree.
struct FixtureMismatch {
    int alpha;
    int i;
    int j;
    double reference;
    double derived;
};

/// Compares the derived K^alpha against the tabulated reference at z and
/// reports every differing entry (strict upper triangle). Differences are
/// reported, never patched.
std::vector<FixtureMismatch> compare_reference(const SystemDef& system, int alpha,
                                               std::span<const double> z, double tol = 0.0);

}  // namespace msymp

#endif
