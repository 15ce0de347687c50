#ifndef MSYMP_SYSTEM_HPP
#define MSYMP_SYSTEM_HPP

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msymp/eos.hpp"
#include "msymp/quadpoly.hpp"

namespace msymp {

/// State vector at one point, ordered by the owning system's variable map.
using StatePoint = std::vector<double>;

/// Coefficients of a one-form over the dependent variables for a single
/// independent-variable index alpha (0 = time). Entry j is the coefficient
/// multiplying dz^j; absent entries are zero.
struct OneFormCoeffs {
    int alpha = 0;
    std::vector<QuadPoly> coeffs;

    double coeff(int j, std::span<const double> z) const { return coeffs[j].eval(z); }
    /// d(coefficient j)/d(z_k), exact.
    double partial(int j, int k, std::span<const double> z) const { return coeffs[j].d1(z, k); }
    /// d2(coefficient j)/(d z_k d z_l), exact.
    double partial2(int j, int k, int l) const { return coeffs[j].d2(k, l); }
};

/// Values the Hamiltonian density needs that are not pointwise functions of
/// the state: in the vector-potential formulation the magnetic energy uses
/// the curl of the potential and its gradient slot holds the current.
struct HookValues {
    std::array<double, 3> curl{0.0, 0.0, 0.0};
    std::array<double, 3> current{0.0, 0.0, 0.0};
};

/// Complete pointwise description of one multi-symplectic system: variable
/// names, one-form coefficients per independent variable, Hamiltonian density
/// and its gradient, and the thermodynamic closure.
struct SystemDef {
    std::string name;
    std::vector<std::string> vars;
    int n_indep = 2;
    EosParams eos;
    std::vector<OneFormCoeffs> oneforms;  ///< indexed by alpha = 0..n_indep-1
    int rho_index = -1;
    /// True when the Hamiltonian needs HookValues (curl/current) in addition
    /// to the pointwise state.
    bool needs_hook = false;

    double (*hamiltonian)(const SystemDef&, std::span<const double>, const HookValues&) = nullptr;
    void (*grad_hamiltonian)(const SystemDef&, std::span<const double>, const HookValues&,
                             std::span<double>) = nullptr;

    int n_dep() const { return static_cast<int>(vars.size()); }
    /// Index of a named variable; throws std::invalid_argument if unknown.
    int var(std::string_view name) const;
    /// Throws std::domain_error when a density slot exists and is <= 0.
    void check_admissible(std::span<const double> z) const;
};

}  // namespace msymp

#endif
