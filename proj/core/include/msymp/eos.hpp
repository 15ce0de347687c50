#ifndef MSYMP_EOS_HPP
#define MSYMP_EOS_HPP

namespace msymp {

/// Ideal-gas closure parameters in code units.
struct EosParams {
    double gamma = 5.0 / 3.0;  ///< adiabatic index, > 1
    double c_v = 1.0;          ///< specific heat scale, > 0
    double S_ref = 0.0;        ///< reference entropy
    double mu0 = 1.0;          ///< magnetic permeability, > 0
};

/// Thermodynamic state derived from (rho, S):
///   epsilon = rho^gamma exp((S - S_ref)/c_v) / (gamma - 1)
///   h = d(epsilon)/d(rho),  p = rho h - epsilon,  T = (d(epsilon)/dS) / rho.
struct EosValues {
    double epsilon;
    double p;
    double h;
    double T;
};

/// Throws std::invalid_argument when parameters violate gamma > 1,
/// c_v > 0 or mu0 > 0.
void validate(const EosParams& params);

/// Throws std::domain_error for rho <= 0.
EosValues eos_eval(const EosParams& params, double rho, double S);

/// Adiabatic sound speed sqrt(gamma p / rho).
double sound_speed(const EosParams& params, double rho, double S);

}  // namespace msymp

#endif
