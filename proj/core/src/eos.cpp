#include "msymp/eos.hpp"

#include <cmath>
#include <stdexcept>

namespace msymp {

void validate(const EosParams& params) {
    if (!(params.gamma > 1.0))
        throw std::invalid_argument("eos: gamma must be > 1");
    if (!(params.c_v > 0.0))
        throw std::invalid_argument("eos: c_v must be > 0");
    if (!(params.mu0 > 0.0))
        throw std::invalid_argument("eos: mu0 must be > 0");
}

EosValues eos_eval(const EosParams& params, double rho, double S) {
    if (!(rho > 0.0))
        throw std::domain_error("eos: rho must be > 0");
    const double g = params.gamma;
    const double ex = std::exp((S - params.S_ref) / params.c_v);
    const double epsilon = std::pow(rho, g) * ex / (g - 1.0);
    const double h = g * epsilon / rho;
    const double p = rho * h - epsilon;
    const double T = epsilon / (rho * params.c_v);
    return {epsilon, p, h, T};
}

double sound_speed(const EosParams& params, double rho, double S) {
    const EosValues v = eos_eval(params, rho, S);
    return std::sqrt(params.gamma * v.p / rho);
}

}  // namespace msymp
