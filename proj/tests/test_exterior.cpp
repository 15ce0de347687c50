#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "msymp/exterior.hpp"
#include "msymp/systems.hpp"

using namespace msymp;

namespace {

StatePoint random_state(std::mt19937_64& rng, const SystemDef& sys) {
    std::uniform_real_distribution<double> any(-2.0, 2.0), pos(0.3, 2.5);
    StatePoint z(sys.n_dep());
    for (int j = 0; j < sys.n_dep(); ++j) z[j] = j == sys.rho_index ? pos(rng) : any(rng);
    return z;
}

}  // namespace

TEST_SUITE("exterior") {

TEST_CASE("set keeps the mirror entry in sync") {
    SkewMatrix k(0, 3);
    k.set(0, 2, 4.5);
    CHECK(k.at(0, 2) == 4.5);
    CHECK(k.at(2, 0) == -4.5);
    CHECK(k.skewness_defect() == 0.0);
}

TEST_CASE("gas matrices agree with the tabulated reference") {
    const SystemDef sys = gas1d_system();
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const StatePoint z = random_state(rng, sys);
        for (int alpha = 0; alpha < sys.n_indep; ++alpha) {
            const SkewMatrix derived = exterior_derivative(sys.oneforms[alpha], z);
            const SkewMatrix ref = reference_k_gas1d(alpha, z);
            for (int i = 0; i < derived.n; ++i)
                for (int j = 0; j < derived.n; ++j) CHECK(derived.at(i, j) == ref.at(i, j));
        }
    }
}

TEST_CASE("skewness is exactly zero for every system") {
    std::mt19937_64 rng(22);
    for (const SystemDef& sys : {gas1d_system(), mhdB_system(), mhdA_system()}) {
        for (int trial = 0; trial < 10; ++trial) {
            const StatePoint z = random_state(rng, sys);
            for (int alpha = 0; alpha < sys.n_indep; ++alpha)
                CHECK(exterior_derivative(sys.oneforms[alpha], z).skewness_defect() == 0.0);
        }
    }
}

TEST_CASE("adding an exact form leaves the matrices unchanged") {
    // d(rho * phi) = phi d(rho) + rho d(phi) contributes nothing after the
    // antisymmetrized derivative, whatever the direction it is added to.
    const SystemDef sys = gas1d_system();
    std::mt19937_64 rng(26);
    for (int alpha = 0; alpha < sys.n_indep; ++alpha) {
        OneFormCoeffs gauged = sys.oneforms[alpha];
        gauged.coeffs[gas::rho] = gauged.coeffs[gas::rho] + QuadPoly::var(gas::phi);
        gauged.coeffs[gas::phi] = gauged.coeffs[gas::phi] + QuadPoly::var(gas::rho);
        for (int trial = 0; trial < 20; ++trial) {
            const StatePoint z = random_state(rng, sys);
            const SkewMatrix plain = exterior_derivative(sys.oneforms[alpha], z);
            const SkewMatrix shifted = exterior_derivative(gauged, z);
            for (int i = 0; i < plain.n; ++i)
                for (int j = 0; j < plain.n; ++j) CHECK(plain.at(i, j) == shifted.at(i, j));
        }
    }
}

TEST_CASE("cyclic coefficient sums vanish") {
    std::mt19937_64 rng(23);
    for (const SystemDef& sys : {gas1d_system(), mhdB_system(), mhdA_system()}) {
        for (int trial = 0; trial < 5; ++trial) {
            const StatePoint z = random_state(rng, sys);
            for (int alpha = 0; alpha < sys.n_indep; ++alpha) {
                CHECK(check_closure(sys, alpha, z) <= 1e-12);
                CHECK(check_closure_fd(sys, alpha, z) <= 1e-6);
            }
        }
    }
}

TEST_CASE("stored partials agree with differenced coefficients") {
    std::mt19937_64 rng(27);
    const double step = 1e-5;
    for (const SystemDef& sys : {gas1d_system(), mhdB_system(), mhdA_system()}) {
        const StatePoint z = random_state(rng, sys);
        for (int alpha = 0; alpha < sys.n_indep; ++alpha) {
            const OneFormCoeffs& omega = sys.oneforms[alpha];
            for (int j = 0; j < sys.n_dep(); ++j)
                for (int k = 0; k < sys.n_dep(); ++k) {
                    StatePoint zp = z, zm = z;
                    zp[k] += step;
                    zm[k] -= step;
                    const double fd = (omega.coeff(j, zp) - omega.coeff(j, zm)) / (2.0 * step);
                    CHECK(omega.partial(j, k, z) ==
                          doctest::Approx(fd).epsilon(1e-6).scale(1.0));
                }
        }
    }
}

TEST_CASE("gas residual matches the written-out rows") {
    const SystemDef sys = gas1d_system();
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> any(-1.5, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const StatePoint z = random_state(rng, sys);
        std::vector<std::vector<double>> dz(2, std::vector<double>(gas::count));
        for (auto& row : dz)
            for (double& v : row) v = any(rng);

        const std::vector<double> r = assemble_residual(sys, z, dz);

        const double u = z[gas::u], rho = z[gas::rho], beta = z[gas::beta];
        std::vector<double> grad(gas::count);
        sys.grad_hamiltonian(sys, z, {}, grad);
        const auto& zt = dz[0];
        const auto& zx = dz[1];
        std::vector<double> lhs(gas::count);
        lhs[gas::u] = beta * zx[gas::S] - rho * zx[gas::phi];
        lhs[gas::rho] = -zt[gas::phi] - u * zx[gas::phi];
        lhs[gas::S] = -zt[gas::beta] - beta * zx[gas::u] - u * zx[gas::beta];
        lhs[gas::beta] = zt[gas::S] + u * zx[gas::S];
        lhs[gas::phi] = zt[gas::rho] + rho * zx[gas::u] + u * zx[gas::rho];
        for (int i = 0; i < gas::count; ++i)
            CHECK(r[i] == doctest::Approx(lhs[i] - grad[i]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("residual rejects mismatched derivative data") {
    const SystemDef sys = gas1d_system();
    const StatePoint z{0.1, 1.0, 0.0, 0.0, 0.0};
    std::vector<std::vector<double>> bad_count(1, std::vector<double>(gas::count, 0.0));
    CHECK_THROWS_AS(assemble_residual(sys, z, bad_count), std::invalid_argument);
    std::vector<std::vector<double>> bad_width(2, std::vector<double>(3, 0.0));
    CHECK_THROWS_AS(assemble_residual(sys, z, bad_width), std::invalid_argument);
}

TEST_CASE("lagrangian density recovers coefficient contractions") {
    const SystemDef sys = gas1d_system();
    const StatePoint z{0.5, 1.2, 0.1, 0.4, 0.9};
    std::vector<std::vector<double>> dz(2, std::vector<double>(gas::count, 0.0));
    dz[0][gas::rho] = 0.7;
    dz[1][gas::S] = -0.3;
    const double expected = z[gas::phi] * 0.7                          // L0_rho rho_t
                            + z[gas::u] * z[gas::beta] * (-0.3)        // L1_S S_x
                            - sys.hamiltonian(sys, z, {});
    CHECK(lagrangian_density(sys, z, dz) == doctest::Approx(expected).epsilon(1e-14));
}

}  // TEST_SUITE
