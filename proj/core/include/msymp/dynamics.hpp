#ifndef MSYMP_DYNAMICS_HPP
#define MSYMP_DYNAMICS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "msymp/grid.hpp"
#include "msymp/systems.hpp"

namespace msymp {

/// All dependent variables of one system on one grid, indexed by the
/// system's variable order. Velocity slots are derived data: they are
/// rebuilt from the potentials rather than integrated.
using FieldSet = std::vector<Field>;

enum class SystemKind { gas1d, mhd_b, mhd_a };

/// Kind from SystemDef::name; throws std::invalid_argument for names this
/// module cannot evolve.
SystemKind kind_of(const SystemDef& system);

/// Thrown when a run leaves the admissible regime (non-positive density or
/// non-finite values).
class SolverAbort : public std::runtime_error {
  public:
    SolverAbort(const std::string& what, double t_abort)
        : std::runtime_error(what), t(t_abort) {}
    double t = 0.0;
};

/// Velocity from the potential expansion at every node. Gas dynamics fills
/// only the first component; the 1.5D MHD forms fill all three.
std::vector<double> reconstruct_u_gas1d(const FieldSet& z, const Grid1D& grid);
std::array<std::vector<double>, 3> reconstruct_u_mhdB(const FieldSet& z, const Grid1D& grid);
std::array<std::vector<double>, 3> reconstruct_u_mhdA(const FieldSet& z, const Grid1D& grid);

/// Rebuilds the velocity slots of z in place from the other fields.
void sync_velocity(const SystemDef& system, FieldSet& z, const Grid1D& grid);

/// Curl and current arrays of the vector-potential formulation on a 1.5D
/// grid: curl = (0, -dAz/dx, dAy/dx), current = curl of curl / mu0 via the
/// same repeated centered stencil.
struct HookFields {
    std::array<std::vector<double>, 3> curl;
    std::array<std::vector<double>, 3> current;
};
HookFields hook_fields_mhdA(const FieldSet& z, const Grid1D& grid, double mu0);

/// Physical energy density at node i with the velocity rebuilt from the
/// potentials: rho |u|^2 / 2 + epsilon, plus the magnetic term for MHD.
/// Used by the discrete Hamilton's-equations check, which perturbs single
/// nodes and needs local re-evaluation.
double energy_cell(const SystemDef& system, const FieldSet& z, const Grid1D& grid, int i);

/// One classical RK4 step. Every stage rebuilds the velocity and the
/// thermodynamic quantities. A non-empty sqrtg turns each divergence into
/// its metric-weighted form (1/sqrtg) d/dx (sqrtg *) on a bounded grid.
void step_gas1d(FieldSet& z, const Grid1D& grid, const EosParams& eos, double dt,
                std::span<const double> sqrtg = {});

enum class MhdForm { B, A };

/// One classical RK4 step of the 1.5D MHD system in either formulation.
void step_mhd(FieldSet& z, const Grid1D& grid, const EosParams& eos, MhdForm form, double dt);

/// Largest stable step: cfl * dx / max(|u| + c_s + v_A).
double cfl_dt(const SystemDef& system, const FieldSet& z, const Grid1D& grid, double cfl);

/// Stored trajectory: snapshot times (uniform spacing) and per-snapshot
/// periodic parts of every variable. Ramp slopes are constant in time and
/// recorded once.
struct FieldHistory {
    Grid1D grid;
    std::vector<std::string> vars;
    std::vector<double> x_slopes;
    std::vector<double> times;
    std::vector<std::vector<std::vector<double>>> data;  ///< [snapshot][var][node]

    int n_snaps() const { return static_cast<int>(times.size()); }
    int var_index(std::string_view name) const;
    /// Full value including the ramp.
    double value(int snap, int var, int node) const;
};

struct RunParams {
    double t_end = 0.2;
    double cfl = 0.4;
    double dt = 0.0;  ///< > 0 overrides the CFL choice
    int store_every = 1;
    std::vector<double> sqrtg;  ///< non-empty: metric weight (gas1d only)
};

/// Integrates z0 to t_end with uniform steps (the step count is rounded up
/// so snapshots are evenly spaced) and returns the stored trajectory.
/// Throws SolverAbort when the state leaves the admissible regime.
FieldHistory run_simulation(const SystemDef& system, const FieldSet& z0, const Grid1D& grid,
                            const RunParams& params);

/// Built-in initial-condition families: "uniform", "acoustic" (gas only),
/// "alfven" (MHD only), "bump" (compact C^5 density pulse, any grid),
/// "stratified" (gas only, uniform-pressure static equilibrium).
/// Unknown family names or parameter keys throw std::invalid_argument.
FieldSet make_initial(const SystemDef& system, const Grid1D& grid, const std::string& family,
                      const std::map<std::string, double>& params);

}  // namespace msymp

#endif
