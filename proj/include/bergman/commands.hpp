// bergman: verification suites behind the CLI subcommands.
//
// Each command returns a Report (rows sorted by name, aggregate pass) plus
// the table payload emitted when the configured format is csv.
#ifndef BERGMAN_COMMANDS_HPP
#define BERGMAN_COMMANDS_HPP

#include <string>

#include "bergman/report.hpp"

namespace bergman {

struct CommandOutput {
  Report report;
  std::string table_csv;
};

/// Lie algebra / Fock / oscillator-realization invariant suite.
CommandOutput cmd_verify_algebra(const RunConfig& config);

/// Kernel, metric, Ricci, Einstein residual, measure and discrete-series
/// checks (stochastic rows use the configured seed and sample count).
CommandOutput cmd_verify_geometry(const RunConfig& config);

/// Star products of coordinate functions over the N range: commutator
/// identity, commutative-limit slope, A_N/B_N fits.  CSV columns:
/// N,A_N,B_N,residual,slope.
CommandOutput cmd_star_table(const RunConfig& config);

/// <z0|T(a_t)|z0> against closed-form candidates over t in [0, t_max];
/// reports which family matched.  CSV columns: t,omega_re,omega_im,
/// reference,residual.
CommandOutput cmd_omega_scan(const RunConfig& config);

/// N x M grid of interior commutator residuals and coherent tails.
/// CSV columns: N,M,dim,commutator_residual,tail.
CommandOutput cmd_sweep(const RunConfig& config);

}  // namespace bergman

#endif
