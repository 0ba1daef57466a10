#pragma once

namespace nlsf {

/// Front door for the nlsf tool. Subcommands: soliton, dress, evolve,
/// scatter, undress, stability, sweep. Returns 0 on success, 1 on a
/// validation/usage error, 2 on a numerical-stage error. NLSF_THREADS caps
/// the worker thread count.
int command_dispatch(int argc, const char* const* argv);

} // namespace nlsf
