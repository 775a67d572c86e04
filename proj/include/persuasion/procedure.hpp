#pragma once

#include <string>

#include "persuasion/belief.hpp"

namespace persuasion {

/// How the conservative bias is applied when signals arrive over time.
///
///   Bayes — exact Bayesian updating (identical to PbpN at alpha = 0).
///   PbpN  — bias applied each period, anchored at the previous period's
///           (biased) belief, which also serves as the updating prior.
///   PbpO  — bias applied each period, anchored at the original prior;
///           the updating prior is still the previous period's belief.
///   Lp    — Bayesian updating throughout, bias applied once at the end.
enum class UpdateProcedure { Bayes, PbpN, PbpO, Lp };

std::string to_string(UpdateProcedure p);

/// Per-agent belief bookkeeping for one run of a sequential procedure.
/// Immutable value; step() returns the advanced copy.
struct ProcedureState {
    UpdateProcedure procedure;
    BiasParam alpha;
    Belief original_prior; // process-start prior, the anchor for PbpO and Lp
    Belief current_biased; // the held belief after the signals so far
    Belief current_bayes;  // running Bayesian posterior, advanced only under Lp
};

ProcedureState make_procedure_state(UpdateProcedure procedure, const BiasParam& alpha,
                                    const Belief& prior);

/// Advances the state by one observed signal. The updating prior is
/// current_biased for Bayes/PbpN/PbpO and current_bayes for Lp.
ProcedureState step(const ProcedureState& state, const Experiment& exp, const std::string& signal);
ProcedureState step(const ProcedureState& state, const Experiment& exp, std::size_t signal);

/// The belief the agent acts on once the process ends: D_alpha(current_bayes;
/// original_prior) under Lp, current_biased otherwise.
Belief finalize(const ProcedureState& state);

} // namespace persuasion
