#include "persuasion/procedure.hpp"

namespace persuasion {

std::string to_string(UpdateProcedure p) {
    switch (p) {
        case UpdateProcedure::Bayes: return "bayes";
        case UpdateProcedure::PbpN: return "pbp-n";
        case UpdateProcedure::PbpO: return "pbp-o";
        case UpdateProcedure::Lp: return "lp";
    }
    throw ValidationError("to_string: unknown procedure");
}

ProcedureState make_procedure_state(UpdateProcedure procedure, const BiasParam& alpha,
                                    const Belief& prior) {
    return ProcedureState{procedure, alpha, prior, prior, prior};
}

ProcedureState step(const ProcedureState& state, const Experiment& exp, std::size_t signal) {
    ProcedureState next = state;
    switch (state.procedure) {
        case UpdateProcedure::Bayes:
            next.current_biased = bayes_posterior(state.current_biased, exp, signal);
            break;
        case UpdateProcedure::PbpN: {
            const Belief bayes = bayes_posterior(state.current_biased, exp, signal);
            next.current_biased = apply_bias(state.alpha, state.current_biased, bayes);
            break;
        }
        case UpdateProcedure::PbpO: {
            const Belief bayes = bayes_posterior(state.current_biased, exp, signal);
            next.current_biased = apply_bias(state.alpha, state.original_prior, bayes);
            break;
        }
        case UpdateProcedure::Lp:
            next.current_bayes = bayes_posterior(state.current_bayes, exp, signal);
            break;
    }
    return next;
}

ProcedureState step(const ProcedureState& state, const Experiment& exp,
                    const std::string& signal) {
    return step(state, exp, exp.signal_index(signal));
}

Belief finalize(const ProcedureState& state) {
    if (state.procedure == UpdateProcedure::Lp) {
        return apply_bias(state.alpha, state.original_prior, state.current_bayes);
    }
    return state.current_biased;
}

} // namespace persuasion
