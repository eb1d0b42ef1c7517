#pragma once

#include <stdexcept>
#include <string>

namespace xf {

enum class Errc {
    invalid_spec,
    degree_collapse,
    nullspace_defect,
    singular_evaluation,
    pole_evaluation,
    count_mismatch,
    deflation_instability,
    coincident_nodes,
    no_sign_change,
    convergence_failure,
    non_convergence,
    domain_escape,
};

inline const char* errc_name(Errc e)
{
    switch (e) {
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::degree_collapse: return "DegreeCollapse";
    case Errc::nullspace_defect: return "NullspaceDefect";
    case Errc::singular_evaluation: return "SingularEvaluation";
    case Errc::pole_evaluation: return "PoleEvaluation";
    case Errc::count_mismatch: return "CountMismatch";
    case Errc::deflation_instability: return "DeflationInstability";
    case Errc::coincident_nodes: return "CoincidentNodes";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::domain_escape: return "DomainEscape";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace xf
