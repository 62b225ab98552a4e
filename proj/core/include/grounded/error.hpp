#pragma once

#include <stdexcept>
#include <string>

namespace grounded {

enum class Errc {
    frame_too_small,
    base_not_surrounded,
    not_connected,
    simplicity_violated,
    bases_overlap,
    invalid_pierced,
    generation_budget,
    parse_error,
    validation,
    budget_exceeded,
    solver_too_large,
    order_violation,
    not_planar,
    not_four_colorable,
    precondition_failed,
    no_supported_layer,
    not_a_clique,
    input_overlap,
    step_infeasible,
    pillars_not_disjoint,
    pillar_misses_arch,
    not_surrounded,
    hypothesis_violated,
    member_misses_pillars,
    clique_bound_violated,
    routing_failed,
    clip_disjointness_violated,
    audit_failed,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace grounded
