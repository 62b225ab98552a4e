#include "grounded/cells.hpp"

#include <algorithm>

namespace grounded {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::frame_too_small: return "FrameTooSmall";
        case Errc::base_not_surrounded: return "BaseNotSurrounded";
        case Errc::not_connected: return "NotConnected";
        case Errc::simplicity_violated: return "SimplicityHypothesisViolated";
        case Errc::bases_overlap: return "BasesOverlap";
        case Errc::invalid_pierced: return "InvalidPierced";
        case Errc::generation_budget: return "GenerationBudgetExceeded";
        case Errc::parse_error: return "ParseError";
        case Errc::validation: return "ValidationError";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::solver_too_large: return "SolverTooLarge";
        case Errc::order_violation: return "OrderViolation";
        case Errc::not_planar: return "NotPlanar";
        case Errc::not_four_colorable: return "NotFourColorable";
        case Errc::precondition_failed: return "PreconditionFailed";
        case Errc::no_supported_layer: return "NoSupportedLayer";
        case Errc::not_a_clique: return "NotAClique";
        case Errc::input_overlap: return "InputOverlap";
        case Errc::step_infeasible: return "StepInfeasible";
        case Errc::pillars_not_disjoint: return "PillarsNotDisjoint";
        case Errc::pillar_misses_arch: return "PillarMissesS";
        case Errc::not_surrounded: return "NotSurrounded";
        case Errc::hypothesis_violated: return "HypothesisViolated";
        case Errc::member_misses_pillars: return "MemberMissesAllPillars";
        case Errc::clique_bound_violated: return "CliqueBoundViolated";
        case Errc::routing_failed: return "RoutingFailed";
        case Errc::clip_disjointness_violated: return "ClipDisjointnessViolated";
        case Errc::audit_failed: return "AuditFailed";
    }
    return "UnknownError";
}

CellSet::CellSet(std::vector<Cell> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    recompute_bbox();
}

void CellSet::recompute_bbox() {
    bbox_ = BBox{};
    if (cells_.empty()) return;
    bbox_.empty = false;
    bbox_.min_x = bbox_.max_x = cells_.front().x;
    bbox_.min_y = cells_.front().y;
    bbox_.max_y = cells_.back().y;
    for (const Cell& c : cells_) {
        bbox_.min_x = std::min(bbox_.min_x, c.x);
        bbox_.max_x = std::max(bbox_.max_x, c.x);
    }
}

bool CellSet::contains(Cell c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

bool CellSet::intersects(const CellSet& other) const {
    if (empty() || other.empty()) return false;
    const BBox& a = bbox_;
    const BBox& b = other.bbox_;
    if (a.max_x < b.min_x || b.max_x < a.min_x || a.max_y < b.min_y || b.max_y < a.min_y)
        return false;
    auto i = cells_.begin();
    auto j = other.cells_.begin();
    while (i != cells_.end() && j != other.cells_.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

CellSet CellSet::row(int y) const {
    std::vector<Cell> out;
    for (const Cell& c : cells_)
        if (c.y == y) out.push_back(c);
    return CellSet(std::move(out));
}

CellSet CellSet::translated(int dx, int dy) const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const Cell& c : cells_) out.push_back({c.x + dx, c.y + dy});
    return CellSet(std::move(out));
}

CellSet CellSet::mirrored_y() const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const Cell& c : cells_) out.push_back({c.x, -c.y});
    return CellSet(std::move(out));
}

CellSet CellSet::mirrored_x(int pivot) const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const Cell& c : cells_) out.push_back({pivot - c.x, c.y});
    return CellSet(std::move(out));
}

CellSet operator|(const CellSet& a, const CellSet& b) {
    std::vector<Cell> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                   std::back_inserter(out));
    return CellSet(std::move(out));
}

CellSet operator&(const CellSet& a, const CellSet& b) {
    std::vector<Cell> out;
    std::set_intersection(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                          std::back_inserter(out));
    return CellSet(std::move(out));
}

CellSet operator-(const CellSet& a, const CellSet& b) {
    std::vector<Cell> out;
    std::set_difference(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                        std::back_inserter(out));
    return CellSet(std::move(out));
}

CellSet union_all(const std::vector<CellSet>& sets) {
    std::vector<Cell> out;
    for (const CellSet& s : sets) out.insert(out.end(), s.cells().begin(), s.cells().end());
    return CellSet(std::move(out));
}

bool Frame::margin_ok(const CellSet& s) const {
    if (s.empty()) return true;
    const BBox& b = s.bbox();
    return b.min_x >= 1 && b.max_x <= width - 2 && b.min_y >= 0 && b.max_y <= height - 2;
}

std::string Frame::describe() const {
    return std::to_string(width) + "x" + std::to_string(height);
}

}  // namespace grounded
