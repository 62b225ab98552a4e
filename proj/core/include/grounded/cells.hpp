#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grounded/error.hpp"

namespace grounded {

/// One unit cell of the integer grid. Row 0 is the baseline; pierced-family
/// inputs may carry negative rows, the upper-halfplane model enforces y >= 0
/// at validation points rather than in the type.
struct Cell {
    int x = 0;
    int y = 0;

    friend bool operator==(Cell a, Cell b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Cell a, Cell b) { return !(a == b); }
    // Row-major order: scan row by row, left to right.
    friend bool operator<(Cell a, Cell b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }
};

struct CellHash {
    std::size_t operator()(Cell c) const {
        return std::hash<std::uint64_t>()((std::uint64_t(std::uint32_t(c.x)) << 32) |
                                          std::uint32_t(c.y));
    }
};

struct BBox {
    int min_x = 0, max_x = -1, min_y = 0, max_y = -1;
    bool empty = true;
};

inline std::array<Cell, 4> neighbors4(Cell c) {
    return {Cell{c.x, c.y - 1}, Cell{c.x - 1, c.y}, Cell{c.x + 1, c.y}, Cell{c.x, c.y + 1}};
}

/// A finite set of cells with exact set semantics. Cells are kept sorted in
/// row-major order and unique; the bounding box is maintained alongside.
class CellSet {
public:
    CellSet() = default;
    explicit CellSet(std::vector<Cell> cells);

    static CellSet single(Cell c) { return CellSet({c}); }

    bool empty() const { return cells_.empty(); }
    std::size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    const BBox& bbox() const { return bbox_; }

    bool contains(Cell c) const;
    bool intersects(const CellSet& other) const;
    bool disjoint(const CellSet& other) const { return !intersects(other); }

    /// Cells on the baseline (row 0), in x order.
    CellSet row(int y) const;

    CellSet translated(int dx, int dy) const;
    /// Mirror across the baseline: (x, y) -> (x, -y).
    CellSet mirrored_y() const;
    /// Mirror horizontally: (x, y) -> (pivot - x, y).
    CellSet mirrored_x(int pivot) const;

    friend CellSet operator|(const CellSet& a, const CellSet& b);
    friend CellSet operator&(const CellSet& a, const CellSet& b);
    friend CellSet operator-(const CellSet& a, const CellSet& b);
    friend bool operator==(const CellSet& a, const CellSet& b) { return a.cells_ == b.cells_; }
    friend bool operator!=(const CellSet& a, const CellSet& b) { return !(a == b); }

private:
    std::vector<Cell> cells_;
    BBox bbox_;

    void recompute_bbox();
};

CellSet union_all(const std::vector<CellSet>& sets);

/// Finite working window [0,width) x [0,height). Unboundedness is modelled by
/// frame-boundary contact, so every set in play must keep a margin of at
/// least one free cell on the left, right and top.
struct Frame {
    int width = 0;
    int height = 0;

    bool valid() const { return width > 0 && height > 0; }
    bool contains(Cell c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }
    /// True when the set keeps the mandatory 1-cell margin (bottom row may be touched).
    bool margin_ok(const CellSet& s) const;
    std::string describe() const;
};

}  // namespace grounded
