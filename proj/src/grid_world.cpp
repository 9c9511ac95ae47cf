#include "peakmdp/grid_world.hpp"

#include <string>

namespace peakmdp {

const char* grid_action_name(ActionId a) {
    switch (a.index) {
    case 0: return "N";
    case 1: return "E";
    case 2: return "S";
    case 3: return "W";
    default: throw DomainError("no grid action " + std::to_string(a.index));
    }
}

GridWorld::GridWorld(std::size_t width, std::size_t height) : width_(width), height_(height) {
    if (width == 0 || height == 0) {
        throw ValidationError(ValidationCode::BadShape, "grid dimensions must be at least 1");
    }
}

NeighborList GridWorld::neighbors(StateId s) const {
    const GridCell c = cell_of(s);
    NeighborList out;
    if (c.y + 1 < height_) {
        out.push_back({to_action(GridAction::North), StateId{s.index + width_}});
    }
    if (c.x + 1 < width_) {
        out.push_back({to_action(GridAction::East), StateId{s.index + 1}});
    }
    if (c.y > 0) {
        out.push_back({to_action(GridAction::South), StateId{s.index - width_}});
    }
    if (c.x > 0) {
        out.push_back({to_action(GridAction::West), StateId{s.index - 1}});
    }
    return out;
}

Distance GridWorld::distance(StateId from, StateId to) const {
    const GridCell a = cell_of(from);
    const GridCell b = cell_of(to);
    const std::size_t dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const std::size_t dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return static_cast<Distance>(dx + dy);
}

Distance GridWorld::min_cycle_length(StateId s) const {
    check_state(s);
    if (state_count() < 2) {
        throw NoCycleError("a 1x1 grid has no action cycle");
    }
    // Every move is reversible and there are no self-loops.
    return 2;
}

void GridWorld::check_no_dead_ends() const {
    if (state_count() < 2) {
        throw NoCycleError("a 1x1 grid has no action cycle");
    }
}

StateId GridWorld::state_at(std::size_t x, std::size_t y) const {
    if (x >= width_ || y >= height_) {
        throw DomainError("cell (" + std::to_string(x) + "," + std::to_string(y) + ") outside " +
                          std::to_string(width_) + "x" + std::to_string(height_) + " grid");
    }
    return StateId{y * width_ + x};
}

GridCell GridWorld::cell_of(StateId s) const {
    check_state(s);
    return {s.index % width_, s.index / width_};
}

}  // namespace peakmdp
