#pragma once

#include <cstddef>

#include "peakmdp/mdp.hpp"

namespace peakmdp {

/// Fixed action order of the 4-connected grid. North increases y.
enum class GridAction : std::size_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr ActionId to_action(GridAction a) noexcept { return ActionId{static_cast<std::size_t>(a)}; }
const char* grid_action_name(ActionId a);

struct GridCell {
    std::size_t x = 0;
    std::size_t y = 0;
    friend constexpr bool operator==(GridCell, GridCell) = default;
};

/// Obstacle-free 4-connected grid. Moves that would leave the grid are
/// omitted rather than turned into self-loops. Distances are Manhattan, O(1).
class GridWorld final : public Environment {
public:
    GridWorld(std::size_t width, std::size_t height);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }

    std::size_t state_count() const noexcept override { return width_ * height_; }
    std::size_t action_count() const noexcept override { return 4; }
    NeighborList neighbors(StateId s) const override;
    Distance distance(StateId from, StateId to) const override;
    Distance min_cycle_length(StateId s) const override;
    void check_no_dead_ends() const override;

    StateId state_at(std::size_t x, std::size_t y) const;
    StateId state_at(GridCell c) const { return state_at(c.x, c.y); }
    GridCell cell_of(StateId s) const;

private:
    std::size_t width_;
    std::size_t height_;
};

}  // namespace peakmdp
