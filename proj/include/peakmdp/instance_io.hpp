#pragma once

#include <string>
#include <string_view>

#include "peakmdp/grid_world.hpp"
#include "peakmdp/mdp.hpp"

namespace peakmdp {

/// Parses a grid-world instance document:
///
///     {"width": 5, "height": 5, "gamma": 0.9,
///      "rewards": [{"x": 4, "y": 2, "value": 10}]}
///
/// Field names are exact; unknown fields are rejected. Every failure is a
/// ValidationError whose code names the broken rule.
MdpInstance load_instance(std::string_view text);
MdpInstance load_instance_file(const std::string& path);

std::string dump_instance(const MdpInstance& instance);

/// The grid behind an instance loaded from a document. Throws DomainError for
/// other environments.
const GridWorld& grid_of(const Environment& env);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace peakmdp
