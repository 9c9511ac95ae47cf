#include "peakmdp/instance_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace peakmdp {
namespace {

using json = nlohmann::ordered_json;

void require_fields(const json& obj, const std::set<std::string>& allowed, const char* where) {
    if (!obj.is_object()) {
        throw ValidationError(ValidationCode::Malformed, std::string(where) + " must be an object");
    }
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ValidationError(ValidationCode::UnknownField,
                                  "unknown field '" + item.key() + "' in " + where);
        }
    }
    for (const auto& key : allowed) {
        if (!obj.contains(key)) {
            throw ValidationError(ValidationCode::Malformed, std::string(where) + " is missing '" + key + "'");
        }
    }
}

std::int64_t get_int(const json& obj, const char* key, const char* where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ValidationError(ValidationCode::Malformed, std::string(where) + "." + key + " must be an integer");
    }
    return v.get<std::int64_t>();
}

double get_real(const json& obj, const char* key, const char* where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ValidationError(ValidationCode::Malformed, std::string(where) + "." + key + " must be a number");
    }
    return v.get<double>();
}

}  // namespace

MdpInstance load_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(ValidationCode::Malformed, e.what());
    }
    require_fields(doc, {"width", "height", "gamma", "rewards"}, "instance");

    const std::int64_t width = get_int(doc, "width", "instance");
    const std::int64_t height = get_int(doc, "height", "instance");
    if (width < 1 || height < 1) {
        throw ValidationError(ValidationCode::BadShape, "width and height must be at least 1");
    }
    const double gamma = get_real(doc, "gamma", "instance");
    auto grid = std::make_shared<const GridWorld>(static_cast<std::size_t>(width), static_cast<std::size_t>(height));

    const json& list = doc.at("rewards");
    if (!list.is_array()) {
        throw ValidationError(ValidationCode::Malformed, "instance.rewards must be an array");
    }
    std::vector<RewardSource> rewards;
    rewards.reserve(list.size());
    for (const json& item : list) {
        require_fields(item, {"x", "y", "value"}, "reward");
        const std::int64_t x = get_int(item, "x", "reward");
        const std::int64_t y = get_int(item, "y", "reward");
        if (x < 0 || y < 0 || x >= width || y >= height) {
            throw ValidationError(ValidationCode::RewardOutOfBounds,
                                  "reward at (" + std::to_string(x) + "," + std::to_string(y) + ") outside the grid");
        }
        RewardSource r;
        r.id = rewards.size();
        r.state = grid->state_at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
        r.value = get_real(item, "value", "reward");
        rewards.push_back(r);
    }
    return MdpInstance(std::move(grid), std::move(rewards), gamma);
}

MdpInstance load_instance_file(const std::string& path) {
    return load_instance(read_text_file(path));
}

std::string dump_instance(const MdpInstance& instance) {
    const GridWorld& grid = grid_of(instance.env());
    json rewards = json::array();
    for (const RewardSource& r : instance.rewards()) {
        const GridCell c = grid.cell_of(r.state);
        rewards.push_back({{"x", c.x}, {"y", c.y}, {"value", r.value}});
    }
    json doc = {{"width", grid.width()}, {"height", grid.height()}, {"gamma", instance.gamma()}, {"rewards", rewards}};
    return doc.dump(2) + "\n";
}

const GridWorld& grid_of(const Environment& env) {
    const auto* grid = dynamic_cast<const GridWorld*>(&env);
    if (!grid) {
        throw DomainError("environment is not a grid world");
    }
    return *grid;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

}  // namespace peakmdp
