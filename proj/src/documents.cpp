#include "peakmdp/documents.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace peakmdp {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& what) {
    throw ValidationError(ValidationCode::Malformed, what);
}

void check_keys(const json& obj, const std::set<std::string>& required, const std::set<std::string>& optional,
                const char* where) {
    if (!obj.is_object()) malformed(std::string(where) + " must be an object");
    for (const auto& item : obj.items()) {
        if (!required.count(item.key()) && !optional.count(item.key())) {
            throw ValidationError(ValidationCode::UnknownField, "unknown field '" + item.key() + "' in " + where);
        }
    }
    for (const auto& key : required) {
        if (!obj.contains(key)) malformed(std::string(where) + " is missing '" + key + "'");
    }
}

json site_json(const PeakSite& site, const GridWorld& grid) {
    const GridCell c = grid.cell_of(site.state);
    return {{"x", c.x}, {"y", c.y}, {"value", site.value}};
}

PeakSite site_from(const json& j, const GridWorld& grid) {
    check_keys(j, {"x", "y", "value"}, {}, "peak site");
    if (!j.at("x").is_number_unsigned() || !j.at("y").is_number_unsigned() || !j.at("value").is_number()) {
        malformed("peak site needs non-negative integer x, y and a numeric value");
    }
    const auto x = j.at("x").get<std::size_t>();
    const auto y = j.at("y").get<std::size_t>();
    if (x >= grid.width() || y >= grid.height()) {
        throw ValidationError(ValidationCode::RewardOutOfBounds, "peak site outside the grid");
    }
    const double value = j.at("value").get<double>();
    if (!(value > 0.0)) {
        throw ValidationError(ValidationCode::NonPositiveReward, "peak values must be positive");
    }
    return {grid.state_at(x, y), value};
}

}  // namespace

std::string dump_peak_list(const PeakList& peaks, const GridWorld& grid, double gamma) {
    json list = json::array();
    for (const Peak& p : peaks) {
        json entry = {{"kind", std::string(to_string(p.kind))}, {"pri", site_json(p.primary, grid)}};
        if (p.secondary) {
            entry["sec"] = site_json(*p.secondary, grid);
        }
        entry["rewards"] = json(std::vector<RewardId>(p.covered().begin(), p.covered().end()));
        list.push_back(std::move(entry));
    }
    json doc = {{"gamma", gamma}, {"width", grid.width()}, {"height", grid.height()}, {"peaks", std::move(list)}};
    return doc.dump(2) + "\n";
}

PeakListDocument load_peak_list(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(e.what());
    }
    check_keys(doc, {"gamma", "width", "height", "peaks"}, {}, "peak list");
    if (!doc.at("width").is_number_unsigned() || !doc.at("height").is_number_unsigned()) {
        malformed("peak list width and height must be non-negative integers");
    }
    if (!doc.at("gamma").is_number()) malformed("peak list gamma must be a number");

    PeakListDocument out;
    out.gamma = doc.at("gamma").get<double>();
    if (!(out.gamma > 0.0 && out.gamma < 1.0)) {
        throw ValidationError(ValidationCode::GammaOutOfRange, "gamma must lie in (0, 1)");
    }
    out.grid = std::make_shared<const GridWorld>(doc.at("width").get<std::size_t>(), doc.at("height").get<std::size_t>());

    const json& list = doc.at("peaks");
    if (!list.is_array()) malformed("peaks must be an array");
    std::vector<Peak> peaks;
    for (const json& entry : list) {
        check_keys(entry, {"kind", "pri", "rewards"}, {"sec"}, "peak");
        if (!entry.at("kind").is_string()) malformed("peak kind must be a string");
        const PeakKind kind = peak_kind_from_string(entry.at("kind").get<std::string>());
        const json& ids = entry.at("rewards");
        if (!ids.is_array() || !std::all_of(ids.begin(), ids.end(), [](const json& v) { return v.is_number_unsigned(); })) {
            malformed("peak rewards must be an array of reward ids");
        }
        const PeakSite pri = site_from(entry.at("pri"), *out.grid);
        const bool combined = kind == PeakKind::Combined;
        if (combined != entry.contains("sec") || ids.size() != (combined ? 2u : 1u)) {
            malformed("combined peaks need 'sec' and two reward ids; other kinds neither");
        }
        if (combined) {
            const PeakSite sec = site_from(entry.at("sec"), *out.grid);
            peaks.push_back(Peak::combined(ids[0].get<RewardId>(), pri, ids[1].get<RewardId>(), sec));
        } else if (kind == PeakKind::Baseline) {
            peaks.push_back(Peak::baseline(ids[0].get<RewardId>(), pri.state, pri.value));
        } else {
            peaks.push_back(Peak::delta(ids[0].get<RewardId>(), pri.state, pri.value));
        }
    }
    out.peaks = PeakList(std::move(peaks));
    return out;
}

std::string dump_trajectory(const Trajectory& trajectory, const GridWorld& grid) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
        const TrajectoryStep& s = trajectory.steps[i];
        const GridCell c = grid.cell_of(s.state);
        const json row = {{"step", s.step},
                          {"x", c.x},
                          {"y", c.y},
                          {"action", grid_action_name(s.action)},
                          {"value", s.value}};
        out += "  " + row.dump();
        out += i + 1 < trajectory.steps.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::string dump_value_table(const ValueTable& table, const GridWorld& grid) {
    const json doc = {{"width", grid.width()}, {"height", grid.height()}, {"gamma", table.gamma}, {"values", table.values}};
    return doc.dump() + "\n";
}

}  // namespace peakmdp
