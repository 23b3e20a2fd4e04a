#include "searrt/scenario.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace searrt::scenario {

namespace {

using nlohmann::json;

constexpr double kKnots = 0.514444;  // m/s

const json& require(const json& node, const std::string& field, const std::string& path) {
    if (!node.contains(field)) {
        throw ScenarioError(path, "missing field: " + path);
    }
    return node.at(field);
}

double require_number(const json& node, const std::string& field, const std::string& path) {
    const json& v = require(node, field, path);
    if (!v.is_number()) throw ScenarioError(path, "field is not a number: " + path);
    return v.get<double>();
}

geom::Point parse_point(const json& node, const std::string& path) {
    return {require_number(node, "north", path + ".north"),
            require_number(node, "east", path + ".east")};
}

double parse_speed(const json& node, const std::string& path) {
    const json& v = require(node, "speed", path + ".speed");
    const double value = require_number(v, "value", path + ".speed.value");
    const json& unit = require(v, "unit", path + ".speed.unit");
    if (!unit.is_string()) throw ScenarioError(path + ".speed.unit", "unit must be a string");
    const std::string u = unit.get<std::string>();
    if (u == "mps") return value;
    if (u == "kn") return value * kKnots;
    throw ScenarioError(path + ".speed.unit",
                        "unknown speed unit '" + u + "' (expected kn or mps): " + path + ".speed.unit");
}

encounter::VesselState parse_vessel(const json& node, const std::string& path) {
    encounter::VesselState v;
    v.position = parse_point(require(node, "position", path + ".position"), path + ".position");
    v.speed = parse_speed(node, path);
    if (v.speed < 0.0) throw ScenarioError(path + ".speed.value", "speed must be >= 0");
    v.heading = geom::Angle::radians(require_number(node, "heading_deg", path + ".heading_deg") *
                                     std::numbers::pi / 180.0);
    v.length = require_number(node, "length", path + ".length");
    if (!(v.length > 0.0)) throw ScenarioError(path + ".length", "length must be > 0");
    return v;
}

}  // namespace

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

ScenarioFile parse_scenario(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(origin, std::string("invalid JSON: ") + e.what());
    }

    ScenarioFile file;
    file.hash = content_hash(json_text);
    file.own_ship = parse_vessel(require(root, "own_ship", "own_ship"), "own_ship");
    file.target_vessel =
        parse_vessel(require(root, "target_vessel", "target_vessel"), "target_vessel");

    const json& route = require(root, "route", "route");
    if (!route.is_array() || route.empty()) {
        throw ScenarioError("route", "route must be a non-empty array of waypoints");
    }
    for (std::size_t i = 0; i < route.size(); ++i) {
        file.route.push_back(parse_point(route[i], "route[" + std::to_string(i) + "]"));
    }

    file.d_act = require_number(root, "d_act", "d_act");
    if (!(file.d_act > 0.0)) throw ScenarioError("d_act", "d_act must be > 0");
    file.t_act = require_number(root, "t_act", "t_act");
    if (!(file.t_act > 0.0)) throw ScenarioError("t_act", "t_act must be > 0");
    file.r_min = require_number(root, "r_min", "r_min");
    if (!(file.r_min > 0.0)) throw ScenarioError("r_min", "r_min must be > 0");

    file.params.min_turn_radius = file.r_min;
    if (root.contains("description") && root["description"].is_string()) {
        file.description = root["description"].get<std::string>();
    }
    if (root.contains("planner")) {
        const json& p = root["planner"];
        auto num = [&](const char* key, double fallback) {
            return p.contains(key) ? require_number(p, key, std::string("planner.") + key)
                                   : fallback;
        };
        file.params.max_iterations = static_cast<int>(num("max_iterations", file.params.max_iterations));
        file.params.steer_step = num("steer_step", file.params.steer_step);
        file.params.near_radius_constant = num("near_radius_constant", file.params.near_radius_constant);
        file.params.goal_radius = num("goal_radius", file.params.goal_radius);
        file.params.radius_of_acceptance =
            num("radius_of_acceptance", file.params.radius_of_acceptance);
        file.params.collision_check_dt = num("collision_check_dt", file.params.collision_check_dt);
        file.params.seed = static_cast<std::uint64_t>(num("seed", static_cast<double>(file.params.seed)));
    }
    return file;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(path, "cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

BuiltScenario build_scenario(const ScenarioFile& file) {
    BuiltScenario built;
    built.assessment =
        encounter::classify_encounter(file.own_ship, file.target_vessel, file.d_act, file.t_act);
    built.scenario.own_ship = file.own_ship;
    built.scenario.target = file.target_vessel;
    built.scenario.domain = encounter::ShipDomain::from_length(file.target_vessel.length);
    built.scenario.region = encounter::compliant_region(
        file.own_ship, file.target_vessel, built.assessment, file.d_act, file.t_act);
    if (file.own_ship.position.distance_to(built.scenario.region.center) <
        built.scenario.region.r_min) {
        throw ScenarioError("own_ship.position",
                            "own ship start lies inside the inner circle (d_act keep-out); "
                            "move the start or reduce d_act");
    }
    return built;
}

}  // namespace searrt::scenario
