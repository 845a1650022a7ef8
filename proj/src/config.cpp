#include "courtfilter/config.hpp"

#include <cmath>
#include <string>

#include "courtfilter/ingest.hpp"
#include "text_util.hpp"

namespace courtfilter {

namespace {

std::int64_t seconds_to_ms(double seconds, std::string_view source, std::size_t line) {
    if (!(seconds >= 0.0) || seconds > 9.0e15) {
        throw ParseError(std::string(source), line, "duration in seconds must be >= 0");
    }
    return static_cast<std::int64_t>(std::llround(seconds * 1000.0));
}

}  // namespace

AttackDirection parse_attack_direction(std::string_view token) {
    if (token == "+x") return AttackDirection::PlusX;
    if (token == "-x") return AttackDirection::MinusX;
    throw ParseError("attack direction must be '+x' or '-x', got '" + std::string(token) + "'");
}

std::string_view attack_direction_name(AttackDirection direction) {
    return direction == AttackDirection::PlusX ? "+x" : "-x";
}

void Config::validate() const {
    geom.validate();
    params.validate();
    if (!(transition_band_cm > 0.0)) {
        throw ContractError("config: transition_band_cm must be > 0");
    }
    grids.validate();
}

Config parse_config(std::string_view text, std::string_view source) {
    Config config;
    detail::LineReader reader(text);
    while (const auto raw = reader.next()) {
        std::string_view line = *raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) continue;

        const std::size_t n = reader.line_number();
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(std::string(source), n, "expected 'key = value'");
        }
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(std::string(source), n, "expected 'key = value'");
        }

        const auto number = [&]() -> double {
            const auto v = detail::parse_double(value);
            if (!v) {
                throw ParseError(std::string(source), n,
                                 "bad numeric value '" + std::string(value) + "'");
            }
            return *v;
        };

        if (key == "half_length_cm") {
            config.geom.half_length_cm = number();
        } else if (key == "half_width_cm") {
            config.geom.half_width_cm = number();
        } else if (key == "ftsa_center_x_cm") {
            config.geom.ftsa_center_abs_x_cm = number();
        } else if (key == "ftsa_radius_cm") {
            config.geom.ftsa_radius_cm = number();
        } else if (key == "t_ft_s") {
            config.params.t_ft_ms = seconds_to_ms(number(), source, n);
        } else if (key == "v_min_kmh") {
            config.params.v_min_kmh = number();
        } else if (key == "t_vel_s") {
            config.params.t_vel_ms = seconds_to_ms(number(), source, n);
        } else if (key == "transition_band_cm") {
            config.transition_band_cm = number();
        } else if (key == "attack_direction_p1") {
            config.attack_direction[0] = parse_attack_direction(value);
        } else if (key == "attack_direction_p2") {
            config.attack_direction[1] = parse_attack_direction(value);
        } else if (key == "attack_direction_p3") {
            config.attack_direction[2] = parse_attack_direction(value);
        } else if (key == "attack_direction_p4") {
            config.attack_direction[3] = parse_attack_direction(value);
        } else if (key == "grid_vmin_min") {
            config.grids.vmin_min_kmh = number();
        } else if (key == "grid_vmin_max") {
            config.grids.vmin_max_kmh = number();
        } else if (key == "grid_vmin_step") {
            config.grids.vmin_step_kmh = number();
        } else if (key == "grid_tvel_min") {
            config.grids.tvel_min_ms = seconds_to_ms(number(), source, n);
        } else if (key == "grid_tvel_max") {
            config.grids.tvel_max_ms = seconds_to_ms(number(), source, n);
        } else if (key == "grid_tvel_step") {
            config.grids.tvel_step_ms = seconds_to_ms(number(), source, n);
        } else {
            throw ParseError(std::string(source), n, "unknown key '" + std::string(key) + "'");
        }
    }

    try {
        config.validate();
    } catch (const ContractError& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
    return config;
}

Config load_config(const std::string& path) { return parse_config(read_file(path), path); }

}  // namespace courtfilter
