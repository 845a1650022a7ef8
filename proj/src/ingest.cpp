#include "courtfilter/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "text_util.hpp"

namespace courtfilter {

using detail::LineReader;
using detail::parse_double;
using detail::parse_int;
using detail::split;

namespace {

constexpr std::string_view kTrackingHeader = "t_ms,player_id,pos_x_cm,pos_y_cm,vel_x_kmh,vel_y_kmh";
constexpr std::string_view kActivityHeader = "action,sec,active,timeout,ft,quarter,half";
constexpr std::string_view kPossessionHeader = "action,sec,off";

void expect_header(LineReader& reader, std::string_view expected, std::string_view source) {
    const auto line = reader.next();
    if (!line || *line != expected) {
        throw ParseError(std::string(source), reader.line_number(),
                         "expected header '" + std::string(expected) + "'");
    }
}

bool parse_flag(std::string_view field, std::string_view source, std::size_t line,
                std::string_view column) {
    if (field == "0") return false;
    if (field == "1") return true;
    throw ParseError(std::string(source), line,
                     "column '" + std::string(column) + "' must be 0 or 1, got '" +
                         std::string(field) + "'");
}

}  // namespace

InactivityReason ActivityReportRow::reason() const {
    if (timeout) return InactivityReason::Timeout;
    if (ft) return InactivityReason::FreeThrow;
    if (quarter) return InactivityReason::Quarter;
    if (half) return InactivityReason::Half;
    return InactivityReason::Generic;
}

std::vector<Frame> parse_tracking(std::string_view text, std::string_view source) {
    LineReader reader(text);
    expect_header(reader, kTrackingHeader, source);

    std::vector<Frame> frames;
    while (const auto line = reader.next()) {
        if (line->empty()) {
            throw ParseError(std::string(source), reader.line_number(), "empty line");
        }
        const auto fields = split(*line, ',');
        if (fields.size() != 6) {
            throw ParseError(std::string(source), reader.line_number(),
                             "expected 6 fields, got " + std::to_string(fields.size()));
        }
        const auto t = parse_int(fields[0]);
        if (!t || *t < 0) {
            throw ParseError(std::string(source), reader.line_number(),
                             "bad t_ms '" + std::string(fields[0]) + "'");
        }
        if (fields[1].empty()) {
            throw ParseError(std::string(source), reader.line_number(), "empty player_id");
        }
        double values[4];
        static constexpr const char* kNames[4] = {"pos_x_cm", "pos_y_cm", "vel_x_kmh", "vel_y_kmh"};
        for (int i = 0; i < 4; ++i) {
            const auto v = parse_double(fields[i + 2]);
            if (!v) {
                throw ParseError(std::string(source), reader.line_number(),
                                 "bad " + std::string(kNames[i]) + " '" + std::string(fields[i + 2]) +
                                     "'");
            }
            values[i] = *v;
        }

        if (frames.empty() || frames.back().t_ms != *t) {
            if (!frames.empty() && *t < frames.back().t_ms) {
                throw ParseError(std::string(source), reader.line_number(),
                                 "t_ms " + std::to_string(*t) + " is out of order (previous frame at " +
                                     std::to_string(frames.back().t_ms) + ")");
            }
            frames.push_back(Frame{*t, {}});
        }
        Frame& frame = frames.back();
        for (const PlayerSample& s : frame.samples) {
            if (s.player_id == fields[1]) {
                throw ParseError(std::string(source), reader.line_number(),
                                 "duplicate record for player '" + std::string(fields[1]) +
                                     "' at t_ms " + std::to_string(*t));
            }
        }
        frame.samples.push_back(
            PlayerSample{PlayerId(fields[1]), values[0], values[1], values[2], values[3]});
    }
    return frames;
}

std::string serialize_tracking(std::span<const Frame> frames) {
    std::string out(kTrackingHeader);
    out.push_back('\n');
    for (const Frame& frame : frames) {
        for (const PlayerSample& s : frame.samples) {
            out += std::to_string(frame.t_ms);
            out.push_back(',');
            out += s.player_id;
            out.push_back(',');
            out += detail::format_double(s.pos_x_cm);
            out.push_back(',');
            out += detail::format_double(s.pos_y_cm);
            out.push_back(',');
            out += detail::format_double(s.vel_x_kmh);
            out.push_back(',');
            out += detail::format_double(s.vel_y_kmh);
            out.push_back('\n');
        }
    }
    return out;
}

std::vector<ActivityReportRow> parse_activity_report(std::string_view text,
                                                     std::string_view source) {
    LineReader reader(text);
    expect_header(reader, kActivityHeader, source);

    std::vector<ActivityReportRow> rows;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = split(*line, ',');
        if (fields.size() != 7) {
            throw ParseError(std::string(source), n,
                             "expected 7 fields, got " + std::to_string(fields.size()));
        }
        ActivityReportRow row;
        if (fields[0] == "play") {
            row.action = ActivityAction::Play;
        } else if (fields[0] == "stop") {
            row.action = ActivityAction::Stop;
        } else {
            throw ParseError(std::string(source), n,
                             "action must be 'play' or 'stop', got '" + std::string(fields[0]) + "'");
        }
        const auto sec = parse_int(fields[1]);
        if (!sec || *sec < 1) {
            throw ParseError(std::string(source), n, "sec must be a positive integer");
        }
        row.sec = *sec;
        row.active = parse_flag(fields[2], source, n, "active");
        row.timeout = parse_flag(fields[3], source, n, "timeout");
        row.ft = parse_flag(fields[4], source, n, "ft");
        row.quarter = parse_flag(fields[5], source, n, "quarter");
        row.half = parse_flag(fields[6], source, n, "half");

        if (row.active != (row.action == ActivityAction::Play)) {
            throw ParseError(std::string(source), n,
                             "rule violated: active must be 1 on play rows and 0 on stop rows");
        }
        if (int(row.timeout) + int(row.ft) + int(row.quarter) + int(row.half) > 1) {
            throw ParseError(std::string(source), n,
                             "rule violated: at most one of timeout/ft/quarter/half may be 1");
        }
        if (!rows.empty()) {
            if (row.sec <= rows.back().sec) {
                throw ParseError(std::string(source), n,
                                 "rule violated: sec must be strictly increasing");
            }
            if (row.action == rows.back().action) {
                throw ParseError(std::string(source), n,
                                 "rule violated: action must alternate between play and stop");
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::string serialize_activity_report(std::span<const ActivityReportRow> rows) {
    std::string out(kActivityHeader);
    out.push_back('\n');
    for (const ActivityReportRow& row : rows) {
        out += row.action == ActivityAction::Play ? "play" : "stop";
        out.push_back(',');
        out += std::to_string(row.sec);
        for (const bool flag : {row.active, row.timeout, row.ft, row.quarter, row.half}) {
            out.push_back(',');
            out.push_back(flag ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<PossessionReportRow> parse_possession_report(std::string_view text,
                                                         std::string_view source) {
    LineReader reader(text);
    expect_header(reader, kPossessionHeader, source);

    std::vector<PossessionReportRow> rows;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = split(*line, ',');
        if (fields.size() != 3) {
            throw ParseError(std::string(source), n,
                             "expected 3 fields, got " + std::to_string(fields.size()));
        }
        PossessionReportRow row;
        if (fields[0] == "off") {
            row.action = PossessionSide::Off;
        } else if (fields[0] == "def") {
            row.action = PossessionSide::Def;
        } else {
            throw ParseError(std::string(source), n,
                             "action must be 'off' or 'def', got '" + std::string(fields[0]) + "'");
        }
        const auto sec = parse_int(fields[1]);
        if (!sec || *sec < 1) {
            throw ParseError(std::string(source), n, "sec must be a positive integer");
        }
        row.sec = *sec;
        const bool off = parse_flag(fields[2], source, n, "off");
        if (off != row.off()) {
            throw ParseError(std::string(source), n,
                             "rule violated: off must be 1 exactly on off rows");
        }
        if (!rows.empty()) {
            if (row.sec <= rows.back().sec) {
                throw ParseError(std::string(source), n,
                                 "rule violated: sec must be strictly increasing");
            }
            if (row.action == rows.back().action) {
                throw ParseError(std::string(source), n,
                                 "rule violated: action must alternate between off and def");
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::string serialize_possession_report(std::span<const PossessionReportRow> rows) {
    std::string out(kPossessionHeader);
    out.push_back('\n');
    for (const PossessionReportRow& row : rows) {
        out += row.off() ? "off" : "def";
        out.push_back(',');
        out += std::to_string(row.sec);
        out.push_back(',');
        out.push_back(row.off() ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + path + "'");
}

}  // namespace courtfilter
