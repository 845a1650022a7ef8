#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "courtfilter/config.hpp"
#include "courtfilter/ingest.hpp"

using namespace courtfilter;

namespace {

const std::string kTrackingHeader = "t_ms,player_id,pos_x_cm,pos_y_cm,vel_x_kmh,vel_y_kmh\n";

}  // namespace

TEST_CASE("parse_tracking maps fields and groups by t") {
    const auto frames = parse_tracking(kTrackingHeader + "0,7,123.0,-45.5,3.0,4.0\n");
    REQUIRE(frames.size() == 1);
    REQUIRE(frames[0].samples.size() == 1);
    CHECK(frames[0].t_ms == 0);
    const PlayerSample& s = frames[0].samples[0];
    CHECK(s.player_id == "7");
    CHECK(s.pos_x_cm == 123.0);
    CHECK(s.pos_y_cm == -45.5);
    CHECK(s.vel_x_kmh == 3.0);
    CHECK(s.vel_y_kmh == 4.0);
}

TEST_CASE("parse_tracking header-only input is empty") {
    CHECK(parse_tracking(kTrackingHeader).empty());
}

TEST_CASE("parse_tracking groups two records sharing t") {
    const auto frames =
        parse_tracking(kTrackingHeader + "20,1,0,0,0,0\n20,2,1,1,0,0\n40,1,0,0,0,0\n");
    REQUIRE(frames.size() == 2);
    CHECK(frames[0].t_ms == 20);
    CHECK(frames[0].samples.size() == 2);
    CHECK(frames[1].samples.size() == 1);
}

TEST_CASE("parse_tracking error paths carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_tracking(kTrackingHeader + "0,1,abc,0,0,0\n", "in.csv"),
                         doctest::Contains("in.csv:2"), ParseError);
    CHECK_THROWS_WITH_AS(parse_tracking(kTrackingHeader + "0,1,0,0,0\n", "in.csv"),
                         doctest::Contains("expected 6 fields"), ParseError);
    // duplicate (t, player_id)
    CHECK_THROWS_WITH_AS(parse_tracking(kTrackingHeader + "0,1,0,0,0,0\n0,1,1,1,0,0\n", "in.csv"),
                         doctest::Contains("duplicate"), ParseError);
    // time running backwards
    CHECK_THROWS_WITH_AS(parse_tracking(kTrackingHeader + "20,1,0,0,0,0\n0,1,0,0,0,0\n", "in.csv"),
                         doctest::Contains("out of order"), ParseError);
    // wrong header
    CHECK_THROWS_AS(parse_tracking("t,player,x,y,vx,vy\n0,1,0,0,0,0\n"), ParseError);
}

TEST_CASE("parse_tracking accepts CRLF") {
    const auto frames = parse_tracking(
        "t_ms,player_id,pos_x_cm,pos_y_cm,vel_x_kmh,vel_y_kmh\r\n0,1,2.5,0,0,0\r\n");
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].samples[0].pos_x_cm == 2.5);
}

TEST_CASE("activity report: reference rows") {
    const auto rows = parse_activity_report(
        "action,sec,active,timeout,ft,quarter,half\n"
        "play,1,1,0,0,0,0\n"
        "stop,5,0,0,0,0,0\n"
        "play,13,1,0,0,0,0\n"
        "stop,47,0,0,1,0,0\n");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].action == ActivityAction::Play);
    CHECK(rows[0].sec == 1);
    CHECK(rows[0].active);
    CHECK(rows[3].action == ActivityAction::Stop);
    CHECK(rows[3].sec == 47);
    CHECK(rows[3].ft);
    CHECK(rows[3].reason() == InactivityReason::FreeThrow);
}

TEST_CASE("activity report: rule violations") {
    const std::string header = "action,sec,active,timeout,ft,quarter,half\n";
    // alternation
    CHECK_THROWS_WITH_AS(
        parse_activity_report(header + "stop,5,0,0,0,0,0\nstop,6,0,0,0,0,0\n"),
        doctest::Contains("alternate"), ParseError);
    // sec not increasing
    CHECK_THROWS_WITH_AS(
        parse_activity_report(header + "play,5,1,0,0,0,0\nstop,5,0,0,0,0,0\n"),
        doctest::Contains("strictly increasing"), ParseError);
    // two reason flags at once
    CHECK_THROWS_WITH_AS(parse_activity_report(header + "stop,5,0,1,1,0,0\n"),
                         doctest::Contains("at most one"), ParseError);
    // active contradicting action
    CHECK_THROWS_WITH_AS(parse_activity_report(header + "play,1,0,0,0,0,0\n"),
                         doctest::Contains("active"), ParseError);
    CHECK_THROWS_AS(parse_activity_report(header + "pause,1,1,0,0,0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_activity_report(header + "play,0,1,0,0,0,0\n"), ParseError);
}

TEST_CASE("possession report: reference rows and violations") {
    const auto rows = parse_possession_report("action,sec,off\noff,1,1\ndef,32,0\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].action == PossessionSide::Off);
    CHECK(rows[0].sec == 1);
    CHECK(rows[0].off());
    CHECK(rows[1].action == PossessionSide::Def);
    CHECK(rows[1].sec == 32);

    // off column must mirror the action
    CHECK_THROWS_WITH_AS(parse_possession_report("action,sec,off\noff,10,0\n"),
                         doctest::Contains("off must be 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse_possession_report("action,sec,off\noff,1,1\noff,2,1\n"),
                         doctest::Contains("alternate"), ParseError);
}

TEST_CASE("config defaults and overrides") {
    const Config defaults = parse_config("");
    CHECK(defaults.params.v_min_kmh == 9.25);
    CHECK(defaults.params.t_vel_ms == 2000);
    CHECK(defaults.params.t_ft_ms == 10000);
    CHECK(defaults.transition_band_cm == 400.0);
    CHECK(defaults.geom.half_length_cm == 1400.0);
    CHECK(defaults.grids.vmin_min_kmh == 0.0);
    CHECK(defaults.grids.vmin_max_kmh == 20.0);
    CHECK(defaults.grids.vmin_step_kmh == 0.25);
    CHECK(defaults.grids.tvel_max_ms == 20000);
    CHECK(defaults.grids.tvel_step_ms == 1000);
    CHECK(defaults.attack_direction[0] == AttackDirection::PlusX);
    CHECK(defaults.attack_direction[2] == AttackDirection::MinusX);

    const Config config = parse_config(
        "# comment\n"
        "t_vel_s = 2\n"
        "v_min_kmh = 7.5   # inline comment\n"
        "attack_direction_p1 = -x\n"
        "grid_tvel_step = 0.5\n");
    CHECK(config.params.t_vel_ms == 2000);
    CHECK(config.params.v_min_kmh == 7.5);
    CHECK(config.attack_direction[0] == AttackDirection::MinusX);
    CHECK(config.grids.tvel_step_ms == 500);
}

TEST_CASE("config rejects bad input") {
    CHECK_THROWS_AS(parse_config("v_min_kmh = -1\n"), ParseError);
    CHECK_THROWS_AS(parse_config("unknown_key = 3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("v_min_kmh = fast\n"), ParseError);
    CHECK_THROWS_AS(parse_config("v_min_kmh\n"), ParseError);
    CHECK_THROWS_AS(parse_config("grid_vmin_step = 0\n"), ParseError);
    CHECK_THROWS_AS(parse_config("ftsa_radius_cm = 900\n"), ParseError);
}

TEST_CASE("round trip: serialize then parse is identity") {
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> coord(-1500.0, 1500.0);
    std::uniform_int_distribution<int> players(0, 8);

    std::vector<Frame> frames;
    std::int64_t t = 0;
    for (int f = 0; f < 200; ++f) {
        Frame frame{t, {}};
        const int n = players(rng);
        for (int p = 0; p < n; ++p) {
            frame.samples.push_back(PlayerSample{"id" + std::to_string(p), coord(rng), coord(rng),
                                                 coord(rng) / 100.0, coord(rng) / 100.0});
        }
        frames.push_back(std::move(frame));
        t += 20 * (1 + (rng() % 3 == 0 ? 1 : 0));  // occasional gaps
    }
    CHECK(parse_tracking(serialize_tracking(frames)) == frames);

    std::vector<ActivityReportRow> activity;
    std::int64_t sec = 1;
    bool play = true;
    for (int i = 0; i < 40; ++i) {
        ActivityReportRow row;
        row.action = play ? ActivityAction::Play : ActivityAction::Stop;
        row.active = play;
        row.sec = sec;
        if (!play) {
            const int reason = static_cast<int>(rng() % 5);
            row.timeout = reason == 1;
            row.ft = reason == 2;
            row.quarter = reason == 3;
            row.half = reason == 4;
        }
        activity.push_back(row);
        sec += 1 + static_cast<std::int64_t>(rng() % 30);
        play = !play;
    }
    CHECK(parse_activity_report(serialize_activity_report(activity)) == activity);

    std::vector<PossessionReportRow> possession;
    sec = 1;
    PossessionSide side = PossessionSide::Off;
    for (int i = 0; i < 40; ++i) {
        possession.push_back(PossessionReportRow{side, sec});
        sec += 1 + static_cast<std::int64_t>(rng() % 40);
        side = side == PossessionSide::Off ? PossessionSide::Def : PossessionSide::Off;
    }
    CHECK(parse_possession_report(serialize_possession_report(possession)) == possession);
}

TEST_CASE("frame count equals distinct t values") {
    std::mt19937_64 rng(105);
    std::string text = kTrackingHeader;
    std::int64_t t = 0;
    int distinct = 0;
    for (int f = 0; f < 100; ++f) {
        const int n = 1 + static_cast<int>(rng() % 4);
        ++distinct;
        for (int p = 0; p < n; ++p) {
            text += std::to_string(t) + "," + std::to_string(p) + ",0,0,0,0\n";
        }
        t += 20;
    }
    CHECK(parse_tracking(text).size() == static_cast<std::size_t>(distinct));
}
