#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "courtfilter/filters.hpp"
#include "helpers.hpp"

using namespace courtfilter;
using namespace courtfilter::testing;

namespace {

const CourtGeometry kGeom;

/// Random micro-game stressing all three criteria: players hop between a
/// court spot, an FTSA spot, and the bench; speeds straddle v_min; the
/// clock occasionally skips a frame.
std::vector<Frame> random_micro_game(std::mt19937_64& rng, std::size_t max_frames) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = 50 + rng() % max_frames;
    std::vector<Frame> frames;
    std::int64_t t = 0;
    // Sticky per-player states keep runs long enough to matter.
    std::array<int, 6> zone{};   // 0 court, 1 ftsa, 2 bench
    std::array<double, 6> speed{};
    for (int p = 0; p < 6; ++p) {
        zone[p] = static_cast<int>(rng() % 3);
        speed[p] = unit(rng) * 14.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Frame frame{t, {}};
        for (int p = 0; p < 6; ++p) {
            if (unit(rng) < 0.08) zone[p] = static_cast<int>(rng() % 3);
            if (unit(rng) < 0.15) speed[p] = unit(rng) * 14.0;
            double x = -300.0 + 120.0 * p;
            double y = 200.0;
            if (zone[p] == 1) {
                x = 820.0 + 40.0 * (unit(rng) - 0.5);
                y = 40.0 * (unit(rng) - 0.5);
            } else if (zone[p] == 2) {
                y = 800.0;
            }
            frame.samples.push_back(
                sample("p" + std::to_string(p), x, y, speed[p], 0.0));
        }
        frames.push_back(std::move(frame));
        t += (unit(rng) < 0.04) ? 40 : 20;  // occasional lost frame
    }
    return frames;
}

}  // namespace

TEST_CASE("on_court_ids basics") {
    Frame frame{0, {}};
    for (int p = 0; p < 10; ++p) {
        const double y = p < 5 ? 0.0 : 900.0;  // five on court, five benched
        frame.samples.push_back(sample("p" + std::to_string(p), 0.0, y));
    }
    const auto ids = on_court_ids(frame, kGeom);
    CHECK(ids == std::vector<PlayerId>{"p0", "p1", "p2", "p3", "p4"});

    CHECK(on_court_ids(Frame{0, {}}, kGeom).empty());

    Frame boundary{0, {sample("edge", 0.0, 750.0)}};
    CHECK(on_court_ids(boundary, kGeom) == std::vector<PlayerId>{"edge"});
}

TEST_CASE("criterion_not_five marks exactly the wrong-count frames") {
    std::vector<Frame> frames;
    frames.push_back(five_player_frame(0, 10.0));
    Frame six = five_player_frame(20, 10.0);
    six.samples.push_back(sample("p6", 100.0, 100.0));
    frames.push_back(six);
    Frame four = five_player_frame(40, 10.0);
    four.samples.pop_back();
    frames.push_back(four);

    const DropMask mask = criterion_not_five(frames, kGeom);
    CHECK(mask.kept(0));
    CHECK(mask.reasons[1] == kNotFivePlayers);
    CHECK(mask.reasons[2] == kNotFivePlayers);
}

TEST_CASE("criterion_free_throw dwell thresholds") {
    // 150 frames (3.0 s) in the FTSA with T_ft = 2 s: the whole run drops.
    std::vector<Frame> frames;
    for (int i = 0; i < 150; ++i) {
        Frame frame = five_player_frame(i * 20, 10.0);
        frame.samples[0].pos_x_cm = 820.0;
        frame.samples[0].pos_y_cm = 0.0;
        frames.push_back(frame);
    }
    DropMask mask = criterion_free_throw(frames, kGeom, 2000);
    CHECK(mask.reason_count(kFreeThrowDwell) == 150);

    // 50 frames (1.0 s) is below the threshold: nothing drops.
    frames.resize(50);
    mask = criterion_free_throw(frames, kGeom, 2000);
    CHECK(mask.reason_count(kFreeThrowDwell) == 0);
}

TEST_CASE("criterion_free_throw is per player: alternating visitors never dwell") {
    std::vector<Frame> frames;
    for (int i = 0; i < 300; ++i) {
        Frame frame = five_player_frame(i * 20, 10.0);
        // A different player stands at the line every other frame.
        frame.samples[i % 2].pos_x_cm = 820.0;
        frame.samples[i % 2].pos_y_cm = 0.0;
        frames.push_back(frame);
    }
    const DropMask mask = criterion_free_throw(frames, kGeom, 100);
    CHECK(mask.reason_count(kFreeThrowDwell) == 0);
}

TEST_CASE("criterion_free_throw randomized equivalence with the window oracle") {
    std::mt19937_64 rng(201);
    for (int game = 0; game < 30; ++game) {
        const auto frames = random_micro_game(rng, 2000);
        const std::int64_t t_ft = static_cast<std::int64_t>(rng() % 3000);
        CHECK(criterion_free_throw(frames, kGeom, t_ft) == oracle_free_throw(frames, kGeom, t_ft));
    }
}

TEST_CASE("criterion_low_speed reference cases") {
    std::vector<Frame> frames;
    for (int i = 0; i < 150; ++i) frames.push_back(five_player_frame(i * 20, 2.0));
    CHECK(criterion_low_speed(frames, kGeom, 9.25, 2000).reason_count(kLowSpeedSpell) == 150);

    // One fast player defeats the all-slow predicate on every frame.
    for (Frame& frame : frames) frame.samples[2].vel_x_kmh = 12.0;
    CHECK(criterion_low_speed(frames, kGeom, 9.25, 2000).reason_count(kLowSpeedSpell) == 0);
}

TEST_CASE("criterion_low_speed edge semantics") {
    std::vector<Frame> frames;
    for (int i = 0; i < 100; ++i) frames.push_back(five_player_frame(i * 20, 2.0));

    SUBCASE("t_vel zero reduces to the per-frame predicate") {
        const DropMask mask = criterion_low_speed(frames, kGeom, 9.25, 0);
        CHECK(mask.reason_count(kLowSpeedSpell) == 100);
    }
    SUBCASE("v_min zero never fires because the comparison is strict") {
        const DropMask mask = criterion_low_speed(frames, kGeom, 0.0, 0);
        CHECK(mask.reason_count(kLowSpeedSpell) == 0);
    }
    SUBCASE("frames with a non-five count break and never join spells") {
        frames[50].samples.pop_back();
        const DropMask mask = criterion_low_speed(frames, kGeom, 9.25, 2000);
        CHECK(mask.kept(50));
        // Both sides still qualify on their own (49*20+20 = 1000 < 2000? no:
        // 50 frames -> 1000 ms < 2000 ms, so nothing fires at all).
        CHECK(mask.reason_count(kLowSpeedSpell) == 0);
        const DropMask shorter = criterion_low_speed(frames, kGeom, 9.25, 1000);
        CHECK(shorter.reason_count(kLowSpeedSpell) == 99);
    }
    SUBCASE("a clock gap splits a spell") {
        for (std::size_t i = 50; i < frames.size(); ++i) frames[i].t_ms += 20;  // 40 ms hole
        CHECK(criterion_low_speed(frames, kGeom, 9.25, 1020).reason_count(kLowSpeedSpell) == 0);
        CHECK(criterion_low_speed(frames, kGeom, 9.25, 1000).reason_count(kLowSpeedSpell) == 100);
    }
}

TEST_CASE("criterion_low_speed randomized equivalence with the window oracle") {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> vmin(0.0, 15.0);
    for (int game = 0; game < 30; ++game) {
        const auto frames = random_micro_game(rng, 2000);
        const double v = vmin(rng);
        const std::int64_t t_vel = static_cast<std::int64_t>(rng() % 3000);
        CHECK(criterion_low_speed(frames, kGeom, v, t_vel) ==
              oracle_low_speed(frames, kGeom, v, t_vel));
    }
}

TEST_CASE("filter_measurements composes the three criteria") {
    SUBCASE("clean stream is untouched") {
        std::vector<Frame> frames;
        for (int i = 0; i < 100; ++i) frames.push_back(five_player_frame(i * 20, 10.0));
        const FilterResult result = filter_measurements(frames, kGeom, FilterParams{});
        CHECK(result.xr == frames);
        CHECK(result.mask.kept_count() == 100);
    }
    SUBCASE("empty input stays empty") {
        const FilterResult result = filter_measurements({}, kGeom, FilterParams{});
        CHECK(result.xr.empty());
        CHECK(result.mask.size() == 0);
    }
    SUBCASE("overlapping violations accumulate reasons") {
        // Slow spell throughout; a sixth player appears in the middle chunk.
        std::vector<Frame> frames;
        for (int i = 0; i < 200; ++i) {
            Frame frame = five_player_frame(i * 20, 2.0);
            if (i >= 80 && i < 120) frame.samples.push_back(sample("p6", 0.0, 0.0, 2.0, 0.0));
            frames.push_back(frame);
        }
        const FilterParams params{10'000, 9.25, 500};
        const FilterResult result = filter_measurements(frames, kGeom, params);
        const DropMask not_five = criterion_not_five(frames, kGeom);
        const DropMask low_speed = criterion_low_speed(frames, kGeom, 9.25, 500);
        for (std::size_t i = 0; i < frames.size(); ++i) {
            CHECK(result.mask.reasons[i] == (not_five.reasons[i] | low_speed.reasons[i]));
        }
        CHECK(result.mask.reasons[90] == (kNotFivePlayers | kLowSpeedSpell));
    }
}

TEST_CASE("Xr is a subsequence of X in original order") {
    std::mt19937_64 rng(203);
    const auto frames = random_micro_game(rng, 1500);
    const FilterResult result = filter_measurements(frames, kGeom, FilterParams{1000, 8.0, 500});
    std::size_t cursor = 0;
    for (const Frame& kept : result.xr) {
        while (cursor < frames.size() && !(frames[cursor] == kept)) ++cursor;
        REQUIRE(cursor < frames.size());
        ++cursor;
    }
    CHECK(result.xr.size() == result.mask.kept_count());
}

TEST_CASE("monotonicity of the spell criteria in their thresholds") {
    std::mt19937_64 rng(204);
    const auto frames = random_micro_game(rng, 1200);

    const auto dropped_set = [&](const DropMask& mask, DropReason reason) {
        std::set<std::size_t> out;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (mask.reasons[i] & reason) out.insert(i);
        }
        return out;
    };

    // Raising v_min can only grow the dropped set.
    auto prev = dropped_set(criterion_low_speed(frames, kGeom, 0.0, 600), kLowSpeedSpell);
    for (double v = 2.0; v <= 16.0; v += 2.0) {
        const auto cur = dropped_set(criterion_low_speed(frames, kGeom, v, 600), kLowSpeedSpell);
        CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
    }
    // Raising t_vel can only shrink it.
    prev = dropped_set(criterion_low_speed(frames, kGeom, 8.0, 0), kLowSpeedSpell);
    for (std::int64_t t = 400; t <= 2400; t += 400) {
        const auto cur = dropped_set(criterion_low_speed(frames, kGeom, 8.0, t), kLowSpeedSpell);
        CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
        prev = cur;
    }
    // Same for t_ft.
    prev = dropped_set(criterion_free_throw(frames, kGeom, 0), kFreeThrowDwell);
    for (std::int64_t t = 300; t <= 1800; t += 300) {
        const auto cur = dropped_set(criterion_free_throw(frames, kGeom, t), kFreeThrowDwell);
        CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
        prev = cur;
    }
}

TEST_CASE("mask export round trips and matches the frames") {
    std::mt19937_64 rng(205);
    const auto frames = random_micro_game(rng, 800);
    const FilterResult result = filter_measurements(frames, kGeom, FilterParams{800, 9.0, 400});
    const std::string text = serialize_mask(frames, result.mask);
    const std::vector<MaskRow> rows = parse_mask(text);
    REQUIRE(rows.size() == frames.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].t_ms == frames[i].t_ms);
        CHECK(rows[i].reasons == result.mask.reasons[i]);
    }

    CHECK_THROWS_AS(parse_mask("t_ms,kept,reasons\n0,1,low_speed_spell\n"), ParseError);
    CHECK_THROWS_AS(parse_mask("t_ms,kept,reasons\n0,0,\n"), ParseError);
    CHECK_THROWS_AS(parse_mask("t_ms,kept,reasons\n0,0,bogus\n"), ParseError);
}

TEST_CASE("filter params validation") {
    CHECK_THROWS_AS(FilterParams{-1, 9.25, 2000}.validate(), ContractError);
    CHECK_THROWS_AS(FilterParams{0, -0.5, 2000}.validate(), ContractError);
    CHECK_THROWS_AS(FilterParams{0, 9.25, -2}.validate(), ContractError);
    CHECK_NOTHROW(FilterParams{0, 0.0, 0}.validate());
}
