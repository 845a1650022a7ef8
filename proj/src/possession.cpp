#include "courtfilter/possession.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace courtfilter {

Orientation Orientation::constant(AttackDirection direction) {
    Orientation o;
    o.directions_ = {direction};
    return o;
}

Orientation Orientation::from_periods(std::span<const AttackDirection> directions,
                                      std::span<const std::int64_t> period_start_ms) {
    if (directions.empty()) throw ContractError("orientation: need at least one period");
    if (period_start_ms.size() + 1 != directions.size()) {
        throw ContractError("orientation: need one start time per period after the first");
    }
    for (std::size_t i = 1; i < period_start_ms.size(); ++i) {
        if (period_start_ms[i] <= period_start_ms[i - 1]) {
            throw ContractError("orientation: period start times must be strictly increasing");
        }
    }
    Orientation o;
    o.starts_.assign(period_start_ms.begin(), period_start_ms.end());
    o.directions_.assign(directions.begin(), directions.end());
    return o;
}

AttackDirection Orientation::at(std::int64_t t_ms) const {
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), t_ms);
    return directions_[static_cast<std::size_t>(it - starts_.begin())];
}

double mean_x(const Frame& frame, const CourtGeometry& geom) {
    double sum = 0.0;
    int on_court = 0;
    for (const PlayerSample& s : frame.samples) {
        if (in_court(s.pos_x_cm, s.pos_y_cm, geom)) {
            sum += s.pos_x_cm;
            ++on_court;
        }
    }
    if (on_court != 5) {
        throw ContractError("mean_x: expected 5 on-court players, found " +
                            std::to_string(on_court) + " at t_ms " + std::to_string(frame.t_ms));
    }
    return sum / 5.0;
}

Poss classify_poss(double mean_x_cm, AttackDirection orientation, double band_cm) {
    if (!(band_cm > 0.0)) throw ContractError("classify_poss: band_cm must be > 0");
    const double towards_attack =
        orientation == AttackDirection::PlusX ? mean_x_cm : -mean_x_cm;
    if (towards_attack > band_cm) return Poss::Offensive;
    if (towards_attack < -band_cm) return Poss::Defensive;
    return Poss::Transition;
}

std::vector<std::int64_t> assign_ord(std::span<const Poss> poss) {
    if (poss.empty()) throw ContractError("assign_ord: empty possession sequence");
    std::vector<std::int64_t> ord(poss.size());
    std::int64_t current = 1;
    ord[0] = current;
    for (std::size_t i = 1; i < poss.size(); ++i) {
        if (poss[i - 1] == Poss::Transition && poss[i] != Poss::Transition) ++current;
        ord[i] = current;
    }
    return ord;
}

LabelResult label_possessions(std::span<const Frame> xr, const CourtGeometry& geom,
                              const Orientation& orientation, double band_cm) {
    LabelResult result;
    if (xr.empty()) return result;

    result.frames.reserve(xr.size());
    std::vector<Poss> poss(xr.size());
    for (std::size_t i = 0; i < xr.size(); ++i) {
        const double mean = mean_x(xr[i], geom);
        poss[i] = classify_poss(mean, orientation.at(xr[i].t_ms), band_cm);
        result.frames.push_back(LabeledFrame{xr[i].t_ms, mean, poss[i], 1});
    }
    const std::vector<std::int64_t> ord = assign_ord(poss);
    for (std::size_t i = 0; i < xr.size(); ++i) result.frames[i].ord = ord[i];
    result.possession_count = ord.back();

    for (std::size_t i = 1; i < poss.size(); ++i) {
        const bool flip = (poss[i - 1] == Poss::Offensive && poss[i] == Poss::Defensive) ||
                          (poss[i - 1] == Poss::Defensive && poss[i] == Poss::Offensive);
        if (flip) ++result.direct_flips;
    }
    return result;
}

std::string_view poss_name(Poss poss) {
    switch (poss) {
        case Poss::Offensive: return "offensive";
        case Poss::Defensive: return "defensive";
        case Poss::Transition: return "transition";
    }
    return "transition";
}

namespace {
constexpr std::string_view kLabelsHeader = "t_ms,mean_x_cm,poss,ord";
}

std::string serialize_labels(std::span<const LabeledFrame> frames) {
    std::string out(kLabelsHeader);
    out.push_back('\n');
    for (const LabeledFrame& f : frames) {
        out += std::to_string(f.t_ms);
        out.push_back(',');
        out += detail::format_double(f.mean_x_cm);
        out.push_back(',');
        out += poss_name(f.poss);
        out.push_back(',');
        out += std::to_string(f.ord);
        out.push_back('\n');
    }
    return out;
}

std::vector<LabeledFrame> parse_labels(std::string_view text, std::string_view source) {
    detail::LineReader reader(text);
    {
        const auto line = reader.next();
        if (!line || *line != kLabelsHeader) {
            throw ParseError(std::string(source), reader.line_number(),
                             "expected header '" + std::string(kLabelsHeader) + "'");
        }
    }
    std::vector<LabeledFrame> frames;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = detail::split(*line, ',');
        if (fields.size() != 4) {
            throw ParseError(std::string(source), n,
                             "expected 4 fields, got " + std::to_string(fields.size()));
        }
        LabeledFrame f;
        const auto t = detail::parse_int(fields[0]);
        if (!t || *t < 0) throw ParseError(std::string(source), n, "bad t_ms");
        f.t_ms = *t;
        if (!frames.empty() && f.t_ms <= frames.back().t_ms) {
            throw ParseError(std::string(source), n, "t_ms must be strictly increasing");
        }
        const auto mean = detail::parse_double(fields[1]);
        if (!mean) throw ParseError(std::string(source), n, "bad mean_x_cm");
        f.mean_x_cm = *mean;
        if (fields[2] == "offensive") {
            f.poss = Poss::Offensive;
        } else if (fields[2] == "defensive") {
            f.poss = Poss::Defensive;
        } else if (fields[2] == "transition") {
            f.poss = Poss::Transition;
        } else {
            throw ParseError(std::string(source), n, "unknown poss '" + std::string(fields[2]) + "'");
        }
        const auto ord = detail::parse_int(fields[3]);
        if (!ord || *ord < 1) throw ParseError(std::string(source), n, "bad ord");
        f.ord = *ord;
        frames.push_back(f);
    }
    return frames;
}

}  // namespace courtfilter
