#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "courtfilter/config.hpp"
#include "courtfilter/core_model.hpp"
#include "courtfilter/filters.hpp"
#include "courtfilter/ingest.hpp"
#include "courtfilter/possession.hpp"
#include "courtfilter/synth.hpp"
#include "courtfilter/timeline.hpp"
#include "courtfilter/tuning.hpp"

namespace py = pybind11;
using namespace courtfilter;

namespace {

std::vector<std::string> reason_names(std::uint8_t reasons) {
    std::vector<std::string> names;
    if (reasons & kNotFivePlayers) names.emplace_back("not_five_players");
    if (reasons & kFreeThrowDwell) names.emplace_back("free_throw_dwell");
    if (reasons & kLowSpeedSpell) names.emplace_back("low_speed_spell");
    return names;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Batch toolkit for 50 Hz basketball tracking streams: drops inactive "
              "periods, labels possessions, and tunes the kinematic thresholds "
              "against annotated ground truth.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<TuningError>(m, "TuningError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);

    m.attr("NOMINAL_PERIOD_MS") = kNominalPeriodMs;

    // Core model ------------------------------------------------------
    py::class_<PlayerSample>(m, "PlayerSample")
        .def(py::init<PlayerId, double, double, double, double>(), py::arg("player_id"),
             py::arg("pos_x_cm"), py::arg("pos_y_cm"), py::arg("vel_x_kmh"), py::arg("vel_y_kmh"))
        .def_readwrite("player_id", &PlayerSample::player_id)
        .def_readwrite("pos_x_cm", &PlayerSample::pos_x_cm)
        .def_readwrite("pos_y_cm", &PlayerSample::pos_y_cm)
        .def_readwrite("vel_x_kmh", &PlayerSample::vel_x_kmh)
        .def_readwrite("vel_y_kmh", &PlayerSample::vel_y_kmh)
        .def("__eq__", [](const PlayerSample& a, const PlayerSample& b) { return a == b; });

    py::class_<Frame>(m, "Frame")
        .def(py::init<std::int64_t, std::vector<PlayerSample>>(), py::arg("t_ms"),
             py::arg("samples"))
        .def_readwrite("t_ms", &Frame::t_ms)
        .def_readwrite("samples", &Frame::samples);

    py::class_<CourtGeometry>(m, "CourtGeometry")
        .def(py::init<>())
        .def_readwrite("half_length_cm", &CourtGeometry::half_length_cm)
        .def_readwrite("half_width_cm", &CourtGeometry::half_width_cm)
        .def_readwrite("ftsa_center_abs_x_cm", &CourtGeometry::ftsa_center_abs_x_cm)
        .def_readwrite("ftsa_radius_cm", &CourtGeometry::ftsa_radius_cm)
        .def("validate", &CourtGeometry::validate);

    m.def("planar_speed", &planar_speed, py::arg("vel_x_kmh"), py::arg("vel_y_kmh"));
    m.def("in_court", &in_court, py::arg("pos_x_cm"), py::arg("pos_y_cm"), py::arg("geom"));
    m.def("in_ftsa", &in_ftsa, py::arg("pos_x_cm"), py::arg("pos_y_cm"), py::arg("geom"));

    // Ingest ----------------------------------------------------------
    py::enum_<ActivityAction>(m, "ActivityAction")
        .value("PLAY", ActivityAction::Play)
        .value("STOP", ActivityAction::Stop);
    py::enum_<PossessionSide>(m, "PossessionSide")
        .value("OFF", PossessionSide::Off)
        .value("DEF", PossessionSide::Def);

    py::class_<ActivityReportRow>(m, "ActivityReportRow")
        .def(py::init<>())
        .def_readwrite("action", &ActivityReportRow::action)
        .def_readwrite("sec", &ActivityReportRow::sec)
        .def_readwrite("active", &ActivityReportRow::active)
        .def_readwrite("timeout", &ActivityReportRow::timeout)
        .def_readwrite("ft", &ActivityReportRow::ft)
        .def_readwrite("quarter", &ActivityReportRow::quarter)
        .def_readwrite("half", &ActivityReportRow::half);

    py::class_<PossessionReportRow>(m, "PossessionReportRow")
        .def(py::init<>())
        .def_readwrite("action", &PossessionReportRow::action)
        .def_readwrite("sec", &PossessionReportRow::sec)
        .def_property_readonly("off", &PossessionReportRow::off);

    m.def("parse_tracking",
          [](const std::string& text) { return parse_tracking(text); }, py::arg("text"));
    m.def("serialize_tracking",
          [](const std::vector<Frame>& frames) { return serialize_tracking(frames); },
          py::arg("frames"));
    m.def("parse_activity_report",
          [](const std::string& text) { return parse_activity_report(text); }, py::arg("text"));
    m.def("serialize_activity_report",
          [](const std::vector<ActivityReportRow>& rows) {
              return serialize_activity_report(rows);
          },
          py::arg("rows"));
    m.def("parse_possession_report",
          [](const std::string& text) { return parse_possession_report(text); }, py::arg("text"));
    m.def("serialize_possession_report",
          [](const std::vector<PossessionReportRow>& rows) {
              return serialize_possession_report(rows);
          },
          py::arg("rows"));

    // Config ----------------------------------------------------------
    py::enum_<AttackDirection>(m, "AttackDirection")
        .value("PLUS_X", AttackDirection::PlusX)
        .value("MINUS_X", AttackDirection::MinusX);

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_readwrite("geom", &Config::geom)
        .def_readwrite("params", &Config::params)
        .def_readwrite("transition_band_cm", &Config::transition_band_cm)
        .def_readwrite("attack_direction", &Config::attack_direction)
        .def_readwrite("grids", &Config::grids)
        .def("validate", &Config::validate);
    m.def("parse_config", [](const std::string& text) { return parse_config(text); },
          py::arg("text"));

    // Filters ---------------------------------------------------------
    py::class_<FilterParams>(m, "FilterParams")
        .def(py::init<>())
        .def(py::init([](std::int64_t t_ft_ms, double v_min_kmh, std::int64_t t_vel_ms) {
                 return FilterParams{t_ft_ms, v_min_kmh, t_vel_ms};
             }),
             py::arg("t_ft_ms"), py::arg("v_min_kmh"), py::arg("t_vel_ms"))
        .def_readwrite("t_ft_ms", &FilterParams::t_ft_ms)
        .def_readwrite("v_min_kmh", &FilterParams::v_min_kmh)
        .def_readwrite("t_vel_ms", &FilterParams::t_vel_ms)
        .def("validate", &FilterParams::validate);

    py::class_<DropMask>(m, "DropMask")
        .def("__len__", &DropMask::size)
        .def("kept", &DropMask::kept, py::arg("index"))
        .def("kept_count", &DropMask::kept_count)
        .def("reasons",
             [](const DropMask& mask, std::size_t index) {
                 if (index >= mask.size()) throw py::index_error();
                 return reason_names(mask.reasons[index]);
             },
             py::arg("index"));

    py::class_<FilterResult>(m, "FilterResult")
        .def_readonly("xr", &FilterResult::xr)
        .def_readonly("mask", &FilterResult::mask);

    m.def("on_court_ids",
          [](const Frame& frame, const CourtGeometry& geom) { return on_court_ids(frame, geom); },
          py::arg("frame"), py::arg("geom"));
    m.def("criterion_not_five",
          [](const std::vector<Frame>& frames, const CourtGeometry& geom) {
              return criterion_not_five(frames, geom);
          },
          py::arg("frames"), py::arg("geom"));
    m.def("criterion_free_throw",
          [](const std::vector<Frame>& frames, const CourtGeometry& geom, std::int64_t t_ft_ms) {
              return criterion_free_throw(frames, geom, t_ft_ms);
          },
          py::arg("frames"), py::arg("geom"), py::arg("t_ft_ms"));
    m.def("criterion_low_speed",
          [](const std::vector<Frame>& frames, const CourtGeometry& geom, double v_min_kmh,
             std::int64_t t_vel_ms) {
              return criterion_low_speed(frames, geom, v_min_kmh, t_vel_ms);
          },
          py::arg("frames"), py::arg("geom"), py::arg("v_min_kmh"), py::arg("t_vel_ms"));
    m.def("filter_measurements",
          [](const std::vector<Frame>& frames, const CourtGeometry& geom,
             const FilterParams& params) { return filter_measurements(frames, geom, params); },
          py::arg("frames"), py::arg("geom"), py::arg("params"));

    // Possession ------------------------------------------------------
    py::enum_<Poss>(m, "Poss")
        .value("OFFENSIVE", Poss::Offensive)
        .value("DEFENSIVE", Poss::Defensive)
        .value("TRANSITION", Poss::Transition);

    py::class_<Orientation>(m, "Orientation")
        .def_static("constant", &Orientation::constant, py::arg("direction"))
        .def_static("from_periods",
                    [](const std::vector<AttackDirection>& directions,
                       const std::vector<std::int64_t>& period_start_ms) {
                        return Orientation::from_periods(directions, period_start_ms);
                    },
                    py::arg("directions"), py::arg("period_start_ms"))
        .def("at", &Orientation::at, py::arg("t_ms"));

    py::class_<LabeledFrame>(m, "LabeledFrame")
        .def_readonly("t_ms", &LabeledFrame::t_ms)
        .def_readonly("mean_x_cm", &LabeledFrame::mean_x_cm)
        .def_readonly("poss", &LabeledFrame::poss)
        .def_readonly("ord", &LabeledFrame::ord);

    py::class_<LabelResult>(m, "LabelResult")
        .def_readonly("frames", &LabelResult::frames)
        .def_readonly("possession_count", &LabelResult::possession_count)
        .def_readonly("direct_flips", &LabelResult::direct_flips);

    m.def("mean_x", &mean_x, py::arg("frame"), py::arg("geom"));
    m.def("classify_poss", &classify_poss, py::arg("mean_x_cm"), py::arg("orientation"),
          py::arg("band_cm"));
    m.def("assign_ord",
          [](const std::vector<Poss>& poss) { return assign_ord(poss); }, py::arg("poss"));
    m.def("label_possessions",
          [](const std::vector<Frame>& xr, const CourtGeometry& geom,
             const Orientation& orientation, double band_cm) {
              return label_possessions(xr, geom, orientation, band_cm);
          },
          py::arg("xr"), py::arg("geom"), py::arg("orientation"), py::arg("band_cm"));
    m.def("serialize_labels",
          [](const std::vector<LabeledFrame>& frames) { return serialize_labels(frames); },
          py::arg("frames"));
    m.def("parse_labels", [](const std::string& text) { return parse_labels(text); },
          py::arg("text"));

    // Timelines -------------------------------------------------------
    py::enum_<TimelineReason>(m, "TimelineReason")
        .value("NONE", TimelineReason::None)
        .value("GENERIC", TimelineReason::Generic)
        .value("TIMEOUT", TimelineReason::Timeout)
        .value("FREE_THROW", TimelineReason::FreeThrow)
        .value("QUARTER", TimelineReason::Quarter)
        .value("HALF", TimelineReason::Half);
    py::enum_<MajorityPoss>(m, "MajorityPoss")
        .value("OFF", MajorityPoss::Off)
        .value("DEF", MajorityPoss::Def)
        .value("TRANSITION", MajorityPoss::Transition)
        .value("NONE", MajorityPoss::None);

    py::class_<ActivityTimeline>(m, "ActivityTimeline")
        .def_property_readonly("duration_s", &ActivityTimeline::duration_s)
        .def("is_active", &ActivityTimeline::is_active, py::arg("sec"))
        .def_property_readonly("reasons",
                               [](const ActivityTimeline& t) { return t.reason; });

    py::class_<PossessionTimeline>(m, "PossessionTimeline")
        .def_property_readonly("duration_s", &PossessionTimeline::duration_s)
        .def_property_readonly("side", [](const PossessionTimeline& t) { return t.side; });

    py::class_<PredictionTimeline>(m, "PredictionTimeline")
        .def_property_readonly("duration_s", &PredictionTimeline::duration_s)
        .def("is_pred_inactive", &PredictionTimeline::is_pred_inactive, py::arg("sec"))
        .def_property_readonly("poss", [](const PredictionTimeline& t) { return t.poss; });

    m.def("expand_activity",
          [](const std::vector<ActivityReportRow>& rows, std::int64_t duration_s) {
              return expand_activity(rows, duration_s);
          },
          py::arg("rows"), py::arg("duration_s"));
    m.def("expand_possession",
          [](const std::vector<PossessionReportRow>& rows, std::int64_t duration_s) {
              return expand_possession(rows, duration_s);
          },
          py::arg("rows"), py::arg("duration_s"));
    m.def("aggregate_predictions",
          [](const std::vector<Frame>& frames, const DropMask& mask,
             const std::vector<PossessionLabel>& kept_labels, std::int64_t duration_s) {
              return aggregate_predictions(frames, mask, kept_labels, duration_s);
          },
          py::arg("frames"), py::arg("mask"), py::arg("kept_labels"), py::arg("duration_s"));

    py::class_<PossessionLabel>(m, "PossessionLabel")
        .def(py::init([](Poss poss, std::int64_t ord) { return PossessionLabel{poss, ord}; }),
             py::arg("poss"), py::arg("ord"))
        .def_readwrite("poss", &PossessionLabel::poss)
        .def_readwrite("ord", &PossessionLabel::ord);

    py::class_<ConfusionCounts>(m, "ConfusionCounts")
        .def(py::init([](std::uint64_t tp, std::uint64_t tn, std::uint64_t fp, std::uint64_t fn) {
                 return ConfusionCounts{tp, tn, fp, fn};
             }),
             py::arg("tp"), py::arg("tn"), py::arg("fp"), py::arg("fn"))
        .def_readwrite("tp", &ConfusionCounts::tp)
        .def_readwrite("tn", &ConfusionCounts::tn)
        .def_readwrite("fp", &ConfusionCounts::fp)
        .def_readwrite("fn", &ConfusionCounts::fn)
        .def("total", &ConfusionCounts::total);

    py::class_<AccordanceReport>(m, "AccordanceReport")
        .def_readonly("counts", &AccordanceReport::counts)
        .def_readonly("excluded_transition", &AccordanceReport::excluded_transition)
        .def_readonly("excluded_none", &AccordanceReport::excluded_none);

    m.def("offdef_accordance", &offdef_accordance, py::arg("pred"), py::arg("truth"));

    // Tuning ----------------------------------------------------------
    m.def("confusion", &confusion, py::arg("pred"), py::arg("truth"));
    m.def("sensitivity", &sensitivity, py::arg("counts"));
    m.def("specificity", &specificity, py::arg("counts"));
    m.def("youden", &youden, py::arg("sens"), py::arg("spec"));

    py::class_<RocPoint>(m, "RocPoint")
        .def(py::init([](double fpr, double tpr, std::int64_t t_vel_ms) {
                 return RocPoint{fpr, tpr, t_vel_ms};
             }),
             py::arg("fpr"), py::arg("tpr"), py::arg("t_vel_ms") = 0)
        .def_readwrite("fpr", &RocPoint::fpr)
        .def_readwrite("tpr", &RocPoint::tpr)
        .def_readwrite("t_vel_ms", &RocPoint::t_vel_ms);

    m.def("auc", [](std::vector<RocPoint> points) { return auc(std::move(points)); },
          py::arg("points"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("vmin_min_kmh", &GridSpec::vmin_min_kmh)
        .def_readwrite("vmin_max_kmh", &GridSpec::vmin_max_kmh)
        .def_readwrite("vmin_step_kmh", &GridSpec::vmin_step_kmh)
        .def_readwrite("tvel_min_ms", &GridSpec::tvel_min_ms)
        .def_readwrite("tvel_max_ms", &GridSpec::tvel_max_ms)
        .def_readwrite("tvel_step_ms", &GridSpec::tvel_step_ms)
        .def("vmin_values", &GridSpec::vmin_values)
        .def("tvel_values", &GridSpec::tvel_values);

    py::class_<GridCell>(m, "GridCell")
        .def_readonly("v_min_kmh", &GridCell::v_min_kmh)
        .def_readonly("t_vel_ms", &GridCell::t_vel_ms)
        .def_readonly("counts", &GridCell::counts)
        .def_readonly("sens", &GridCell::sens)
        .def_readonly("spec", &GridCell::spec);

    py::class_<TuningResult::YoudenRow>(m, "YoudenRow")
        .def_readonly("t_vel_ms", &TuningResult::YoudenRow::t_vel_ms)
        .def_readonly("sens", &TuningResult::YoudenRow::sens)
        .def_readonly("spec", &TuningResult::YoudenRow::spec)
        .def_readonly("youden", &TuningResult::YoudenRow::youden);

    py::class_<TuningResult>(m, "TuningResult")
        .def_readonly("auc_by_vmin", &TuningResult::auc_by_vmin)
        .def_readonly("v_min_star", &TuningResult::v_min_star)
        .def_readonly("t_vel_star", &TuningResult::t_vel_star)
        .def_readonly("auc_star", &TuningResult::auc_star)
        .def_readonly("youden_star", &TuningResult::youden_star)
        .def_readonly("youden_table", &TuningResult::youden_table)
        .def_readonly("grid", &TuningResult::grid);

    m.def("roc_for_vmin",
          [](double v_min_kmh, const std::vector<std::int64_t>& t_vel_grid_ms,
             const std::vector<Frame>& frames, const CourtGeometry& geom, std::int64_t t_ft_ms,
             const ActivityTimeline& truth) {
              return roc_for_vmin(v_min_kmh, t_vel_grid_ms, frames, geom, t_ft_ms, truth);
          },
          py::arg("v_min_kmh"), py::arg("t_vel_grid_ms"), py::arg("frames"), py::arg("geom"),
          py::arg("t_ft_ms"), py::arg("truth"));
    m.def("tune",
          [](const std::vector<Frame>& frames, const CourtGeometry& geom, std::int64_t t_ft_ms,
             const ActivityTimeline& truth, const GridSpec& grids, unsigned threads) {
              return tune(frames, geom, t_ft_ms, truth, grids, threads);
          },
          py::arg("frames"), py::arg("geom"), py::arg("t_ft_ms"), py::arg("truth"),
          py::arg("grids"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("serialize_auc_table", &serialize_auc_table, py::arg("result"));
    m.def("serialize_youden_table", &serialize_youden_table, py::arg("result"));
    m.def("serialize_grid", &serialize_grid, py::arg("result"));

    // Synthesis -------------------------------------------------------
    py::enum_<SegmentState>(m, "SegmentState")
        .value("ACTIVE_OFFENCE", SegmentState::ActiveOffence)
        .value("ACTIVE_DEFENCE", SegmentState::ActiveDefence)
        .value("ACTIVE_TRANSITION", SegmentState::ActiveTransition)
        .value("INACTIVE_STOP", SegmentState::InactiveStop)
        .value("INACTIVE_FREE_THROW", SegmentState::InactiveFreeThrow)
        .value("INACTIVE_TIMEOUT", SegmentState::InactiveTimeout)
        .value("INACTIVE_QUARTER", SegmentState::InactiveQuarter)
        .value("INACTIVE_HALF", SegmentState::InactiveHalf);

    py::class_<ScriptSegment>(m, "ScriptSegment")
        .def(py::init([](std::int64_t duration_s, SegmentState state, double low_kmh,
                         double high_kmh) {
                 return ScriptSegment{duration_s, state, low_kmh, high_kmh};
             }),
             py::arg("duration_s"), py::arg("state"), py::arg("low_kmh") = 5.0,
             py::arg("high_kmh") = 12.0)
        .def_readwrite("duration_s", &ScriptSegment::duration_s)
        .def_readwrite("state", &ScriptSegment::state)
        .def_readwrite("low_kmh", &ScriptSegment::low_kmh)
        .def_readwrite("high_kmh", &ScriptSegment::high_kmh);

    py::class_<GameScript>(m, "GameScript")
        .def(py::init<>())
        .def_readwrite("seed", &GameScript::seed)
        .def_readwrite("noise_sigma_cm", &GameScript::noise_sigma_cm)
        .def_readwrite("low_kmh", &GameScript::low_kmh)
        .def_readwrite("high_kmh", &GameScript::high_kmh)
        .def_readwrite("ramp_s", &GameScript::ramp_s)
        .def_readwrite("segments", &GameScript::segments)
        .def_property_readonly("total_seconds", &GameScript::total_seconds)
        .def("validate", &GameScript::validate);

    py::class_<SynthGame>(m, "SynthGame")
        .def_readonly("frames", &SynthGame::frames)
        .def_readonly("activity", &SynthGame::activity)
        .def_readonly("possession", &SynthGame::possession);

    m.def("generate", &generate, py::arg("script"));
    m.def("parse_script", [](const std::string& text) { return parse_script(text); },
          py::arg("text"));

#ifdef COURTFILTER_VERSION
    m.attr("__version__") = COURTFILTER_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
