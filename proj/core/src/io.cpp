#include "rotocool/io.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "rotocool/constants.hpp"

namespace rotocool::io {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

long long parse_int(const std::string& s, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s, "delta_f"));
  return Rational(parse_int(s.substr(0, slash), "delta_f"),
                  parse_int(s.substr(slash + 1), "delta_f"));
}

const std::vector<std::string> kPlanHeader{
    "step_index", "two_j_upper", "two_m_upper", "q",   "lambda_c_m", "e_field_v_per_m",
    "delta_f",    "gamma_free_per_s", "eta",    "gamma_cav_per_s", "duration_s"};

json step_json(std::size_t index, const TuningStep& step) {
  json transitions = json::array();
  for (const auto& t : step.transitions) {
    transitions.push_back({{"upper", state_label(t.upper)},
                           {"lower", state_label(t.lower)},
                           {"q", t.q}});
  }
  return {{"step_index", index},
          {"transitions", transitions},
          {"lambda_c_m", step.lambda_c},
          {"e_field_v_per_m", step.e_field},
          {"delta_f", to_string(step.delta_f)},
          {"gamma_free_per_s", step.gamma_free},
          {"eta", step.eta},
          {"gamma_cav_per_s", step.gamma_cavity},
          {"duration_s", step.duration}};
}

json flags_json(const ValidationReport& report) {
  json flags = json::array();
  for (const auto& check : report.checks) {
    json entry{{"check", check.name},
               {"status", std::string(to_string(check.status))},
               {"detail", check.detail}};
    if (check.step_index) entry["step_index"] = *check.step_index;
    flags.push_back(std::move(entry));
  }
  return flags;
}

json population_json(const PopulationState& pop) {
  json out = json::object();
  for (std::size_t i = 0; i < pop.size(); ++i) out[state_label(pop.states()[i])] = pop.weights()[i];
  return out;
}

}  // namespace

void write_plan_csv(std::ostream& os, const CoolingPlan& plan) {
  for (std::size_t i = 0; i < kPlanHeader.size(); ++i) os << (i ? "," : "") << kPlanHeader[i];
  os << '\n';
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const TuningStep& step = plan.steps[i];
    const Transition& t = step.transitions.front();
    os << i << ',' << t.upper.twoJ << ',' << t.upper.twoM << ',' << t.q << ','
       << fmt(step.lambda_c) << ',' << fmt(step.e_field) << ',' << to_string(step.delta_f) << ','
       << fmt(step.gamma_free) << ',' << fmt(step.eta) << ',' << fmt(step.gamma_cavity) << ','
       << fmt(step.duration) << '\n';
  }
}

std::vector<TuningStep> read_plan_csv(std::istream& is, int twoOmega) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("plan CSV: missing header");
  if (split_csv(strip_cr(line)) != kPlanHeader) throw FormatError("plan CSV: unexpected header");

  std::vector<TuningStep> steps;
  while (std::getline(is, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != kPlanHeader.size()) {
      throw FormatError("plan CSV: row " + std::to_string(steps.size()) + " has " +
                        std::to_string(f.size()) + " fields");
    }
    if (parse_int(f[0], "step_index") != static_cast<long long>(steps.size())) {
      throw FormatError("plan CSV: step_index out of sequence at row " + std::to_string(steps.size()));
    }
    TuningStep step;
    try {
      const RoState upper = make_state(static_cast<int>(parse_int(f[1], "two_j_upper")),
                                       static_cast<int>(parse_int(f[2], "two_m_upper")), twoOmega);
      const Transition t = make_transition(upper, static_cast<int>(parse_int(f[3], "q")));
      step.transitions.push_back(t);
      if (!t.is_self_mirror()) step.transitions.push_back(t.mirror());
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("plan CSV: ") + e.what());
    }
    step.lambda_c = parse_double(f[4], "lambda_c_m");
    step.e_field = parse_double(f[5], "e_field_v_per_m");
    step.delta_f = parse_rational(f[6]);
    step.gamma_free = parse_double(f[7], "gamma_free_per_s");
    step.eta = parse_double(f[8], "eta");
    step.gamma_cavity = parse_double(f[9], "gamma_cav_per_s");
    step.duration = parse_double(f[10], "duration_s");
    steps.push_back(std::move(step));
  }
  return steps;
}

void write_levels_csv(std::ostream& os, const MolecularSpecies& species,
                      const PopulationState& thermal) {
  os << "two_j,two_m,energy_j,energy_cm,thermal_weight\n";
  for (std::size_t i = 0; i < thermal.size(); ++i) {
    const RoState& s = thermal.states()[i];
    const double e = rovib_energy(species, s.n, s.twoJ);
    os << s.twoJ << ',' << s.twoM << ',' << fmt(e) << ','
       << fmt(e / constants::hc / constants::per_cm_to_per_m) << ',' << fmt(thermal.weights()[i])
       << '\n';
  }
}

void write_timeline_csv(std::ostream& os, const SimulationResult& result) {
  os << "stage_index,time_s";
  if (result.timeline.empty()) {
    os << '\n';
    return;
  }
  for (const auto& s : result.timeline.front().population.states()) os << ',' << state_label(s);
  os << '\n';
  for (const auto& snap : result.timeline) {
    os << snap.stage_index << ',' << fmt(snap.time);
    for (double w : snap.population.weights()) os << ',' << fmt(w);
    os << '\n';
  }
}

std::pair<std::vector<RoState>, std::vector<TimelineRow>> read_timeline_csv(std::istream& is,
                                                                            int twoOmega) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("timeline CSV: missing header");
  const auto header = split_csv(strip_cr(line));
  if (header.size() < 2 || header[0] != "stage_index" || header[1] != "time_s") {
    throw FormatError("timeline CSV: unexpected header");
  }
  std::vector<RoState> states;
  for (std::size_t i = 2; i < header.size(); ++i) states.push_back(parse_state_label(header[i], twoOmega));

  std::vector<TimelineRow> rows;
  while (std::getline(is, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) throw FormatError("timeline CSV: ragged row");
    TimelineRow row;
    row.stage_index = static_cast<std::size_t>(parse_int(f[0], "stage_index"));
    row.time = parse_double(f[1], "time_s");
    for (std::size_t i = 2; i < f.size(); ++i) row.weights.push_back(parse_double(f[i], "weight"));
    rows.push_back(std::move(row));
  }
  return {std::move(states), std::move(rows)};
}

std::string plan_summary_json(const CoolingPlan& plan, const ValidationReport& report) {
  json cavities = json::array();
  for (const auto& c : plan.cavities) {
    const CavityGeometry g = confocal_geometry(c);
    cavities.push_back({{"s", c.s}, {"q_factor", c.Q}, {"lambda_c_m", c.lambda_c},
                        {"length_m", g.L}, {"diameter_m", g.D}, {"eta", g.eta}});
  }
  double max_field = 0.0;
  for (const auto& step : plan.steps) max_field = std::max(max_field, step.e_field);
  const json out{{"scheme", std::string(to_string(plan.scheme))},
                 {"species", plan.species.name},
                 {"jmax_x2", plan.twoJmax},
                 {"steps", plan.steps.size()},
                 {"total_time_s", plan.total_duration()},
                 {"max_e_field_v_per_m", max_field},
                 {"cavities", cavities},
                 {"validation", std::string(to_string(report.worst()))},
                 {"validation_flags", flags_json(report)}};
  return out.dump(2);
}

std::string simulation_summary_json(const CoolingPlan& plan, const SimulationResult& result,
                                    const ValidationReport& report) {
  json residuals = json::array();
  for (const auto& stage : result.per_stage) {
    json entry{{"step_index", stage.step_index}, {"upper_population", stage.upper_population}};
    entry["residual_fraction"] =
        stage.residual_fraction ? json(*stage.residual_fraction) : json(nullptr);
    residuals.push_back(std::move(entry));
  }
  const json out{{"scheme", std::string(to_string(plan.scheme))},
                 {"total_time_s", result.total_time},
                 {"ground_fraction", result.ground_fraction},
                 {"per_stage_residuals", residuals},
                 {"validation_flags", flags_json(report)}};
  return out.dump(2);
}

std::string plan_json(const CoolingPlan& plan) {
  json steps = json::array();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) steps.push_back(step_json(i, plan.steps[i]));
  return json{{"scheme", std::string(to_string(plan.scheme))},
              {"species", plan.species.name},
              {"jmax_x2", plan.twoJmax},
              {"steps", steps}}
      .dump(2);
}

std::string levels_json(const MolecularSpecies& species, const PopulationState& thermal) {
  json levels = json::array();
  for (std::size_t i = 0; i < thermal.size(); ++i) {
    const RoState& s = thermal.states()[i];
    const double e = rovib_energy(species, s.n, s.twoJ);
    levels.push_back({{"two_j", s.twoJ},
                      {"two_m", s.twoM},
                      {"energy_j", e},
                      {"energy_cm", e / constants::hc / constants::per_cm_to_per_m},
                      {"thermal_weight", thermal.weights()[i]}});
  }
  return json{{"species", species.name}, {"levels", levels}}.dump(2);
}

std::string timeline_json(const SimulationResult& result) {
  json rows = json::array();
  for (const auto& snap : result.timeline) {
    rows.push_back({{"stage_index", snap.stage_index},
                    {"time_s", snap.time},
                    {"population", population_json(snap.population)}});
  }
  return json{{"timeline", rows}}.dump(2);
}

RoState parse_state_label(std::string_view label, int twoOmega) {
  const auto m = label.find('M');
  if (label.size() < 4 || label.front() != 'J' || m == std::string_view::npos || m < 2) {
    throw FormatError("bad state label '" + std::string(label) + "'");
  }
  const std::string j_part(label.substr(1, m - 1));
  const std::string m_part(label.substr(m + 1));
  try {
    return make_state(static_cast<int>(parse_int(j_part, "state label")),
                      static_cast<int>(parse_int(m_part, "state label")), twoOmega);
  } catch (const std::invalid_argument& e) {
    throw FormatError("bad state label '" + std::string(label) + "': " + e.what());
  }
}

}  // namespace rotocool::io
