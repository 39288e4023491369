#include "rotocool/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "rotocool/io.hpp"

namespace rotocool {

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace toml {

namespace {

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops a trailing comment, leaving '#' inside quoted strings alone.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == '\\' && quote == '"') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

Value parse_value(std::string_view text, int line) {
  if (text.empty()) throw ConfigError(line, "missing value");

  if (text.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < text.size() && text[i] != '"'; ++i) {
      if (text[i] == '\\') {
        if (++i >= text.size()) break;
        switch (text[i]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: throw ConfigError(line, std::string("unsupported escape \\") + text[i]);
        }
      } else {
        out += text[i];
      }
    }
    if (i >= text.size()) throw ConfigError(line, "unterminated string");
    if (!trim(text.substr(i + 1)).empty()) throw ConfigError(line, "unexpected text after string");
    return Value{out, line};
  }
  if (text.front() == '\'') {
    const auto end = text.find('\'', 1);
    if (end == std::string_view::npos) throw ConfigError(line, "unterminated string");
    if (!trim(text.substr(end + 1)).empty()) throw ConfigError(line, "unexpected text after string");
    return Value{std::string(text.substr(1, end - 1)), line};
  }
  if (text == "true") return Value{true, line};
  if (text == "false") return Value{false, line};

  std::string digits;
  for (char c : text) {
    if (c != '_') digits += c;
  }
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  if (*first == '+') ++first;

  const bool looks_float = digits.find_first_of(".eE") != std::string::npos ||
                           digits.find("inf") != std::string::npos ||
                           digits.find("nan") != std::string::npos;
  if (!looks_float) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && ptr == last) return Value{v, line};
  } else {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && ptr == last) return Value{v, line};
  }
  throw ConfigError(line, "cannot parse value '" + std::string(text) + "'");
}

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  std::string section;
  std::set<std::string> seen_sections;
  int line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name.empty() || !std::all_of(name.begin(), name.end(), is_bare_key_char)) {
        throw ConfigError(line_no, "invalid section name '" + name + "'");
      }
      if (!seen_sections.insert(name).second) {
        throw ConfigError(line_no, "duplicate section [" + name + "]");
      }
      section = name;
      doc[section];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty() || !std::all_of(key.begin(), key.end(), is_bare_key_char)) {
      throw ConfigError(line_no, "invalid key '" + key + "'");
    }
    Value value = parse_value(trim(line.substr(eq + 1)), line_no);
    auto& table = doc[section];
    if (table.contains(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    table.emplace(key, std::move(value));
  }
  return doc;
}

}  // namespace toml

namespace {

using toml::Table;
using toml::Value;

const char* type_name(const Value& v) {
  switch (v.data.index()) {
    case 0: return "string";
    case 1: return "integer";
    case 2: return "float";
    default: return "boolean";
  }
}

class SectionReader {
 public:
  SectionReader(std::string name, const Table* table) : name_(std::move(name)), table_(table) {}

  [[nodiscard]] bool present() const { return table_ != nullptr; }

  const Value* find(const std::string& key) const {
    if (!table_) return nullptr;
    auto it = table_->find(key);
    return it == table_->end() ? nullptr : &it->second;
  }

  int line_of(const std::string& key) const {
    const Value* v = find(key);
    return v ? v->line : 0;
  }

  void reject_unknown(const std::set<std::string>& allowed) const {
    if (!table_) return;
    for (const auto& [key, value] : *table_) {
      if (!allowed.contains(key)) {
        throw ConfigError(value.line, "unknown key '" + key + "' in [" + name_ + "]");
      }
    }
  }

  std::optional<double> number(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (auto d = std::get_if<double>(&v->data)) return *d;
    if (auto i = std::get_if<long long>(&v->data)) return static_cast<double>(*i);
    throw type_error(*v, key, "a number");
  }

  std::optional<long long> integer(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (auto i = std::get_if<long long>(&v->data)) return *i;
    throw type_error(*v, key, "an integer");
  }

  std::optional<std::string> string(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (auto s = std::get_if<std::string>(&v->data)) return *s;
    throw type_error(*v, key, "a string");
  }

  std::optional<bool> boolean(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (auto b = std::get_if<bool>(&v->data)) return *b;
    throw type_error(*v, key, "a boolean");
  }

  ConfigError error(const std::string& key, const std::string& message) const {
    return ConfigError(line_of(key), "[" + name_ + "] " + key + ": " + message);
  }

 private:
  ConfigError type_error(const Value& v, const std::string& key, const char* expected) const {
    return ConfigError(v.line, "[" + name_ + "] " + key + ": expected " + expected + ", got " +
                                   type_name(v));
  }

  std::string name_;
  const Table* table_;
};

SectionReader section(const toml::Document& doc, const std::string& name) {
  auto it = doc.find(name);
  return SectionReader(name, it == doc.end() ? nullptr : &it->second);
}

double positive(const SectionReader& r, const std::string& key, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw r.error(key, "must be a finite positive number");
  return value;
}

MolecularSpecies read_species(const SectionReader& r) {
  if (!r.present()) throw ConfigError(0, "missing required section [species]");
  r.reject_unknown({"name", "be_cm", "alpha_e_cm", "we_cm", "wexe_cm", "te_cm", "dipole_debye",
                    "reduced_dipole_debye", "mass_amu", "omega_x2"});

  const auto name = r.string("name");
  const bool inline_constants = r.find("be_cm") || r.find("alpha_e_cm") ||
                                r.find("dipole_debye") || r.find("mass_amu") ||
                                r.find("omega_x2") || r.find("we_cm") || r.find("wexe_cm") ||
                                r.find("te_cm") || r.find("reduced_dipole_debye");
  if (!inline_constants) {
    if (!name) throw ConfigError(0, "[species] needs name=\"...\" or inline constants");
    auto found = find_species(*name);
    if (!found) throw r.error("name", "unknown species '" + *name + "'");
    return *found;
  }

  RawSpecies raw;
  raw.name = name.value_or("custom");
  for (const char* key : {"be_cm", "alpha_e_cm", "dipole_debye", "mass_amu"}) {
    if (!r.find(key)) throw ConfigError(0, std::string("[species] missing required key '") + key + "'");
  }
  raw.be_cm = *r.number("be_cm");
  raw.alpha_e_cm = *r.number("alpha_e_cm");
  raw.dipole_debye = *r.number("dipole_debye");
  raw.mass_amu = *r.number("mass_amu");
  raw.we_cm = r.number("we_cm").value_or(0.0);
  raw.wexe_cm = r.number("wexe_cm").value_or(0.0);
  raw.te_cm = r.number("te_cm").value_or(0.0);
  raw.reduced_dipole_debye = r.number("reduced_dipole_debye");
  raw.omega_x2 = static_cast<int>(r.integer("omega_x2").value_or(0));
  try {
    return ingest_species(raw);
  } catch (const SpeciesError& e) {
    const std::string msg = e.what();
    const std::string field = msg.substr(0, msg.find(':'));
    throw ConfigError(r.line_of(field), std::string("[species] ") + msg);
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  const toml::Document doc = toml::parse(text);
  for (const auto& [name, table] : doc) {
    static const std::set<std::string> known{"species", "cavity", "plan", "simulate", "output"};
    if (name.empty()) {
      throw ConfigError(table.begin()->second.line, "key outside of any section");
    }
    if (!known.contains(name)) {
      const int line = table.empty() ? 0 : table.begin()->second.line;
      throw ConfigError(line, "unknown section [" + name + "]");
    }
  }

  RunConfig cfg;
  cfg.species = read_species(section(doc, "species"));

  const auto plan = section(doc, "plan");
  if (!plan.present()) throw ConfigError(0, "missing required section [plan]");
  plan.reject_unknown({"scheme", "jmax_x2", "efield_max_v_per_m"});
  const auto scheme = plan.string("scheme");
  if (!scheme) throw ConfigError(0, "[plan] missing required key 'scheme'");
  if (auto s = parse_scheme(*scheme)) {
    cfg.plan.scheme = *s;
  } else {
    throw plan.error("scheme", "expected \"pi\", \"A\", \"B\" or \"combined\"");
  }
  const auto jmax = plan.integer("jmax_x2");
  if (!jmax) throw ConfigError(0, "[plan] missing required key 'jmax_x2'");
  cfg.plan.jmax_x2 = static_cast<int>(*jmax);
  if ((cfg.plan.jmax_x2 - cfg.species.twoOmega) % 2 != 0) {
    throw plan.error("jmax_x2", "parity mismatch: jmax_x2=" + std::to_string(cfg.plan.jmax_x2) +
                                    " but omega_x2=" + std::to_string(cfg.species.twoOmega));
  }
  if (cfg.plan.jmax_x2 < cfg.species.twoOmega + 2) {
    throw plan.error("jmax_x2", "must be at least omega_x2 + 2");
  }
  if (auto e = plan.number("efield_max_v_per_m")) {
    cfg.plan.efield_max_v_per_m = positive(plan, "efield_max_v_per_m", *e);
  }

  const auto cavity = section(doc, "cavity");
  cavity.reject_unknown({"mode", "s", "q_factor", "lambda_m"});
  if (auto mode = cavity.string("mode")) {
    if (*mode == "A") cfg.cavity.mode = CavityMode::A;
    else if (*mode == "B") cfg.cavity.mode = CavityMode::B;
    else if (*mode == "manual") cfg.cavity.mode = CavityMode::manual;
    else throw cavity.error("mode", "expected \"A\", \"B\" or \"manual\"");
  }
  if (auto s = cavity.integer("s")) {
    if (*s < 1) throw cavity.error("s", "mode order must be >= 1");
    cfg.cavity.s = static_cast<int>(*s);
  }
  if (auto q = cavity.number("q_factor")) cfg.cavity.q_factor = positive(cavity, "q_factor", *q);
  if (auto l = cavity.number("lambda_m")) cfg.cavity.lambda_m = positive(cavity, "lambda_m", *l);

  if (cfg.cavity.mode == CavityMode::manual && !cfg.cavity.lambda_m) {
    throw cavity.error("mode", "manual mode needs lambda_m");
  }
  if (cfg.cavity.lambda_m && cfg.cavity.mode != CavityMode::manual) {
    throw cavity.error("lambda_m", "only allowed with mode=\"manual\"");
  }
  if (cfg.cavity.mode) {
    const Scheme s = cfg.plan.scheme;
    const CavityMode m = *cfg.cavity.mode;
    const bool ok = (s == Scheme::pi_only || s == Scheme::seq_A)
                        ? (m == CavityMode::A || m == CavityMode::manual)
                    : s == Scheme::seq_B ? (m == CavityMode::B || m == CavityMode::manual)
                                         : false;
    if (!ok) {
      throw cavity.error("mode", "inconsistent with scheme \"" +
                                     std::string(to_string(cfg.plan.scheme)) + "\"");
    }
  }

  const auto sim = section(doc, "simulate");
  sim.reject_unknown({"temperature_k", "nbar", "stage_cycles", "include_offresonant",
                      "record_interior_points", "initial"});
  if (auto t = sim.number("temperature_k")) cfg.simulate.temperature_k = positive(sim, "temperature_k", *t);
  if (auto n = sim.string("nbar")) {
    if (*n == "zero") cfg.simulate.nbar = NbarMode::zero;
    else if (*n == "planck") cfg.simulate.nbar = NbarMode::planck;
    else throw sim.error("nbar", "expected \"zero\" or \"planck\"");
  }
  if (auto c = sim.number("stage_cycles")) cfg.simulate.stage_cycles = positive(sim, "stage_cycles", *c);
  if (auto b = sim.boolean("include_offresonant")) cfg.simulate.include_offresonant = *b;
  if (auto k = sim.integer("record_interior_points")) {
    if (*k < 0) throw sim.error("record_interior_points", "must be >= 0");
    cfg.simulate.record_interior_points = static_cast<int>(*k);
  }
  if (auto init = sim.string("initial")) {
    if (*init != "thermal") {
      try {
        const RoState s = io::parse_state_label(*init, cfg.species.twoOmega);
        if (s.twoJ > cfg.plan.jmax_x2) throw sim.error("initial", "state above jmax_x2");
      } catch (const io::FormatError& e) {
        throw sim.error("initial", e.what());
      }
    }
    cfg.simulate.initial = *init;
  }

  const auto out = section(doc, "output");
  out.reject_unknown({"dir", "format"});
  cfg.output_dir = out.string("dir");
  if (auto f = out.string("format")) {
    if (*f == "csv") cfg.format = OutputFormat::csv;
    else if (*f == "json") cfg.format = OutputFormat::json;
    else throw out.error("format", "expected \"csv\" or \"json\"");
  }
  return cfg;
}

std::vector<CavityConfig> resolve_cavities(const RunConfig& cfg) {
  const int s = cfg.cavity.s;
  const double Q = cfg.cavity.q_factor;
  if (!cfg.cavity.mode) return choose_cavity(cfg.species, cfg.plan.scheme, cfg.plan.jmax_x2, s, Q);
  switch (*cfg.cavity.mode) {
    case CavityMode::A: return choose_cavity(cfg.species, Scheme::seq_A, cfg.plan.jmax_x2, s, Q);
    case CavityMode::B: return choose_cavity(cfg.species, Scheme::seq_B, cfg.plan.jmax_x2, s, Q);
    case CavityMode::manual: return {CavityConfig{s, Q, *cfg.cavity.lambda_m}};
  }
  return {};
}

}  // namespace rotocool
