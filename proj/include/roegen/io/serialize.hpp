#pragma once

/// \file
/// Deterministic JSON/CSV emitters and the CSV path readers.
///
/// Numbers are written with 17 significant digits, which round-trips every
/// double exactly. JSON keys appear in a fixed order:
///
///   diagram.json     params, solid, grid, tolerances, critical, triple, curves
///   simulation.json  labels, events, second_law

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "roegen/core_model.hpp"
#include "roegen/errors.hpp"
#include "roegen/fields.hpp"
#include "roegen/phase_equilibrium.hpp"
#include "roegen/potentials.hpp"
#include "roegen/process_sim.hpp"

namespace roegen {

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string json_quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

/// Streaming JSON writer with two-space indentation. Scalars inside arrays
/// of numbers stay on one line.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    out_ << json_quote(k) << ": ";
    pending_key_ = true;
    return *this;
  }

  JsonWriter& value(double x) { return scalar(std::isfinite(x) ? format_number(x) : "null"); }
  JsonWriter& value(std::size_t n) { return scalar(std::to_string(n)); }
  JsonWriter& value(int n) { return scalar(std::to_string(n)); }
  JsonWriter& value(bool b) { return scalar(b ? "true" : "false"); }
  JsonWriter& value(std::string_view s) { return scalar(json_quote(s)); }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null() { return scalar("null"); }

  /// A flat array of numbers on a single line.
  JsonWriter& numbers(std::initializer_list<double> xs) {
    separate();
    out_ << '[';
    bool first = true;
    for (double x : xs) {
      out_ << (first ? "" : ", ") << format_number(x);
      first = false;
    }
    out_ << ']';
    mark_written();
    return *this;
  }

  std::string str() const { return out_.str() + "\n"; }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ << c;
    stack_.push_back(false);
    return *this;
  }

  JsonWriter& close(char c) {
    const bool had = stack_.back();
    stack_.pop_back();
    if (had) newline();
    out_ << c;
    mark_written();
    return *this;
  }

  JsonWriter& scalar(const std::string& text) {
    separate();
    out_ << text;
    mark_written();
    return *this;
  }

  void separate() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (stack_.empty()) return;
    if (stack_.back()) out_ << ',';
    newline();
  }

  void mark_written() {
    if (!stack_.empty()) stack_.back() = true;
  }

  void newline() {
    out_ << '\n';
    for (std::size_t i = 0; i < stack_.size(); ++i) out_ << "  ";
  }

  std::ostringstream out_;
  std::vector<bool> stack_;
  bool pending_key_ = false;
};

inline const char* curve_key(CurveKind k) {
  switch (k) {
    case CurveKind::BoomCrisis:
      return "boom_crisis";
    case CurveKind::RecoveryRecession:
      return "recovery_recession";
    case CurveKind::IncreaseDecrease:
      return "increase_decrease";
  }
  return "?";
}

}  // namespace detail

/// diagram.json. BoomCrisis and RecoveryRecession samples are [I, P];
/// IncreaseDecrease samples are [I, P, Q_low, Q_high, latent_q].
inline std::string diagram_to_json(const PhaseDiagram& d) {
  detail::JsonWriter w;
  w.begin_object();
  const auto& p = d.params();
  w.key("params").begin_object();
  w.key("kind").value(to_string(p.kind)).key("a").value(p.a).key("b").value(p.b);
  w.key("R").value(p.R).key("c").value(p.c);
  w.end_object();
  const auto& s = d.solid();
  w.key("solid").begin_object();
  w.key("I_t").value(s.I_t).key("L_melt").value(s.L_melt).key("dQ_melt").value(s.dQ_melt).key("L_sub").value(s.L_sub);
  w.end_object();
  const auto& g = d.grid();
  w.key("grid").begin_object();
  w.key("n_increase_decrease").value(g.n_increase_decrease);
  w.key("n_boom_crisis").value(g.n_boom_crisis);
  w.key("n_recovery_recession").value(g.n_recovery_recession);
  w.key("I_min").value(g.I_min).key("I_max").value(g.I_max);
  w.end_object();
  const auto& t = d.tolerances();
  w.key("tolerances").begin_object();
  w.key("root").value(t.root).key("area").value(t.area).key("ode").value(t.ode).key("boundary").value(t.boundary);
  w.end_object();
  const auto& c = d.critical();
  w.key("critical").begin_object().key("I").value(c.I).key("P").value(c.P).key("Q").value(c.Q).end_object();
  w.key("triple").begin_object().key("I").value(d.triple().I).key("P").value(d.triple().P).end_object();
  w.key("curves").begin_object();
  for (CurveKind k : kAllCurves) {
    const auto& curve = d.curve(k);
    w.key(detail::curve_key(k)).begin_object();
    w.key("kind").value(to_string(k));
    w.key("I_start").value(curve.I_start).key("I_end").value(curve.I_end);
    w.key("ode_max_rel_deviation").value(curve.ode_max_rel_deviation);
    w.key("samples").begin_array();
    if (k == CurveKind::IncreaseDecrease) {
      for (const auto& pt : curve.coexistence) w.numbers({pt.I, pt.P_sat, pt.Q_low, pt.Q_high, pt.latent_q});
    } else {
      for (const auto& pt : curve.samples) w.numbers({pt.I, pt.P});
    }
    w.end_array();
    w.end_object();
  }
  w.end_object();
  w.end_object();
  return w.str();
}

/// Rebuilds a diagram from diagram.json text.
inline PhaseDiagram diagram_from_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    const auto& jp = j.at("params");
    EosParams p{jp.at("kind").get<std::string>() == "Ideal" ? EosKind::Ideal : EosKind::VanDerWaals,
                jp.at("a").get<double>(), jp.at("b").get<double>(), jp.at("R").get<double>(), jp.at("c").get<double>()};
    const auto& js = j.at("solid");
    SolidModel s{js.at("I_t").get<double>(), js.at("L_melt").get<double>(), js.at("dQ_melt").get<double>(),
                 js.at("L_sub").get<double>()};
    const auto& jg = j.at("grid");
    GridSpec g{jg.at("n_increase_decrease").get<std::size_t>(), jg.at("n_boom_crisis").get<std::size_t>(),
               jg.at("n_recovery_recession").get<std::size_t>(), jg.at("I_min").get<double>(),
               jg.at("I_max").get<double>()};
    const auto& jt = j.at("tolerances");
    Tolerances t{jt.at("root").get<double>(), jt.at("area").get<double>(), jt.at("ode").get<double>(),
                 jt.at("boundary").get<double>()};
    const auto& jc = j.at("critical");
    CriticalPoint c{jc.at("I").get<double>(), jc.at("P").get<double>(), jc.at("Q").get<double>()};
    TriplePoint tp{j.at("triple").at("I").get<double>(), j.at("triple").at("P").get<double>()};

    auto read_curve = [&](CurveKind k) {
      const auto& jc2 = j.at("curves").at(detail::curve_key(k));
      BoundaryCurve curve;
      curve.kind = k;
      curve.I_start = jc2.at("I_start").get<double>();
      curve.I_end = jc2.at("I_end").get<double>();
      const auto& dev = jc2.at("ode_max_rel_deviation");
      curve.ode_max_rel_deviation = dev.is_null() ? std::numeric_limits<double>::quiet_NaN() : dev.get<double>();
      for (const auto& row : jc2.at("samples")) {
        curve.samples.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
        if (k == CurveKind::IncreaseDecrease)
          curve.coexistence.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>(),
                                       row.at(3).get<double>(), row.at(4).get<double>()});
      }
      return curve;
    };
    return PhaseDiagram(p, s, g, t, c, tp, read_curve(CurveKind::BoomCrisis),
                        read_curve(CurveKind::RecoveryRecession), read_curve(CurveKind::IncreaseDecrease));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed diagram JSON: ") + e.what());
  }
}

/// Curve CSV, header `I,P` (IncreaseDecrease adds `Q_low,Q_high,latent_q`).
inline std::string curve_to_csv(const BoundaryCurve& curve) {
  std::string out;
  if (curve.kind == CurveKind::IncreaseDecrease) {
    out = "I,P,Q_low,Q_high,latent_q\n";
    for (const auto& pt : curve.coexistence)
      out += format_number(pt.I) + "," + format_number(pt.P_sat) + "," + format_number(pt.Q_low) + "," +
             format_number(pt.Q_high) + "," + format_number(pt.latent_q) + "\n";
  } else {
    out = "I,P\n";
    for (const auto& pt : curve.samples) out += format_number(pt.I) + "," + format_number(pt.P) + "\n";
  }
  return out;
}

inline std::string isotherm_to_csv(const std::vector<IsothermSample>& samples) {
  std::string out = "Q,P\n";
  for (const auto& s : samples) out += format_number(s.Q) + "," + format_number(s.P) + "\n";
  return out;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// UTF-8 CSV of the dictionary, rows sorted by thermo_symbol.
inline std::string dictionary_to_csv(const Dictionary& dict) {
  std::string out = "thermo_symbol,thermo_name,econ_symbol,econ_name\n";
  for (const auto& e : dict.sorted())
    out += detail::csv_field(e.thermo_symbol) + "," + detail::csv_field(e.thermo_name) + "," +
           detail::csv_field(e.econ_symbol) + "," + detail::csv_field(e.econ_name) + "\n";
  return out;
}

/// simulation.json: labels, events (curve, direction, I, P, segment_index)
/// and the second-law verdict or null.
inline std::string report_to_json(const SimulationReport& r) {
  detail::JsonWriter w;
  w.begin_object();
  w.key("labels").begin_array();
  for (const auto& l : r.labels) w.value(l.label());
  w.end_array();
  w.key("events").begin_array();
  for (const auto& e : r.events) {
    w.begin_object();
    w.key("curve").value(to_string(e.curve));
    w.key("direction").value(e.reading);
    w.key("I").value(e.location.I);
    w.key("P").value(e.location.P);
    w.key("segment_index").value(e.segment_index);
    w.end_object();
  }
  w.end_array();
  w.key("second_law");
  if (r.second_law) {
    w.value(to_string(*r.second_law));
  } else {
    w.null();
  }
  w.end_object();
  return w.str();
}

// ---- CSV readers ----------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ArgumentError(where + ": '" + s + "' is not a finite number");
  return v;
}

/// Rows of a numeric CSV whose header is one of `headers`.
inline std::pair<std::vector<std::string>, std::vector<std::vector<double>>> read_numeric_csv(
    std::istream& in, const std::string& name, std::initializer_list<std::vector<std::string>> headers) {
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError(name + ": empty file");
  const auto header = split_csv_line(line);
  bool known = false;
  for (const auto& h : headers) known = known || h == header;
  if (!known) {
    std::string expected;
    for (const auto& h : headers) {
      std::string joined;
      for (const auto& c : h) joined += (joined.empty() ? "" : ",") + c;
      expected += (expected.empty() ? "" : " or ") + joined;
    }
    throw ArgumentError(name + ": expected header " + expected + ", got '" + line + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ArgumentError(name + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) + " columns");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, name + ":" + std::to_string(lineno)));
    rows.push_back(std::move(row));
  }
  return {header, rows};
}

inline std::ifstream open_input(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open '" + file.string() + "'");
  return in;
}

}  // namespace detail

/// A simulation path: header `I,P`, or `I,P,Q` to also carry the (I, Q)
/// states used for the second-law verdict.
struct PathInput {
  std::vector<DiagramPoint> points;
  std::optional<QuasiStaticPath> states;
};

inline PathInput read_ip_path(std::istream& in, const std::string& name = "path") {
  auto [header, rows] = detail::read_numeric_csv(in, name, {{"I", "P"}, {"I", "P", "Q"}});
  PathInput out;
  const bool with_q = header.size() == 3;
  if (with_q) out.states.emplace();
  for (const auto& r : rows) {
    out.points.push_back({r[0], r[1]});
    if (with_q) out.states->samples.push_back({r[0], r[2], {}});
  }
  return out;
}

inline PathInput read_ip_path(const std::filesystem::path& file) {
  auto in = detail::open_input(file);
  return read_ip_path(in, file.string());
}

/// A quasi-static (I, Q) path, header `I,Q`.
inline QuasiStaticPath read_iq_path(std::istream& in, const std::string& name = "path") {
  auto [header, rows] = detail::read_numeric_csv(in, name, {{"I", "Q"}});
  QuasiStaticPath path;
  for (const auto& r : rows) path.samples.push_back({r[0], r[1], {}});
  return path;
}

inline QuasiStaticPath read_iq_path(const std::filesystem::path& file) {
  auto in = detail::open_input(file);
  return read_iq_path(in, file.string());
}

/// A field trajectory, header `ex,ey,ez,hx,hy,hz`.
inline FieldPath read_field_path(std::istream& in, const std::string& name = "fields") {
  auto [header, rows] = detail::read_numeric_csv(in, name, {{"ex", "ey", "ez", "hx", "hy", "hz"}});
  FieldPath path;
  for (const auto& r : rows) path.samples.push_back({{r[0], r[1], r[2]}, {r[3], r[4], r[5]}});
  return path;
}

inline FieldPath read_field_path(const std::filesystem::path& file) {
  auto in = detail::open_input(file);
  return read_field_path(in, file.string());
}

}  // namespace roegen
