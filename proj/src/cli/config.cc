// Copyright 2026 The satrelay Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <vector>

#include "cli/format.h"
#include "satrelay/errors.h"

namespace satrelay::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum class Kind {
  kLength,   // km; bare number or "<v> km" / "<v> m"
  kAngle,    // rad; bare number or "<v> rad" / "<v> deg"
  kPlain,    // bare number in the documented unit
  kRatio,    // tagged: dB | linear
  kPower,    // tagged: W | dBW | dBm | dB (= dBW)
  kInt,
  kCount,    // non-negative 64-bit integer
  kEnum,
};

struct Field {
  std::string section;
  std::string key;
  Kind kind;
  std::function<void(ScenarioConfig&, const json&, const std::string&)> set;
  std::function<ordered_json(const ScenarioConfig&)> get;
};

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

struct Tagged {
  double value;
  std::string unit;  // empty when untagged
};

Tagged SplitTagged(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), ""};
  if (v.is_object()) {
    if (!v.contains("value") || !v["value"].is_number()) {
      Fail(path, "object form needs a numeric \"value\"");
    }
    std::string unit;
    if (v.contains("unit")) {
      if (!v["unit"].is_string()) Fail(path, "\"unit\" must be a string");
      unit = v["unit"].get<std::string>();
    }
    for (const auto& item : v.items()) {
      if (item.key() != "value" && item.key() != "unit") {
        Fail(path, "unexpected key '" + item.key() + "'");
      }
    }
    return {v["value"].get<double>(), unit};
  }
  if (!v.is_string()) Fail(path, "expected a number or a tagged string");
  const std::string s = v.get<std::string>();
  std::size_t begin = s.find_first_not_of(' ');
  if (begin == std::string::npos) Fail(path, "empty value");
  const char* first = s.data() + begin;
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc()) Fail(path, "cannot parse number in '" + s + "'");
  std::string unit(ptr, last);
  unit.erase(0, unit.find_first_not_of(' '));
  unit.erase(unit.find_last_not_of(' ') + 1);
  return {value, unit};
}

double Finite(double v, const std::string& path) {
  if (!std::isfinite(v)) Fail(path, "value must be finite");
  return v;
}

double ReadQuantity(const json& v, Kind kind, const std::string& path) {
  const Tagged t = SplitTagged(v, path);
  Finite(t.value, path);
  switch (kind) {
    case Kind::kLength:
      if (t.unit.empty() || t.unit == "km") return t.value;
      if (t.unit == "m") return t.value / 1000.0;
      Fail(path, "unknown length unit '" + t.unit + "' (use km or m)");
    case Kind::kAngle:
      if (t.unit.empty() || t.unit == "rad") return t.value;
      if (t.unit == "deg") return t.value * M_PI / 180.0;
      Fail(path, "unknown angle unit '" + t.unit + "' (use rad or deg)");
    case Kind::kPlain:
      if (t.unit.empty()) return t.value;
      Fail(path, "takes a plain number, got unit '" + t.unit + "'");
    case Kind::kRatio:
      if (t.unit == "dB") return std::pow(10.0, t.value / 10.0);
      if (t.unit == "linear") return t.value;
      if (t.unit.empty()) Fail(path, "missing unit tag (use dB or linear)");
      Fail(path, "unknown unit tag '" + t.unit + "' (use dB or linear)");
    case Kind::kPower:
      if (t.unit == "W") return t.value;
      if (t.unit == "dB" || t.unit == "dBW") {
        return std::pow(10.0, t.value / 10.0);
      }
      if (t.unit == "dBm") return std::pow(10.0, (t.value - 30.0) / 10.0);
      if (t.unit.empty()) Fail(path, "missing unit tag (use W, dBW, dBm or dB)");
      Fail(path, "unknown unit tag '" + t.unit + "' (use W, dBW, dBm or dB)");
    default:
      break;
  }
  Fail(path, "not a quantity");
}

std::int64_t ReadInteger(const json& v, const std::string& path,
                         std::int64_t lo, std::int64_t hi) {
  double d = 0.0;
  if (v.is_number_integer()) {
    d = static_cast<double>(v.get<std::int64_t>());
  } else if (v.is_number()) {
    d = v.get<double>();
  } else {
    Fail(path, "expected an integer");
  }
  if (!std::isfinite(d) || d != std::floor(d)) Fail(path, "expected an integer");
  if (d < static_cast<double>(lo) || d > static_cast<double>(hi)) {
    Fail(path, "out of range");
  }
  return v.is_number_integer() ? v.get<std::int64_t>()
                               : static_cast<std::int64_t>(d);
}

std::string Tag(double v, const char* unit) {
  return FormatNumber(v) + " " + unit;
}

template <typename T>
Field Quantity(std::string section, std::string key, Kind kind, T ScenarioConfig::*member) {
  return {section, key, kind,
          [member, kind](ScenarioConfig& c, const json& v, const std::string& p) {
            c.*member = ReadQuantity(v, kind, p);
          },
          [member, kind](const ScenarioConfig& c) -> ordered_json {
            if (kind == Kind::kRatio) return Tag(c.*member, "linear");
            if (kind == Kind::kPower) return Tag(c.*member, "W");
            return c.*member;
          }};
}

Field GeometryQuantity(std::string key, Kind kind, double GeometryParams::*member) {
  return {"geometry", key, kind,
          [member, kind](ScenarioConfig& c, const json& v, const std::string& p) {
            c.geometry.*member = ReadQuantity(v, kind, p);
          },
          [member](const ScenarioConfig& c) -> ordered_json {
            return c.geometry.*member;
          }};
}

Field OptionalQuantity(std::string section, std::string key, Kind kind,
                       std::optional<double> ScenarioConfig::*member) {
  return {section, key, kind,
          [member, kind](ScenarioConfig& c, const json& v, const std::string& p) {
            if (v.is_null()) {
              (c.*member).reset();
            } else {
              c.*member = ReadQuantity(v, kind, p);
            }
          },
          [member, kind](const ScenarioConfig& c) -> ordered_json {
            if (!(c.*member)) return nullptr;
            if (kind == Kind::kRatio) return Tag(*(c.*member), "linear");
            return *(c.*member);
          }};
}

Field OrderField(std::string key, int QuadratureOrders::*member) {
  return {"quadrature", key, Kind::kInt,
          [member](ScenarioConfig& c, const json& v, const std::string& p) {
            c.orders.*member = static_cast<int>(ReadInteger(v, p, 1, 100000));
          },
          [member](const ScenarioConfig& c) -> ordered_json {
            return c.orders.*member;
          }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back(GeometryQuantity("H1", Kind::kLength, &GeometryParams::relay_altitude));
    f.push_back(GeometryQuantity("L", Kind::kLength, &GeometryParams::coverage_radius));
    f.push_back(GeometryQuantity("T_I", Kind::kLength, &GeometryParams::interferer_radius));
    f.push_back(GeometryQuantity("R_E", Kind::kLength, &GeometryParams::earth_radius));
    f.push_back(GeometryQuantity("U1", Kind::kLength, &GeometryParams::outer_radius));
    f.push_back(GeometryQuantity("U2", Kind::kLength, &GeometryParams::inner_radius));
    f.push_back(GeometryQuantity("Psi", Kind::kAngle, &GeometryParams::apex_angle));
    f.push_back(GeometryQuantity("density", Kind::kPlain, &GeometryParams::receiver_density));
    f.push_back(GeometryQuantity("H_max_R", Kind::kLength, &GeometryParams::max_relay_altitude));

    f.push_back(Quantity("channel", "b", Kind::kRatio, &ScenarioConfig::b));
    f.push_back({"channel", "m", Kind::kInt,
                 [](ScenarioConfig& c, const json& v, const std::string& p) {
                   c.m = static_cast<int>(ReadInteger(v, p, 1, 1000));
                 },
                 [](const ScenarioConfig& c) -> ordered_json { return c.m; }});
    f.push_back(Quantity("channel", "Omega", Kind::kRatio, &ScenarioConfig::omega));
    f.push_back(Quantity("channel", "K", Kind::kRatio, &ScenarioConfig::k_factor));
    f.push_back(Quantity("channel", "Omega_R", Kind::kRatio, &ScenarioConfig::omega_r));
    f.push_back(Quantity("channel", "lambda_I", Kind::kPlain, &ScenarioConfig::lambda_i));
    f.push_back(Quantity("channel", "n1", Kind::kPlain, &ScenarioConfig::n1));
    f.push_back(Quantity("channel", "n2", Kind::kPlain, &ScenarioConfig::n2));
    f.push_back(Quantity("channel", "sigma2", Kind::kPower, &ScenarioConfig::sigma2));

    f.push_back(Quantity("power", "P_S", Kind::kPower, &ScenarioConfig::p_s));
    f.push_back(Quantity("power", "P_R", Kind::kPower, &ScenarioConfig::p_r));
    f.push_back(Quantity("power", "P_I", Kind::kPower, &ScenarioConfig::p_i));

    f.push_back(Quantity("thresholds", "gamma_th", Kind::kRatio, &ScenarioConfig::gamma_th));
    f.push_back(Quantity("thresholds", "gamma_out", Kind::kRatio, &ScenarioConfig::gamma_out));
    f.push_back(Quantity("thresholds", "z", Kind::kRatio, &ScenarioConfig::z));

    f.push_back(OrderField("G", &QuadratureOrders::g));
    f.push_back(OrderField("H", &QuadratureOrders::h));
    f.push_back(OrderField("J", &QuadratureOrders::j));
    f.push_back(OrderField("Q", &QuadratureOrders::q));

    f.push_back({"mc", "trials", Kind::kCount,
                 [](ScenarioConfig& c, const json& v, const std::string& p) {
                   c.trials = ReadInteger(v, p, 1, std::int64_t{1} << 40);
                 },
                 [](const ScenarioConfig& c) -> ordered_json { return c.trials; }});
    f.push_back({"mc", "seed", Kind::kCount,
                 [](ScenarioConfig& c, const json& v, const std::string& p) {
                   if (v.is_number_unsigned()) {
                     c.seed = v.get<std::uint64_t>();
                   } else {
                     c.seed = static_cast<std::uint64_t>(ReadInteger(
                         v, p, 0, std::numeric_limits<std::int64_t>::max()));
                   }
                 },
                 [](const ScenarioConfig& c) -> ordered_json { return c.seed; }});
    f.push_back({"mc", "threads", Kind::kInt,
                 [](ScenarioConfig& c, const json& v, const std::string& p) {
                   c.threads = static_cast<int>(ReadInteger(v, p, 0, 1024));
                 },
                 [](const ScenarioConfig& c) -> ordered_json { return c.threads; }});

    f.push_back(Quantity("optimizer", "D_SD", Kind::kPlain, &ScenarioConfig::d_sd));
    f.push_back(Quantity("optimizer", "B_S", Kind::kPlain, &ScenarioConfig::b_s));
    f.push_back(Quantity("optimizer", "B_R", Kind::kPlain, &ScenarioConfig::b_r));
    f.push_back(Quantity("optimizer", "T_total", Kind::kPlain, &ScenarioConfig::t_total));
    f.push_back(Quantity("optimizer", "P_S_max", Kind::kPower, &ScenarioConfig::p_s_max));
    f.push_back(Quantity("optimizer", "P_R_max", Kind::kPower, &ScenarioConfig::p_r_max));
    f.push_back(OptionalQuantity("optimizer", "gamma_SR", Kind::kRatio, &ScenarioConfig::gamma_sr));
    f.push_back(OptionalQuantity("optimizer", "gamma_RD", Kind::kRatio, &ScenarioConfig::gamma_rd));
    f.push_back(OptionalQuantity("optimizer", "d0", Kind::kLength, &ScenarioConfig::d0));
    f.push_back({"optimizer", "rd_scenario", Kind::kEnum,
                 [](ScenarioConfig& c, const json& v, const std::string& p) {
                   const std::string s = v.is_string() ? v.get<std::string>() : "";
                   if (s == "non-interference") {
                     c.rd_scenario = RelayScenario::kNonInterference;
                   } else if (s == "interference") {
                     c.rd_scenario = RelayScenario::kInterference;
                   } else {
                     Fail(p, "expected \"non-interference\" or \"interference\"");
                   }
                 },
                 [](const ScenarioConfig& c) -> ordered_json {
                   return std::string(ScenarioName(c.rd_scenario));
                 }});
    f.push_back({"optimizer", "step_rule", Kind::kEnum,
                 [](ScenarioConfig& c, const json& v, const std::string& p) {
                   if (!v.is_string()) Fail(p, "expected a step rule name");
                   try {
                     c.step_rule = StepRuleFromName(v.get<std::string>());
                   } catch (const ConfigError& e) {
                     Fail(p, e.what());
                   }
                 },
                 [](const ScenarioConfig& c) -> ordered_json {
                   return std::string(StepRuleName(c.step_rule));
                 }});
    return f;
  }();
  return fields;
}

const Field* FindField(std::string_view section, std::string_view key) {
  for (const Field& f : Fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

// Re-raises library validation failures as config errors.
template <typename Fn>
void Checked(const char* section, Fn&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    throw ConfigError(std::string(section) + ": " + e.what());
  }
}

}  // namespace

void ValidateConfig(const ScenarioConfig& c, bool with_interferer) {
  Checked("geometry", [&] { c.geometry.Validate(with_interferer); });
  Checked("channel", [&] {
    SatelliteLink(c);
    RelayLink(c).Validate();
    InterferenceLink(c);
  });
  Checked("quadrature", [&] { c.orders.Validate(); });
  if (with_interferer && c.n2 != 2.0) {
    throw ConfigError("channel.n2: interference analysis supports n2 = 2 only");
  }
}

ScenarioConfig ParseConfig(const json& tree) {
  if (!tree.is_object()) throw ConfigError("scenario root must be an object");
  ScenarioConfig config;
  for (const auto& section : tree.items()) {
    if (!section.value().is_object()) {
      throw ConfigError(section.key() + ": section must be an object");
    }
    for (const auto& entry : section.value().items()) {
      const std::string path = section.key() + "." + entry.key();
      const Field* field = FindField(section.key(), entry.key());
      if (field == nullptr) throw ConfigError(path + ": unknown field");
      field->set(config, entry.value(), path);
    }
  }
  return config;
}

ScenarioConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  json tree;
  try {
    tree = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return ParseConfig(tree);
}

void ApplyOverride(ScenarioConfig& config, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  const std::string lhs(assignment.substr(0, eq));
  const std::size_t dot = lhs.find('.');
  if (eq == std::string_view::npos || dot == std::string::npos) {
    throw ConfigError("override '" + std::string(assignment) +
                      "' must look like section.key=value");
  }
  const Field* field = FindField(lhs.substr(0, dot), lhs.substr(dot + 1));
  if (field == nullptr) throw ConfigError(lhs + ": unknown field");
  const std::string rhs(assignment.substr(eq + 1));
  json value = json::parse(rhs, nullptr, false);
  if (value.is_discarded()) value = rhs;
  field->set(config, value, lhs);
}

ordered_json ResolvedConfig(const ScenarioConfig& config) {
  ordered_json out = ordered_json::object();
  for (const Field& f : Fields()) out[f.section][f.key] = f.get(config);
  return out;
}

ShadowedRicianParams SatelliteLink(const ScenarioConfig& c) {
  return ShadowedRicianParams::Make(c.b, c.m, c.omega, c.p_s / c.sigma2, c.n1);
}

RicianParams RelayLink(const ScenarioConfig& c) {
  return {c.k_factor, c.omega_r, c.n2};
}

InterferenceParams InterferenceLink(const ScenarioConfig& c) {
  return InterferenceParams::Make(RelayLink(c), c.lambda_i, c.p_r, c.p_i,
                                  c.sigma2);
}

SystemModel MakeSystemModel(const ScenarioConfig& c) {
  SystemModel model;
  model.geometry = c.geometry;
  model.satellite = SatelliteLink(c);
  model.relay = RelayLink(c);
  model.interferer_rate = c.lambda_i;
  model.relay_power = c.p_r;
  model.interferer_power = c.p_i;
  model.noise_power = c.sigma2;
  return model;
}

EndToEndInputs MakeEndToEndInputs(const ScenarioConfig& c,
                                  RelayScenario scenario) {
  EndToEndInputs in;
  in.geometry = c.geometry;
  in.satellite = SatelliteLink(c);
  in.relay = RelayLink(c);
  in.scenario = scenario;
  if (scenario == RelayScenario::kInterference) in.interference = InterferenceLink(c);
  in.coverage_threshold = c.gamma_th;
  in.outage_threshold = c.gamma_out;
  in.orders = c.orders;
  return in;
}

}  // namespace satrelay::cli
