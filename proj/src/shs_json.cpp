#include "aoi/shs_json.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace aoi {
namespace {

using nlohmann::json;

std::string format_column(const ResetColumn& c) {
  return c.is_zero() ? std::string("0") : "x" + std::to_string(c.source());
}

ResetColumn parse_column(const std::string& s, const std::string& where) {
  if (s == "0") return ResetColumn::zero();
  const bool digits = s.size() >= 2 && s.size() <= 10 && s[0] == 'x' &&
                      std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); });
  if (!digits) throw std::invalid_argument(where + ": reset column must be \"0\" or \"x<k>\", got \"" + s + "\"");
  return ResetColumn::copy(std::stoul(s.substr(1)));
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw std::invalid_argument(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(where + ": bad \"" + key + "\": " + e.what());
  }
}

}  // namespace

std::string format_rate(const RateSpec& rate) {
  const std::string base = rate.base == BaseRate::Mu1 ? "mu1" : "mu2";
  return rate.coefficient == 1 ? base : std::to_string(rate.coefficient) + "*" + base;
}

RateSpec parse_rate(const std::string& text) {
  RateSpec r;
  std::string base = text;
  if (const auto star = text.find('*'); star != std::string::npos) {
    const std::string coef = text.substr(0, star);
    if (coef.empty() || coef.size() > 9) throw std::invalid_argument("bad rate coefficient in \"" + text + "\"");
    unsigned k = 0;
    for (char ch : coef) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("bad rate coefficient in \"" + text + "\"");
      k = k * 10 + static_cast<unsigned>(ch - '0');
    }
    if (k == 0) throw std::invalid_argument("rate coefficient must be at least 1 in \"" + text + "\"");
    r.coefficient = k;
    base = text.substr(star + 1);
  }
  if (base == "mu1") {
    r.base = BaseRate::Mu1;
  } else if (base == "mu2") {
    r.base = BaseRate::Mu2;
  } else {
    throw std::invalid_argument("rate must be mu1, mu2 or k*mu1 / k*mu2, got \"" + text + "\"");
  }
  return r;
}

nlohmann::json model_to_json(const ShsModel& model) {
  json transitions = json::array();
  for (const auto& t : model.transitions) {
    json reset = json::array();
    for (const auto& c : t.reset) reset.push_back(format_column(c));
    transitions.push_back({{"from", t.source}, {"to", t.dest}, {"rate", format_rate(t.rate)}, {"reset", reset}});
  }
  json activity = json::array();
  for (const auto& a : model.activity) activity.push_back({a.step1, a.step2});
  return {{"schema", kShsModelSchema},   {"name", model.name},         {"processors", model.processors},
          {"age_dim", model.age_dim},     {"states", model.states},     {"activity", activity},
          {"transitions", transitions}};
}

ShsModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model: expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kShsModelSchema)
    throw std::invalid_argument("model: unsupported schema " + j.at("schema").dump());

  ShsModel m;
  m.name = j.value("name", std::string("custom"));
  m.processors = j.contains("processors") ? field<unsigned>(j, "processors", "model") : 2u;
  m.age_dim = field<std::size_t>(j, "age_dim", "model");
  m.states = field<std::vector<std::string>>(j, "states", "model");

  const auto activity = field<std::vector<std::vector<unsigned>>>(j, "activity", "model");
  for (std::size_t q = 0; q < activity.size(); ++q) {
    if (activity[q].size() != 2)
      throw std::invalid_argument("model.activity[" + std::to_string(q) + "]: expected [step1, step2]");
    m.activity.push_back({activity[q][0], activity[q][1]});
  }

  if (!j.contains("transitions") || !j.at("transitions").is_array())
    throw std::invalid_argument("model: \"transitions\" must be an array");
  std::size_t l = 0;
  for (const auto& jt : j.at("transitions")) {
    const std::string where = "model.transitions[" + std::to_string(l++) + "]";
    Transition t;
    t.source = field<std::size_t>(jt, "from", where);
    t.dest = field<std::size_t>(jt, "to", where);
    try {
      t.rate = parse_rate(field<std::string>(jt, "rate", where));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
    for (const auto& c : field<std::vector<std::string>>(jt, "reset", where)) t.reset.push_back(parse_column(c, where));
    m.transitions.push_back(std::move(t));
  }
  return m;
}

}  // namespace aoi
