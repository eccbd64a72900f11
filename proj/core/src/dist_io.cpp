#include "cltlab/dist_io.hpp"

#include <json.hpp>

#include "cltlab/error.hpp"

namespace cltlab {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

Rational rational_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw Error(ErrorKind::Parse, std::string("field '") + key + "' missing or not a string");
  }
  return Rational::parse(obj.at(key).get<std::string>());
}

}  // namespace

FiniteDist parse_dist_text(std::string_view text) {
  std::vector<Atom> atoms;
  text = trim(text);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty distribution text");
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const std::size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorKind::Parse, "atom '" + std::string(token) + "' is not of the form value:prob");
    }
    atoms.push_back({Rational::parse(token.substr(0, colon)), Rational::parse(token.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return FiniteDist::make(std::move(atoms));
}

std::string format_dist_text(const FiniteDist& d) {
  std::string out;
  for (const auto& a : d.atoms()) {
    if (!out.empty()) out += ',';
    out += a.value.str();
    out += ':';
    out += a.prob.str();
  }
  return out;
}

std::string dist_to_json(const FiniteDist& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"v", a.value.str()}, {"p", a.prob.str()}});
  return json{{"atoms", atoms}}.dump();
}

FiniteDist dist_from_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("atoms") || !doc.at("atoms").is_array()) {
    throw Error(ErrorKind::Parse, "distribution JSON needs an 'atoms' array");
  }
  std::vector<Atom> atoms;
  for (const auto& a : doc.at("atoms")) atoms.push_back({rational_field(a, "v"), rational_field(a, "p")});
  return FiniteDist::make(std::move(atoms));
}

std::string mixture_to_json(const Mixture& m) {
  json comps = json::array();
  for (const auto& c : m.components()) {
    if (c.component.degenerate()) {
      comps.push_back({{"w", c.weight.str()}, {"zero", true}});
    } else {
      comps.push_back({{"w", c.weight.str()},
                       {"a", c.component.pos().str()},
                       {"b", c.component.neg().str()},
                       {"p_pos", c.component.prob_pos().str()}});
    }
  }
  return json{{"components", comps}}.dump();
}

Mixture mixture_from_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("components") || !doc.at("components").is_array()) {
    throw Error(ErrorKind::Parse, "mixture JSON needs a 'components' array");
  }
  std::vector<MixtureComponent> comps;
  for (const auto& c : doc.at("components")) {
    const Rational w = rational_field(c, "w");
    if (c.contains("zero") && c.at("zero").is_boolean() && c.at("zero").get<bool>()) {
      comps.push_back({w, TwoValued::zero()});
    } else {
      comps.push_back({w, TwoValued::make(rational_field(c, "a"), rational_field(c, "b"),
                                          rational_field(c, "p_pos"))});
    }
  }
  return Mixture::make(std::move(comps));
}

}  // namespace cltlab
