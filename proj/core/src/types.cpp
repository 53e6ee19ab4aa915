#include "bmetro/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace bmetro {

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::frequency: return "frequency";
    case Parameter::displacement: return "displacement";
    case Parameter::squeezing: return "squeezing";
    case Parameter::loss: return "loss";
    case Parameter::temperature: return "temperature";
  }
  return "unknown";
}

std::string_view symbol(Parameter p) {
  switch (p) {
    case Parameter::frequency: return "omega";
    case Parameter::displacement: return "alpha";
    case Parameter::squeezing: return "epsilon";
    case Parameter::loss: return "Gamma";
    case Parameter::temperature: return "n_E";
  }
  return "?";
}

std::optional<Parameter> parse_parameter(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "frequency" || s == "omega" || s == "w" || s == "fre") return Parameter::frequency;
  if (s == "displacement" || s == "alpha" || s == "disp") return Parameter::displacement;
  if (s == "squeezing" || s == "epsilon" || s == "eps") return Parameter::squeezing;
  if (s == "loss" || s == "gamma" || s == "loss-rate") return Parameter::loss;
  if (s == "temperature" || s == "n_e" || s == "ne" || s == "n-env" || s == "temp")
    return Parameter::temperature;
  return std::nullopt;
}

}  // namespace bmetro
