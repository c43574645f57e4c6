#ifndef EVBAYES_MODEL_HPP
#define EVBAYES_MODEL_HPP

#include <optional>
#include <string>

namespace evbayes {

enum class Model { gp, gev, nhpp };

inline const char* model_name(Model m) {
  switch (m) {
    case Model::gp: return "gp";
    case Model::gev: return "gev";
    case Model::nhpp: return "nhpp";
  }
  return "?";
}

inline std::optional<Model> model_from_name(const std::string& s) {
  if (s == "gp") return Model::gp;
  if (s == "gev") return Model::gev;
  if (s == "nhpp") return Model::nhpp;
  return std::nullopt;
}

}  // namespace evbayes

#endif
