#pragma once

#include <map>
#include <string>
#include <vector>

#include "perihom/effective.hpp"
#include "perihom/fields.hpp"

namespace perihom {

// Legacy ASCII VTK (unstructured grid) with optional point-data vectors and
// per-triangle symmetric tensors (written as three scalar cell arrays).
void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<std::pair<std::string, const NodalField*>>& fields = {},
               const std::vector<std::pair<std::string, const std::vector<Sym2>*>>& cell_fields =
                   {});

// Flat key-value serialization of the effective model (q in Mandel order).
std::string effective_to_text(const EffectiveModel& model);
void write_effective(const std::string& path, const EffectiveModel& model);
EffectiveModel read_effective(const std::string& path);

// Flat `section.key = value` configuration text with '#' comments.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_config_text(const std::string& text);
KeyValues parse_config_file(const std::string& path);

// Typed getters; throw ConfigError with the key name on bad input.
double get_double(const KeyValues& kv, const std::string& key, double fallback);
bool get_bool(const KeyValues& kv, const std::string& key, bool fallback);
std::string get_string(const KeyValues& kv, const std::string& key, const std::string& fallback);
std::vector<double> get_doubles(const KeyValues& kv, const std::string& key,
                                const std::vector<double>& fallback);

// Deterministic float formatting shared by every writer (%.17g).
std::string format_double(double v);

}  // namespace perihom
