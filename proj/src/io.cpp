#include "perihom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace perihom {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<std::pair<std::string, const NodalField*>>& fields,
               const std::vector<std::pair<std::string, const std::vector<Sym2>*>>& cell_fields) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "# vtk DataFile Version 3.0\n";
    out << "perihom field output\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.node_count() << " double\n";
    for (const auto& n : mesh.nodes)
        out << format_double(n.x) << " " << format_double(n.y) << " 0\n";
    out << "CELLS " << mesh.triangle_count() << " " << 4 * mesh.triangle_count() << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    out << "CELL_TYPES " << mesh.triangle_count() << "\n";
    for (int t = 0; t < mesh.triangle_count(); ++t) out << "5\n";
    if (!fields.empty()) {
        out << "POINT_DATA " << mesh.node_count() << "\n";
        for (const auto& [name, field] : fields) {
            out << "VECTORS " << name << " double\n";
            for (const auto& v : field->values)
                out << format_double(v.x) << " " << format_double(v.y) << " 0\n";
        }
    }
    if (!cell_fields.empty()) {
        out << "CELL_DATA " << mesh.triangle_count() << "\n";
        for (const auto& [name, field] : cell_fields) {
            const char* suffix[3] = {"_11", "_22", "_12"};
            for (int c = 0; c < 3; ++c) {
                out << "SCALARS " << name << suffix[c] << " double 1\n";
                out << "LOOKUP_TABLE default\n";
                for (const auto& s : *field) {
                    const double v = (c == 0 ? s.m11 : (c == 1 ? s.m22 : s.m12));
                    out << format_double(v) << "\n";
                }
            }
        }
    }
    if (!out) throw ConfigError("failed while writing " + path);
}

std::string effective_to_text(const EffectiveModel& model) {
    std::ostringstream out;
    out << "# effective model (q in Mandel order 11,22,12)\n";
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            out << "q_mandel_" << a << b << " = " << format_double(model.q_mandel(a, b)) << "\n";
    out << "theta_tilde = " << format_double(model.theta_tilde) << "\n";
    out << "f_tilde_1 = " << format_double(model.f_tilde.x) << "\n";
    out << "f_tilde_2 = " << format_double(model.f_tilde.y) << "\n";
    return out.str();
}

void write_effective(const std::string& path, const EffectiveModel& model) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << effective_to_text(model);
}

EffectiveModel read_effective(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const KeyValues kv = parse_config_text(buf.str());
    EffectiveModel m;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const std::string key = "q_mandel_" + std::to_string(a) + std::to_string(b);
            if (!kv.count(key)) throw ConfigError("effective model file misses " + key);
            m.q_mandel(a, b) = get_double(kv, key, 0.0);
        }
    m.theta_tilde = get_double(kv, "theta_tilde", 0.0);
    m.f_tilde = {get_double(kv, "f_tilde_1", 0.0), get_double(kv, "f_tilde_2", 0.0)};
    return m;
}

KeyValues parse_config_text(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " has an empty key");
        kv[key] = value;
    }
    return kv;
}

KeyValues parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: " + it->second);
    }
}

bool get_bool(const KeyValues& kv, const std::string& key, bool fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ConfigError("config key '" + key + "' is not a boolean: " + it->second);
}

std::string get_string(const KeyValues& kv, const std::string& key, const std::string& fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

std::vector<double> get_doubles(const KeyValues& kv, const std::string& key,
                                const std::vector<double>& fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::vector<double> out;
    std::string token;
    std::istringstream in(it->second);
    while (std::getline(in, token, ',')) {
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "' has a bad entry: " + token);
        }
    }
    if (out.empty()) throw ConfigError("config key '" + key + "' is an empty list");
    return out;
}

}  // namespace perihom
