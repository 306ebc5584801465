#pragma once

// Small helpers over yaml-cpp that turn conversion failures into ParseError
// carrying the document line.

#include "planbench/error.hpp"

#include <Eigen/Dense>
#include <yaml-cpp/yaml.h>

#include <cmath>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace planbench::detail {

inline int line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

inline YAML::Node load_document(std::string_view text) {
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1);
    }
}

inline YAML::Node require(const YAML::Node& map, const char* key) {
    if (!map.IsMap())
        throw ParseError(std::string("expected a mapping containing '") + key + "'", line_of(map));
    YAML::Node child = map[key];
    if (!child) throw ParseError(std::string("missing key '") + key + "'", line_of(map));
    return child;
}

inline void reject_unknown_keys(const YAML::Node& map, std::initializer_list<std::string_view> known) {
    if (!map.IsMap()) throw ParseError("expected a mapping", line_of(map));
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        bool found = false;
        for (auto k : known) found = found || key == k;
        if (!found) throw ParseError("unknown key '" + key + "'", line_of(kv.first));
    }
}

template <typename T>
T as(const YAML::Node& node, const char* what) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ParseError(std::string("invalid value for '") + what + "'", line_of(node));
    }
}

inline double as_double(const YAML::Node& node, const char* what) {
    const double v = as<double>(node, what);
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite value for '") + what + "'", line_of(node));
    return v;
}

inline Eigen::VectorXd as_vector(const YAML::Node& node, const char* what) {
    if (!node.IsSequence())
        throw ParseError(std::string("expected a list for '") + what + "'", line_of(node));
    Eigen::VectorXd v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_double(node[i], what);
    return v;
}

inline Eigen::Vector3d as_vector3(const YAML::Node& node, const char* what) {
    const Eigen::VectorXd v = as_vector(node, what);
    if (v.size() != 3) throw ParseError(std::string("expected 3 values for '") + what + "'", line_of(node));
    return v;
}

/// Full round-trip precision for doubles.
inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void emit_vector(YAML::Emitter& out, const Eigen::VectorXd& v) {
    out << YAML::Flow << YAML::BeginSeq;
    for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i];
    out << YAML::EndSeq;
}

inline void configure(YAML::Emitter& out) {
    out.SetDoublePrecision(17);
    out.SetFloatPrecision(9);
}

} // namespace planbench::detail
