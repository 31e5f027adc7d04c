#ifndef DPX_JSON_IO_HPP
#define DPX_JSON_IO_HPP

#include <json.hpp>

#include "dpx/betti.hpp"
#include "dpx/divisor.hpp"
#include "dpx/enumeration.hpp"
#include "dpx/polynomial.hpp"
#include "dpx/sections.hpp"

namespace dpx {

using json = nlohmann::json;

// exact rationals cross the wire as decimal strings
inline json to_json(const Rat& q) {
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline json to_json(const DivisorClass& d) {
    json b = json::array();
    for (int i = 0; i < d.r; ++i) b.push_back(d.b[i]);
    return json{{"r", d.r}, {"a", d.a}, {"b", b}};
}

inline DivisorClass divisor_from_json(const json& j) {
    DivisorClass d;
    d.r = static_cast<std::int8_t>(j.at("r").get<int>());
    d.a = j.at("a").get<std::int64_t>();
    auto b = j.at("b");
    if (static_cast<int>(b.size()) != d.r)
        throw std::invalid_argument("divisor json: b length != r");
    for (int i = 0; i < d.r; ++i) d.b[i] = b[i].get<std::int64_t>();
    return d;
}

inline json to_json(const DegreeSlice& s) {
    json entries = json::array();
    for (const auto& e : s.entries)
        entries.push_back(json{{"class", to_json(e.cls)},
                               {"orbit_size", e.orbit_size},
                               {"h0", e.h0}});
    return json{{"t", s.t},
                {"types", entries},
                {"class_count", s.class_count()},
                {"hilbert_value", s.hilbert_sum().get_str()}};
}

inline json to_json(const Polynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(to_json(c));
    return json{{"coefficients_ascending", coeffs}, {"degree", p.degree()}};
}

inline json to_json(const PointConfig& pc) {
    json pts = json::array();
    for (const auto& p : pc.points)
        pts.push_back(json::array({p.h[0].get_str(), p.h[1].get_str(), p.h[2].get_str()}));
    return json{{"r", pc.r},
                {"seed", pc.seed},
                {"height", pc.height},
                {"points", pts},
                {"certificate", pc.certificate}};
}

inline PointConfig point_config_from_json(const json& j) {
    PointConfig pc;
    pc.r = j.at("r").get<int>();
    pc.seed = j.at("seed").get<std::uint64_t>();
    pc.height = j.at("height").get<int>();
    for (const auto& p : j.at("points")) {
        PlanePoint pp;
        for (int k = 0; k < 3; ++k) pp.h[k] = Int(p[k].get<std::string>());
        pc.points.push_back(pp);
    }
    std::string why;
    if (!certify(pc, &why)) throw genericity_error("loaded config fails: " + why);
    return pc;
}

inline json to_json(const BettiDiagram& d) {
    json rows = json::array();
    for (int row = 0; row <= d.reg; ++row) {
        json cols = json::array();
        for (int i = 0; i <= d.pd; ++i) cols.push_back(d.b(i, i + row).get_str());
        rows.push_back(cols);
    }
    return json{{"reg", d.reg}, {"pd", d.pd}, {"rows", rows}};
}

}  // namespace dpx

#endif
