#ifndef DPX_WEYL_HPP
#define DPX_WEYL_HPP

#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "dpx/cohomology.hpp"
#include "dpx/curves.hpp"
#include "dpx/divisor.hpp"
#include "dpx/enumeration.hpp"

namespace dpx {

inline bool is_root(const DivisorClass& d) {
    return self_intersection(d) == -2 && degree(d) == 0;
}

// simple roots: alpha_0 = L - E1 - E2 - E3, alpha_i = E_i - E_{i+1}
inline std::vector<DivisorClass> simple_roots(const Surface& s) {
    if (s.r < 3) throw std::invalid_argument("simple_roots: need r >= 3");
    std::vector<DivisorClass> out;
    DivisorClass a0 = line_class(s);
    a0.b[0] = a0.b[1] = a0.b[2] = -1;
    out.push_back(a0);
    for (int i = 0; i + 1 < s.r; ++i) {
        DivisorClass ai = DivisorClass::zero(s);
        ai.b[i] = 1;
        ai.b[i + 1] = -1;
        out.push_back(ai);
    }
    return out;
}

// s_alpha(D) = D + (D.alpha) alpha for alpha^2 = -2
inline DivisorClass reflect(const DivisorClass& d, const DivisorClass& alpha) {
    if (!is_root(alpha)) throw std::invalid_argument("reflect: alpha is not a root");
    return d + intersect(d, alpha) * alpha;
}

// BFS closure under the simple reflections
inline std::vector<DivisorClass> weyl_orbit(const DivisorClass& d,
                                            std::size_t cap = 1u << 20) {
    auto roots = simple_roots(d.surface());
    std::unordered_set<DivisorClass, DivisorClassHash> seen{d};
    std::deque<DivisorClass> queue{d};
    while (!queue.empty()) {
        DivisorClass cur = queue.front();
        queue.pop_front();
        for (const auto& alpha : roots) {
            DivisorClass next = reflect(cur, alpha);
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw capacity_error("weyl orbit exceeds cap " + std::to_string(cap));
                queue.push_back(next);
            }
        }
    }
    std::vector<DivisorClass> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

struct NefOrbit {
    DivisorClass representative;  // smallest member in class order
    std::vector<DivisorClass> members;
    std::string label;
};

namespace detail {

// name a nef class by a recognizable decomposition
inline std::string orbit_label(const DivisorClass& d) {
    const Surface s = d.surface();
    const CurveInventory& inv = inventory(s);
    if (d == anticanonical_class(s)) return "-K";
    if (d.a % 2 == 0) {
        DivisorClass half = d;
        bool even = true;
        for (int i = 0; i < d.r; ++i) even &= d.b[i] % 2 == 0;
        if (even) {
            half.a /= 2;
            for (int i = 0; i < d.r; ++i) half.b[i] /= 2;
            if (self_intersection(half) == 0 && degree(half) == 2 && inv.is_nef(half))
                return "2Q";
        }
    }
    for (const auto& e : inv.minus_one_curves()) {
        DivisorClass c = d - e;
        if (self_intersection(c) == 1 && degree(c) == 3 && inv.is_nef(c))
            return "C+E (C.E=" + std::to_string(intersect(c, e)) + ")";
    }
    for (const auto& q : inv.conics()) {
        DivisorClass c = d - q;
        if (self_intersection(c) == 1 && degree(c) == 3 && inv.is_nef(c))
            return "C+Q (C.Q=" + std::to_string(intersect(c, q)) + ")";
    }
    return "deg=" + std::to_string(degree(d)) +
           ",selfint=" + std::to_string(self_intersection(d));
}

}  // namespace detail

// Weyl orbit partition of the nef part of a degree slice
inline std::vector<NefOrbit> nef_orbit_types(const Surface& s, int t,
                                             EnumerationOptions opt = {}) {
    const CurveInventory& inv = inventory(s);
    DegreeSlice sl = effective_slice(s, t, opt);
    std::set<DivisorClass> nef;
    for (const auto& e : sl.entries) {
        if (!inv.is_nef(e.cls)) continue;  // nefness is permutation-invariant
        for (const auto& m : perm_orbit(e.cls)) nef.insert(m);
    }
    std::vector<NefOrbit> out;
    while (!nef.empty()) {
        DivisorClass rep = *nef.begin();
        NefOrbit orb;
        orb.members = weyl_orbit(rep);
        orb.representative = orb.members.front();
        orb.label = detail::orbit_label(orb.representative);
        for (const auto& m : orb.members) {
            auto it = nef.find(m);
            if (it == nef.end()) throw std::logic_error("weyl orbit escapes the nef slice");
            nef.erase(it);
        }
        out.push_back(std::move(orb));
    }
    return out;
}

}  // namespace dpx

#endif
