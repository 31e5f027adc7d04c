#ifndef DPX_CURVES_HPP
#define DPX_CURVES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "dpx/divisor.hpp"

namespace dpx {

namespace detail {

// Non-increasing integer vectors of given length with prescribed sum and
// sum of squares. Candidate sets are tiny; the recursion prunes on both.
inline void patterns_rec(std::vector<std::int64_t>& prefix, int rem_len,
                         std::int64_t rem_sum, std::int64_t rem_sq, std::int64_t hi,
                         std::vector<std::vector<std::int64_t>>& out) {
    if (rem_len == 0) {
        if (rem_sum == 0 && rem_sq == 0) out.push_back(prefix);
        return;
    }
    std::int64_t cap = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rem_sq))) + 1;
    while (cap > 0 && cap * cap > rem_sq) --cap;
    for (std::int64_t v = std::min(hi, cap); v >= -cap; --v) {
        if (v * v > rem_sq) continue;
        std::int64_t left = rem_sum - v;
        if (left > (rem_len - 1) * v) continue;  // later entries are <= v
        std::int64_t rest = rem_sq - v * v;
        std::int64_t rest_cap = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest))) + 1;
        if (left < -(rem_len - 1) * rest_cap) continue;
        prefix.push_back(v);
        patterns_rec(prefix, rem_len - 1, left, rest, v, out);
        prefix.pop_back();
    }
}

inline std::vector<std::vector<std::int64_t>> patterns(int length, std::int64_t sum,
                                                       std::int64_t sq) {
    std::vector<std::vector<std::int64_t>> out;
    if (sq < 0) return out;
    std::vector<std::int64_t> prefix;
    patterns_rec(prefix, length, sum, sq, sq + 1, out);
    return out;
}

}  // namespace detail

// All classes with D^2 = self_int and -K.D = deg, as perm-canonical
// representatives. The Cauchy-Schwarz bound (sum b)^2 <= r * (sum b^2)
// confines the L-coefficient to a finite window.
inline std::vector<DivisorClass> classes_with(const Surface& s, std::int64_t self_int,
                                              std::int64_t deg) {
    std::vector<DivisorClass> out;
    const int r = s.r;
    // (deg - 3a)^2 <= r (a^2 - self_int)
    for (std::int64_t a = -64; a <= 64; ++a) {
        std::int64_t sq = a * a - self_int;
        if (sq < 0) continue;
        std::int64_t lhs = (deg - 3 * a) * (deg - 3 * a);
        if (lhs > r * sq) continue;
        for (const auto& p : detail::patterns(r, deg - 3 * a, sq)) {
            DivisorClass d;
            d.r = static_cast<std::int8_t>(r);
            d.a = a;
            std::copy(p.begin(), p.end(), d.b.begin());
            out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<DivisorClass> expand_orbits(const std::vector<DivisorClass>& reps) {
    std::vector<DivisorClass> out;
    for (const auto& rep : reps) {
        auto orb = perm_orbit(rep);
        out.insert(out.end(), orb.begin(), orb.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Distinguished curve classes of one surface plus the Cox generator list.
// Built once per r and cached.
class CurveInventory {
  public:
    explicit CurveInventory(const Surface& s) : surface_(s) {
        minus_one_ = expand_orbits(classes_with(s, -1, 1));
        if (s.r >= 3) {
            roots_ = expand_orbits(classes_with(s, -2, 0));
            conics_ = expand_orbits(filter_nef(classes_with(s, 0, 2)));
            // the paper's cubic table counts all classes with C^2 = 1,
            // -K.C = 3; on S_8 this includes 240 non-nef classes -K + 2E
            cubics_ = expand_orbits(classes_with(s, 1, 3));
        }
        generator_classes_ = minus_one_;
        if (s.r == 8) generator_classes_.push_back(anticanonical_class(s));
        std::sort(generator_classes_.begin(), generator_classes_.end());
    }

    const Surface& surface() const { return surface_; }
    const std::vector<DivisorClass>& minus_one_curves() const { return minus_one_; }
    const std::vector<DivisorClass>& roots() const { return roots_; }
    const std::vector<DivisorClass>& conics() const { return conics_; }
    const std::vector<DivisorClass>& twisted_cubics() const { return cubics_; }

    // distinct classes of Cox generators (the -K class appears once here;
    // it owns two generator slots on S_8)
    const std::vector<DivisorClass>& generator_classes() const { return generator_classes_; }

    bool is_nef(const DivisorClass& d) const {
        for (const auto& e : minus_one_) {
            if (intersect(d, e) < 0) return false;
        }
        return true;
    }

    bool is_minus_one_class(const DivisorClass& d) const {
        return std::binary_search(minus_one_.begin(), minus_one_.end(), d);
    }

  private:
    std::vector<DivisorClass> filter_nef(std::vector<DivisorClass> reps) const {
        std::vector<DivisorClass> out;
        for (auto& rep : reps) {
            bool nef = true;
            for (const auto& e : minus_one_) {
                if (intersect(rep, e) < 0) {
                    nef = false;
                    break;
                }
            }
            if (nef) out.push_back(rep);
        }
        return out;
    }

    Surface surface_;
    std::vector<DivisorClass> minus_one_;
    std::vector<DivisorClass> roots_;
    std::vector<DivisorClass> conics_;
    std::vector<DivisorClass> cubics_;
    std::vector<DivisorClass> generator_classes_;
};

inline const CurveInventory& inventory(const Surface& s) {
    static std::mutex mu;
    static std::unique_ptr<CurveInventory> cache[9];
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[s.r]) cache[s.r] = std::make_unique<CurveInventory>(s);
    return *cache[s.r];
}

// Generator slot list: classes in canonical order, one slot per basis vector.
// On S_8 the -K class carries two slots (h^0 = 2).
struct GeneratorSlot {
    DivisorClass cls;
    int basis_index = 0;
};

inline std::vector<GeneratorSlot> cox_generators(const Surface& s) {
    if (s.r < 4) throw std::invalid_argument("cox_generators: need 4 <= r <= 8");
    const CurveInventory& inv = inventory(s);
    std::vector<GeneratorSlot> out;
    for (const auto& c : inv.generator_classes()) {
        int slots = (s.r == 8 && c == anticanonical_class(s)) ? 2 : 1;
        for (int k = 0; k < slots; ++k) out.push_back({c, k});
    }
    return out;
}

}  // namespace dpx

#endif
