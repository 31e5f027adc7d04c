#ifndef DPX_ENUMERATION_HPP
#define DPX_ENUMERATION_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unordered_set>
#include <vector>

#include "dpx/cohomology.hpp"
#include "dpx/curves.hpp"
#include "dpx/divisor.hpp"
#include "dpx/polynomial.hpp"

namespace dpx {

struct SliceEntry {
    DivisorClass cls;  // perm-canonical representative
    std::int64_t orbit_size = 0;
    std::int64_t h0 = 0;
};

struct DegreeSlice {
    int t = 0;
    std::vector<SliceEntry> entries;  // sorted by class

    Int hilbert_sum() const {
        Int acc = 0;
        for (const auto& e : entries) acc += Int(e.orbit_size) * Int(e.h0);
        return acc;
    }
    std::int64_t class_count() const {
        std::int64_t acc = 0;
        for (const auto& e : entries) acc += e.orbit_size;
        return acc;
    }
};

struct EnumerationOptions {
    std::uint64_t memory_budget = 4ull << 30;  // bytes, for the dedup working set
    int threads = 1;
    std::filesystem::path spill_dir = std::filesystem::temp_directory_path();
};

namespace detail {

constexpr std::uint64_t kEntryCost = 160;  // rough bytes per dedup entry

struct ClassWriter {
    std::ofstream out;
    explicit ClassWriter(const std::filesystem::path& p)
        : out(p, std::ios::binary | std::ios::trunc) {}
    void write(const DivisorClass& d) {
        out.write(reinterpret_cast<const char*>(&d), sizeof(DivisorClass));
    }
};

inline std::vector<DivisorClass> read_classes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::vector<DivisorClass> out;
    DivisorClass d;
    while (in.read(reinterpret_cast<char*>(&d), sizeof(DivisorClass))) out.push_back(d);
    return out;
}

}  // namespace detail

// Degree-sliced enumeration of effective classes: slice_t is the canonical
// dedup of { c + g : c in slice_{t-1}, g a generator class }. Completeness
// rests on Cox(S_r) being generated in degree 1. Keys are perm-canonical;
// orbit sizes restore the full count.
class Enumerator {
  public:
    explicit Enumerator(const Surface& s, EnumerationOptions opt = {})
        : surface_(s), opt_(opt) {
        if (s.r < 4) throw std::invalid_argument("effective_slice: need 4 <= r <= 8");
        DegreeSlice zero;
        zero.t = 0;
        zero.entries.push_back({DivisorClass::zero(s), 1, 1});
        slices_.push_back(std::move(zero));
    }

    const Surface& surface() const { return surface_; }

    const DegreeSlice& slice(int t) {
        if (t < 0) throw std::invalid_argument("slice: t must be >= 0");
        while (static_cast<int>(slices_.size()) <= t) extend();
        return slices_[t];
    }

    Int hilbert_value(int t) { return slice(t).hilbert_sum(); }

  private:
    void extend() {
        const auto& gens = inventory(surface_).generator_classes();
        const DegreeSlice& prev = slices_.back();
        int t = prev.t + 1;

        int threads = std::max(1, opt_.threads);
        std::uint64_t per_thread_budget = opt_.memory_budget / (threads + 1);
        std::vector<std::unordered_set<DivisorClass, DivisorClassHash>> local(threads);
        std::vector<std::vector<std::filesystem::path>> spills(threads);

        auto worker = [&](int w) {
            auto& set = local[w];
            for (std::size_t i = w; i < prev.entries.size(); i += threads) {
                const DivisorClass& c = prev.entries[i].cls;
                for (const auto& g : gens) set.insert(perm_canonical(c + g));
                if (set.size() * detail::kEntryCost > per_thread_budget)
                    spill(set, spills[w], w);
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
            for (auto& th : pool) th.join();
        }

        // merge locals and spilled runs into one sorted unique list
        std::vector<DivisorClass> keys;
        for (auto& set : local) {
            keys.insert(keys.end(), set.begin(), set.end());
            set.clear();
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (auto& runs : spills) {
            for (const auto& path : runs) {
                std::vector<DivisorClass> run = detail::read_classes(path);
                std::filesystem::remove(path);
                std::vector<DivisorClass> merged;
                merged.reserve(keys.size() + run.size());
                std::merge(keys.begin(), keys.end(), run.begin(), run.end(),
                           std::back_inserter(merged));
                merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                keys = std::move(merged);
            }
        }
        if (keys.size() * detail::kEntryCost > opt_.memory_budget)
            throw capacity_error("slice exceeds memory budget at degree " + std::to_string(t));

        DegreeSlice next;
        next.t = t;
        next.entries.resize(keys.size());
        auto fill = [&](int w) {
            H0Cache cache;
            for (std::size_t i = w; i < keys.size(); i += threads) {
                std::int64_t h = cache(keys[i]);
                next.entries[i] = {keys[i], perm_orbit_size(keys[i]), h};
            }
        };
        if (threads == 1) {
            fill(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < threads; ++w) pool.emplace_back(fill, w);
            for (auto& th : pool) th.join();
        }
        // sums of effective generator classes are effective; h0 = 0 would
        // mean the reduction and the generation theorem disagree
        for (const auto& e : next.entries) {
            if (e.h0 <= 0) throw std::logic_error("slice entry with h0 = 0");
        }
        slices_.push_back(std::move(next));
    }

    void spill(std::unordered_set<DivisorClass, DivisorClassHash>& set,
               std::vector<std::filesystem::path>& runs, int worker) {
        std::vector<DivisorClass> sorted(set.begin(), set.end());
        std::sort(sorted.begin(), sorted.end());
        set.clear();
        auto path = opt_.spill_dir /
                    ("dpx-slice-" + std::to_string(::getpid()) + "-" +
                     std::to_string(worker) + "-" + std::to_string(runs.size()) + ".bin");
        detail::ClassWriter w(path);
        for (const auto& d : sorted) w.write(d);
        runs.push_back(path);
    }

    Surface surface_;
    EnumerationOptions opt_;
    std::vector<DegreeSlice> slices_;
};

inline DegreeSlice effective_slice(const Surface& s, int t, EnumerationOptions opt = {}) {
    Enumerator e(s, opt);
    return e.slice(t);
}

inline Int hilbert_value(const Surface& s, int t, EnumerationOptions opt = {}) {
    Enumerator e(s, opt);
    return e.hilbert_value(t);
}

// the l0 <-> l2 exchange on S_6: within a fixed degree t, types with
// L-coefficient a and 2t - a occur in equal numbers
inline bool l0_l2_symmetric(const DegreeSlice& s) {
    std::unordered_map<std::int64_t, std::int64_t> count;
    for (const auto& e : s.entries) count[e.cls.a] += e.orbit_size;
    for (const auto& [a, n] : count) {
        auto it = count.find(2 * s.t - a);
        if (it == count.end() || it->second != n) return false;
    }
    return true;
}

struct HilbertData {
    Surface surface;
    std::vector<Int> enumerated;     // H(0..r-3) by direct slice sums
    std::vector<Int> curve_section;  // Hilbert function of the curve section
    std::vector<Int> values;         // H(0..r+2), reconstructed
    Polynomial polynomial;
    Int d = 0;  // degree of X_r
    Int g = 0;  // sectional genus
    int reg = 0;
    int pd = 0;
    std::vector<Int> B;  // alternating Betti sums B_0..B_{reg+pd}

    const std::vector<Int>& k_polynomial() const { return B; }
};

inline std::pair<int, int> expected_reg_pd(const Surface& s) {
    int gsize = static_cast<int>(cox_generators(s).size());
    return {2 * (s.r - 3), (gsize - 1) - s.r - 2};
}

namespace detail {

inline std::vector<Int> forward_diff(const std::vector<Int>& v, int n) {
    std::vector<Int> cur = v;
    for (int k = 0; k < n; ++k)
        for (std::size_t i = cur.size(); i-- > 0;) cur[i] -= i > 0 ? cur[i - 1] : Int(0);
    return cur;
}

inline std::vector<Int> cumsum(const std::vector<Int>& v, int n) {
    std::vector<Int> cur = v;
    for (int k = 0; k < n; ++k) {
        Int acc = 0;
        for (auto& x : cur) {
            acc += x;
            x = acc;
        }
    }
    return cur;
}

}  // namespace detail

// Hilbert data from the enumerated values H(0..r-3): pass to the curve
// section by r+1 finite differences, pin (d, g) via
// h_C(r-3) - h_C(r-5) = d, extend h_C by Riemann-Roch/Serre symmetry
// h_C(t) = t d + 1 - g + h_C(2(r-4) - t), integrate back and interpolate.
inline HilbertData hilbert_data(const Surface& s, EnumerationOptions opt = {}) {
    HilbertData out;
    out.surface = s;
    const int r = s.r;
    Enumerator en(s, opt);
    for (int t = 0; t <= r - 3; ++t) out.enumerated.push_back(en.hilbert_value(t));

    std::vector<Int> hc = detail::forward_diff(out.enumerated, r + 1);
    out.d = hc[r - 3] - (r - 5 >= 0 ? hc[r - 5] : Int(0));
    out.g = Int(r - 4) * out.d + 1;
    const int m = 2 * (r - 4);
    const int tmax = r + 2;
    for (int t = r - 2; t <= tmax; ++t) {
        Int v = Int(t) * out.d + 1 - out.g;
        if (t <= m) v += hc[m - t];
        hc.push_back(v);
    }
    out.curve_section = hc;
    out.values = detail::cumsum(hc, r + 1);

    std::vector<std::pair<Int, Int>> nodes;
    for (int t = 0; t <= tmax; ++t) nodes.push_back({Int(t), out.values[t]});
    out.polynomial = interpolate(nodes);
    for (int t = 0; t <= r - 3; ++t) {
        if (out.polynomial(Int(t)) != Rat(out.enumerated[t]))
            throw std::logic_error("hilbert polynomial disagrees with enumeration");
    }

    auto [reg, pd] = expected_reg_pd(s);
    out.reg = reg;
    out.pd = pd;

    // B_j = H(j) - sum_{k<j} B_k C(N + j - k, N), N = |G_r| - 1
    const long N = static_cast<long>(cox_generators(s).size()) - 1;
    const int top = reg + pd;
    for (int j = 0; j <= top + 3; ++j) {
        Rat hr = out.polynomial(Int(j));
        Int h = hr.get_num();  // integral: checked below
        if (hr.get_den() != 1) throw std::logic_error("non-integral hilbert value");
        Int acc = h;
        for (int k = 0; k < j && k <= top; ++k)
            acc -= out.B[k] * binomial(N + j - k, N);
        if (j <= top) {
            out.B.push_back(acc);
        } else if (acc != 0) {
            throw std::logic_error("B_j nonzero beyond reg+pd");
        }
    }
    return out;
}

inline Polynomial hilbert_polynomial(const Surface& s, EnumerationOptions opt = {}) {
    return hilbert_data(s, opt).polynomial;
}

// d_r from the polynomial per the spec contract; must agree with the
// curve-section route used internally
inline std::pair<Int, Int> degree_and_genus(const HilbertData& hd) {
    Int d = hd.polynomial.leading_coefficient().get_num() *
            factorial(hd.surface.r + 2) / hd.polynomial.leading_coefficient().get_den();
    Int g = Int(hd.surface.r - 4) * d + 1;
    if (d != hd.d || g != hd.g) throw std::logic_error("degree/genus route mismatch");
    return {d, g};
}

}  // namespace dpx

#endif
