#ifndef DPX_COHOMOLOGY_HPP
#define DPX_COHOMOLOGY_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dpx/curves.hpp"
#include "dpx/divisor.hpp"

namespace dpx {

inline bool is_nef(const DivisorClass& d) { return inventory(d.surface()).is_nef(d); }

struct ReductionStep {
    DivisorClass before;
    DivisorClass subtracted;  // (-1)-curve with before . subtracted < 0
};

enum class TerminalKind { nef, negative_degree };

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    DivisorClass terminal;
    TerminalKind terminal_kind = TerminalKind::nef;
};

// h^0 by the reduction algorithm: subtract (-1)-curves meeting D negatively
// (smallest such curve in class order, for reproducible traces) until the
// class is nef, then apply (D^2 + deg D + 2)/2. Degree < 0 terminates with 0.
inline std::int64_t h0(const DivisorClass& d, ReductionTrace* trace = nullptr) {
    const CurveInventory& inv = inventory(d.surface());
    DivisorClass cur = d;
    for (;;) {
        std::int64_t deg = degree(cur);
        if (deg < 0) {
            if (trace) {
                trace->terminal = cur;
                trace->terminal_kind = TerminalKind::negative_degree;
            }
            return 0;
        }
        if (is_zero(cur)) {
            if (trace) {
                trace->terminal = cur;
                trace->terminal_kind = TerminalKind::nef;
            }
            return 1;
        }
        const DivisorClass* neg = nullptr;
        for (const auto& e : inv.minus_one_curves()) {
            if (intersect(cur, e) < 0) {
                neg = &e;  // list is sorted: first hit is the smallest
                break;
            }
        }
        if (neg == nullptr) {
            if (trace) {
                trace->terminal = cur;
                trace->terminal_kind = TerminalKind::nef;
            }
            return (self_intersection(cur) + deg + 2) / 2;
        }
        if (trace) trace->steps.push_back({cur, *neg});
        cur = cur - *neg;
    }
}

inline bool is_effective(const DivisorClass& d) { return h0(d) > 0; }

// Memoizing wrapper; not thread-safe, intended for one enumeration worker.
class H0Cache {
  public:
    std::int64_t operator()(const DivisorClass& d) {
        auto it = memo_.find(d);
        if (it != memo_.end()) return it->second;
        std::int64_t v = h0(d);
        memo_.emplace(d, v);
        return v;
    }
    std::size_t size() const { return memo_.size(); }

  private:
    std::unordered_map<DivisorClass, std::int64_t, DivisorClassHash> memo_;
};

}  // namespace dpx

#endif
