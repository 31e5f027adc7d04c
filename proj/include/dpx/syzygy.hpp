#ifndef DPX_SYZYGY_HPP
#define DPX_SYZYGY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpx/cohomology.hpp"
#include "dpx/curves.hpp"
#include "dpx/divisor.hpp"
#include "dpx/enumeration.hpp"
#include "dpx/linalg.hpp"
#include "dpx/sections.hpp"
#include "dpx/weyl.hpp"

namespace dpx {

enum class BettiMethod { koszul, duality, alternating_sum };

struct BettiRecord {
    int i = 0;
    DivisorClass multidegree;
    Int value = 0;
    BettiMethod method = BettiMethod::koszul;
};

// degree-2 monomial x_i x_j (slot indices, i <= j) with a rational coefficient
struct QuadricRelation {
    DivisorClass multidegree;
    std::vector<std::pair<int, int>> monomials;
    std::vector<Rat> coefficients;  // one kernel vector per relation
};

struct KoszulOptions {
    std::size_t max_components = 2'000'000;  // summands per A(D)_d
    std::size_t max_dim = 50'000;            // total dimension per A(D)_d
};

struct KoszulComponent {
    std::vector<int> subset;  // slot indices, increasing
    DivisorClass remainder;
    std::size_t dim = 0;
};

struct KoszulSpace {
    int d = 0;
    std::vector<KoszulComponent> components;  // lexicographic subset order
    std::size_t total_dim = 0;
};

// Koszul strand machinery over one certified section model.
class KoszulContext {
  public:
    explicit KoszulContext(const SectionModel& model, KoszulOptions opt = {})
        : model_(model), opt_(opt), sections_(generator_sections(model)) {}

    const SectionModel& model() const { return model_; }
    const std::vector<GeneratorSection>& sections() const { return sections_; }
    int slot_count() const { return static_cast<int>(sections_.size()); }

    // A(D)_d = sum over d-subsets S of generator slots of H0(D - sum C_S);
    // only effective remainders are materialized. Every slot of a valid
    // subset has effective D - C_slot, so the recursion prunes on that.
    KoszulSpace space(const DivisorClass& D, int d) {
        KoszulSpace out;
        out.d = d;
        std::vector<int> chosen;
        build(D, d, 0, chosen, out);
        return out;
    }

    Int betti(int i, const DivisorClass& D) {
        if (i < 0) return 0;
        KoszulSpace mid = space(D, i);
        std::size_t rank_i = 0;
        if (i >= 1) {
            KoszulSpace low = space(D, i - 1);
            rank_i = differential(mid, low).rank();
        }
        KoszulSpace high = space(D, i + 1);
        std::size_t rank_i1 = differential(high, mid).rank();
        return Int(mid.total_dim) - Int(rank_i) - Int(rank_i1);
    }

    // b_{i,D} for i = 0..imax from one pass of differential ranks
    std::vector<Int> rank_profile(const DivisorClass& D, int imax) {
        std::vector<std::size_t> dims(imax + 2, 0);
        std::vector<std::size_t> ranks(imax + 2, 0);
        KoszulSpace prev = space(D, 0);
        dims[0] = prev.total_dim;
        for (int d = 1; d <= imax + 1; ++d) {
            KoszulSpace cur = space(D, d);
            dims[d] = cur.total_dim;
            ranks[d] = differential(cur, prev).rank();
            prev = std::move(cur);
        }
        std::vector<Int> out;
        for (int i = 0; i <= imax; ++i)
            out.push_back(Int(dims[i]) - Int(i > 0 ? ranks[i] : 0) - Int(ranks[i + 1]));
        return out;
    }

    // differential A_d -> A_{d-1}: remove slot k of the subset with sign
    // (-1)^(position of k), multiplying by that generator's section
    RatMatrix differential(const KoszulSpace& from, const KoszulSpace& to) {
        std::map<std::vector<int>, std::pair<std::size_t, std::size_t>> offsets;
        std::size_t off = 0;
        for (const auto& comp : to.components) {
            offsets[comp.subset] = {off, comp.dim};
            off += comp.dim;
        }
        RatMatrix mat(to.total_dim, from.total_dim);
        std::size_t col0 = 0;
        for (const auto& comp : from.components) {
            for (std::size_t k = 0; k < comp.subset.size(); ++k) {
                std::vector<int> sub = comp.subset;
                int slot = sub[static_cast<int>(k)];
                sub.erase(sub.begin() + static_cast<int>(k));
                auto it = offsets.find(sub);
                if (it == offsets.end()) continue;  // zero target space
                int sign = k % 2 == 0 ? 1 : -1;
                const auto& cols = mul_map(slot, comp.remainder);
                for (std::size_t b = 0; b < comp.dim; ++b) {
                    const auto& colv = cols[b];
                    for (std::size_t rix = 0; rix < colv.size(); ++rix) {
                        if (colv[rix] == 0) continue;
                        Rat& cell = mat.at(it->second.first + rix, col0 + b);
                        cell += sign > 0 ? colv[rix] : -colv[rix];
                    }
                }
            }
            col0 += comp.dim;
        }
        return mat;
    }

    // multiplication by the slot section: columns are images of the basis of
    // H0(R) in the basis of H0(R + C_slot)
    const std::vector<std::vector<Rat>>& mul_map(int slot, const DivisorClass& R) {
        auto key = std::make_pair(slot, R);
        auto it = mulmaps_.find(key);
        if (it != mulmaps_.end()) return it->second;
        const GeneratorSection& g = sections_[slot];
        const SectionSpace& src = model_.space(R);
        std::vector<std::vector<Rat>> cols;
        for (const auto& b : src.basis)
            cols.push_back(model_.multiply(g.slot.cls, g.vec, R, b));
        return mulmaps_.emplace(std::move(key), std::move(cols)).first->second;
    }

    bool effective(const DivisorClass& d) { return h0_cache_(d) > 0; }

  private:
    void build(const DivisorClass& R, int need, int start, std::vector<int>& chosen,
               KoszulSpace& out) {
        if (need == 0) {
            std::size_t dim = model_.space(R).dim();
            if (dim > 0) {
                out.components.push_back({chosen, R, dim});
                out.total_dim += dim;
                if (out.components.size() > opt_.max_components ||
                    out.total_dim > opt_.max_dim)
                    throw capacity_error(
                        "koszul space too large: " + std::to_string(out.components.size()) +
                        " components, dim " + std::to_string(out.total_dim));
            }
            return;
        }
        for (int i = start; i <= slot_count() - need; ++i) {
            DivisorClass next = R - sections_[i].slot.cls;
            if (degree(next) < 0 || !effective(next)) continue;
            chosen.push_back(i);
            build(next, need - 1, i + 1, chosen, out);
            chosen.pop_back();
        }
    }

    const SectionModel& model_;
    KoszulOptions opt_;
    std::vector<GeneratorSection> sections_;
    H0Cache h0_cache_;
    std::map<std::pair<int, DivisorClass>, std::vector<std::vector<Rat>>> mulmaps_;
};

inline BettiRecord koszul_betti(KoszulContext& ctx, int i, const DivisorClass& D) {
    return {i, D, ctx.betti(i, D), BettiMethod::koszul};
}

// ---------------------------------------------------------------------------
// quadric generators of I_r

// kernel of the evaluation map sending degree-2 monomials of one multidegree
// into H0(target)
inline std::vector<QuadricRelation> quadric_relations(KoszulContext& ctx,
                                                      const DivisorClass& target) {
    const auto& secs = ctx.sections();
    std::vector<std::pair<int, int>> monos;
    for (int i = 0; i < static_cast<int>(secs.size()); ++i)
        for (int j = i; j < static_cast<int>(secs.size()); ++j)
            if (secs[i].slot.cls + secs[j].slot.cls == target) monos.push_back({i, j});
    const SectionModel& model = ctx.model();
    const SectionSpace& tspace = model.space(target);
    RatMatrix mat(tspace.dim(), monos.size());
    for (std::size_t c = 0; c < monos.size(); ++c) {
        const auto& gi = secs[monos[c].first];
        const auto& gj = secs[monos[c].second];
        std::vector<Rat> coords =
            model.multiply(gi.slot.cls, gi.vec, gj.slot.cls, gj.vec);
        for (std::size_t r = 0; r < coords.size(); ++r) mat.at(r, c) = coords[r];
    }
    auto ker = mat.kernel();
    std::vector<QuadricRelation> out;
    for (const auto& v : ker.basis) out.push_back({target, monos, v});
    return out;
}

inline std::vector<QuadricRelation> conic_relations(KoszulContext& ctx,
                                                    const DivisorClass& conic) {
    const Surface s = ctx.model().surface();
    auto rels = quadric_relations(ctx, conic);
    if (static_cast<int>(rels.size()) != s.r - 3)
        throw genericity_error("conic " + format_class(conic) + " has kernel " +
                               std::to_string(rels.size()) + ", expected " +
                               std::to_string(s.r - 3));
    return rels;
}

// quadric generators beyond conics: -K on S_7; each -K+E and -2K on S_8
inline std::vector<QuadricRelation> extra_relations(KoszulContext& ctx) {
    const Surface s = ctx.model().surface();
    std::vector<QuadricRelation> out;
    if (s.r == 7) {
        auto rels = quadric_relations(ctx, anticanonical_class(s));
        if (rels.size() != 25)
            throw genericity_error("-K kernel on S_7 is " + std::to_string(rels.size()));
        out.insert(out.end(), rels.begin(), rels.end());
    } else if (s.r == 8) {
        DivisorClass mk = anticanonical_class(s);
        for (const auto& e : inventory(s).minus_one_curves()) {
            auto rels = quadric_relations(ctx, mk + e);
            if (rels.size() != 27)
                throw genericity_error("-K+E kernel on S_8 is " +
                                       std::to_string(rels.size()) + " at " +
                                       format_class(e));
            out.insert(out.end(), rels.begin(), rels.end());
        }
        auto rels = quadric_relations(ctx, mk + mk);
        if (rels.size() != 119)
            throw genericity_error("-2K kernel on S_8 is " + std::to_string(rels.size()));
        out.insert(out.end(), rels.begin(), rels.end());
    }
    return out;
}

// (r-3) per conic plus the extras; {5, 20, 81, 529, 17399} for r = 4..8
inline std::int64_t ideal_generator_count(const Surface& s) {
    if (s.r < 4) throw std::invalid_argument("ideal_generator_count: need 4 <= r <= 8");
    std::int64_t conics = static_cast<std::int64_t>(inventory(s).conics().size());
    std::int64_t extras = 0;
    if (s.r == 7) extras = 25;
    if (s.r == 8) extras = 240 * 27 + 119;
    return (s.r - 3) * conics + extras;
}

}  // namespace dpx

#endif
