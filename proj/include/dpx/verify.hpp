#ifndef DPX_VERIFY_HPP
#define DPX_VERIFY_HPP

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpx/betti.hpp"
#include "dpx/cohomology.hpp"
#include "dpx/curves.hpp"
#include "dpx/enumeration.hpp"
#include "dpx/sections.hpp"
#include "dpx/syzygy.hpp"
#include "dpx/weyl.hpp"

namespace dpx {

// ---------------------------------------------------------------------------
// published tables (indexed r = 4..8 unless noted)

namespace paper {

inline constexpr std::int64_t kMinusOneCounts[9] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
inline constexpr std::int64_t kRootCounts[9] = {0, 0, 0, 8, 20, 40, 72, 126, 240};
inline constexpr std::int64_t kConicCounts[9] = {0, 0, 0, 3, 5, 10, 27, 126, 2160};
inline constexpr std::int64_t kCubicCounts[9] = {0, 0, 0, 2, 5, 16, 72, 576, 17520};
inline constexpr std::int64_t kGeneratorCounts[9] = {0, 0, 0, 0, 10, 16, 27, 56, 242};
inline constexpr std::int64_t kIdealGeneratorCounts[9] = {0, 0, 0, 0, 5, 20, 81, 529, 17399};

inline const std::vector<std::vector<std::int64_t>>& hilbert_values() {
    static const std::vector<std::vector<std::int64_t>> v = {
        {10},
        {16, 116},
        {27, 297, 1939},
        {56, 1067, 10576, 67949},
        {242, 12004, 226327, 2301371, 15449296},
    };
    return v;  // H_r(1..r-3), r = 4..8
}

inline const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>&
hilbert_polynomials() {
    // descending coefficients over (r+2)!
    static const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> v = {
        {{5, 75, 455, 1425, 2420, 2100, 720}, 720},
        {{34, 476, 2884, 9800, 20146, 25004, 17256, 5040}, 5040},
        {{372, 4464, 25200, 86184, 193788, 291816, 284640, 161856, 40320}, 40320},
        {{9504, 85536, 412992, 1294272, 2860704, 4554144, 5125248, 3863808, 1752192,
          362880},
         362880},
        {{1779840, 8899200, 32140800, 75168000, 137531520, 186883200, 191635200,
          141696000, 74183040, 24624000, 3628800},
         3628800},
    };
    return v;
}

inline constexpr std::int64_t kDegrees[9] = {0, 0, 0, 0, 5, 34, 372, 9504, 1779840};
inline constexpr std::int64_t kGenera[9] = {0, 0, 0, 0, 1, 35, 745, 28513, 7119361};

inline const std::vector<std::int64_t>& b_sequence_s4() {
    static const std::vector<std::int64_t> v = {1, 0, -5, 5, 0, -1};
    return v;
}
inline const std::vector<std::int64_t>& b_sequence_s5() {
    static const std::vector<std::int64_t> v = {1, 0,   -20, 48,   7, -176, 280,
                                                -176, 7, 48,  -20, 0, 1};
    return v;
}

// Betti diagrams as rows (row = j - i) of columns i = 0..pd
inline const std::vector<std::vector<std::int64_t>>& betti_grid_s4() {
    static const std::vector<std::vector<std::int64_t>> v = {
        {1, 0, 0, 0}, {0, 5, 5, 0}, {0, 0, 0, 1}};
    return v;
}
inline const std::vector<std::vector<std::int64_t>>& betti_grid_s5() {
    static const std::vector<std::vector<std::int64_t>> v = {
        {1, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 20, 48, 3, 0, 0, 0, 0, 0},
        {0, 0, 10, 176, 280, 176, 10, 0, 0},
        {0, 0, 0, 0, 0, 3, 48, 20, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 1}};
    return v;
}

}  // namespace paper

// ---------------------------------------------------------------------------

struct CheckResult {
    std::string section;
    int r = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::vector<int> rs = {4, 5, 6, 7, 8};
    std::set<std::string> sections;  // empty = all
    std::uint64_t seed = 42;
    EnumerationOptions enumeration;
    std::function<void(const CheckResult&)> on_result;
};

class Verifier {
  public:
    explicit Verifier(VerifyOptions opt) : opt_(std::move(opt)) {}

    const std::vector<CheckResult>& results() const { return results_; }
    bool all_passed() const {
        for (const auto& r : results_)
            if (!r.passed) return false;
        return true;
    }

    void run() {
        if (want("curves")) run_curves();
        if (want("hilbert")) run_hilbert();
        if (want("polynomial")) run_polynomial();
        if (want("degree-genus")) run_degree_genus();
        if (want("bj")) run_bj();
        if (want("regpd")) run_regpd();
        if (want("ideal")) run_ideal();
        if (want("betti")) run_betti();
        if (want("index")) run_index();
        if (want("pfaffian")) run_pfaffian();
        if (want("properties")) run_properties();
    }

  private:
    bool want(const std::string& section) const {
        return opt_.sections.empty() || opt_.sections.count(section) > 0;
    }
    bool want_r(int r) const {
        return std::find(opt_.rs.begin(), opt_.rs.end(), r) != opt_.rs.end();
    }

    template <typename F>
    void check(const std::string& section, int r, const std::string& name, F&& body) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult res;
        res.section = section;
        res.r = r;
        res.name = name;
        try {
            std::string detail;
            res.passed = body(detail);
            res.detail = detail;
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                          .count();
        results_.push_back(res);
        if (opt_.on_result) opt_.on_result(results_.back());
    }

    const SectionModel& model(int r) {
        if (!models_[r])
            models_[r] = std::make_unique<SectionModel>(
                random_general_points(Surface(r), opt_.seed));
        return *models_[r];
    }

    static std::string eq(const Int& got, const Int& want) {
        return "got " + got.get_str() + ", expected " + want.get_str();
    }

    void run_curves() {
        for (int r : opt_.rs) {
            check("curves", r, "curve class counts", [&](std::string& detail) {
                const CurveInventory& inv = inventory(Surface(r));
                std::ostringstream os;
                os << "(-1): " << inv.minus_one_curves().size()
                   << ", roots: " << inv.roots().size()
                   << ", conics: " << inv.conics().size()
                   << ", cubics: " << inv.twisted_cubics().size();
                detail = os.str();
                return static_cast<std::int64_t>(inv.minus_one_curves().size()) ==
                           paper::kMinusOneCounts[r] &&
                       static_cast<std::int64_t>(inv.roots().size()) ==
                           paper::kRootCounts[r] &&
                       static_cast<std::int64_t>(inv.conics().size()) ==
                           paper::kConicCounts[r] &&
                       static_cast<std::int64_t>(inv.twisted_cubics().size()) ==
                           paper::kCubicCounts[r];
            });
            if (r >= 4) {
                check("curves", r, "cox generator count", [&](std::string& detail) {
                    auto gens = cox_generators(Surface(r));
                    detail = "|G| = " + std::to_string(gens.size());
                    return static_cast<std::int64_t>(gens.size()) ==
                           paper::kGeneratorCounts[r];
                });
            }
        }
    }

    void run_hilbert() {
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("hilbert", r, "slice values H(1..r-3)", [&](std::string& detail) {
                Enumerator en(Surface(r), opt_.enumeration);
                const auto& expect = paper::hilbert_values()[r - 4];
                std::ostringstream os;
                bool ok = true;
                for (int t = 1; t <= r - 3; ++t) {
                    Int got = en.hilbert_value(t);
                    if (t > 1) os << ", ";
                    os << got.get_str();
                    ok &= got == Int(expect[t - 1]);
                }
                detail = os.str();
                return ok;
            });
        }
    }

    void run_polynomial() {
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("polynomial", r, "hilbert polynomial coefficients",
                  [&](std::string& detail) {
                      HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                      const auto& [nums, den] = paper::hilbert_polynomials()[r - 4];
                      Polynomial expect;
                      expect.coeffs.assign(nums.size(), Rat(0));
                      for (std::size_t k = 0; k < nums.size(); ++k) {
                          Rat c{Int(nums[k]), Int(den)};
                          c.canonicalize();
                          expect.coeffs[nums.size() - 1 - k] = c;
                      }
                      detail = "degree " + std::to_string(hd.polynomial.degree());
                      return hd.polynomial == expect;
                  });
            int tmax = r <= 6 ? r + 5 : r - 3;
            check("polynomial", r,
                  "H(t) = P(t) for t <= " + std::to_string(tmax) + " by enumeration",
                  [&](std::string& detail) {
                      HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                      Enumerator en(Surface(r), opt_.enumeration);
                      for (int t = 0; t <= tmax; ++t) {
                          Int got = en.hilbert_value(t);
                          if (Rat(got) != hd.polynomial(Int(t))) {
                              detail = "mismatch at t = " + std::to_string(t);
                              return false;
                          }
                      }
                      detail = "exact match at " + std::to_string(tmax + 1) + " values";
                      return true;
                  });
        }
    }

    void run_degree_genus() {
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("degree-genus", r, "(d_r, g_r)", [&](std::string& detail) {
                HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                auto [d, g] = degree_and_genus(hd);
                detail = "d = " + d.get_str() + ", g = " + g.get_str();
                return d == Int(paper::kDegrees[r]) && g == Int(paper::kGenera[r]) &&
                       g == Int(r - 4) * d + 1;
            });
        }
    }

    void run_bj() {
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("bj", r, "B_j sequence", [&](std::string& detail) {
                HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                bool ok = true;
                if (r == 4 || r == 5) {
                    const auto& expect =
                        r == 4 ? paper::b_sequence_s4() : paper::b_sequence_s5();
                    ok = hd.B.size() == expect.size();
                    for (std::size_t j = 0; ok && j < expect.size(); ++j)
                        ok = hd.B[j] == Int(expect[j]);
                    detail = ok ? "matches the corollary table" : "table mismatch";
                }
                int top = hd.reg + hd.pd;
                bool pal = true;
                for (int j = 0; j <= top; ++j) {
                    Int mirror = hd.B[top - j];
                    if (hd.pd % 2 == 1) mirror = -mirror;
                    pal &= hd.B[j] == mirror;
                }
                if (detail.empty())
                    detail = pal ? "signed palindromy holds" : "palindromy fails";
                else
                    detail += pal ? "; signed palindromy holds" : "; palindromy fails";
                return ok && pal;
            });
        }
    }

    void run_regpd() {
        static constexpr int kReg[9] = {0, 0, 0, 0, 2, 4, 6, 8, 10};
        static constexpr int kPd[9] = {0, 0, 0, 0, 3, 8, 18, 46, 231};
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("regpd", r, "(reg, pd)", [&](std::string& detail) {
                auto [reg, pd] = expected_reg_pd(Surface(r));
                detail = "(" + std::to_string(reg) + ", " + std::to_string(pd) + ")";
                return reg == kReg[r] && pd == kPd[r];
            });
        }
    }

    void run_ideal() {
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("ideal", r, "minimal generator count", [&](std::string& detail) {
                std::int64_t n = ideal_generator_count(Surface(r));
                detail = eq(Int(n), Int(paper::kIdealGeneratorCounts[r]));
                return n == paper::kIdealGeneratorCounts[r];
            });
            check("ideal", r, "kernel dimensions in the section model",
                  [&](std::string& detail) {
                      KoszulContext ctx(model(r));
                      std::size_t total = 0;
                      if (r <= 6) {
                          for (const auto& q : inventory(Surface(r)).conics())
                              total += conic_relations(ctx, q).size();
                      } else {
                          // conic kernels sampled; the -K / -K+E / -2K kernels in full
                          const auto& conics = inventory(Surface(r)).conics();
                          for (std::size_t k = 0; k < 8; ++k)
                              total += conic_relations(ctx, conics[k]).size();
                          total += extra_relations(ctx).size();
                      }
                      std::int64_t expect =
                          r <= 6 ? paper::kIdealGeneratorCounts[r]
                          : r == 7
                              ? static_cast<std::int64_t>(8 * 4 + 25)
                              : static_cast<std::int64_t>(8 * 5 + 240 * 27 + 119);
                      detail = "verified " + std::to_string(total) + " relations";
                      return static_cast<std::int64_t>(total) == expect;
                  });
        }
    }

    void run_betti() {
        if (want_r(5)) {
            struct Witness {
                const char* name;
                DivisorClass cls;
                int i;
                std::int64_t expect;
            };
            Surface s(5);
            DivisorClass q = line_class(s);
            q.b[0] = -1;
            DivisorClass cubic = line_class(s);
            DivisorClass e12 = line_class(s);
            e12.b[0] = e12.b[1] = -1;
            DivisorClass ce = cubic + e12;  // L + (L - E1 - E2), C.E = 1
            std::vector<Witness> witnesses = {
                {"b_{1,Q}", q, 1, 2},
                {"b_{2,C}", cubic, 2, 3},
                {"b_{2,2Q}", 2 * q, 2, 1},
                {"b_{2,C+E}", ce, 2, 0},
                {"b_{3,-K}", anticanonical_class(s), 3, 3},
            };
            for (const auto& w : witnesses) {
                check("betti", 5, std::string(w.name) + " by koszul homology",
                      [&](std::string& detail) {
                          KoszulContext ctx(model(5));
                          Int got = ctx.betti(w.i, w.cls);
                          detail = eq(got, Int(w.expect));
                          return got == Int(w.expect);
                      });
            }
            check("betti", 5, "multigraded alternating sums agree",
                  [&](std::string& detail) {
                      MultigradedAlternatingSums bd(s);
                      bool ok = bd.value(q) == -2 && bd.value(cubic) == 3 &&
                                bd.value(2 * q) == 1 && bd.value(ce) == 0 &&
                                bd.value(anticanonical_class(s)) == -3;
                      detail = "B_Q, B_C, B_2Q, B_{C+E}, B_{-K} = " +
                               bd.value(q).get_str() + ", " + bd.value(cubic).get_str() +
                               ", " + bd.value(2 * q).get_str() + ", " +
                               bd.value(ce).get_str() + ", " +
                               bd.value(anticanonical_class(s)).get_str();
                      return ok;
                  });
        }
        for (int r : {4, 5}) {
            if (!want_r(r)) continue;
            check("betti", r, "full diagram", [&](std::string& detail) {
                KoszulContext ctx(model(r));
                HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                BettiDiagram d = betti_diagram(ctx, hd);
                const auto& grid =
                    r == 4 ? paper::betti_grid_s4() : paper::betti_grid_s5();
                for (int row = 0; row <= d.reg; ++row)
                    for (int i = 0; i <= d.pd; ++i)
                        if (d.b(i, i + row) != Int(grid[row][i])) {
                            detail = "cell (i=" + std::to_string(i) +
                                     ", row=" + std::to_string(row) + ") " +
                                     eq(d.b(i, i + row), Int(grid[row][i]));
                            return false;
                        }
                detail = "grid matches; koszul/duality/B_j cross-checks passed";
                return true;
            });
        }
    }

    void run_index() {
        static constexpr int kIndex[9] = {0, 0, 0, 0, 2, 1, 1, 1, 1};
        for (int r : opt_.rs) {
            if (r < 4) continue;
            check("index", r, "green-lazarsfeld index", [&](std::string& detail) {
                if (r <= 5) {
                    KoszulContext ctx(model(r));
                    HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                    BettiDiagram d = betti_diagram(ctx, hd);
                    auto rep = green_lazarsfeld_index(Surface(r), nullptr, &d);
                    detail = "index " + std::to_string(rep.lower);
                    return rep.exact && rep.lower == kIndex[r];
                }
                if (r == 6) {
                    KoszulContext ctx(model(6));
                    auto rep = green_lazarsfeld_index(Surface(6), &ctx, nullptr);
                    detail = "index 1, witness b_{2,2Q} = " + rep.witness_b2_2Q.get_str() +
                             " (lower bound cited)";
                    return rep.lower == 1 && rep.upper == 1 && rep.witness_computed &&
                           rep.witness_b2_2Q >= 1;
                }
                auto rep = green_lazarsfeld_index(Surface(r), nullptr, nullptr);
                detail = "index 1 (" + rep.note + ")";
                return rep.lower == 1 && rep.upper == 1;
            });
        }
    }

    void run_pfaffian() {
        if (!want_r(4)) return;
        check("pfaffian", 4, "buchsbaum-eisenbud structure", [&](std::string& detail) {
            KoszulContext ctx(model(4));
            PfaffianReport rep = pfaffian_structure_check(ctx);
            detail = std::string("skew-scalable: ") + (rep.skew_scalable ? "yes" : "no") +
                     ", diagonal zero: " + (rep.diagonal_zero ? "yes" : "no") +
                     ", pfaffian span = relation span: " +
                     (rep.pfaffians_match_relations ? "yes" : "no");
            return rep.ok();
        });
    }

    void run_properties() {
        for (int r : {4, 5}) {
            if (!want_r(r)) continue;
            check("properties", r, "h0 model oracle on degree <= 4 classes",
                  [&](std::string& detail) {
                      const SectionModel& m = model(r);
                      Enumerator en(Surface(r), opt_.enumeration);
                      std::int64_t n = 0;
                      for (int t = 0; t <= 4; ++t) {
                          for (const auto& e : en.slice(t).entries) {
                              for (const auto& cls : perm_orbit(e.cls)) {
                                  if (static_cast<std::int64_t>(m.model_dimension(cls)) !=
                                      h0(cls)) {
                                      detail = "mismatch at " + format_class(cls);
                                      return false;
                                  }
                                  ++n;
                              }
                          }
                      }
                      detail = std::to_string(n) + " classes agree";
                      return true;
                  });
        }
        for (int r : {6, 7, 8}) {
            if (!want_r(r)) continue;
            check("properties", r, "h0 model oracle on 500 random classes",
                  [&](std::string& detail) {
                      const SectionModel& m = model(r);
                      std::mt19937_64 rng(opt_.seed * 1000003ull + r);
                      std::uniform_int_distribution<std::int64_t> ca(-8, 8);
                      for (int k = 0; k < 500; ++k) {
                          DivisorClass d = DivisorClass::zero(Surface(r));
                          d.a = ca(rng);
                          for (int i = 0; i < r; ++i) d.b[i] = ca(rng);
                          if (static_cast<std::int64_t>(m.model_dimension(d)) != h0(d)) {
                              detail = "mismatch at " + format_class(d);
                              return false;
                          }
                      }
                      detail = "500 classes agree";
                      return true;
                  });
        }
        for (int r : opt_.rs) {
            if (r < 3) continue;
            check("properties", r, "reflections preserve the form and fix -K",
                  [&](std::string& detail) {
                      Surface s(r);
                      std::mt19937_64 rng(opt_.seed + r);
                      std::uniform_int_distribution<std::int64_t> ca(-6, 6);
                      auto roots = simple_roots(s);
                      for (int k = 0; k < 200; ++k) {
                          DivisorClass x = DivisorClass::zero(s), y = DivisorClass::zero(s);
                          x.a = ca(rng);
                          y.a = ca(rng);
                          for (int i = 0; i < r; ++i) {
                              x.b[i] = ca(rng);
                              y.b[i] = ca(rng);
                          }
                          const DivisorClass& al = roots[rng() % roots.size()];
                          if (intersect(reflect(x, al), reflect(y, al)) != intersect(x, y))
                              return false;
                          if (degree(reflect(x, al)) != degree(x)) return false;
                          if (reflect(anticanonical_class(s), al) !=
                              anticanonical_class(s))
                              return false;
                      }
                      detail = "200 random pairs";
                      return true;
                  });
        }
        if (want_r(5)) {
            check("properties", 5, "degree-4 nef classes form 3 weyl orbits",
                  [&](std::string& detail) {
                      auto orbits = nef_orbit_types(Surface(5), 4, opt_.enumeration);
                      std::ostringstream os;
                      for (const auto& o : orbits)
                          os << o.label << " x" << o.members.size() << "; ";
                      detail = os.str();
                      if (orbits.size() != 3) return false;
                      std::multiset<std::size_t> sizes;
                      for (const auto& o : orbits) sizes.insert(o.members.size());
                      return sizes == std::multiset<std::size_t>{1, 10, 40};
                  });
            check("properties", 5, "weyl invariance of computed betti numbers",
                  [&](std::string& detail) {
                      Surface s(5);
                      KoszulContext ctx(model(5));
                      DivisorClass q = line_class(s);
                      q.b[0] = -1;
                      std::mt19937_64 rng(opt_.seed);
                      for (auto [i, cls, expect] :
                           {std::tuple<int, DivisorClass, std::int64_t>{1, q, 2},
                            {2, 2 * q, 1},
                            {2, line_class(s), 3}}) {
                          auto orbit = weyl_orbit(cls);
                          for (int k = 0; k < 3; ++k) {
                              const auto& member = orbit[rng() % orbit.size()];
                              if (ctx.betti(i, member) != Int(expect)) {
                                  detail = "b_" + std::to_string(i) + " varies at " +
                                           format_class(member);
                                  return false;
                              }
                          }
                      }
                      detail = "3 members per witness orbit";
                      return true;
                  });
            check("properties", 5, "h0 constant on computed orbits",
                  [&](std::string& detail) {
                      Surface s(5);
                      DivisorClass q = line_class(s);
                      q.b[0] = -1;
                      for (const auto& cls : {q, 2 * q, anticanonical_class(s)}) {
                          std::int64_t ref = h0(cls);
                          for (const auto& m : weyl_orbit(cls))
                              if (h0(m) != ref) return false;
                      }
                      detail = "conic, 2Q and -K orbits";
                      return true;
                  });
        }
        for (int r : {4, 5}) {
            if (!want_r(r)) continue;
            check("properties", r, "positive b_{i,D} with deg D = i+1 are nef",
                  [&](std::string& detail) {
                      KoszulContext ctx(model(r));
                      HilbertData hd = hilbert_data(Surface(r), opt_.enumeration);
                      BettiDiagram d = betti_diagram(ctx, hd);
                      std::int64_t n = 0;
                      for (const auto& rec : d.records) {
                          if (rec.value > 0 && degree(rec.multidegree) == rec.i + 1) {
                              if (!is_nef(rec.multidegree)) {
                                  detail = "non-nef " + format_class(rec.multidegree);
                                  return false;
                              }
                              ++n;
                          }
                      }
                      detail = std::to_string(n) + " records checked";
                      return true;
                  });
        }
    }

    VerifyOptions opt_;
    std::vector<CheckResult> results_;
    std::unique_ptr<SectionModel> models_[9];
};

inline std::vector<CheckResult> verify_paper(VerifyOptions opt) {
    Verifier v(std::move(opt));
    v.run();
    return v.results();
}

}  // namespace dpx

#endif
