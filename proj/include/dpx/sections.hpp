#ifndef DPX_SECTIONS_HPP
#define DPX_SECTIONS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "dpx/cohomology.hpp"
#include "dpx/curves.hpp"
#include "dpx/divisor.hpp"
#include "dpx/enumeration.hpp"
#include "dpx/linalg.hpp"

namespace dpx {

class genericity_error : public std::runtime_error {
  public:
    explicit genericity_error(const std::string& what) : std::runtime_error(what) {}
};

// monomials x^i y^j z^(a-i-j) of degree a, ordered i desc then j desc
inline std::size_t monomial_count(int a) {
    return a < 0 ? 0 : static_cast<std::size_t>((a + 1) * (a + 2) / 2);
}

inline std::size_t monomial_index(int a, int i, int j) {
    int d = a - i;
    return static_cast<std::size_t>(d * (d + 1) / 2 + (d - j));
}

struct PlanePoint {
    std::array<Int, 3> h;  // homogeneous integer coordinates
};

namespace detail {

inline Int falling(std::int64_t n, int k) {
    Int out = 1;
    for (int t = 0; t < k; ++t) out *= Int(n - t);
    return out;
}

inline Int ipow(const Int& x, int e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

// rows imposing multiplicity >= m at p on degree-a forms: all partials of
// order m-1 vanish (Euler descent gives the lower orders)
inline void multiplicity_rows(int a, const PlanePoint& p, int m, RatMatrix& mat,
                              std::size_t row0) {
    std::size_t row = row0;
    for (int al = m - 1; al >= 0; --al) {
        for (int be = m - 1 - al; be >= 0; --be) {
            int ga = m - 1 - al - be;
            for (int i = a; i >= 0; --i) {
                for (int j = a - i; j >= 0; --j) {
                    int k = a - i - j;
                    if (i < al || j < be || k < ga) continue;
                    Int v = falling(i, al) * falling(j, be) * falling(k, ga) *
                            ipow(p.h[0], i - al) * ipow(p.h[1], j - be) *
                            ipow(p.h[2], k - ga);
                    mat.at(row, monomial_index(a, i, j)) = Rat(v);
                }
            }
            ++row;
        }
    }
}

}  // namespace detail

struct PointConfig {
    int r = 0;
    std::uint64_t seed = 0;
    int height = 100;
    std::vector<PlanePoint> points;
    std::vector<std::string> certificate;  // names of passed checks
};

// Exact basis of { f in k[x,y,z]_a : mult_{p_i}(f) >= m_i }, plus the
// exceptional prefix stripped off the class.
struct SectionSpace {
    DivisorClass cls;
    DivisorClass stripped;
    std::vector<int> exceptional_prefix;  // multiplicity per point index
    int plane_degree = 0;
    std::vector<std::vector<Rat>> basis;  // reduced column echelon form
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return basis.size(); }
};

namespace detail {

inline SectionSpace solve_space(const DivisorClass& d, const std::vector<PlanePoint>& pts) {
    SectionSpace out;
    out.cls = d;
    out.stripped = d;
    out.exceptional_prefix.assign(d.r, 0);
    for (int i = 0; i < d.r; ++i) {
        if (d.b[i] > 0) {
            out.exceptional_prefix[i] = static_cast<int>(d.b[i]);
            out.stripped.b[i] = 0;
        }
    }
    int a = static_cast<int>(out.stripped.a);
    out.plane_degree = a;
    if (a < 0) return out;
    for (int i = 0; i < d.r; ++i)
        if (-out.stripped.b[i] > a) return out;  // multiplicity exceeds degree

    std::size_t cols = monomial_count(a);
    std::size_t rows = 0;
    for (int i = 0; i < d.r; ++i) {
        int m = static_cast<int>(-out.stripped.b[i]);
        if (m > 0) rows += static_cast<std::size_t>(m) * (m + 1) / 2;
    }
    if (rows == 0) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::vector<Rat> v(cols, Rat(0));
            v[c] = 1;
            out.basis.push_back(std::move(v));
            out.pivots.push_back(c);
        }
        return out;
    }
    RatMatrix mat(rows, cols);
    std::size_t row = 0;
    for (int i = 0; i < d.r; ++i) {
        int m = static_cast<int>(-out.stripped.b[i]);
        if (m <= 0) continue;
        multiplicity_rows(a, pts[i], m, mat, row);
        row += static_cast<std::size_t>(m) * (m + 1) / 2;
    }
    auto ker = mat.kernel();
    out.basis = std::move(ker.basis);
    out.pivots = std::move(ker.unit_positions);
    return out;
}

}  // namespace detail

// Section-space model over one certified point configuration. Spaces are
// cached per class; reads are cheap, the cache lock is the only shared state.
class SectionModel {
  public:
    explicit SectionModel(PointConfig config) : config_(std::move(config)) {}

    const PointConfig& config() const { return config_; }
    Surface surface() const { return Surface(config_.r); }

    // honest model dimension, no h0 cross-check (used as the h0 oracle)
    std::size_t model_dimension(const DivisorClass& d) const {
        return detail::solve_space(d, config_.points).dim();
    }

    const SectionSpace& space(const DivisorClass& d) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(d);
            if (it != cache_.end()) return *it->second;
        }
        auto sp = std::make_shared<SectionSpace>(detail::solve_space(d, config_.points));
        if (static_cast<std::int64_t>(sp->dim()) != h0(d))
            throw genericity_error("model dimension disagrees with h0 at class " +
                                   format_class(d));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = cache_.emplace(d, std::move(sp));
        return *it->second;
    }

    // coordinates of (plane product of two section vectors) in the basis of
    // H0(d1 + d2); the product must lie in the span exactly
    std::vector<Rat> multiply(const DivisorClass& d1, const std::vector<Rat>& v1,
                              const DivisorClass& d2, const std::vector<Rat>& v2) const {
        const SectionSpace& s1 = space(d1);
        const SectionSpace& s2 = space(d2);
        const SectionSpace& target = space(d1 + d2);
        std::vector<Rat> prod = multiply_forms(s1.plane_degree, v1, s2.plane_degree, v2);
        return express(target, prod);
    }

    static std::vector<Rat> multiply_forms(int a1, const std::vector<Rat>& v1, int a2,
                                           const std::vector<Rat>& v2) {
        std::vector<Rat> out(monomial_count(a1 + a2), Rat(0));
        for (int i1 = a1; i1 >= 0; --i1) {
            for (int j1 = a1 - i1; j1 >= 0; --j1) {
                const Rat& c1 = v1[monomial_index(a1, i1, j1)];
                if (c1 == 0) continue;
                for (int i2 = a2; i2 >= 0; --i2) {
                    for (int j2 = a2 - i2; j2 >= 0; --j2) {
                        const Rat& c2 = v2[monomial_index(a2, i2, j2)];
                        if (c2 == 0) continue;
                        out[monomial_index(a1 + a2, i1 + i2, j1 + j2)] += c1 * c2;
                    }
                }
            }
        }
        return out;
    }

    static std::vector<Rat> express(const SectionSpace& target, const std::vector<Rat>& vec) {
        std::vector<Rat> coords(target.dim(), Rat(0));
        for (std::size_t k = 0; k < target.dim(); ++k) coords[k] = vec[target.pivots[k]];
        std::vector<Rat> check(vec.size(), Rat(0));
        for (std::size_t k = 0; k < target.dim(); ++k) {
            if (coords[k] == 0) continue;
            for (std::size_t i = 0; i < vec.size(); ++i)
                check[i] += coords[k] * target.basis[k][i];
        }
        if (check != vec)
            throw std::logic_error("section product lies outside the target space");
        return coords;
    }

  private:
    PointConfig config_;
    mutable std::mutex mu_;
    mutable std::map<DivisorClass, std::shared_ptr<SectionSpace>> cache_;
};

namespace detail {

inline Int det3(const PlanePoint& p, const PlanePoint& q, const PlanePoint& t) {
    return p.h[0] * (q.h[1] * t.h[2] - q.h[2] * t.h[1]) -
           p.h[1] * (q.h[0] * t.h[2] - q.h[2] * t.h[0]) +
           p.h[2] * (q.h[0] * t.h[1] - q.h[1] * t.h[0]);
}

inline bool six_on_conic(const std::vector<PlanePoint>& pts, const std::array<int, 6>& idx) {
    RatMatrix m(6, 6);
    for (int i = 0; i < 6; ++i) {
        const auto& h = pts[idx[i]].h;
        m.at(i, 0) = Rat(h[0] * h[0]);
        m.at(i, 1) = Rat(h[0] * h[1]);
        m.at(i, 2) = Rat(h[1] * h[1]);
        m.at(i, 3) = Rat(h[0] * h[2]);
        m.at(i, 4) = Rat(h[1] * h[2]);
        m.at(i, 5) = Rat(h[2] * h[2]);
    }
    return m.rank() < 6;
}

}  // namespace detail

// Structural genericity: pairwise distinct, no 3 collinear, for r >= 6 no 6
// on a conic. Operational genericity: model dimension equals h0 for every
// (-1)-class and for effective classes of degree <= 3 (all of them for
// r <= 6, sampled orbit members per canonical type for r = 7, 8).
inline bool certify(PointConfig& config, std::string* why = nullptr) {
    const int r = config.r;
    const auto& pts = config.points;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    config.certificate.clear();
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            const auto& p = pts[i].h;
            const auto& q = pts[j].h;
            bool proportional = p[1] * q[2] == p[2] * q[1] &&
                                p[0] * q[2] == p[2] * q[0] &&
                                p[0] * q[1] == p[1] * q[0];
            if (proportional) return fail("duplicate points");
        }
    }
    config.certificate.push_back("pairwise distinct");
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k)
                if (detail::det3(pts[i], pts[j], pts[k]) == 0)
                    return fail("3 collinear points");
    config.certificate.push_back("no 3 collinear");
    if (r >= 6) {
        std::array<int, 6> idx{};
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b)
                for (int c = b + 1; c < r; ++c)
                    for (int d = c + 1; d < r; ++d)
                        for (int e = d + 1; e < r; ++e)
                            for (int f = e + 1; f < r; ++f) {
                                idx = {a, b, c, d, e, f};
                                if (detail::six_on_conic(pts, idx))
                                    return fail("6 points on a conic");
                            }
        config.certificate.push_back("no 6 on a common conic");
    }

    auto agrees = [&](const DivisorClass& d) {
        return static_cast<std::int64_t>(detail::solve_space(d, pts).dim()) == h0(d);
    };
    for (const auto& e : inventory(Surface(r)).minus_one_curves())
        if (!agrees(e)) return fail("h0 mismatch at (-1)-class " + format_class(e));
    config.certificate.push_back("h0 agreement on (-1)-classes");

    if (r >= 4) {
        Enumerator en{Surface(r)};
        std::mt19937_64 rng(config.seed ^ 0x5eed5eedull);
        for (int t = 1; t <= 3; ++t) {
            for (const auto& entry : en.slice(t).entries) {
                if (r <= 6) {
                    for (const auto& m : perm_orbit(entry.cls))
                        if (!agrees(m)) return fail("h0 mismatch at " + format_class(m));
                } else {
                    auto orbit = perm_orbit(entry.cls);
                    for (int pick = 0; pick < 3; ++pick) {
                        const auto& m = orbit[rng() % orbit.size()];
                        if (!agrees(m)) return fail("h0 mismatch at " + format_class(m));
                    }
                }
            }
        }
        config.certificate.push_back(r <= 6 ? "h0 agreement on all classes of degree <= 3"
                                            : "h0 agreement sampled on degree <= 3 types");
    }
    return true;
}

inline PointConfig random_general_points(const Surface& s, std::uint64_t seed,
                                         int height = 100, int max_attempts = 32) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        PointConfig config;
        config.r = s.r;
        config.seed = seed;
        config.height = height;
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * attempt);
        std::uniform_int_distribution<int> coord(-height, height);
        for (int i = 0; i < s.r; ++i)
            config.points.push_back({{Int(coord(rng)), Int(coord(rng)), Int(1)}});
        std::string why;
        if (certify(config, &why)) return config;
    }
    throw genericity_error("retry budget exhausted drawing a general point configuration");
}

// one section per Cox generator slot, aligned with cox_generators order
struct GeneratorSection {
    GeneratorSlot slot;
    std::vector<Rat> vec;  // basis vector in space(slot.cls)
};

inline std::vector<GeneratorSection> generator_sections(const SectionModel& model) {
    std::vector<GeneratorSection> out;
    for (const auto& slot : cox_generators(model.surface())) {
        const SectionSpace& sp = model.space(slot.cls);
        out.push_back({slot, sp.basis.at(slot.basis_index)});
    }
    return out;
}

}  // namespace dpx

#endif
