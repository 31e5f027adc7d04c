#ifndef DPX_POLYNOMIAL_HPP
#define DPX_POLYNOMIAL_HPP

#include <cstddef>
#include <vector>

#include "dpx/rational.hpp"

namespace dpx {

// Univariate polynomial with exact rational coefficients, ascending order.
struct Polynomial {
    std::vector<Rat> coeffs;

    std::size_t degree() const {
        std::size_t d = coeffs.size();
        while (d > 0 && coeffs[d - 1] == 0) --d;
        return d == 0 ? 0 : d - 1;
    }

    Rat operator()(const Int& t) const {
        Rat acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
        return acc;
    }

    Rat leading_coefficient() const {
        return coeffs.empty() ? Rat(0) : coeffs[degree()];
    }

    friend bool operator==(const Polynomial& p, const Polynomial& q) {
        std::size_t n = std::max(p.coeffs.size(), q.coeffs.size());
        for (std::size_t i = 0; i < n; ++i) {
            Rat a = i < p.coeffs.size() ? p.coeffs[i] : Rat(0);
            Rat b = i < q.coeffs.size() ? q.coeffs[i] : Rat(0);
            if (a != b) return false;
        }
        return true;
    }
};

// Unique interpolating polynomial through (x_i, y_i), exact Lagrange form.
inline Polynomial interpolate(const std::vector<std::pair<Int, Int>>& points) {
    if (points.empty()) throw std::invalid_argument("interpolate: no nodes");
    std::size_t n = points.size();
    std::vector<Rat> coeffs(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> num{Rat(1)};
        Rat den(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(num.size() + 1, Rat(0));
            for (std::size_t k = 0; k < num.size(); ++k) {
                next[k + 1] += num[k];
                next[k] -= Rat(points[j].first) * num[k];
            }
            num = std::move(next);
            den *= Rat(points[i].first - points[j].first);
        }
        Rat scale = Rat(points[i].second) / den;
        for (std::size_t k = 0; k < num.size(); ++k) coeffs[k] += scale * num[k];
    }
    Polynomial p;
    p.coeffs = std::move(coeffs);
    return p;
}

}  // namespace dpx

#endif
