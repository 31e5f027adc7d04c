#ifndef DPX_DIVISOR_HPP
#define DPX_DIVISOR_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpx/rational.hpp"

namespace dpx {

// Blow-up of the plane at r general points, 1 <= r <= 8.
struct Surface {
    int r = 0;

    Surface() = default;
    explicit Surface(int r_) : r(r_) {
        if (r < 1 || r > 8) throw std::invalid_argument("Surface: r must be in 1..8");
    }
    int degree() const { return 9 - r; }
    friend bool operator==(const Surface&, const Surface&) = default;
};

// Class a*L + b_1*E_1 + ... + b_r*E_r in Pic(S_r), intersection form
// diag(+1, -1, ..., -1).
struct DivisorClass {
    std::int8_t r = 0;
    std::int64_t a = 0;
    std::array<std::int64_t, 8> b{};

    DivisorClass() = default;
    DivisorClass(const Surface& s, std::int64_t a_, std::vector<std::int64_t> bs)
        : r(static_cast<std::int8_t>(s.r)), a(a_) {
        if (static_cast<int>(bs.size()) != s.r)
            throw std::invalid_argument("DivisorClass: b length must equal r");
        std::copy(bs.begin(), bs.end(), b.begin());
    }
    static DivisorClass zero(const Surface& s) {
        DivisorClass d;
        d.r = static_cast<std::int8_t>(s.r);
        return d;
    }

    Surface surface() const { return Surface(r); }

    friend bool operator==(const DivisorClass& x, const DivisorClass& y) {
        return x.r == y.r && x.a == y.a && x.b == y.b;
    }
    // total order: lexicographic on (a, b); used everywhere a deterministic
    // choice among classes is needed
    friend bool operator<(const DivisorClass& x, const DivisorClass& y) {
        if (x.r != y.r) return x.r < y.r;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
};

inline void require_same_surface(const DivisorClass& x, const DivisorClass& y) {
    if (x.r != y.r) throw std::invalid_argument("divisor classes live on different surfaces");
}

inline std::int64_t intersect(const DivisorClass& x, const DivisorClass& y) {
    require_same_surface(x, y);
    std::int64_t acc = checked_mul(x.a, y.a);
    for (int i = 0; i < x.r; ++i) acc = checked_add(acc, -checked_mul(x.b[i], y.b[i]));
    return acc;
}

inline std::int64_t self_intersection(const DivisorClass& x) { return intersect(x, x); }

// anticanonical degree -K.D = 3a + sum(b)
inline std::int64_t degree(const DivisorClass& x) {
    std::int64_t acc = checked_mul(3, x.a);
    for (int i = 0; i < x.r; ++i) acc = checked_add(acc, x.b[i]);
    return acc;
}

inline DivisorClass operator+(const DivisorClass& x, const DivisorClass& y) {
    require_same_surface(x, y);
    DivisorClass out = x;
    out.a = checked_add(x.a, y.a);
    for (int i = 0; i < x.r; ++i) out.b[i] = checked_add(x.b[i], y.b[i]);
    return out;
}

inline DivisorClass operator-(const DivisorClass& x, const DivisorClass& y) {
    require_same_surface(x, y);
    DivisorClass out = x;
    out.a = checked_add(x.a, -y.a);
    for (int i = 0; i < x.r; ++i) out.b[i] = checked_add(x.b[i], -y.b[i]);
    return out;
}

inline DivisorClass operator-(const DivisorClass& x) {
    DivisorClass out = x;
    out.a = -x.a;
    for (int i = 0; i < x.r; ++i) out.b[i] = -x.b[i];
    return out;
}

inline DivisorClass operator*(std::int64_t n, const DivisorClass& x) {
    DivisorClass out = x;
    out.a = checked_mul(n, x.a);
    for (int i = 0; i < x.r; ++i) out.b[i] = checked_mul(n, x.b[i]);
    return out;
}

inline bool is_zero(const DivisorClass& x) {
    if (x.a != 0) return false;
    for (int i = 0; i < x.r; ++i)
        if (x.b[i] != 0) return false;
    return true;
}

inline DivisorClass canonical_class(const Surface& s) {
    DivisorClass d = DivisorClass::zero(s);
    d.a = -3;
    for (int i = 0; i < s.r; ++i) d.b[i] = 1;
    return d;
}

inline DivisorClass anticanonical_class(const Surface& s) { return -canonical_class(s); }

inline DivisorClass line_class(const Surface& s) {
    DivisorClass d = DivisorClass::zero(s);
    d.a = 1;
    return d;
}

inline DivisorClass exceptional_class(const Surface& s, int i) {
    DivisorClass d = DivisorClass::zero(s);
    d.b[i] = 1;
    return d;
}

// representative with b sorted non-increasingly
inline DivisorClass perm_canonical(const DivisorClass& x) {
    DivisorClass out = x;
    std::sort(out.b.begin(), out.b.begin() + out.r, std::greater<std::int64_t>());
    return out;
}

// size of the orbit of b under coordinate permutations: r! / prod(mult!)
inline std::int64_t perm_orbit_size(const DivisorClass& x) {
    std::array<std::int64_t, 8> v = x.b;
    std::sort(v.begin(), v.begin() + x.r);
    static constexpr std::int64_t fact[9] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};
    std::int64_t n = fact[x.r];
    int run = 1;
    for (int i = 1; i < x.r; ++i) {
        if (v[i] == v[i - 1]) {
            ++run;
        } else {
            n /= fact[run];
            run = 1;
        }
    }
    n /= fact[run];
    return n;
}

inline std::vector<DivisorClass> perm_orbit(const DivisorClass& x) {
    DivisorClass c = x;
    std::sort(c.b.begin(), c.b.begin() + c.r);
    std::vector<DivisorClass> out;
    do {
        out.push_back(c);
    } while (std::next_permutation(c.b.begin(), c.b.begin() + c.r));
    return out;
}

struct DivisorClassHash {
    std::size_t operator()(const DivisorClass& d) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::uint64_t>(d.r));
        mix(static_cast<std::uint64_t>(d.a));
        for (int i = 0; i < d.r; ++i) mix(static_cast<std::uint64_t>(d.b[i]));
        return static_cast<std::size_t>(h);
    }
};

// text form "a;b1,b2,...,br"
inline std::string format_class(const DivisorClass& d) {
    std::ostringstream os;
    os << d.a << ";";
    for (int i = 0; i < d.r; ++i) {
        if (i) os << ",";
        os << d.b[i];
    }
    return os.str();
}

inline DivisorClass parse_class(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("class syntax is \"a;b1,...,br\"");
    DivisorClass d;
    std::size_t pos = 0;
    d.a = std::stoll(text.substr(0, semi));
    std::string rest = text.substr(semi + 1);
    std::vector<std::int64_t> bs;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        std::string tok =
            rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw std::invalid_argument("empty coefficient in class");
        bs.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (bs.size() < 1 || bs.size() > 8)
        throw std::invalid_argument("class must have 1..8 exceptional coefficients");
    d.r = static_cast<std::int8_t>(bs.size());
    std::copy(bs.begin(), bs.end(), d.b.begin());
    return d;
}

inline std::ostream& operator<<(std::ostream& os, const DivisorClass& d) {
    return os << format_class(d);
}

}  // namespace dpx

#endif
