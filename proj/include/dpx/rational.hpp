#ifndef DPX_RATIONAL_HPP
#define DPX_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpx {

using Int = mpz_class;
using Rat = mpq_class;

inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

inline Int factorial(long n) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// Checked int64 helpers; coefficients in scope are tiny but the checks make
// the fixed-width fast path safe (arbitrary-precision values are used for
// everything that can actually grow).
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 add overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 mul overflow");
    return r;
}

class capacity_error : public std::runtime_error {
  public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dpx

#endif
