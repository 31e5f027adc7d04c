#ifndef DPX_LINALG_HPP
#define DPX_LINALG_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dpx/rational.hpp"

namespace dpx {

// Dense matrix over exact rationals. Sizes in this artifact stay modest
// (a few hundred rows/columns); fraction-free elimination over the integers
// with row content stripping keeps entries small.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    // integer rows with per-row denominators cleared and content stripped
    std::vector<std::vector<Int>> integer_rows() const {
        std::vector<std::vector<Int>> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Int lcm = 1;
            for (std::size_t j = 0; j < cols_; ++j)
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), at(i, j).get_den().get_mpz_t());
            std::vector<Int> row(cols_);
            bool nonzero = false;
            for (std::size_t j = 0; j < cols_; ++j) {
                row[j] = at(i, j).get_num() * (lcm / at(i, j).get_den());
                nonzero |= row[j] != 0;
            }
            if (nonzero) out.push_back(std::move(row));
        }
        return out;
    }

    std::size_t rank() const { return integer_rank(integer_rows(), cols_); }

    static std::size_t integer_rank(std::vector<std::vector<Int>> rows, std::size_t cols) {
        strip_rows(rows);
        std::size_t rank = 0, top = 0;
        for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
            std::size_t piv = top;
            bool found = false;
            std::size_t best_bits = 0;
            for (std::size_t i = top; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                std::size_t bits = mpz_sizeinbase(rows[i][c].get_mpz_t(), 2);
                if (!found || bits < best_bits) {
                    found = true;
                    piv = i;
                    best_bits = bits;
                }
            }
            if (!found) continue;
            std::swap(rows[top], rows[piv]);
            const std::vector<Int>& prow = rows[top];
            const Int& pv = prow[c];
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                Int& v = rows[i][c];
                if (v == 0) continue;
                Int g;
                mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), v.get_mpz_t());
                Int m1 = pv / g, m2 = v / g;
                std::vector<Int>& row = rows[i];
                Int content = 0;
                for (std::size_t j = c; j < cols; ++j) {
                    row[j] = m1 * row[j] - m2 * prow[j];
                    if (content != 1)
                        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), row[j].get_mpz_t());
                }
                if (content > 1)
                    for (std::size_t j = c; j < cols; ++j) row[j] /= content;
            }
            ++top;
            ++rank;
        }
        return rank;
    }

    // Reduced row echelon form in place; returns pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t top = 0;
        for (std::size_t c = 0; c < cols_ && top < rows_; ++c) {
            std::size_t piv = top;
            while (piv < rows_ && at(piv, c) == 0) ++piv;
            if (piv == rows_) continue;
            if (piv != top)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(top, j), at(piv, j));
            Rat pv = at(top, c);
            for (std::size_t j = c; j < cols_; ++j) at(top, j) /= pv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == top || at(i, c) == 0) continue;
                Rat f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(top, j);
            }
            pivots.push_back(c);
            ++top;
        }
        return pivots;
    }

    // Kernel basis in reduced column echelon form: one vector per free column,
    // with a unit at that column. Deterministic for a fixed column order.
    struct Kernel {
        std::vector<std::vector<Rat>> basis;
        std::vector<std::size_t> unit_positions;  // free column of each basis vector
    };

    Kernel kernel() const {
        RatMatrix work = *this;
        std::vector<std::size_t> pivots = work.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        Kernel out;
        for (std::size_t fc = 0; fc < cols_; ++fc) {
            if (is_pivot[fc]) continue;
            std::vector<Rat> v(cols_, Rat(0));
            v[fc] = 1;
            for (std::size_t ri = 0; ri < pivots.size(); ++ri) v[pivots[ri]] = -work.at(ri, fc);
            out.unit_positions.push_back(fc);
            out.basis.push_back(std::move(v));
        }
        return out;
    }

  private:
    static void strip_rows(std::vector<std::vector<Int>>& rows) {
        for (auto& row : rows) {
            Int g = 0;
            for (const Int& v : row) {
                if (g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            }
            if (g > 1)
                for (Int& v : row) v /= g;
        }
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

}  // namespace dpx

#endif
