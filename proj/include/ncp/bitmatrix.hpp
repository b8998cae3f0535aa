#pragma once

// Dense bit matrix for incidence relations between rank levels. Rows are
// word-aligned; boolean products implement transitive closure of covers.

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ncp {

class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t r, std::size_t c) { bits_[r * wpr_ + c / 64] |= 1ull << (c % 64); }
    bool test(std::size_t r, std::size_t c) const {
        return bits_[r * wpr_ + c / 64] >> (c % 64) & 1;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : bits_) n += std::popcount(w);
        return n;
    }
    std::size_t row_count(std::size_t r) const {
        std::size_t n = 0;
        for (std::size_t w = 0; w < wpr_; ++w) n += std::popcount(bits_[r * wpr_ + w]);
        return n;
    }

    template <class F>
    void for_each_in_row(std::size_t r, F&& f) const {
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = bits_[r * wpr_ + w];
            while (word) {
                f(w * 64 + std::countr_zero(word));
                word &= word - 1;
            }
        }
    }

    // this |= a row-selected OR: row r |= other row s
    void or_row_from(std::size_t r, const BitMatrix& other, std::size_t s) {
        for (std::size_t w = 0; w < wpr_; ++w) bits_[r * wpr_ + w] |= other.bits_[s * other.wpr_ + w];
    }

    // boolean matrix product (rows_a x cols_b)
    static BitMatrix product(const BitMatrix& a, const BitMatrix& b) {
        BitMatrix c(a.rows(), b.cols());
        for (std::size_t r = 0; r < a.rows(); ++r)
            a.for_each_in_row(r, [&](std::size_t mid) { c.or_row_from(r, b, mid); });
        return c;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

}  // namespace ncp
