#pragma once

// Fraction-free (Bareiss) rank computation over an integral domain. Matrices
// here are tiny (n <= 8), so clarity beats cleverness. Scalar must provide
// +, -, *, scalar_is_zero and scalar_exact_div (exact quotients of minors).

#include "ncp/golden.hpp"

#include <utility>
#include <vector>

namespace ncp {

template <class Scalar>
int matrix_rank(std::vector<std::vector<Scalar>> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    Scalar prev_pivot(1);
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!scalar_is_zero(a[r][col])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                Scalar num = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
                a[r][c] = scalar_exact_div(num, prev_pivot);
            }
            a[r][col] = Scalar(0);
        }
        prev_pivot = a[rank][col];
        ++rank;
    }
    return rank;
}

}  // namespace ncp
