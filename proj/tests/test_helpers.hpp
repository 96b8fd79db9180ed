#pragma once

#include <doctest.h>

#include "gaugekit/gauge.hpp"
#include "gaugekit/herm.hpp"
#include "gaugekit/rng.hpp"

namespace gktest {

using namespace gaugekit;

inline HermitianMatrix random_hermitian(int n, Rng& rng) {
    HermitianMatrix a(n);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = rng.normal();
        for (int j = i + 1; j < n; ++j) {
            Complex z(rng.normal(), rng.normal());
            a.at(i, j) = z;
            a.at(j, i) = std::conj(z);
        }
    }
    return a;
}

inline RectMatrix random_rect(int rows, int cols, Rng& rng) {
    RectMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Complex(rng.normal(), rng.normal());
    return m;
}

inline double entry_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
    return (a - b).max_abs_entry();
}

} // namespace gktest
