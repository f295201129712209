#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gqwalk/bits.hpp"

namespace gqw {

using cplx = std::complex<double>;

struct StateVector {
    int n = 0;
    std::vector<cplx> amp;

    static StateVector zeros(int n) {
        StateVector s;
        s.n = n;
        s.amp.assign(std::size_t{1} << n, cplx{0.0, 0.0});
        return s;
    }
    std::size_t size() const { return amp.size(); }
};

double norm_sq(const StateVector& s);
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace gqw
