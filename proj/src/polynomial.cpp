#include "gqwalk/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace gqw {

namespace {

void check_dim(int n) {
    if (n < 1 || n > k_max_vars)
        throw std::invalid_argument("polynomial dimension must be in [1, " +
                                    std::to_string(k_max_vars) + "]");
}

Polynomial normalized(int n, std::unordered_map<std::uint64_t, double>&& acc) {
    Polynomial p;
    p.n = n;
    p.terms.reserve(acc.size());
    for (const auto& [mask, coeff] : acc)
        if (coeff != 0.0) p.terms.push_back({mask, coeff});
    std::sort(p.terms.begin(), p.terms.end(),
              [](const Term& a, const Term& b) { return term_mask_less(a.mask, b.mask); });
    return p;
}

}  // namespace

bool term_mask_less(std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    if (a == b) return false;
    std::uint64_t d = a ^ b;
    return (a & (d & (0 - d))) != 0;
}

Polynomial Polynomial::zero(int n) {
    check_dim(n);
    Polynomial p;
    p.n = n;
    return p;
}

Polynomial Polynomial::constant(int n, double c) {
    Polynomial p = zero(n);
    if (c != 0.0) p.terms.push_back({0, c});
    return p;
}

Polynomial Polynomial::variable(int n, int i) {
    Polynomial p = zero(n);
    if (i < 0 || i >= n) throw std::invalid_argument("variable index out of range");
    p.terms.push_back({std::uint64_t{1} << i, 1.0});
    return p;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, std::popcount(t.mask));
    return d;
}

double Polynomial::constant_term() const {
    for (const auto& t : terms)
        if (t.mask == 0) return t.coeff;
    return 0.0;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    if (a.n != b.n) throw std::invalid_argument("poly_add: dimension mismatch");
    std::unordered_map<std::uint64_t, double> acc;
    acc.reserve(a.terms.size() + b.terms.size());
    for (const auto& t : a.terms) acc[t.mask] += t.coeff;
    for (const auto& t : b.terms) acc[t.mask] += t.coeff;
    return normalized(a.n, std::move(acc));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.n != b.n) throw std::invalid_argument("poly_mul: dimension mismatch");
    std::unordered_map<std::uint64_t, double> acc;
    acc.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            acc[ta.mask | tb.mask] += ta.coeff * tb.coeff;  // x_i^2 = x_i
    return normalized(a.n, std::move(acc));
}

Polynomial poly_scale(const Polynomial& a, double s) {
    Polynomial p;
    p.n = a.n;
    if (s == 0.0) return p;
    p.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) p.terms.push_back({t.mask, t.coeff * s});
    return p;
}

Polynomial poly_from_terms(int n,
                           const std::vector<std::pair<std::vector<int>, double>>& entries) {
    check_dim(n);
    std::unordered_map<std::uint64_t, double> acc;
    for (const auto& [vars, coeff] : entries) {
        std::uint64_t mask = 0;
        for (int v : vars) {
            if (v < 0 || v >= n) throw std::invalid_argument("variable index out of range");
            mask |= std::uint64_t{1} << v;
        }
        acc[mask] += coeff;
    }
    return normalized(n, std::move(acc));
}

double evaluate(const Polynomial& p, basis_t x) {
    double v = 0.0;
    for (const auto& t : p.terms)
        if ((x & t.mask) == t.mask) v += t.coeff;
    return v;
}

}  // namespace gqw
