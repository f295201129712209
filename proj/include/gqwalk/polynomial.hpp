#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gqwalk/bits.hpp"

namespace gqw {

// One multilinear monomial: the set bits of mask name the variables.
struct Term {
    std::uint64_t mask = 0;
    double coeff = 0.0;
};

// Multilinear pseudo-boolean polynomial over x in {0,1}^n.
// Terms are kept normalized: unique masks, no zero coefficients, sorted by
// (monomial size, lexicographic variable sequence).
struct Polynomial {
    int n = 0;
    std::vector<Term> terms;

    static Polynomial zero(int n);
    static Polynomial constant(int n, double c);
    static Polynomial variable(int n, int i);

    int degree() const;
    double constant_term() const;
    std::size_t term_count() const { return terms.size(); }
};

// Ordering of equally sized monomials follows the sorted variable lists, so
// {0,3} precedes {1,2}.
bool term_mask_less(std::uint64_t a, std::uint64_t b);

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, double s);

Polynomial poly_from_terms(int n,
                           const std::vector<std::pair<std::vector<int>, double>>& entries);

double evaluate(const Polynomial& p, basis_t x);

}  // namespace gqw
