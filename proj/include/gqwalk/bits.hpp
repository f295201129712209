#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gqw {

using basis_t = std::uint64_t;

constexpr int k_max_vars = 30;

inline basis_t full_mask(int n) { return (basis_t{1} << n) - 1; }

inline int get_bit(basis_t x, int i) { return static_cast<int>((x >> i) & 1u); }

inline basis_t flip_bit(basis_t x, int i) { return x ^ (basis_t{1} << i); }

inline int weight(basis_t x) { return std::popcount(x); }

// Variable x_0 is the first character of the string form.
inline std::string bits_to_string(basis_t x, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if (get_bit(x, i)) s[i] = '1';
    return s;
}

inline basis_t bits_from_string(const std::string& s) {
    if (s.size() > static_cast<std::size_t>(k_max_vars))
        throw std::invalid_argument("bit string longer than " + std::to_string(k_max_vars));
    basis_t x = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') x |= basis_t{1} << i;
        else if (s[i] != '0') throw std::invalid_argument("bit string must contain only 0/1");
    }
    return x;
}

// Values a and b are treated as the same level when they differ by less than
// this relative tolerance; used for rankings, gap keys and level dedup alike.
constexpr double k_value_tol = 1e-9;

inline bool values_distinct(double a, double b) {
    double scale = 1.0;
    double aa = a < 0 ? -a : a;
    double bb = b < 0 ? -b : b;
    if (aa > scale) scale = aa;
    if (bb > scale) scale = bb;
    return (a > b ? a - b : b - a) > k_value_tol * scale;
}

inline bool strictly_below(double lower, double upper) {
    return lower < upper && values_distinct(lower, upper);
}

}  // namespace gqw
