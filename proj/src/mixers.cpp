#include "gqwalk/mixers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gqw {

namespace {

void check_n(int n) {
    if (n < 1 || n > k_max_vars)
        throw std::invalid_argument("mixer dimension must be in [1, " +
                                    std::to_string(k_max_vars) + "]");
}

}  // namespace

MixerSpec make_x_mixer(int n) {
    check_n(n);
    MixerSpec m;
    m.kind = MixerKind::x_hypercube;
    m.n = n;
    return m;
}

MixerSpec make_xy_ring(int n, int hamming_weight) {
    check_n(n);
    if (n < 2) throw std::invalid_argument("xy ring needs at least 2 qubits");
    if (hamming_weight < 0 || hamming_weight > n)
        throw std::invalid_argument("hamming weight out of range");
    MixerSpec m;
    m.kind = MixerKind::xy_ring;
    m.n = n;
    m.hamming_weight = hamming_weight;
    return m;
}

bool is_feasible(const MixerSpec& m, basis_t x) {
    if (x >> m.n) return false;
    if (m.kind == MixerKind::xy_ring) return weight(x) == m.hamming_weight;
    return true;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

std::uint64_t feasible_count(const MixerSpec& m) {
    if (m.kind == MixerKind::xy_ring) return binomial(m.n, m.hamming_weight);
    return std::uint64_t{1} << m.n;
}

std::vector<std::pair<int, int>> ring_bonds(int n) {
    std::vector<std::pair<int, int>> bonds;
    if (n == 2) {
        bonds.push_back({0, 1});
        return bonds;
    }
    for (int i = 0; i < n; ++i) bonds.push_back({i, (i + 1) % n});
    return bonds;
}

std::vector<basis_t> neighbors(const MixerSpec& m, basis_t x) {
    if (!is_feasible(m, x)) throw std::invalid_argument("state outside the feasible set");
    std::vector<basis_t> out;
    if (m.kind == MixerKind::x_hypercube) {
        out.reserve(m.n);
        for (int i = 0; i < m.n; ++i) out.push_back(flip_bit(x, i));
        return out;
    }
    for (const auto& [i, j] : ring_bonds(m.n)) {
        if (get_bit(x, i) != get_bit(x, j)) {
            basis_t y = flip_bit(flip_bit(x, i), j);
            if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
        }
    }
    return out;
}

StateVector initial_state(const MixerSpec& m) {
    StateVector s = StateVector::zeros(m.n);
    double a = 1.0 / std::sqrt(static_cast<double>(feasible_count(m)));
    for (basis_t j = 0; j < s.size(); ++j)
        if (is_feasible(m, j)) s.amp[j] = a;
    return s;
}

double norm_sq(const StateVector& s) {
    double t = 0.0;
    for (const auto& a : s.amp) t += std::norm(a);
    return t;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("fidelity: size mismatch");
    cplx ov{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) ov += std::conj(a.amp[j]) * b.amp[j];
    return std::norm(ov);
}

}  // namespace gqw
