#include "gqwalk/qasm.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace gqw {

std::vector<IsingTerm> to_ising_z(const Polynomial& p) {
    std::unordered_map<basis_t, double> acc;
    for (const Term& term : p.terms) {
        double base = term.coeff / static_cast<double>(std::uint64_t{1} << weight(term.mask));
        basis_t sub = term.mask;
        // iterate all subsets of the mask, empty set included
        while (true) {
            double sign = weight(sub) % 2 == 0 ? 1.0 : -1.0;
            acc[sub] += sign * base;
            if (sub == 0) break;
            sub = (sub - 1) & term.mask;
        }
    }
    std::vector<IsingTerm> out;
    out.reserve(acc.size());
    for (const auto& [mask, coeff] : acc)
        if (coeff != 0.0) out.push_back({mask, coeff});
    std::sort(out.begin(), out.end(),
              [](const IsingTerm& a, const IsingTerm& b) { return term_mask_less(a.mask, b.mask); });
    return out;
}

namespace {

std::string fmt_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<int> mask_bits(basis_t mask) {
    std::vector<int> bits;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1) bits.push_back(i);
    return bits;
}

}  // namespace

std::string emit_qasm(const Polynomial& poly, const LayerPlan& plan, bool maximize,
                      QasmStats* stats) {
    if (poly.degree() > 4) throw std::invalid_argument("phase-gadget lowering is capped at degree 4");
    if (plan.layers.empty()) throw std::invalid_argument("empty layer plan");

    std::vector<IsingTerm> ising = to_ising_z(poly);
    std::vector<IsingTerm> gadgets;
    for (const IsingTerm& t : ising)
        if (t.mask != 0) gadgets.push_back(t);

    QasmStats st;
    st.layers = plan.layers.size();
    for (const IsingTerm& t : gadgets) {
        int w = weight(t.mask);
        st.cx += 2 * static_cast<std::uint64_t>(w - 1);
        st.rz += 1;
        st.cost_depth += w == 1 ? 1 : 2 * static_cast<std::uint64_t>(w - 1) + 1;
    }
    st.rx = static_cast<std::uint64_t>(poly.n);
    std::uint64_t total_depth = 1 + st.layers * (1 + st.cost_depth);

    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    out += "// layers pbar = " + std::to_string(st.layers) + ", cost monomials (z basis) = " +
           std::to_string(gadgets.size()) + "\n";
    out += "// per cost layer: cx = " + std::to_string(st.cx) + ", rz = " + std::to_string(st.rz) +
           "; mixer column: rx = " + std::to_string(st.rx) + "\n";
    out += "// depth accounting: d = d_SP + pbar*(d_M + d_C) = 1 + " + std::to_string(st.layers) +
           "*(1 + " + std::to_string(st.cost_depth) + ") = " + std::to_string(total_depth) + "\n";
    out += "qreg q[" + std::to_string(poly.n) + "];\n";
    out += "creg c[" + std::to_string(poly.n) + "];\n";
    for (int i = 0; i < poly.n; ++i) out += "h q[" + std::to_string(i) + "];\n";

    double mixer_sign = maximize ? 1.0 : -1.0;
    for (const Layer& layer : plan.layers) {
        for (const IsingTerm& t : gadgets) {
            std::vector<int> bits = mask_bits(t.mask);
            int target = bits.back();
            for (std::size_t k = 0; k + 1 < bits.size(); ++k)
                out += "cx q[" + std::to_string(bits[k]) + "],q[" + std::to_string(bits[k + 1]) +
                       "];\n";
            out += "rz(" + fmt_angle(2.0 * layer.dt * t.coeff) + ") q[" + std::to_string(target) +
                   "];\n";
            for (std::size_t k = bits.size() - 1; k-- > 0;)
                out += "cx q[" + std::to_string(bits[k]) + "],q[" + std::to_string(bits[k + 1]) +
                       "];\n";
        }
        std::string rx = "rx(" + fmt_angle(mixer_sign * 2.0 * layer.theta) + ") ";
        for (int i = 0; i < poly.n; ++i) out += rx + "q[" + std::to_string(i) + "];\n";
    }
    out += "measure q -> c;\n";

    if (stats) *stats = st;
    return out;
}

}  // namespace gqw
