#pragma once

#include <string>
#include <vector>

#include "gqwalk/polynomial.hpp"
#include "gqwalk/schedule.hpp"

namespace gqw {

struct IsingTerm {
    basis_t mask = 0;  // set bits pick the Z factors; 0 is the constant
    double coeff = 0.0;
};

// Exact change of basis x_i = (1 - z_i)/2, term by term. The constant offset
// is kept so callers can account for the dropped global phase.
std::vector<IsingTerm> to_ising_z(const Polynomial& p);

struct QasmStats {
    std::uint64_t layers = 0;
    std::uint64_t cx = 0;  // per layer
    std::uint64_t rz = 0;  // per layer
    std::uint64_t rx = 0;  // per layer
    std::uint64_t cost_depth = 0;  // sequential gate count of one cost layer
};

// Lowers a layer plan to OPENQASM 2.0 with the hypercube mixer: Hadamard
// state preparation, then per layer the cost phase as CNOT-ladder phase
// gadgets followed by an R_X column. Degree above 4 is rejected.
std::string emit_qasm(const Polynomial& poly, const LayerPlan& plan, bool maximize = false,
                      QasmStats* stats = nullptr);

}  // namespace gqw
