#pragma once

#include <cstdint>

#include "derivation.hpp"
#include "structure.hpp"

namespace eqol {

// Two-qubit structure for the maximally entangled pair
// (|01> + |10>)/sqrt(2): a single entangled block, with the admissible
// valuations either restricted to {01, 10} or left unrestricted.
Structure bell_structure(bool v_all = false);

struct BellFormulas {
    QF gamma1;  // T[{};qB] = O
    QF gamma2;  // T[qB;qB] = O
    QF gamma3;  // T[{qb1};qB] = 1/2.Id
    QF gamma4;  // T[{qb2};qB] = 1/2.Id
    QF gamma;   // the conjunction of the four
    QF pos1;    // O < T[{qb1};{qb1}]
    QF pos2;    // O < T[{qb2};{qb2}]
    QF eta;     // ([qB] /\ gamma) => (![{qb1}] /\ ![{qb2}])
};

BellFormulas bell_formulas();

// Replayable refutation: assuming the pair splits into local one-qubit
// blocks with strictly positive one-outcomes, the observed statistics force
// a contradiction.
DerivationScript bell_script();

struct BellReport {
    double ev_none = 0.0;    // weight of outcome 00
    double ev_both = 0.0;    // weight of outcome 11
    double ev_first = 0.0;   // weight of outcome 10
    double ev_second = 0.0;  // weight of outcome 01
    bool gamma_holds = false;
    bool eta_holds = false;
    DerivationReport replay;
    std::size_t samples = 0;
    std::size_t product_satisfied = 0;  // product states matching gamma2 /\ pos1 /\ pos2
};

// Evaluates the Bell statistics, replays the refutation script, and scans
// random two-qubit product states for the jointly unsatisfiable conjunction.
BellReport bell_check(std::size_t samples = 1000, std::uint64_t seed = 20240801,
                      double tol = kDefaultTol);

} // namespace eqol
