#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ast.hpp"
#include "structure.hpp"

namespace eqol {

// Exact classical mixture for an N-position key exchange: per position,
// sender basis and key bit, receiver basis and result bit, with the
// intercept-resend attacker optionally in between. Everything is kept as
// rational diagonal weights so reports are bit-reproducible.
struct BB84Instance {
    std::size_t n = 0;
    bool eavesdrop = false;
    std::vector<std::size_t> sift;  // 1-based positions, defaults to all of them
    Structure structure;            // diagonal joint state over 4n qubits
};

// Qubit names in canonical order: sender bases ab1..abN, sender keys
// ak1..akN, receiver bases bb1..bbN, receiver results bk1..bkN.
std::vector<std::string> bb84_qubits(std::size_t n);

// Per-position weight of (sender basis, key, receiver basis, result),
// indexed a*8 + k*4 + b*2 + r. Closed form.
std::array<Rational, 16> bb84_position_weights(bool eavesdrop);
// The same table computed by brute-force enumeration over the attacker's
// basis and outcome and the receiver's measurement; independent oracle.
std::array<Rational, 16> bb84_position_oracle(bool eavesdrop);

// 1 <= n <= 4 (the diagonal has 16^n entries); out of range is an error.
BB84Instance bb84_state(std::size_t n, bool eavesdrop);

// The same mixture conditioned on basis agreement at every sift position;
// renormalization by 2^{|sift|} is exact.
BB84Instance bb84_conditioned(const BB84Instance& inst);

// (O < int(sift agreement)) => (a.Id <= int(some sifted key mismatch));
// sift must be non-empty and 0 < a <= 1.
QF bb84_formula(std::size_t n, const std::vector<std::size_t>& sift, const Rational& a);

struct BB84SweepEntry {
    Rational a;
    bool honest = false;
    bool eavesdrop = false;
};

struct BB84Report {
    std::size_t n = 0;
    Rational threshold;
    std::vector<std::size_t> sift;
    Rational sift_probability;        // (1/2)^n
    // Key-mismatch integral conditioned on the sift event.
    Rational honest_consequent;       // exactly 0
    Rational eavesdrop_consequent;    // 1 - (3/4)^n
    // The same integral on the unconditioned mixtures.
    Rational honest_consequent_raw;   // 1 - (3/4)^n
    Rational eavesdrop_consequent_raw;  // 1 - (5/8)^n
    Rational eavesdrop_bit_error;     // per sifted position, exactly 1/4
    bool honest_holds = false;        // the formula on the conditioned states
    bool eavesdrop_holds = false;
    std::vector<BB84SweepEntry> sweep;
};

// Evaluates the detection formula over all positions on honest and
// eavesdropped runs, conditioned on the sift event, and sweeps the
// threshold over {1e-6, 1/20, 1/10, 1/4}.
BB84Report bb84_check(std::size_t n, const Rational& a, double tol = kDefaultTol);

} // namespace eqol
