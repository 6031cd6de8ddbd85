#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qfhe/errors.hpp"
#include "qfhe/rng.hpp"
#include "qfhe/sv_kernels.hpp"

namespace qfhe {

enum class Gate : uint8_t { X, Y, Z, H, S, Sdg, T, Tdg };

struct BellOutcome {
    uint8_t m1 = 0;  // bit-flip label
    uint8_t m2 = 0;  // phase-flip label
    bool operator==(const BellOutcome&) const = default;
};

// Dense little-endian register: qubit k is bit k of the amplitude index.
class StateVector {
public:
    static constexpr uint32_t kMaxQubits = 22;

    explicit StateVector(uint32_t qubit_count);
    static StateVector from_amplitudes(std::vector<cplx> amps);

    uint32_t qubit_count() const { return nq_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    void apply(Gate g, uint32_t q);
    void apply_matrix(const std::array<cplx, 4>& m, uint32_t q);
    void apply_cnot(uint32_t control, uint32_t target);
    double norm_sq() const;

    // From |00>: H on a, then CNOT a->b.
    void prepare_epr(uint32_t a, uint32_t b);

    // Projective measurement in the labeled Bell basis
    //   |beta_ab> = (X^a Z^b on q1) (|00>+|11>)/sqrt(2),
    // so teleporting through an EPR pair leaves X^m1 Z^m2 |psi> on the far
    // half. Collapses and renormalizes.
    BellOutcome bell_measure(uint32_t q1, uint32_t q2, Rng& rng);
    // Test hook with a pinned outcome; throws MeasurementError on a
    // zero-probability branch.
    void bell_project(uint32_t q1, uint32_t q2, BellOutcome outcome);

    // Row-major 2x2 reduced density matrix of one qubit.
    std::array<cplx, 4> reduced_density(uint32_t q) const;

private:
    std::array<double, 4> bell_probabilities(uint32_t q1, uint32_t q2) const;
    void bell_collapse(uint32_t q1, uint32_t q2, BellOutcome o, double prob);
    void check_target(uint32_t q) const;

    uint32_t nq_;
    std::vector<cplx> amp_;
};

enum class PadDirection : uint8_t { Encrypt, Decrypt };

// Quantum one-time pad on one qubit: Encrypt applies X^a Z^b, Decrypt the
// inverse. Global phase is not tracked anywhere in this module.
StateVector qotp(StateVector state, int a, int b, PadDirection dir, uint32_t target);

// |<a|b>|^2 for pure states; phase-invariant.
double fidelity(const StateVector& a, const StateVector& b);
double fidelity_pair(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b);

// Trace distance of two single-qubit density matrices (row-major 2x2).
double trace_distance_2x2(const std::array<cplx, 4>& r, const std::array<cplx, 4>& s);

std::array<cplx, 4> gate_matrix(Gate g);

StateVector random_state(uint32_t qubit_count, Rng& rng);

}  // namespace qfhe
