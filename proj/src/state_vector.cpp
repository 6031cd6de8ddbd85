#include "qfhe/state_vector.hpp"

#include <cmath>
#include <numbers>

namespace qfhe {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bell-state component (u, v) of |beta_ab> on (q1, q2).
inline cplx bell_component(BellOutcome o, int u, int v) {
    // |beta_ab> = (X^a Z^b tensor I) (|00>+|11>)/sqrt(2)
    // a=0: components at u==v; a=1: at u!=v. Sign -1 on the |1?> source when b=1.
    int src = u ^ o.m1;  // pre-X value of u
    if (src != v) return 0.0;
    double sign = (o.m2 && src) ? -1.0 : 1.0;
    return sign * kInvSqrt2;
}

}  // namespace

std::array<cplx, 4> gate_matrix(Gate g) {
    const cplx i{0.0, 1.0};
    const double s = kInvSqrt2;
    const cplx t = std::polar(1.0, std::numbers::pi / 4);
    switch (g) {
        case Gate::X: return {0, 1, 1, 0};
        case Gate::Y: return {0, -i, i, 0};
        case Gate::Z: return {1, 0, 0, -1};
        case Gate::H: return {s, s, s, -s};
        case Gate::S: return {1, 0, 0, i};
        case Gate::Sdg: return {1, 0, 0, -i};
        case Gate::T: return {1, 0, 0, t};
        case Gate::Tdg: return {1, 0, 0, std::conj(t)};
    }
    throw InputError("sv: unknown gate");
}

StateVector::StateVector(uint32_t qubit_count) : nq_(qubit_count) {
    if (qubit_count == 0 || qubit_count > kMaxQubits)
        throw ResourceError("sv: register size unsupported");
    amp_.assign(size_t{1} << nq_, cplx{0.0, 0.0});
    amp_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
    size_t n = amps.size();
    if (n < 2 || (n & (n - 1)) != 0) throw InputError("sv: amplitude count must be a power of two");
    uint32_t nq = 0;
    while ((size_t{1} << nq) < n) ++nq;
    if (nq > kMaxQubits) throw ResourceError("sv: register size unsupported");
    StateVector sv(nq);
    sv.amp_ = std::move(amps);
    return sv;
}

void StateVector::check_target(uint32_t q) const {
    if (q >= nq_) throw InputError("sv: qubit index out of range");
}

void StateVector::apply_matrix(const std::array<cplx, 4>& m, uint32_t q) {
    check_target(q);
    active_kernels().apply2x2(amp_.data(), amp_.size(), size_t{1} << q, m.data());
}

void StateVector::apply(Gate g, uint32_t q) {
    check_target(q);
    // Diagonal gates go through the cheaper phase kernel.
    switch (g) {
        case Gate::S: active_kernels().apply_phase(amp_.data(), amp_.size(), size_t{1} << q, cplx{0, 1}); return;
        case Gate::Sdg: active_kernels().apply_phase(amp_.data(), amp_.size(), size_t{1} << q, cplx{0, -1}); return;
        case Gate::T:
            active_kernels().apply_phase(amp_.data(), amp_.size(), size_t{1} << q,
                                         std::polar(1.0, std::numbers::pi / 4));
            return;
        case Gate::Tdg:
            active_kernels().apply_phase(amp_.data(), amp_.size(), size_t{1} << q,
                                         std::polar(1.0, -std::numbers::pi / 4));
            return;
        case Gate::Z: active_kernels().apply_phase(amp_.data(), amp_.size(), size_t{1} << q, cplx{-1, 0}); return;
        default: apply_matrix(gate_matrix(g), q);
    }
}

void StateVector::apply_cnot(uint32_t control, uint32_t target) {
    check_target(control);
    check_target(target);
    if (control == target) throw InputError("sv: cnot needs distinct qubits");
    active_kernels().apply_cnot(amp_.data(), amp_.size(), size_t{1} << control, size_t{1} << target);
}

double StateVector::norm_sq() const { return active_kernels().norm_sq(amp_.data(), amp_.size()); }

void StateVector::prepare_epr(uint32_t a, uint32_t b) {
    apply(Gate::H, a);
    apply_cnot(a, b);
}

std::array<double, 4> StateVector::bell_probabilities(uint32_t q1, uint32_t q2) const {
    const size_t m1 = size_t{1} << q1;
    const size_t m2 = size_t{1} << q2;
    std::array<double, 4> prob{0, 0, 0, 0};
    // <beta| psi> per rest-index; accumulate |.|^2.
    for (size_t base = 0; base < amp_.size(); ++base) {
        if (base & (m1 | m2)) continue;
        cplx a00 = amp_[base];
        cplx a01 = amp_[base | m2];
        cplx a10 = amp_[base | m1];
        cplx a11 = amp_[base | m1 | m2];
        cplx c00 = kInvSqrt2 * (a00 + a11);
        cplx c01 = kInvSqrt2 * (a00 - a11);
        cplx c10 = kInvSqrt2 * (a10 + a01);
        cplx c11 = kInvSqrt2 * (a10 - a01);
        prob[0] += std::norm(c00);
        prob[1] += std::norm(c01);
        prob[2] += std::norm(c10);
        prob[3] += std::norm(c11);
    }
    return prob;
}

void StateVector::bell_collapse(uint32_t q1, uint32_t q2, BellOutcome o, double prob) {
    const size_t m1 = size_t{1} << q1;
    const size_t m2 = size_t{1} << q2;
    const double scale = 1.0 / std::sqrt(prob);
    const cplx b00 = bell_component(o, 0, 0), b01 = bell_component(o, 0, 1);
    const cplx b10 = bell_component(o, 1, 0), b11 = bell_component(o, 1, 1);
    for (size_t base = 0; base < amp_.size(); ++base) {
        if (base & (m1 | m2)) continue;
        cplx a00 = amp_[base];
        cplx a01 = amp_[base | m2];
        cplx a10 = amp_[base | m1];
        cplx a11 = amp_[base | m1 | m2];
        cplx proj = std::conj(b00) * a00 + std::conj(b01) * a01 + std::conj(b10) * a10 +
                    std::conj(b11) * a11;
        proj *= scale;
        amp_[base] = proj * b00;
        amp_[base | m2] = proj * b01;
        amp_[base | m1] = proj * b10;
        amp_[base | m1 | m2] = proj * b11;
    }
}

BellOutcome StateVector::bell_measure(uint32_t q1, uint32_t q2, Rng& rng) {
    check_target(q1);
    check_target(q2);
    if (q1 == q2) throw InputError("sv: bell measurement needs distinct qubits");
    auto prob = bell_probabilities(q1, q2);
    double u = rng.uniform01() * (prob[0] + prob[1] + prob[2] + prob[3]);
    int pick = 3;
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
        acc += prob[k];
        if (u < acc) {
            pick = k;
            break;
        }
    }
    if (prob[pick] < 1e-30) {
        for (int k = 0; k < 4; ++k)
            if (prob[k] > prob[pick]) pick = k;
    }
    BellOutcome o{static_cast<uint8_t>(pick >> 1), static_cast<uint8_t>(pick & 1)};
    bell_collapse(q1, q2, o, prob[pick]);
    return o;
}

void StateVector::bell_project(uint32_t q1, uint32_t q2, BellOutcome o) {
    check_target(q1);
    check_target(q2);
    if (q1 == q2) throw InputError("sv: bell measurement needs distinct qubits");
    auto prob = bell_probabilities(q1, q2);
    double p = prob[(o.m1 << 1) | o.m2];
    if (p < 1e-14) throw MeasurementError("sv: zero-probability bell branch forced");
    bell_collapse(q1, q2, o, p);
}

std::array<cplx, 4> StateVector::reduced_density(uint32_t q) const {
    check_target(q);
    const size_t m = size_t{1} << q;
    std::array<cplx, 4> rho{cplx{0}, cplx{0}, cplx{0}, cplx{0}};
    for (size_t base = 0; base < amp_.size(); ++base) {
        if (base & m) continue;
        cplx a0 = amp_[base];
        cplx a1 = amp_[base | m];
        rho[0] += a0 * std::conj(a0);
        rho[1] += a0 * std::conj(a1);
        rho[2] += a1 * std::conj(a0);
        rho[3] += a1 * std::conj(a1);
    }
    return rho;
}

StateVector qotp(StateVector state, int a, int b, PadDirection dir, uint32_t target) {
    if ((a | b) & ~1) throw InputError("qotp: pad bits must be 0/1");
    if (dir == PadDirection::Encrypt) {
        if (b) state.apply(Gate::Z, target);
        if (a) state.apply(Gate::X, target);
    } else {
        if (a) state.apply(Gate::X, target);
        if (b) state.apply(Gate::Z, target);
    }
    return state;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.qubit_count() != b.qubit_count()) throw InputError("fidelity: size mismatch");
    cplx ip{0, 0};
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    for (size_t i = 0; i < va.size(); ++i) ip += std::conj(va[i]) * vb[i];
    return std::norm(ip);
}

double fidelity_pair(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
    cplx ip = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    return std::norm(ip);
}

double trace_distance_2x2(const std::array<cplx, 4>& r, const std::array<cplx, 4>& s) {
    // Hermitian difference d; trace distance = (|l1| + |l2|)/2 with
    // eigenvalues l = tr/2 +- sqrt(tr^2/4 - det).
    cplx d00 = r[0] - s[0], d01 = r[1] - s[1], d10 = r[2] - s[2], d11 = r[3] - s[3];
    double tr = (d00 + d11).real();
    cplx det = d00 * d11 - d01 * d10;
    double disc = tr * tr / 4.0 - det.real();
    if (disc < 0) disc = 0;
    double root = std::sqrt(disc);
    return (std::abs(tr / 2.0 + root) + std::abs(tr / 2.0 - root)) / 2.0;
}

StateVector random_state(uint32_t qubit_count, Rng& rng) {
    size_t n = size_t{1} << qubit_count;
    std::vector<cplx> amps(n);
    double norm = 0.0;
    for (auto& a : amps) {
        // Box-Muller gives a rotation-invariant draw.
        double u1 = rng.uniform01(), u2 = rng.uniform01();
        double u3 = rng.uniform01(), u4 = rng.uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        if (u3 < 1e-300) u3 = 1e-300;
        double re = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        double im = std::sqrt(-2.0 * std::log(u3)) * std::cos(2.0 * std::numbers::pi * u4);
        a = {re, im};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& a : amps) a /= norm;
    return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace qfhe
