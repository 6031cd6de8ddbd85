#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qfhe/rng.hpp"
#include "qfhe/sv_kernels.hpp"

using namespace qfhe;

namespace {

std::vector<cplx> random_amps(size_t n, Rng& rng) {
    std::vector<cplx> v(n);
    for (auto& a : v) a = {rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    return v;
}

bool close(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-13) return false;
    return true;
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree") {
    const SvKernels* vec = avx2_kernels();
    if (!vec) return;  // non-x86 build or no AVX2: nothing to compare
    const SvKernels& ref = scalar_kernels();
    Rng rng(2024);
    for (uint32_t nq = 1; nq <= 10; ++nq) {
        const size_t n = size_t{1} << nq;
        for (uint32_t q = 0; q < nq; ++q) {
            auto base = random_amps(n, rng);
            cplx m[4] = {{rng.uniform01(), rng.uniform01()},
                         {rng.uniform01(), rng.uniform01()},
                         {rng.uniform01(), rng.uniform01()},
                         {rng.uniform01(), rng.uniform01()}};
            auto a = base, b = base;
            ref.apply2x2(a.data(), n, size_t{1} << q, m);
            vec->apply2x2(b.data(), n, size_t{1} << q, m);
            CHECK(close(a, b));

            a = base;
            b = base;
            cplx phase{rng.uniform01(), rng.uniform01()};
            ref.apply_phase(a.data(), n, size_t{1} << q, phase);
            vec->apply_phase(b.data(), n, size_t{1} << q, phase);
            CHECK(close(a, b));

            for (uint32_t t = 0; t < nq; ++t) {
                if (t == q) continue;
                a = base;
                b = base;
                ref.apply_cnot(a.data(), n, size_t{1} << q, size_t{1} << t);
                vec->apply_cnot(b.data(), n, size_t{1} << q, size_t{1} << t);
                CHECK(close(a, b));
            }
        }
        auto amps = random_amps(n, rng);
        CHECK(std::abs(ref.norm_sq(amps.data(), n) - vec->norm_sq(amps.data(), n)) < 1e-12);
    }
}

TEST_CASE("kernel forcing hook") {
    const SvKernels& autod = active_kernels();
    CHECK((std::string(autod.name) == "scalar" || std::string(autod.name) == "avx2"));
    force_kernels(&scalar_kernels());
    CHECK(std::string(active_kernels().name) == "scalar");
    force_kernels(nullptr);
    CHECK(std::string(active_kernels().name) == std::string(autod.name));
}
