#include "qfhe/fixtures.hpp"

#include "qfhe/ma_program.hpp"

namespace qfhe {

T1Fixture t1_fixture() {
    T1Fixture f;
    f.params = LweParams{4, 17, 2, 1, 2, 3};
    f.sk = SecretKey{{1, 0, 1, 1}, 0};
    f.ct = encrypt_raw(f.params, f.sk, {3, 5, 7, 11}, 1, 1);
    return f;
}

LweParams t1_scheme_params() { return LweParams{4, 4096, 2, 1, 3, 1000}; }

PipeNetwork reduced_network() {
    auto acc = lwe_accept_set(2);
    return gh_build_shape(2, 1, std::vector<uint32_t>(acc.begin(), acc.end()), {Reader::Alice});
}

}  // namespace qfhe
