#include "qfhe/estimator.hpp"

#include "qfhe/errors.hpp"
#include "qfhe/garden_hose.hpp"
#include "qfhe/modmath.hpp"

namespace qfhe {

const Tables& builtin_tables() {
    static const Tables t{
        {
            {"128-bit", 512, 16, 3.2, 16, 14, 18},
            {"192-bit", 768, 20, 3.2, 20, 17, 22},
            {"256-bit", 1024, 24, 3.2, 24, 20, 26},
        },
        {
            {"128-bit", 33, 18},
            {"192-bit", 38, 22},
            {"256-bit", 44, 26},
        },
        "decision-LWE hardness at the tabulated (n, q, sigma) is assumed, not recomputed; "
        "no BKZ/core-SVP cost model is included",
    };
    return t;
}

std::string scheme_kind_name(SchemeKind k) {
    switch (k) {
        case SchemeKind::ModSum: return "modsum";
        case SchemeKind::Barrington: return "barrington";
        case SchemeKind::RingLwe: return "ring-lwe";
        case SchemeKind::Ntru: return "ntru";
        case SchemeKind::Abe: return "abe";
        case SchemeKind::Counter: return "counter";
    }
    return "?";
}

std::optional<SchemeKind> scheme_kind_from_name(const std::string& name) {
    for (SchemeKind k : {SchemeKind::ModSum, SchemeKind::Barrington, SchemeKind::RingLwe,
                         SchemeKind::Ntru, SchemeKind::Abe, SchemeKind::Counter})
        if (scheme_kind_name(k) == name) return k;
    // Aliases used by the comparison tables.
    if (name == "ours") return SchemeKind::ModSum;
    if (name == "dss") return SchemeKind::Barrington;
    if (name == "sinha") return SchemeKind::Counter;
    if (name == "ring_lwe") return SchemeKind::RingLwe;
    return std::nullopt;
}

Estimate estimate(SchemeKind scheme, uint64_t n, uint64_t q, uint64_t lambda) {
    Estimate e;
    e.scheme = scheme;
    switch (scheme) {
        case SchemeKind::ModSum:
        case SchemeKind::Abe: {
            if (n == 0 || q < 2) throw InputError("estimate: need n >= 1 and q >= 2");
            uint64_t w = ceil_log2(q);
            e.width_bits = w;
            e.length = n * w;  // bit-level program length
            e.value = w * e.length;
            e.executable_pipes = gh_pipe_count(q, n);
            e.formula = "w = ceil(log2 q); L = n*w; epr = w*L; executable pipes = 4*q*n + 1";
            e.anchors = {"params table: width_bits * bp_length = epr"};
            break;
        }
        case SchemeKind::Barrington: {
            if (lambda < 2) throw InputError("estimate: need lambda >= 2");
            uint64_t d = ceil_log2(lambda);
            uint64_t len = 1;
            for (uint64_t i = 0; i < d; ++i) len *= 4;
            e.width_bits = 3;  // five states
            e.length = len;
            e.value = 5 * len;
            e.formula = "width 5; L = 4^(ceil(log2 lambda)); epr = 5*L";
            e.anchors = {"comparison table: barrington EPR column"};
            break;
        }
        case SchemeKind::RingLwe:
        case SchemeKind::Ntru: {
            if (n == 0 || q < 2) throw InputError("estimate: need n >= 1 and q >= 2");
            uint64_t w = ceil_log2(q);
            e.width_bits = n * w;
            e.length = n;
            e.value = n * n * w;
            e.formula = "state width n*ceil(log2 q); length n; epr = n^2 * ceil(log2 q)";
            break;
        }
        case SchemeKind::Counter: {
            if (n == 0) throw InputError("estimate: need n >= 1");
            uint64_t w = ceil_log2(n);
            e.width_bits = w;
            e.length = n;
            e.value = n * w;
            e.formula = "weight counter: width ceil(log2 n); length n; epr = n*ceil(log2 n)";
            break;
        }
    }
    return e;
}

std::vector<AuditRow> audit(const std::vector<ParamRow>& rows) {
    std::vector<AuditRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        AuditRow a;
        a.label = r.label;
        a.product = static_cast<uint64_t>(r.width_bits) << r.bp_length_log2;
        a.claimed = uint64_t{1} << r.epr_log2;
        a.pass = a.product == a.claimed;
        a.ratio = static_cast<double>(a.claimed) / static_cast<double>(a.product);
        out.push_back(a);
    }
    return out;
}

}  // namespace qfhe
