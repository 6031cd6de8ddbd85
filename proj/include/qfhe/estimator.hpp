#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfhe {

// Tabulated parameter and comparison rows, reproduced verbatim, plus formula
// estimators that are audited against them. Mismatches are reported, never
// silently reconciled.

struct ParamRow {
    std::string label;
    uint64_t n = 0;
    uint32_t q_log2 = 0;  // modulus 2^q_log2
    double sigma = 0.0;
    uint32_t width_bits = 0;
    uint32_t bp_length_log2 = 0;
    uint32_t epr_log2 = 0;
};

struct CompareRow {
    std::string label;
    uint32_t barrington_epr_log2 = 0;  // constant-width compilation
    uint32_t modsum_epr_log2 = 0;      // modular-accumulation gadget
};

struct Tables {
    std::vector<ParamRow> params;
    std::vector<CompareRow> compare;
    // Hardness of decision-LWE at the tabulated (n, q, sigma) is a recorded
    // assumption; attack costs are not recomputed here.
    std::string hardness_note;
};

const Tables& builtin_tables();

enum class SchemeKind : uint8_t { ModSum, Barrington, RingLwe, Ntru, Abe, Counter };

std::string scheme_kind_name(SchemeKind k);
std::optional<SchemeKind> scheme_kind_from_name(const std::string& name);

struct Estimate {
    SchemeKind scheme = SchemeKind::ModSum;
    std::string formula;
    uint64_t width_bits = 0;
    uint64_t length = 0;
    uint64_t value = 0;  // EPR pairs from the printed formula alone
    // Pipe count of the construction this lab actually executes (4*q*n + 1);
    // reported next to the formula value, never merged with it.
    std::optional<uint64_t> executable_pipes;
    std::vector<std::string> anchors;
};

Estimate estimate(SchemeKind scheme, uint64_t n, uint64_t q, uint64_t lambda);

struct AuditRow {
    std::string label;
    bool pass = false;
    uint64_t product = 0;  // width_bits * bp_length
    uint64_t claimed = 0;  // tabulated EPR pairs
    double ratio = 0.0;    // claimed / product
};

std::vector<AuditRow> audit(const std::vector<ParamRow>& rows);

}  // namespace qfhe
