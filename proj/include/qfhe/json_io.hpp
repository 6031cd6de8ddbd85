#pragma once

#include <string>

#include "qfhe/estimator.hpp"
#include "qfhe/gadget.hpp"
#include "qfhe/mbqc.hpp"
#include "qfhe/scheme.hpp"

namespace qfhe {

// Canonical JSON forms. Field order is fixed; Z_q values serialize as
// zero-padded decimal strings (width of q-1) so byte size is independent of
// the stored values and large moduli survive double-precision parsers.
// Round-trips are bit-exact.

std::string params_to_json(const LweParams& p);
LweParams params_from_json(const std::string& text);

std::string secret_key_to_json(const LweParams& p, const SecretKey& sk);
SecretKey secret_key_from_json(const std::string& text);

std::string ciphertext_to_json(const LweParams& p, const LweCiphertext& ct);
LweCiphertext ciphertext_from_json(const std::string& text, LweParams* params_out = nullptr);

std::string keychain_to_json(const KeyChain& chain);
KeyChain keychain_from_json(const std::string& text);

std::string ma_program_to_json(const MaProgram& prog);
MaProgram ma_program_from_json(const std::string& text);

std::string bp_to_json(const LayeredBp& bp);
LayeredBp bp_from_json(const std::string& text);

std::string network_to_json(const PipeNetwork& net);
PipeNetwork network_from_json(const std::string& text);

std::string matching_to_json(const Matching& m);
Matching matching_from_json(const std::string& text);

std::string water_trace_to_json(const WaterTrace& tr);

std::string schedule_to_json(const Schedule& s);

std::string gadget_key_to_json(const GadgetKey& key);
GadgetKey gadget_key_from_json(const std::string& text);

std::string gadget_output_to_json(const GadgetOutput& out);

std::string qfhe_keys_to_json(const QfheKeys& keys);
QfheKeys qfhe_keys_from_json(const std::string& text);

std::string qfhe_ciphertext_to_json(const LweParams& p, const QfheCiphertext& ct);

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

std::string tables_to_json(const Tables& t);
std::string estimate_to_json(const Estimate& e);
std::string audit_to_json(const std::vector<AuditRow>& rows);

}  // namespace qfhe
