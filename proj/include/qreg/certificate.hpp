#pragma once

#include "qreg/proof.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qreg {

class CertificateFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kCertificateVersion = 1;

/// Nodes reached more than once are written in full the first time with an
/// "id", and as {"ref": id} afterwards.
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const Derivation& d);
nlohmann::json to_json(const Judgement& j);

/// Throws CertificateFormatError on malformed input.
Certificate certificate_from_json(const nlohmann::json& doc);
Derivation derivation_from_json(const nlohmann::json& node);
Judgement judgement_from_json(const nlohmann::json& j);

std::string serialize(const Certificate& cert, int indent = 2);
Certificate deserialize(std::string_view text);

} // namespace qreg
