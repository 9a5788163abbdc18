#ifndef COVLAB_CLI_CERTIFICATE_HPP
#define COVLAB_CLI_CERTIFICATE_HPP

#include <string>

#include <json.hpp>

#include "covlab/noname/noname.hpp"

namespace covlab::cli {

inline constexpr const char* kCertificateFormat = "covlab-noname-certificate/1";

/// Self-contained description of a no-name isomorphism: the group, the
/// variable names, f, its weight, phi = adj(F) / f, phi_inv = F, the
/// covariants (columns of F) and the checks that passed when it was built.
nlohmann::ordered_json certificate_to_json(const NoNameMap& m, const Report& checks);

/// Rebuilds the map from a certificate text and re-runs every check. The
/// report fails (without throwing) on mathematical defects such as a phi
/// entry that is not F^-1; malformed files raise ProblemError.
Report verify_certificate(std::string_view text, const std::string& source = "<certificate>");

}  // namespace covlab::cli

#endif  // COVLAB_CLI_CERTIFICATE_HPP
