#pragma once

#include <stdexcept>
#include <string>

#include "dlsa/config.hpp"

namespace dlsa {

/// Syntax-level failure while reading a config document (unknown key,
/// malformed line, missing file). Semantic problems are reported by
/// validate_config instead.
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse the flat key/value + table format documented in the README.
NetworkConfig parse_config_text(const std::string& text);

NetworkConfig load_config_file(const std::string& path);

}  // namespace dlsa
