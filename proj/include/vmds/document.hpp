#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vmds/code.hpp"

namespace vmds {

/// Text form of a code and, optionally, its repair scheme:
///
///     vmds v1
///     field <p> <m>
///     params <k> <r> <l>
///     C <i> <j>          (r*k blocks, 1-based, each followed by l rows)
///     ...
///     scheme             (optional)
///     S <i> <m>          (r blocks per node, each followed by l/r rows)
///
/// Symbols are canonical element encodings. Blank lines and text after `#`
/// are ignored.
struct CodeDocument {
  VectorMdsCode code;
  std::optional<RepairScheme> scheme;
};

inline constexpr std::string_view kDocumentVersion = "v1";

std::string serialize(const VectorMdsCode& code,
                      const RepairScheme* scheme = nullptr);

/// Throws ParseError (with line) on malformed text and unknown versions,
/// InvariantViolation on well-formed text describing an invalid code.
CodeDocument deserialize(std::string_view text);

} // namespace vmds
