#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace muspan {

// ASCII-only lowercasing; bytes outside [A-Z] pass through untouched, so
// UTF-8 multibyte sequences are preserved as-is.
std::string to_lower_ascii(std::string_view s);

// Splits on whitespace and turns every ASCII punctuation character into a
// standalone token. Case is preserved; lowercase separately when a
// case-insensitive key is needed. Idempotent over re-joined output.
std::vector<std::string> tokenize(std::string_view text);

// Tokens joined by single spaces.
std::string join_tokens(std::span<const std::string> tokens);

}  // namespace muspan
