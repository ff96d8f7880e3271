// SPDX-License-Identifier: Apache-2.0
#include "probint/diagnostics.hpp"

namespace probint {

std::string to_string(const SourcePos& pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

LexError::LexError(SourcePos pos, const std::string& what)
    : std::runtime_error(to_string(pos) + ": " + what), pos(pos) {}

ParseError::ParseError(SourcePos pos, const std::string& what)
    : std::runtime_error(to_string(pos) + ": " + what), pos(pos) {}

void Diagnostics::warn(const std::string& message) {
    if (seen_.insert(message).second) {
        ordered_.push_back(message);
    }
}

void Diagnostics::merge(const Diagnostics& other) {
    for (const auto& w : other.ordered_) {
        warn(w);
    }
}

} // namespace probint
