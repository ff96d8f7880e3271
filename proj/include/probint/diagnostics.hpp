// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace probint {

struct SourcePos {
    int line = 0;
    int column = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

class LexError : public std::runtime_error {
  public:
    LexError(SourcePos pos, const std::string& what);
    SourcePos pos;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(SourcePos pos, const std::string& what);
    SourcePos pos;
};

// Thrown for programs the CFG builder cannot represent (compound branch
// conditions, assignments nested inside arithmetic, out-of-range literals).
class FrontendError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnsupportedGuard : public FrontendError {
  public:
    using FrontendError::FrontendError;
};

class SpecError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class OracleBlowup : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Ordered, de-duplicated warning sink shared by transfer functions and the solver.
class Diagnostics {
  public:
    void warn(const std::string& message);
    [[nodiscard]] const std::vector<std::string>& warnings() const { return ordered_; }
    [[nodiscard]] bool empty() const { return ordered_.empty(); }
    [[nodiscard]] std::size_t size() const { return ordered_.size(); }
    void merge(const Diagnostics& other);

  private:
    std::vector<std::string> ordered_;
    std::set<std::string> seen_;
};

inline void warn(Diagnostics* diags, const std::string& message) {
    if (diags != nullptr) {
        diags->warn(message);
    }
}

} // namespace probint
