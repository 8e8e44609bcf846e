#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace scifex {

/// Raised when input data violates a documented file or record contract.
/// The message names the offending field or record.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Collects non-fatal diagnostics (skipped parses, capped samples, ...).
/// Callers that do not care pass nullptr.
class Diagnostics {
public:
    void warn(std::string message) { warnings_.push_back(std::move(message)); }
    const std::vector<std::string>& warnings() const { return warnings_; }
    bool empty() const { return warnings_.empty(); }

    static void emit(Diagnostics* sink, std::string message) {
        if (sink) sink->warn(std::move(message));
    }

private:
    std::vector<std::string> warnings_;
};

}  // namespace scifex
