#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace demazure {

// Broad failure classes; the CLI maps them onto exit codes.
enum class ErrorClass {
    Config,              // bad input or configuration (exit 2)
    Hypothesis,          // a mathematical hypothesis failed at runtime (exit 3)
    PrecisionExhausted,  // truncation left nothing to certify (exit 4)
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string reason, const std::string& message,
          std::map<std::string, std::string> details = {})
        : std::runtime_error(message), cls_(cls), reason_(std::move(reason)), details_(std::move(details)) {}

    ErrorClass error_class() const noexcept { return cls_; }
    // Machine-readable tag such as "NotDivisible" or "NotInS".
    const std::string& reason() const noexcept { return reason_; }
    const std::map<std::string, std::string>& details() const noexcept { return details_; }

private:
    ErrorClass cls_;
    std::string reason_;
    std::map<std::string, std::string> details_;
};

inline Error config_error(std::string reason, const std::string& message,
                          std::map<std::string, std::string> details = {}) {
    return {ErrorClass::Config, std::move(reason), message, std::move(details)};
}

inline Error hypothesis_error(std::string reason, const std::string& message,
                              std::map<std::string, std::string> details = {}) {
    return {ErrorClass::Hypothesis, std::move(reason), message, std::move(details)};
}

inline Error precision_exhausted(const std::string& message, std::map<std::string, std::string> details = {}) {
    return {ErrorClass::PrecisionExhausted, "PrecisionExhausted", message, std::move(details)};
}

}  // namespace demazure
