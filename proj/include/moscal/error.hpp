#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace moscal {

// Domain error carrying a stable machine-readable name next to the human
// message. The name is what the CLI reports and what tests match on.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void raise(std::string name, const std::string& message) {
    throw DomainError(std::move(name), message);
}

}  // namespace moscal
