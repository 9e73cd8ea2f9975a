#pragma once

#include <stdexcept>
#include <string>

namespace rf {

// Error taxonomy mirrored by the CLI exit codes: domain -> 2, resource -> 3,
// precision -> 4.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rf
