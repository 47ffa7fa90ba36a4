#pragma once

#include <stdexcept>
#include <string>

namespace seqvis {

// Invalid configuration (bad flag values, impossible scenario parameters).
// The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent data (RLE sum mismatch, dimension mismatch,
// schema violations, missing files). The CLI maps this to exit code 3.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace seqvis
