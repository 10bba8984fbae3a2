#pragma once

#include <stdexcept>
#include <string>

namespace modalid {

/// Bad configuration: unknown keys, malformed scenario files, invalid
/// parameter records. CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad input data: non-finite samples, too-short series, misaligned or
/// malformed CSV files. CLI maps this to exit code 3.
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: diverging integration, degenerate fits, failed
/// decompositions. CLI maps this to exit code 4.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace modalid
