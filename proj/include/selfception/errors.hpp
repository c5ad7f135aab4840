#pragma once

#include <stdexcept>
#include <string>

namespace selfception {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct ParamError : std::invalid_argument {
    explicit ParamError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct EmptyMaskError : std::invalid_argument {
    explicit EmptyMaskError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace selfception
