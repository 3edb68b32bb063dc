#pragma once

#include <stdexcept>
#include <string>

namespace polysig {

/// Bad caller input: malformed paths, out-of-range parameters, shape mismatches.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured resource limit (e.g. the signature memory cap) would be exceeded.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A series evaluation failed to converge within its term cap.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polysig
