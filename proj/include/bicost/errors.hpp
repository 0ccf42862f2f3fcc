#ifndef BICOST_ERRORS_HPP
#define BICOST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bicost {

/// Base class for all toolkit failures.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameters, malformed configuration, schema violations.  A
/// negative cost squared lands here too: it means the free weight
/// lambda_2^2 was configured too large, not that arithmetic failed.
class config_error : public error {
public:
    explicit config_error(const std::string& what) : error(what) {}
};

/// Numerical failure: singularity, lost convergence, or a decomposition
/// evaluated where it is not defined.
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& what) : error(what) {}
};

/// Filesystem failures while reading or writing run artifacts.
class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace bicost

#endif
