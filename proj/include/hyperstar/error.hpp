#ifndef HYPERSTAR_ERROR_HPP
#define HYPERSTAR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hyperstar {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or contract-violating input (bad edge, bad file, bad vector size).
class invalid_input : public error {
public:
    using error::error;
};

/// A regime that cannot be realised at the requested (n, k).
class infeasible_regime : public error {
public:
    using error::error;
};

/// Size limits: 128-bit overflow, dense-matrix cap, edge-count cap.
class capacity_error : public error {
public:
    using error::error;
};

/// Numerical procedure failed (eigensolver non-convergence, bad kernel value).
class numeric_error : public error {
public:
    using error::error;
};

} // namespace hyperstar

#endif // HYPERSTAR_ERROR_HPP
