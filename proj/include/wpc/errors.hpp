#pragma once

#include <stdexcept>
#include <string>

namespace wpc {

// Raised when a computation leaves its numerical validity region
// (quadrature degeneracy, denominator guards, unwrapping jumps).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a constructed object fails its certification checks
// (bi-Lipschitz bounds, monotonicity, quasiconformality).
class certification_error : public numerical_error {
public:
    explicit certification_error(const std::string& what) : numerical_error(what) {}
};

// Raised when the sampled curve crosses itself at the working resolution.
class not_jordan_error : public numerical_error {
public:
    explicit not_jordan_error(const std::string& what) : numerical_error(what) {}
};

// Raised when a conformal chain step degenerates at the working resolution;
// refining the sampling is the usual remedy.
class resolution_error : public numerical_error {
public:
    explicit resolution_error(const std::string& what) : numerical_error(what) {}
};

// Raised when a logarithm field cannot be made continuous on the grid.
class unwrapping_error : public numerical_error {
public:
    explicit unwrapping_error(const std::string& what) : numerical_error(what) {}
};

// Raised when a pointwise formula loses its denominator (Beltrami
// composition, Jacobian inversion).
class degeneracy_error : public numerical_error {
public:
    explicit degeneracy_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace wpc
