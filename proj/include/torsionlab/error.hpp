#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace torsionlab {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    Structural,   ///< malformed group table, cell data, JSON
    Contract,     ///< precondition of an operation violated
    Domain,       ///< numeric argument outside the supported domain
    Singular,     ///< map expected to be invertible is not
    NotAcyclic,   ///< complex has cohomology where none is allowed
    NotQuasiIso,  ///< chain map does not induce an isomorphism
    Precision,    ///< accuracy target not reached
    Unsupported,  ///< model cannot realize the request
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class NotAcyclicError : public Error {
public:
    NotAcyclicError(const std::string& what, std::vector<int> betti)
        : Error(ErrorKind::NotAcyclic, what), betti_(std::move(betti)) {}
    /// Betti numbers indexed from the lowest degree of the complex.
    const std::vector<int>& betti() const noexcept { return betti_; }

private:
    std::vector<int> betti_;
};

class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, double achieved)
        : Error(ErrorKind::Precision, what), achieved_(achieved) {}
    double achieved_bound() const noexcept { return achieved_; }

private:
    double achieved_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond) fail(kind, what);
}

}  // namespace torsionlab
