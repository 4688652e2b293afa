#ifndef QDFRAC_ERRORS_HPP
#define QDFRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdfrac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quotient-difference step divided by a zero entry. The (k, n) pair names
/// the tableau entry that could not be formed; it signals a vanishing Hankel
/// determinant of the input sequence.
class QDBreakdown : public Error {
public:
    QDBreakdown(int k, int n)
        : Error("quotient-difference breakdown at k=" + std::to_string(k) +
                ", n=" + std::to_string(n)),
          k_(k), n_(n) {}
    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }

private:
    int k_;
    int n_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// A closed form disagreed with the exact computation it is checked against.
class IdentityViolation : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

class PrimeTooLarge : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& field, const std::string& what)
        : Error("line " + std::to_string(line) +
                (field.empty() ? std::string() : " [" + field + "]") + ": " + what),
          line_(line), field_(field) {}
    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

class SingularCurve : public Error {
public:
    using Error::Error;
};

} // namespace qdfrac

#endif
