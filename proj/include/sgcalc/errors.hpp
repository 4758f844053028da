#ifndef SGCALC_ERRORS_HPP
#define SGCALC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sgcalc {

// Violated mathematical precondition (abscissa, tail, grid contract, ...).
// The CLI maps these to exit code 1 with the message as diagnostic.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

}  // namespace sgcalc

#endif
