#ifndef QTOR_ERRORS_HPP
#define QTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtor {

/* Invalid mathematical input (bad discriminant, imprimitive form, ...).
 * Maps to CLI exit code 2. */
struct domain_error : std::invalid_argument {
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/* A proven identity failed at runtime; indicates a convention bug, never
 * a bad input. Maps to CLI exit code 4. */
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/* Work exceeded an explicit budget (factorization, orbit sweeps). */
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtor

#endif
