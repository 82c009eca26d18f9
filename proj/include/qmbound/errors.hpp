#ifndef QMBOUND_ERRORS_HPP
#define QMBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qmbound {

/* Bad input value (n = 0 for a symbol, non-fundamental discriminant, ...). */
class domain_error : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/* A documented precondition of an operation was violated by the caller. */
class precondition_error : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/* The field has class number one; the prime bound only applies for h_k > 1. */
class theorem_inapplicable : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/* Something that cannot happen for valid input happened anyway. */
class internal_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/* Independent re-derivation disagrees with an assembled report. */
class integrity_error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qmbound

#endif
