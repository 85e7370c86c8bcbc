#ifndef FOLBOUND_ERRORS_HPP
#define FOLBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace folbound
{

enum class ErrorKind {
    Parse,
    InvalidInput,
    OrderBeyondTruncation,
    TruncationInsufficient,
    CompositionDivergent,
    FieldTooSmall,
    NotInvariant,
    InvariantCurve,
    NonRationalSingularity,
    MissingSingularity,
    HypothesisFailed,
    Internal
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept
    {
        return kind_;
    }

    // Precision failures can be cured by rerunning with a larger truncation budget.
    bool is_precision() const noexcept
    {
        return kind_ == ErrorKind::OrderBeyondTruncation || kind_ == ErrorKind::TruncationInsufficient;
    }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &what);

// Internal consistency assertion that stays on in release builds.
void ensure(bool cond, const std::string &what);

} // namespace folbound

#endif
