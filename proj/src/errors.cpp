#include <folbound/errors.hpp>

namespace folbound
{

const char *error_kind_name(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::Parse:
            return "ParseError";
        case ErrorKind::InvalidInput:
            return "InvalidInput";
        case ErrorKind::OrderBeyondTruncation:
            return "OrderBeyondTruncation";
        case ErrorKind::TruncationInsufficient:
            return "TruncationInsufficient";
        case ErrorKind::CompositionDivergent:
            return "CompositionDivergent";
        case ErrorKind::FieldTooSmall:
            return "FieldTooSmall";
        case ErrorKind::NotInvariant:
            return "NotInvariant";
        case ErrorKind::InvariantCurve:
            return "InvariantCurve";
        case ErrorKind::NonRationalSingularity:
            return "NonRationalSingularity";
        case ErrorKind::MissingSingularity:
            return "MissingSingularity";
        case ErrorKind::HypothesisFailed:
            return "HypothesisFailed";
        case ErrorKind::Internal:
            return "InternalError";
    }
    return "UnknownError";
}

void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

void ensure(bool cond, const std::string &what)
{
    if (!cond) {
        throw Error(ErrorKind::Internal, "invariant violated: " + what);
    }
}

} // namespace folbound
