#ifndef DUALITY_GUARD_ERRORS_HH
#define DUALITY_GUARD_ERRORS_HH 1

#include <duality/bits.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace duality
{
    enum class ErrorKind
    {
        InvalidInput,
        SignatureMismatch,
        ConstantOutside,
        FunctionNotClosed,
        CapExceeded,
        Timeout,
        AxiomsFail,
        PreconditionViolated,
        PaschFailure,
        MissingConstants,
        DuplicateComplement,
        S1Violation,
        NotSeparated,
        NotSurjective,
        NotHomomorphism,
        NotNormal,
        RoundTripFailure
    };

    auto to_string(ErrorKind kind) -> std::string_view;

    class Error : public std::runtime_error
    {
    private:
        ErrorKind _kind;

    public:
        Error(ErrorKind kind, const std::string & message);

        auto kind() const -> ErrorKind
        {
            return _kind;
        }
    };

    /// Raised by the halfspace separation construction when the lower and
    /// upper sweeps fail to cover the universe.
    class PaschFailure : public Error
    {
    public:
        std::optional<int> stuck_point;
        Mask upper = 0, lower = 0;

        PaschFailure(const std::string & message, std::optional<int> stuck, Mask u, Mask l);
    };
}

#endif
