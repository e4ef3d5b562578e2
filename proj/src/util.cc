#include <duality/bits.hh>
#include <duality/caps.hh>
#include <duality/errors.hh>
#include <duality/parallel.hh>
#include <duality/rng.hh>

#include <algorithm>
#include <cstdlib>
#include <string>

using std::string;
using std::string_view;

namespace duality
{
    auto mask_to_indices(Mask m) -> std::vector<int>
    {
        std::vector<int> result;
        for_each_bit(m, [&](int i) { result.push_back(i); });
        return result;
    }

    auto indices_to_mask(std::span<const int> indices, int universe) -> Mask
    {
        Mask m = 0;
        for (int i : indices) {
            if (i < 0 || i >= universe || i >= mask_bits)
                throw Error(ErrorKind::InvalidInput, "index " + std::to_string(i) + " out of range for universe of size " + std::to_string(universe));
            m |= bit(i);
        }
        return m;
    }

    auto witness_less(std::span<const Mask> a, std::span<const Mask> b) -> bool
    {
        int pa = 0, pb = 0;
        for (auto m : a)
            pa += popcount(m);
        for (auto m : b)
            pb += popcount(m);
        if (pa != pb)
            return pa < pb;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

    auto to_string(ErrorKind kind) -> string_view
    {
        switch (kind) {
            case ErrorKind::InvalidInput: return "InvalidInput";
            case ErrorKind::SignatureMismatch: return "SignatureMismatch";
            case ErrorKind::ConstantOutside: return "ConstantOutside";
            case ErrorKind::FunctionNotClosed: return "FunctionNotClosed";
            case ErrorKind::CapExceeded: return "CapExceeded";
            case ErrorKind::Timeout: return "Timeout";
            case ErrorKind::AxiomsFail: return "AxiomsFail";
            case ErrorKind::PreconditionViolated: return "PreconditionViolated";
            case ErrorKind::PaschFailure: return "PaschFailure";
            case ErrorKind::MissingConstants: return "MissingConstants";
            case ErrorKind::DuplicateComplement: return "DuplicateComplement";
            case ErrorKind::S1Violation: return "S1Violation";
            case ErrorKind::NotSeparated: return "NotSeparated";
            case ErrorKind::NotSurjective: return "NotSurjective";
            case ErrorKind::NotHomomorphism: return "NotHomomorphism";
            case ErrorKind::NotNormal: return "NotNormal";
            case ErrorKind::RoundTripFailure: return "RoundTripFailure";
        }
        return "Unknown";
    }

    Error::Error(ErrorKind kind, const string & message) :
        std::runtime_error(string(to_string(kind)) + ": " + message),
        _kind(kind)
    {
    }

    PaschFailure::PaschFailure(const string & message, std::optional<int> stuck, Mask u, Mask l) :
        Error(ErrorKind::PaschFailure, message),
        stuck_point(stuck),
        upper(u),
        lower(l)
    {
    }

    namespace
    {
        auto parse_positive(string_view name, string_view value) -> long long
        {
            string text(value);
            char * end = nullptr;
            long long v = std::strtoll(text.c_str(), &end, 10);
            if (text.empty() || *end != '\0' || v <= 0)
                throw Error(ErrorKind::InvalidInput, "cap " + string(name) + " needs a positive integer, got '" + text + "'");
            return v;
        }
    }

    auto Caps::apply(string_view spec) -> void
    {
        while (! spec.empty()) {
            auto comma = spec.find(',');
            auto item = spec.substr(0, comma);
            spec = comma == string_view::npos ? string_view{} : spec.substr(comma + 1);
            if (item.empty())
                continue;

            auto eq = item.find('=');
            if (eq == string_view::npos)
                throw Error(ErrorKind::InvalidInput, "cap override '" + string(item) + "' is not name=value");
            auto name = item.substr(0, eq);
            auto v = parse_positive(name, item.substr(eq + 1));
            auto as_int = [&] {
                if (v > 1'000'000)
                    throw Error(ErrorKind::InvalidInput, "cap " + string(name) + " is unreasonably large");
                return static_cast<int>(v);
            };

            if (name == "powerset") powerset = std::min(as_int(), 30);
            else if (name == "homs") homs = v;
            else if (name == "axioms") axioms = as_int();
            else if (name == "axioms_pairs") axioms_pairs = as_int();
            else if (name == "bidual_source") bidual_source = std::min(as_int(), mask_bits);
            else if (name == "bidual_dual") bidual_dual = std::min(as_int(), mask_bits);
            else if (name == "normal") normal = as_int();
            else if (name == "exhaustive") exhaustive = as_int();
            else if (name == "distributive") distributive = as_int();
            else if (name == "timeout_ms") timeout_ms = v;
            else
                throw Error(ErrorKind::InvalidInput, "unknown cap '" + string(name) + "'");
        }
    }

    auto Caps::from_env() -> Caps
    {
        Caps caps;
        if (auto env = std::getenv("DUALITY_CAPS"))
            caps.apply(env);
        return caps;
    }

    Deadline::Deadline(std::chrono::milliseconds budget) :
        _at(std::chrono::steady_clock::now() + budget)
    {
    }

    auto Deadline::from_caps(const Caps & caps) -> Deadline
    {
        if (caps.timeout_ms > 0)
            return Deadline{std::chrono::milliseconds{caps.timeout_ms}};
        return Deadline{};
    }

    auto Deadline::expired() const -> bool
    {
        return _at && std::chrono::steady_clock::now() >= *_at;
    }

    auto Deadline::check(string_view what) const -> void
    {
        if (expired())
            throw Error(ErrorKind::Timeout, "wall-clock budget exhausted during " + string(what));
    }

    auto Rng::below(std::uint64_t bound) -> std::uint64_t
    {
        // reject the top partial block so every residue is equally likely
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            auto v = _engine();
            if (v < limit)
                return v % bound;
        }
    }

    auto Rng::between(int lo, int hi) -> int
    {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    auto Rng::chance(std::uint64_t num, std::uint64_t den) -> bool
    {
        return below(den) < num;
    }

    auto resolve_threads(unsigned requested) -> unsigned
    {
        if (requested != 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }
}
