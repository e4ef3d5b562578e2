#ifndef DUALITY_GUARD_VERIFY_HH
#define DUALITY_GUARD_VERIFY_HH 1

#include <duality/caps.hh>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace duality
{
    /// Shared knobs; a zero max_size or samples selects the suite's default.
    struct SuiteOptions
    {
        int max_size = 0;
        int samples = 0;
        std::uint64_t seed = 1;
        unsigned threads = 0;
        Caps caps;
    };

    struct CaseResult
    {
        std::string name;
        bool pass = true;
        bool timeout = false;
        std::string detail;
        int size_x = 0, size_xstar = 0, size_xbidual = 0;
    };

    struct SuiteReport
    {
        std::string suite;
        bool pass = true;
        int timeouts = 0;
        std::vector<CaseResult> cases;
        /// Informational findings that do not affect `pass`.
        std::vector<std::string> notes;

        auto failures() const -> int;
        auto add(CaseResult c) -> void;
        auto merge(SuiteReport other) -> void;
    };

    auto suite_names() -> std::vector<std::string>;

    /// Throws Error(InvalidInput) for an unknown name.
    auto run_suite(std::string_view name, const SuiteOptions & options) -> SuiteReport;

    auto verify_priestley(const SuiteOptions & options) -> SuiteReport;
    auto verify_stone(const SuiteOptions & options) -> SuiteReport;
    auto verify_hms(const SuiteOptions & options) -> SuiteReport;
    auto verify_biconvex(const SuiteOptions & options) -> SuiteReport;
    auto verify_pasch(const SuiteOptions & options) -> SuiteReport;
    auto verify_betweenness(const SuiteOptions & options) -> SuiteReport;
    auto verify_ultimate(const SuiteOptions & options) -> SuiteReport;

    /// hom(X,D) against the halfspaces of the induced ⋈, every catalog template.
    auto verify_equivalence(const SuiteOptions & options) -> SuiteReport;

    /// Backtracking hom enumeration against brute force.
    auto verify_enumeration(const SuiteOptions & options) -> SuiteReport;
}

#endif
