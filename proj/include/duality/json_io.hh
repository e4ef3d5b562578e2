#ifndef DUALITY_GUARD_JSON_IO_HH
#define DUALITY_GUARD_JSON_IO_HH 1

#include <duality/bea.hh>
#include <duality/convexity.hh>
#include <duality/dual.hh>
#include <duality/hom.hh>
#include <duality/structure.hh>

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace duality
{
    using Json = nlohmann::ordered_json;

    auto to_json(const FiniteStructure & x) -> Json;
    auto to_json(const SetFamily & f) -> Json;
    /// Tables list their pairs; induced oracles are expanded up to `cap`.
    auto to_json(const BeaOracle & o, int cap = 14) -> Json;
    auto to_json(const BiConvexity & s) -> Json;

    auto structure_from_json(const Json & j) -> FiniteStructure;
    auto family_from_json(const Json & j) -> SetFamily;
    auto bea_from_json(const Json & j) -> BeaOracle;
    auto biconvexity_from_json(const Json & j) -> BiConvexity;

    using Document = std::variant<FiniteStructure, SetFamily, BeaOracle, BiConvexity>;

    /// Dispatches on "kind". Malformed input throws Error(InvalidInput).
    auto document_from_json(const Json & j) -> Document;
    auto to_json(const Document & d) -> Json;

    auto read_json_file(const std::string & path) -> Json;

    /// Lines of a corpus file, skipping the corpus-meta header.
    auto read_corpus(std::istream & in) -> std::vector<Document>;
    auto write_corpus(std::ostream & out, const Json & meta, const std::vector<Document> & docs) -> void;

    auto mask_json(Mask m) -> Json;

    auto to_json(const AxiomReport & r) -> Json;
    auto to_json(const SeparationReport & r) -> Json;
    auto to_json(const EvalReport & r) -> Json;
    auto to_json(const PairReport & r) -> Json;
}

#endif
