#include <duality/catalog.hh>
#include <duality/errors.hh>

using std::string;
using std::string_view;
using std::vector;

namespace duality
{
    namespace
    {
        /// Graph of a k-ary operation on {0,1}.
        template <typename F_>
        auto operation(int k, F_ && f) -> vector<Tuple>
        {
            vector<Tuple> graph;
            for (unsigned p = 0; p < (1u << k); ++p) {
                Tuple t;
                for (int i = 0; i < k; ++i)
                    t.push_back((p >> i) & 1);
                t.push_back(f(t));
                graph.push_back(std::move(t));
            }
            return graph;
        }

        auto ternary(auto && keep) -> vector<Tuple>
        {
            vector<Tuple> rel;
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    for (int z = 0; z < 2; ++z)
                        if (keep(x, y, z))
                            rel.push_back({x, y, z});
            return rel;
        }

        auto meet_graph() -> vector<Tuple>
        {
            return operation(2, [](const Tuple & t) { return t[0] & t[1]; });
        }

        auto join_graph() -> vector<Tuple>
        {
            return operation(2, [](const Tuple & t) { return t[0] | t[1]; });
        }

        auto constants_for(const Signature & s) -> vector<int>
        {
            vector<int> values;
            for (auto & c : s.constants)
                values.push_back(c == "one" ? 1 : 0);
            return values;
        }
    }

    auto order_signature() -> Signature
    {
        return {{{"le", 2, false}}, {}};
    }

    auto lattice_signature() -> Signature
    {
        return {{{"meet", 3, true}, {"join", 3, true}}, {"zero", "one"}};
    }

    auto semilattice_signature(bool zero, bool one) -> Signature
    {
        Signature s{{{"meet", 3, true}}, {}};
        if (zero)
            s.constants.push_back("zero");
        if (one)
            s.constants.push_back("one");
        return s;
    }

    auto betweenness_signature() -> Signature
    {
        return {{{"btw", 3, false}}, {}};
    }

    auto hull_signature(int k_max) -> Signature
    {
        Signature s;
        for (int k = 1; k <= k_max; ++k)
            s.symbols.push_back({"hull" + std::to_string(k), k + 1, false});
        return s;
    }

    auto catalog_names() -> vector<string>
    {
        return {"order", "bounded_lattice", "semilattice", "semilattice0", "semilattice01", "pure_set",
            "boolean_algebra", "betweenness_s0", "natural_betweenness"};
    }

    auto catalog_template(string_view name) -> TwoTemplate
    {
        FiniteStructure s;
        s.size = 2;

        if (name == "order") {
            s.signature = order_signature();
            s.relations = {{{0, 0}, {0, 1}, {1, 1}}};
        }
        else if (name == "bounded_lattice") {
            s.signature = lattice_signature();
            s.relations = {meet_graph(), join_graph()};
        }
        else if (name == "semilattice" || name == "semilattice0" || name == "semilattice01") {
            s.signature = semilattice_signature(name != "semilattice", name == "semilattice01");
            s.relations = {meet_graph()};
        }
        else if (name == "pure_set") {
            // no symbols: every map is a homomorphism
        }
        else if (name == "boolean_algebra") {
            s.signature = lattice_signature();
            s.signature.symbols.push_back({"neg", 2, true});
            s.relations = {meet_graph(), join_graph(), operation(1, [](const Tuple & t) { return 1 - t[0]; })};
        }
        else if (name == "betweenness_s0") {
            s.signature = betweenness_signature();
            s.relations = {ternary([](int x, int y, int z) { return ! (x == 1 && z == 1) || y == 1; })};
        }
        else if (name == "natural_betweenness") {
            s.signature = betweenness_signature();
            s.relations = {ternary([](int x, int y, int z) { return y == x || y == z; })};
        }
        else
            throw Error(ErrorKind::InvalidInput, "unknown template " + string(name));

        s.constants = constants_for(s.signature);
        return make_template(string(name), std::move(s));
    }

    auto ultimate_template(string_view name) -> std::optional<UltimateTemplate>
    {
        for (bool zero : {false, true})
            for (bool one : {false, true}) {
                UltimateTemplate u{zero, one};
                if (u.name() == name)
                    return u;
            }
        return std::nullopt;
    }

    auto find_template(string_view name) -> Template
    {
        if (auto u = ultimate_template(name))
            return *u;
        return catalog_template(name);
    }

    auto convexity_template(int k_max) -> TwoTemplate
    {
        FiniteStructure s;
        s.size = 2;
        s.signature = hull_signature(k_max);
        for (int k = 1; k <= k_max; ++k) {
            vector<Tuple> rel;
            for (unsigned p = 0; p < (1u << (k + 1)); ++p) {
                Tuple t;
                for (int i = 0; i <= k; ++i)
                    t.push_back((p >> i) & 1);
                bool member = false;
                for (int i = 1; i <= k; ++i)
                    member = member || t[i] == t[0];
                if (member)
                    rel.push_back(std::move(t));
            }
            s.relations.push_back(std::move(rel));
        }
        return make_template("convexity" + std::to_string(k_max), std::move(s));
    }
}
