#include <duality/catalog.hh>
#include <duality/cli.hh>
#include <duality/convexity.hh>
#include <duality/dual.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/json_io.hh>
#include <duality/rng.hh>
#include <duality/verify.hh>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

using std::string;
using std::vector;

namespace duality
{
    namespace
    {
        struct Options
        {
            string format = "json";
            unsigned threads = 0;
            string out;
            string caps;

            string in;
            string axioms = "i0,i1,i2,i3";
            string d_template, e_template;
            string a_list, b_list;

            string suite;
            int max_size = 0, samples = 0;
            std::uint64_t seed = 1;

            string gen_class;
            int size = 0, count = 10;
        };

        auto usage(const string & what) -> Error
        {
            return Error(ErrorKind::InvalidInput, what);
        }

        auto parse_list(const string & text, int universe) -> Mask
        {
            vector<int> idx;
            std::stringstream ss(text);
            string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty())
                    continue;
                try {
                    std::size_t used = 0;
                    idx.push_back(std::stoi(item, &used));
                    if (used != item.size())
                        throw usage("bad index " + item);
                }
                catch (const std::logic_error &) {
                    throw usage("bad index " + item);
                }
            }
            return indices_to_mask(idx, universe);
        }

        auto resolve_template(const string & spec) -> Template
        {
            if (spec.starts_with("hull") && spec.size() > 4 && std::all_of(spec.begin() + 4, spec.end(), ::isdigit))
                return convexity_template(std::stoi(spec.substr(4)));
            if (std::filesystem::exists(spec)) {
                auto x = structure_from_json(read_json_file(spec));
                return make_template(std::filesystem::path(spec).stem().string(), std::move(x));
            }
            return find_template(spec);
        }

        auto two_template(const string & spec) -> TwoTemplate
        {
            auto t = resolve_template(spec);
            if (auto d = std::get_if<TwoTemplate>(&t))
                return *d;
            throw usage("template " + spec + " has no finite signature; give a ⋈ document as input instead");
        }

        auto oracle_of(const Document & doc) -> BeaOracle
        {
            if (auto o = std::get_if<BeaOracle>(&doc))
                return *o;
            if (auto f = std::get_if<SetFamily>(&doc))
                return family_bea(*f);
            if (auto s = std::get_if<BiConvexity>(&doc))
                return bea_from_biconvexity(*s, true);
            throw usage("expected a bea, family or biconvexity document");
        }

        class Emitter
        {
        private:
            const Options & _options;
            std::ostream & _stdout;

        public:
            Emitter(const Options & o, std::ostream & out) : _options(o), _stdout(out) {}

            auto json() const -> bool
            {
                return _options.format == "json";
            }

            auto emit(const Json & report, const string & text) const -> void
            {
                string body = json() ? report.dump(2) + "\n" : text;
                if (_options.out.empty())
                    _stdout << body;
                else {
                    std::ofstream f(_options.out);
                    if (! f)
                        throw usage("cannot write " + _options.out);
                    f << body;
                }
            }
        };

        auto masks_text(const vector<Mask> & ms) -> string
        {
            string s;
            for (auto m : ms)
                s += mask_json(m).dump() + " ";
            return s;
        }

        auto cmd_check_axioms(const Options & o, const Emitter & emit, const Caps & caps) -> int
        {
            auto oracle = oracle_of(document_from_json(read_json_file(o.in)));
            vector<Axiom> axioms;
            std::stringstream ss(o.axioms);
            string item;
            while (std::getline(ss, item, ','))
                if (! item.empty())
                    axioms.push_back(parse_axiom(item));

            Json reports = Json::array();
            string text;
            bool pass = true;
            for (auto a : axioms) {
                auto r = check_axiom(oracle, a, caps);
                pass = pass && r.pass;
                reports.push_back(to_json(r));
                text += string(to_string(a)) + ": " + (r.pass ? "pass" : "FAIL") + (r.pass ? "" : "  witness " + masks_text(r.witness) + " " + r.detail) + "\n";
            }
            Json counter = Json::array();
            for (auto & r : reports)
                if (! r["pass"].get<bool>())
                    counter.push_back(r);
            emit.emit(Json{{"pass", pass}, {"counterexamples", counter}, {"axioms", reports}}, text);
            return pass ? exit_success : exit_counterexample;
        }

        auto cmd_dual(const Options & o, const Emitter & emit, const Caps & caps) -> int
        {
            auto doc = document_from_json(read_json_file(o.in));
            auto deadline = Deadline::from_caps(caps);
            if (! std::holds_alternative<FiniteStructure>(doc)) {
                auto star = ultimate_dual(oracle_of(doc), caps, deadline);
                emit.emit(to_json(star.oracle), "dual: " + std::to_string(star.carrier.size()) + " halfspaces: " + masks_text(star.carrier.sets) + "\n");
                return exit_success;
            }

            auto & x = std::get<FiniteStructure>(doc);
            if (o.d_template.empty())
                throw usage("dual needs --template for a structure");
            auto d = two_template(o.d_template);
            Template e = o.e_template.empty() ? Template{ultimate_partner(d)} : resolve_template(o.e_template);
            if (auto e2 = std::get_if<TwoTemplate>(&e)) {
                auto star = dual(x, d, *e2, caps, deadline);
                emit.emit(to_json(star.induced), "dual: " + std::to_string(star.induced.size) + " homomorphisms: " + masks_text(star.carrier.homs.sets) + "\n");
            }
            else {
                auto star = ultimate_dual(x, d, std::get<UltimateTemplate>(e), caps, deadline);
                auto j = to_json(star.oracle);
                if (! star.missing_constants.empty())
                    j["missing_constants"] = star.missing_constants;
                emit.emit(j, "dual: " + std::to_string(star.carrier.size()) + " homomorphisms: " + masks_text(star.carrier.sets) + "\n");
            }
            return exit_success;
        }

        auto eval_text(const EvalReport & r) -> string
        {
            std::ostringstream s;
            s << "|X|=" << r.size_x << " |X*|=" << r.size_xstar << " |X**|=" << r.size_xbidual << "\n"
              << "injective " << r.injective << ", embedding " << r.embedding << ", surjective " << r.surjective << "\n"
              << (r.reflexive() ? "reflexive\n" : "NOT reflexive\n");
            if (! r.unrepresented.empty())
                s << "unrepresented: " << masks_text(r.unrepresented) << "\n";
            return s.str();
        }

        auto cmd_reflexivity(const Options & o, const Emitter & emit, const Caps & caps) -> int
        {
            auto doc = document_from_json(read_json_file(o.in));
            auto deadline = Deadline::from_caps(caps);
            EvalReport r;
            if (! std::holds_alternative<FiniteStructure>(doc))
                r = ultimate_reflexivity(oracle_of(doc), caps, deadline);
            else {
                if (o.d_template.empty())
                    throw usage("reflexivity needs --template for a structure");
                auto d = two_template(o.d_template);
                Template e = o.e_template.empty() ? Template{ultimate_partner(d)} : resolve_template(o.e_template);
                if (auto e2 = std::get_if<TwoTemplate>(&e))
                    r = bidual_and_evaluate(std::get<FiniteStructure>(doc), d, *e2, caps, deadline);
                else
                    r = bidual_and_evaluate(std::get<FiniteStructure>(doc), d, std::get<UltimateTemplate>(e), caps, deadline);
            }
            emit.emit(to_json(r), eval_text(r));
            return r.reflexive() ? exit_success : exit_counterexample;
        }

        auto cmd_separate(const Options & o, const Emitter & emit, const Caps &) -> int
        {
            auto oracle = oracle_of(document_from_json(read_json_file(o.in)));
            Mask a = parse_list(o.a_list, oracle.universe());
            Mask b = parse_list(o.b_list, oracle.universe());
            try {
                Mask u = separate(oracle, a, b);
                emit.emit(Json{{"pass", true}, {"counterexamples", Json::array()}, {"U", mask_json(u)}}, "U=" + mask_json(u).dump() + "\n");
                return exit_success;
            }
            catch (const PaschFailure & e) {
                Json w{{"error", "PaschFailure"}, {"message", e.what()}, {"U", mask_json(e.upper)}, {"L", mask_json(e.lower)}};
                w["stuck_point"] = e.stuck_point ? Json(*e.stuck_point) : Json(nullptr);
                emit.emit(Json{{"pass", false}, {"counterexamples", Json::array({w})}}, string("PaschFailure: ") + e.what() + "\n");
                return exit_counterexample;
            }
        }

        auto cmd_verify(const Options & o, const Emitter & emit, const Caps & caps) -> int
        {
            SuiteOptions s;
            s.max_size = o.max_size;
            s.samples = o.samples;
            s.seed = o.seed;
            s.threads = o.threads;
            s.caps = caps;
            auto report = run_suite(o.suite, s);

            Json cases = Json::array(), counter = Json::array();
            std::ostringstream text;
            for (auto & c : report.cases) {
                Json j{{"name", c.name}, {"pass", c.pass}, {"timeout", c.timeout},
                    {"sizes", {{"X", c.size_x}, {"Xstar", c.size_xstar}, {"Xbidual", c.size_xbidual}}}};
                if (! c.detail.empty())
                    j["detail"] = c.detail;
                if (! c.pass && ! c.timeout) {
                    counter.push_back(j);
                    text << "FAIL " << c.name << ": " << c.detail << "\n";
                }
                cases.push_back(std::move(j));
            }
            text << report.suite << ": " << report.cases.size() << " cases, " << report.failures() << " failures, " << report.timeouts
                 << " timeouts\n";
            for (auto & n : report.notes)
                text << "note: " << n << "\n";
            emit.emit(Json{{"suite", report.suite}, {"pass", report.pass}, {"timeouts", report.timeouts}, {"counterexamples", counter},
                          {"notes", report.notes}, {"cases", cases}},
                text.str());
            if (! report.pass)
                return exit_counterexample;
            return report.timeouts > 0 ? exit_cap : exit_success;
        }

        auto cmd_gen(const Options & o, const Emitter &, const Caps & caps, std::ostream & out) -> int
        {
            if (o.size < 1)
                throw usage("--size must be positive");
            Rng rng(o.seed);
            vector<Document> docs;
            auto & c = o.gen_class;
            for (int i = 0; i < o.count; ++i) {
                auto seed = rng.next();
                if (c == "poset")
                    docs.emplace_back(gen_posets_random(o.size, 1, seed).front());
                else if (c == "semilattice")
                    docs.emplace_back(gen_semilattices_random(o.size, 1, seed).front());
                else if (c == "dlattice")
                    docs.emplace_back(gen_distributive_lattices(o.size, 1, seed).front());
                else if (c == "family")
                    docs.emplace_back(gen_family(o.size, std::min<std::uint64_t>(o.size + 1, std::uint64_t{1} << std::min(o.size, 62)), seed));
                else if (c == "betweenness")
                    docs.emplace_back(gen_betweenness_random(o.size, 1, seed).front());
                else if (c == "biconvexity")
                    docs.emplace_back(random_normal_biconvexity(o.size, seed, false, caps));
                else
                    throw usage("unknown class " + c);
            }
            Json meta{{"kind", "corpus-meta"}, {"seed", o.seed}, {"generator", string(Rng::algorithm)}, {"class", c}, {"size", o.size}, {"count", o.count}};
            if (o.out.empty())
                write_corpus(out, meta, docs);
            else {
                std::ofstream f(o.out);
                if (! f)
                    throw usage("cannot write " + o.out);
                write_corpus(f, meta, docs);
            }
            return exit_success;
        }
    }

    auto run_cli(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        Options o;
        CLI::App app{"Finite natural dualities: homomorphisms, ⋈ relations, duals and biduals", "duality"};
        app.require_subcommand(1);
        app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
        app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
        app.add_option("--caps", o.caps, "Cap overrides name=value,...");

        auto check = app.add_subcommand("check-axioms", "Check ⋈ axioms on a bea, family or biconvexity document");
        check->add_option("--in", o.in)->required();
        check->add_option("--axioms", o.axioms, "Comma-separated axioms among i0..i5,c0,c1");
        check->add_option("--out", o.out);

        auto dual_cmd = app.add_subcommand("dual", "Compute the dual of a structure or ⋈ document");
        dual_cmd->add_option("--in", o.in)->required();
        dual_cmd->add_option("--template", o.d_template, "Template name, hullK, or structure file");
        dual_cmd->add_option("--e-template", o.e_template, "Dual template (default: the ultimate partner)");
        dual_cmd->add_option("--out", o.out);

        auto refl = app.add_subcommand("reflexivity", "Bidual evaluation report");
        refl->add_option("--in", o.in)->required();
        refl->add_option("--template", o.d_template);
        refl->add_option("--e-template", o.e_template);
        refl->add_option("--out", o.out);

        auto sep = app.add_subcommand("separate", "Halfspace containing A and missing B");
        sep->add_option("--in", o.in)->required();
        sep->add_option("--a", o.a_list, "Comma-separated indices")->required();
        sep->add_option("--b", o.b_list, "Comma-separated indices")->required();
        sep->add_option("--out", o.out);

        auto ver = app.add_subcommand("verify", "Run a verification suite");
        ver->add_option("--suite", o.suite)->required()->check(CLI::IsMember(suite_names()));
        ver->add_option("--max-size", o.max_size)->check(CLI::PositiveNumber);
        ver->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
        ver->add_option("--seed", o.seed);
        ver->add_option("--out", o.out);

        auto gen = app.add_subcommand("gen", "Write a seeded corpus.jsonl");
        gen->add_option("--class", o.gen_class)->required()->check(CLI::IsMember({"poset", "semilattice", "dlattice", "family", "betweenness", "biconvexity"}));
        gen->add_option("--size", o.size)->required()->check(CLI::PositiveNumber);
        gen->add_option("--count", o.count)->check(CLI::PositiveNumber);
        gen->add_option("--seed", o.seed);
        gen->add_option("--out", o.out);

        vector<string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        try {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp &) {
            out << app.help();
            return exit_success;
        }
        catch (const CLI::ParseError & e) {
            err << "usage error: " << e.what() << "\n";
            return exit_usage;
        }

        try {
            auto caps = Caps::from_env();
            if (! o.caps.empty())
                caps.apply(o.caps);
            Emitter emit(o, out);
            if (check->parsed())
                return cmd_check_axioms(o, emit, caps);
            if (dual_cmd->parsed())
                return cmd_dual(o, emit, caps);
            if (refl->parsed())
                return cmd_reflexivity(o, emit, caps);
            if (sep->parsed())
                return cmd_separate(o, emit, caps);
            if (ver->parsed())
                return cmd_verify(o, emit, caps);
            return cmd_gen(o, emit, caps, out);
        }
        catch (const Error & e) {
            err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
            switch (e.kind()) {
            case ErrorKind::CapExceeded:
            case ErrorKind::Timeout:
                return exit_cap;
            case ErrorKind::AxiomsFail:
            case ErrorKind::PaschFailure:
            case ErrorKind::NotSeparated:
            case ErrorKind::S1Violation:
            case ErrorKind::NotNormal:
            case ErrorKind::RoundTripFailure:
                return exit_counterexample;
            default:
                return exit_usage;
            }
        }
    }
}
