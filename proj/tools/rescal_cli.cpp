// rescal: exact residues, generalized fractions, and verification suites.
//
// Exit codes: 0 success / all identities pass, 1 an identity failed,
// 2 usage or parse error, 3 domain error (e.g. a quotient that is not
// module-finite over its base).
//
// Reports are deterministic for a fixed (input, seed); wall-clock timing
// goes to stderr so stdout is byte-stable across runs.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rescal/instance_io.hpp"
#include "rescal/suites.hpp"

using nlohmann::json;

namespace {

struct GlobalOpts {
    std::string field = "Q";
    std::uint64_t seed = 1;
    std::size_t count = 50;
    long degree_bound = 6;
    unsigned monic_bound = 32;
    std::string format = "text";
    long only_index = -1;
};

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
        std::cerr << "wall time: " << ms << " ms\n";
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rescal::ParseError("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw rescal::ParseError("JSON parse error in \"" + path +
                                 "\": " + e.what());
    }
    return j;
}

void check_field_entry(const json& j, const GlobalOpts& g) {
    if (j.contains("field")) {
        auto file_field = j.at("field").get<std::string>();
        rescal::parse_field_spec(file_field);  // validates
        if (g.field != "Q" && g.field != file_field)
            throw rescal::ParseError(
                "field mismatch between --field and the instance file");
    }
}

std::string effective_field(const json& j, const GlobalOpts& g) {
    if (j.contains("field")) return j.at("field").get<std::string>();
    return g.field;
}

void emit(const GlobalOpts& g, const std::string& verb, const json& body) {
    if (g.format == "json") {
        json out = body;
        out["verb"] = verb;
        std::cout << out.dump(2) << "\n";
        return;
    }
    std::cout << verb << "\n";
    for (const auto& [k, v] : body.items()) {
        std::cout << "  " << k << ": ";
        if (v.is_string())
            std::cout << v.get<std::string>();
        else
            std::cout << v.dump();
        std::cout << "\n";
    }
}

template <class F>
int do_residue(const json& j, F field, const GlobalOpts& g,
               const std::string& verb) {
    auto pi = rescal::parse_instance(j, field);
    rescal::ResidueOptions ropts;
    ropts.monic.max_degree = g.monic_bound;

    json body;
    body["field"] = effective_field(j, g);
    body["form"] = pi.instance.form.str();
    {
        std::string ds;
        for (std::size_t i = 0; i < pi.instance.denoms.size(); ++i) {
            if (i) ds += ", ";
            ds += pi.instance.denoms[i].first.str() + "^" +
                  std::to_string(pi.instance.denoms[i].second);
        }
        body["denoms"] = ds;
        if (pi.has_inner) {
            std::string is;
            for (std::size_t i = 0; i < pi.inner_denoms.size(); ++i) {
                if (i) is += ", ";
                is += pi.inner_denoms[i].first.str() + "^" +
                      std::to_string(pi.inner_denoms[i].second);
            }
            body["inner_form"] = pi.inner_form.str();
            body["inner_denoms"] = is;
        }
    }

    if (verb == "trace") {
        auto b = pi.b_expr.empty()
                     ? rescal::Poly<F>::from_int(pi.tower, 1)
                     : rescal::parse_poly(pi.tower, pi.b_expr);
        auto val = rescal::trace_tau(pi.instance.denoms, pi.instance.form, b,
                                     pi.instance.base_block, ropts);
        body["b"] = b.str();
        body["trace"] = val.str();
        emit(g, verb, body);
        return 0;
    }
    if (verb == "basechange") {
        if (!pi.has_base_change)
            throw rescal::ParseError(
                "basechange: instance file has no \"base_change\" entry");
        auto sigma = rescal::resolve_base_change(pi, field);
        auto [a, b] = rescal::base_change_residue(pi.instance, sigma, ropts);
        body["sigma_of_residue"] = a.str();
        body["residue_of_sigma"] = b.str();
        bool equal = a == b;
        body["equal"] = equal;
        emit(g, verb, body);
        return equal ? 0 : 1;
    }
    if (verb == "fubini") {
        if (!pi.has_inner)
            throw rescal::ParseError(
                "fubini: instance file has no \"inner\" entry");
        rescal::TowerResidueInstance<F> inst{
            pi.tower, pi.instance.form, pi.inner_form, pi.instance.denoms,
            pi.inner_denoms};
        auto rep = rescal::verify_fubini(inst, ropts);
        body["inner_residue"] = rep.inner.str();
        body["iterated"] = rep.lhs.str();
        body["combined"] = rep.rhs.str();
        body["equal"] = rep.equal;
        emit(g, verb, body);
        return rep.equal ? 0 : 1;
    }
    auto val = rescal::residue(pi.instance, ropts);
    body["residue"] = val.str();
    emit(g, verb, body);
    return 0;
}

template <class F>
int do_fraction(F field, const GlobalOpts& g, const std::string& vars,
                const std::string& lhs, const std::string& rhs) {
    std::vector<std::string> names;
    std::stringstream ss(vars);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    if (names.empty())
        throw rescal::ParseError("fraction: pass variables with --vars u,v");
    auto tower = rescal::make_tower(field, {{}, names});
    auto x = rescal::parse_fraction(tower, lhs);
    auto y = rescal::parse_fraction(tower, rhs);
    bool equal = rescal::frac_equal(x, y);

    // the shared normal form at the componentwise-max level
    std::vector<unsigned> level;
    for (std::size_t i = 0; i < x.denoms.size(); ++i)
        level.push_back(std::max(x.denoms[i].second, y.denoms[i].second));
    auto xr = rescal::frac_raise(x, level);
    auto yr = rescal::frac_raise(y, level);
    auto ideal = rescal::frac_level_ideal(xr);

    json body;
    body["lhs"] = x.str();
    body["rhs"] = y.str();
    body["equal"] = equal;
    body["lhs_normal_form"] = ideal.normal_form(xr.numerator).str();
    body["rhs_normal_form"] = ideal.normal_form(yr.numerator).str();
    emit(g, "fraction", body);
    return equal ? 0 : 1;
}

template <class F>
int do_verify(F field, const GlobalOpts& g, const std::string& suite) {
    rescal::SuiteOptions opts;
    opts.degree_bound = g.degree_bound;
    opts.monic_bound = g.monic_bound;
    std::optional<std::size_t> only;
    if (g.only_index >= 0) only = static_cast<std::size_t>(g.only_index);
    auto report = rescal::run_suite(suite, field, g.seed, g.count, opts, only);

    if (g.format == "json") {
        json out;
        out["verb"] = "verify";
        out["suite"] = report.suite;
        out["field"] = g.field;
        out["seed"] = report.seed;
        out["count"] = report.count;
        json results = json::array();
        for (const auto& r : report.results) {
            results.push_back(json{{"index", r.index},
                                   {"pass", r.pass},
                                   {"detail", r.detail}});
        }
        out["results"] = results;
        out["all_pass"] = report.all_pass();
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "verify " << report.suite << " --field " << g.field
                  << " --seed " << report.seed << " --count " << report.count
                  << "\n";
        std::size_t passed = 0;
        for (const auto& r : report.results) {
            if (r.pass) {
                ++passed;
            } else {
                std::cout << "FAIL instance " << r.index << ": " << r.detail
                          << "\n";
                std::cout << "  replay: rescal verify " << report.suite
                          << " --field " << g.field << " --seed "
                          << report.seed << " --index " << r.index << "\n";
            }
        }
        std::cout << passed << "/" << report.results.size() << " passed\n";
    }
    return report.all_pass() ? 0 : 1;
}

template <class Fn>
int with_field(const std::string& spec, Fn&& fn) {
    auto fs = rescal::parse_field_spec(spec);
    if (fs.rational) return fn(rescal::QField{});
    return fn(rescal::FpField{fs.p});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rescal: exact Grothendieck-style residues, generalized fractions, "
        "traces, and randomized verification suites"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--field", g.field, "coefficient field: Q or Fp:<p>")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized suites")
        ->capture_default_str();
    app.add_option("--count", g.count, "instances per suite")
        ->capture_default_str();
    app.add_option("--degree-bound", g.degree_bound,
                   "degree bound for random numerators")
        ->capture_default_str();
    app.add_option("--monic-bound", g.monic_bound,
                   "degree bound for monic generator search")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--index", g.only_index,
                   "run a single suite instance (replay)");

    std::string path, suite_name, vars, frac_lhs, frac_rhs;
    auto* residue_cmd =
        app.add_subcommand("residue", "residue of an instance file");
    residue_cmd->add_option("file", path, "instance JSON")->required();
    auto* trace_cmd =
        app.add_subcommand("trace", "trace against the dualizing pairing");
    trace_cmd->add_option("file", path, "instance JSON")->required();
    auto* fubini_cmd = app.add_subcommand(
        "fubini", "check the iterated-residue identity on an instance");
    fubini_cmd->add_option("file", path, "instance JSON")->required();
    auto* basechange_cmd = app.add_subcommand(
        "basechange", "compare residue and base change on an instance");
    basechange_cmd->add_option("file", path, "instance JSON")->required();
    auto* fraction_cmd = app.add_subcommand(
        "fraction", "decide equality of two generalized fractions");
    fraction_cmd->add_option("--vars", vars, "top-block variables, e.g. u,v")
        ->required();
    fraction_cmd->add_option("lhs", frac_lhs, "fraction, e.g. \"[u; u^1]\"")
        ->required();
    fraction_cmd->add_option("rhs", frac_rhs, "fraction")->required();
    auto* verify_cmd =
        app.add_subcommand("verify", "run a randomized verification suite");
    verify_cmd->add_option("suite", suite_name, "suite name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Timer timer;
    try {
        if (*verify_cmd)
            return with_field(g.field, [&](auto field) {
                return do_verify(field, g, suite_name);
            });
        if (*fraction_cmd)
            return with_field(g.field, [&](auto field) {
                return do_fraction(field, g, vars, frac_lhs, frac_rhs);
            });
        // the file-based verbs
        json j = load_json(path);
        check_field_entry(j, g);
        std::string verb = (*residue_cmd)  ? "residue"
                           : (*trace_cmd)  ? "trace"
                           : (*fubini_cmd) ? "fubini"
                                           : "basechange";
        return with_field(effective_field(j, g), [&](auto field) {
            return do_residue(j, field, g, verb);
        });
    } catch (const rescal::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rescal::NotFiniteOverBase& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "offending variable: " << e.variable << "\n";
        return 3;
    } catch (const rescal::GroebnerBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rescal::DenominatorMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rescal::RelationMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rescal::BlockSplitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rescal::NotGraded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const rescal::NotMember& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
