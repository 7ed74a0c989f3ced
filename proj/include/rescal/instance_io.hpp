#pragma once

// JSON instance files for the CLI:
// {"field":"Q"|"Fp:<p>", "base_vars":[...], "blocks":[[...],[...]],
//  "form":{"coeff":"<expr>","d":["u"]}, "denoms":[{"poly":"<expr>","exp":n}],
//  "base_change":{"s":"<expr>"}?, "b":"<expr>"?, "inner":{...}?}
// blocks lists the variable blocks above the base; the tower is
// [base_vars] followed by blocks.

#include <string>
#include <vector>

#include <json.hpp>

#include "rescal/exceptions.hpp"
#include "rescal/fubini.hpp"
#include "rescal/parse.hpp"
#include "rescal/residue.hpp"

namespace rescal {

struct FieldSpec {
    bool rational = true;
    std::uint64_t p = 0;
};

inline FieldSpec parse_field_spec(const std::string& s) {
    if (s == "Q") return {};
    if (s.rfind("Fp:", 0) == 0) {
        FieldSpec f;
        f.rational = false;
        try {
            f.p = std::stoull(s.substr(3));
        } catch (const std::exception&) {
            throw ParseError("field: bad prime in \"" + s + "\"");
        }
        if (f.p < 2) throw ParseError("field: modulus must be >= 2");
        return f;
    }
    throw ParseError("field: expected Q or Fp:<p>, got \"" + s + "\"");
}

template <class F>
struct ParsedInstance {
    TowerPtr<F> tower;
    ResidueInstance<F> instance;
    std::vector<std::pair<std::string, std::string>> base_change;  // name, expr
    std::string b_expr;  // optional multiplier for trace
    bool has_base_change = false;
    bool has_inner = false;
    TopForm<F> inner_form;  // only when has_inner
    std::vector<std::pair<Poly<F>, unsigned>> inner_denoms;
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j,
                                            const std::string& key) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array())
        throw ParseError("instance: \"" + key + "\" must be an array");
    for (const auto& e : j.at(key)) out.push_back(e.get<std::string>());
    return out;
}

template <class F>
std::pair<TopForm<F>, std::vector<std::pair<Poly<F>, unsigned>>> parse_form_denoms(
    const nlohmann::json& j, const TowerPtr<F>& tower, std::size_t base_block,
    std::size_t level) {
    if (!j.contains("form") || !j.contains("denoms"))
        throw ParseError("instance: missing \"form\" or \"denoms\"");
    const auto& jf = j.at("form");
    Poly<F> coeff = parse_poly(tower, jf.at("coeff").get<std::string>());
    std::vector<std::size_t> factors;
    for (const auto& name : jf.at("d"))
        factors.push_back(tower->var_index(name.get<std::string>()));
    auto form = make_topform(base_block, level, coeff, factors);
    std::vector<std::pair<Poly<F>, unsigned>> denoms;
    for (const auto& jd : j.at("denoms")) {
        Poly<F> p = parse_poly(tower, jd.at("poly").get<std::string>());
        unsigned e = jd.contains("exp") ? jd.at("exp").get<unsigned>() : 1u;
        if (e < 1) throw ParseError("instance: exponent must be >= 1");
        denoms.emplace_back(std::move(p), e);
    }
    return {std::move(form), std::move(denoms)};
}

}  // namespace detail

/// Parse an instance object for the given field context. The caller has
/// already checked the "field" entry matches F.
template <class F>
ParsedInstance<F> parse_instance(const nlohmann::json& j, F field) {
    std::vector<std::vector<std::string>> blocks;
    blocks.push_back(detail::string_list(j, "base_vars"));
    if (!j.contains("blocks"))
        throw ParseError("instance: missing \"blocks\"");
    for (const auto& blk : j.at("blocks")) {
        std::vector<std::string> names;
        for (const auto& n : blk) names.push_back(n.get<std::string>());
        blocks.push_back(std::move(names));
    }
    auto tower = make_tower(field, blocks);
    ParsedInstance<F> out{tower,
                          ResidueInstance<F>{tower, 0,
                                             TopForm<F>{tower, 0, 0,
                                                        Poly<F>::zero(tower),
                                                        {}},
                                             {}},
                          {},
                          "",
                          false,
                          false,
                          TopForm<F>{tower, 0, 0, Poly<F>::zero(tower), {}},
                          {}};

    if (j.contains("inner")) {
        // two-level tower: outer form at level 1, inner at the top level
        if (blocks.size() < 3)
            throw ParseError("instance: \"inner\" needs two blocks");
        auto [mu, t] = detail::parse_form_denoms(j, tower, 0, 1);
        auto [nu, g] =
            detail::parse_form_denoms(j.at("inner"), tower, 1,
                                      blocks.size() - 1);
        out.instance = ResidueInstance<F>{tower, 0, mu, t};
        out.inner_form = nu;
        out.inner_denoms = g;
        out.has_inner = true;
    } else {
        auto [form, denoms] =
            detail::parse_form_denoms(j, tower, 0, blocks.size() - 1);
        out.instance = ResidueInstance<F>{tower, 0, form, denoms};
    }

    if (j.contains("base_change")) {
        for (const auto& [key, val] : j.at("base_change").items())
            out.base_change.emplace_back(key,
                                         val.template get<std::string>());
        out.has_base_change = true;
    }
    if (j.contains("b")) out.b_expr = j.at("b").get<std::string>();
    return out;
}

/// Resolve the base-change target: either everything maps to constants
/// (target base empty) or the base is kept (endomorphism of A).
template <class F>
BaseChange<F> resolve_base_change(const ParsedInstance<F>& pi, F field) {
    std::vector<std::pair<std::string, Poly<F>>> images;
    bool all_const = true;
    for (const auto& [name, expr] : pi.base_change) {
        auto p = parse_poly(pi.tower, expr);
        for (std::size_t b = 1; b < pi.tower->n_blocks(); ++b)
            for (auto v : pi.tower->block_vars(b))
                if (p.uses_var(v))
                    throw ParseError(
                        "base_change: image of " + name +
                        " must lie in the base ring");
        if (!p.is_constant()) all_const = false;
        images.emplace_back(name, std::move(p));
    }
    std::vector<std::vector<std::string>> blocks = {
        all_const ? std::vector<std::string>{} : pi.tower->blocks()[0]};
    for (std::size_t b = 1; b < pi.tower->n_blocks(); ++b)
        blocks.push_back(pi.tower->blocks()[b]);
    auto target = make_tower(field, blocks);
    std::vector<std::pair<std::string, Poly<F>>> mapped;
    for (auto& [name, p] : images) {
        std::vector<Poly<F>> id_images;
        for (std::size_t v = 0; v < pi.tower->n_vars(); ++v) {
            const auto& vn = pi.tower->var_name(v);
            if (target->has_var(vn))
                id_images.push_back(Poly<F>::variable(target, vn));
            else
                id_images.push_back(Poly<F>::zero(target));  // dropped base var
        }
        mapped.emplace_back(name, p.substitute(target, id_images));
    }
    return make_base_change(pi.tower, target, 0, mapped);
}

}  // namespace rescal
