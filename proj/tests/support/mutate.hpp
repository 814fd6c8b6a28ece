#pragma once

#include "random_regex.hpp"

#include "qreg/proof.hpp"

#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace qreg::testing {

inline void collect_nodes(const Derivation& d, std::vector<Derivation>& out, std::unordered_set<const void*>& seen)
{
    if (!seen.insert(d.id()).second)
        return;
    out.push_back(d);
    for (const auto& p : d.premises())
        collect_nodes(p, out, seen);
}

inline std::vector<Derivation> distinct_nodes(const Derivation& d)
{
    std::vector<Derivation> out;
    std::unordered_set<const void*> seen;
    collect_nodes(d, out, seen);
    return out;
}

// One local corruption of a node: its conclusion, rule, premises or meta.
inline Derivation corrupt(Rng& rng, const Derivation& d, const Config& cfg, std::string_view letters)
{
    Judgement j = d.conclusion();
    Meta meta = d.meta();
    std::vector<Derivation> premises = d.premises();
    Rule rule = d.rule();
    switch (uniform(rng, 0, 8)) {
    case 0:
        j.eps = j.eps * cfg.lambda();
        break;
    case 1:
        j.eps = 0;
        break;
    case 2:
        j.eps = j.eps + Rational(1, 7);
        break;
    case 3:
        j.left = random_regex(rng, 5, letters);
        break;
    case 4:
        j.right = Regex::sum(j.right, Regex::letter(letters[0]));
        break;
    case 5:
        std::swap(j.left, j.right);
        break;
    case 6: {
        const auto& rules = all_rules();
        rule = rules[uniform(rng, 0, rules.size() - 1)];
        break;
    }
    case 7:
        if (!premises.empty())
            premises.erase(premises.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, premises.size() - 1)));
        else
            premises.push_back(refl(j.left));
        break;
    default:
        if (meta.midpoint)
            meta.midpoint = Regex::sum(*meta.midpoint, Regex::one());
        else if (meta.letter)
            meta.letter = *meta.letter == 'a' ? 'b' : 'a';
        else
            j.eps = j.eps / 2;
        break;
    }
    return Derivation(std::move(j), rule, std::move(premises), std::move(meta));
}

// Replaces every occurrence of node `target` with `replacement`, rebuilding
// ancestors with their original conclusions.
inline Derivation replace_node(const Derivation& d, const void* target, const Derivation& replacement,
                               std::unordered_map<const void*, Derivation>& memo)
{
    if (d.id() == target)
        return replacement;
    if (auto it = memo.find(d.id()); it != memo.end())
        return it->second;
    std::vector<Derivation> premises;
    bool changed = false;
    for (const auto& p : d.premises()) {
        premises.push_back(replace_node(p, target, replacement, memo));
        changed = changed || premises.back().id() != p.id();
    }
    Derivation out = changed ? Derivation(d.conclusion(), d.rule(), std::move(premises), d.meta()) : d;
    memo.emplace(d.id(), out);
    return out;
}

inline Derivation mutate(Rng& rng, const Derivation& root, const Config& cfg, std::string_view letters)
{
    const auto nodes = distinct_nodes(root);
    const Derivation& victim = nodes[uniform(rng, 0, nodes.size() - 1)];
    std::unordered_map<const void*, Derivation> memo;
    return replace_node(root, victim.id(), corrupt(rng, victim, cfg, letters), memo);
}

} // namespace qreg::testing
