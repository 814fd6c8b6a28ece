#include "qreg/automaton.hpp"

#include "qreg/derivatives.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

namespace qreg {

StateId QuotientAutomaton::run(StateId s, std::string_view word) const
{
    for (char a : word)
        s = next(s, a);
    return s;
}

std::optional<StateId> QuotientAutomaton::find(const Regex& e) const
{
    auto it = index_.find(canonicalize(e));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

QuotientAutomaton build(const std::vector<Regex>& roots, const Alphabet& alphabet, BuildOptions options)
{
    if (roots.empty())
        throw std::invalid_argument("build: no roots");
    for (const auto& r : roots)
        for (char c : letters(r))
            if (!alphabet.contains(c))
                throw std::invalid_argument(std::string("build: letter '") + c + "' is not in the alphabet");

    QuotientAutomaton aut(alphabet);
    aut.dfa_.num_symbols = alphabet.size();

    auto intern = [&aut, &options](CanonicalForm cf) -> StateId {
        auto [it, inserted] = aut.index_.try_emplace(cf, static_cast<StateId>(aut.states_.size()));
        if (inserted) {
            if (aut.states_.size() >= options.max_states)
                throw StateLimitExceeded("automaton exceeded " + std::to_string(options.max_states) + " states");
            aut.states_.push_back(std::move(cf));
        }
        return it->second;
    };

    for (const auto& r : roots)
        aut.roots_.push_back(intern(canonicalize(r)));

    // states_ grows while we scan it, which is exactly breadth-first order.
    for (std::size_t s = 0; s < aut.states_.size(); ++s) {
        const Regex expr = aut.states_[s].embed();
        aut.dfa_.outputs.push_back(output(expr) ? 1 : 0);
        for (char a : alphabet) {
            StateId t = intern(canonicalize(step(expr, a)));
            aut.dfa_.transitions.push_back(t);
        }
    }
    return aut;
}

namespace {

struct PairHash {
    std::size_t operator()(const StatePair& p) const noexcept
    {
        return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
    }
};

} // namespace

std::vector<StatePair> product_pairs(const Dfa& dfa, StateId s, StateId t)
{
    std::vector<StatePair> order{StatePair(s, t)};
    std::unordered_set<StatePair, PairHash> seen{order.front()};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StatePair p = order[i];
        for (std::size_t a = 0; a < dfa.num_symbols; ++a) {
            StatePair q(dfa.next(p.first, a), dfa.next(p.second, a));
            if (seen.insert(q).second)
                order.push_back(q);
        }
    }
    return order;
}

std::vector<StatePair> product_pairs(const QuotientAutomaton& aut, StateId s, StateId t)
{
    return product_pairs(aut.dfa(), s, t);
}

std::string to_dot(const QuotientAutomaton& aut)
{
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\')
                out.push_back('\\');
            out.push_back(c);
        }
        return out;
    };

    std::ostringstream out;
    out << "digraph quotient {\n  rankdir=LR;\n";
    for (StateId r : aut.roots())
        out << "  init" << r << " [shape=point];\n  init" << r << " -> s" << r << ";\n";
    for (StateId s = 0; s < aut.size(); ++s) {
        out << "  s" << s << " [shape=" << (aut.output(s) ? "doublecircle" : "circle") << ", label=\""
            << escape(print(aut.state(s).embed())) << "\"];\n";
    }
    for (StateId s = 0; s < aut.size(); ++s) {
        for (std::size_t i = 0; i < aut.alphabet().size(); ++i)
            out << "  s" << s << " -> s" << aut.dfa().next(s, i) << " [label=\"" << aut.alphabet()[i] << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace qreg
