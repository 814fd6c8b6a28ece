#pragma once

#include "qreg/regex.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qreg {

using StateId = std::uint32_t;

/// Plain deterministic automaton: output bits and a total transition table
/// indexed by (state, symbol index).
struct Dfa {
    std::size_t num_symbols = 0;
    std::vector<std::uint8_t> outputs;
    std::vector<StateId> transitions;

    std::size_t size() const noexcept { return outputs.size(); }
    bool output(StateId s) const { return outputs[s] != 0; }
    StateId next(StateId s, std::size_t symbol) const { return transitions[s * num_symbols + symbol]; }
};

/// Unordered state pair, stored with first <= second.
struct StatePair {
    StateId first;
    StateId second;

    StatePair(StateId a, StateId b) : first(a < b ? a : b), second(a < b ? b : a) {}
    bool diagonal() const noexcept { return first == second; }
    friend bool operator==(const StatePair&, const StatePair&) = default;
};

class StateLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BuildOptions {
    std::size_t max_states = 100000;
};

/// Reachable part of the ACI-quotiented derivative automaton.
class QuotientAutomaton {
public:
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const Dfa& dfa() const noexcept { return dfa_; }
    const std::vector<CanonicalForm>& states() const noexcept { return states_; }
    const CanonicalForm& state(StateId s) const { return states_.at(s); }
    const std::vector<StateId>& roots() const noexcept { return roots_; }
    std::size_t size() const noexcept { return states_.size(); }

    bool output(StateId s) const { return dfa_.output(s); }
    StateId next(StateId s, char a) const { return dfa_.next(s, alphabet_.index_of(a)); }
    StateId run(StateId s, std::string_view word) const;

    /// State of the ACI class of e, if it was reached.
    std::optional<StateId> find(const Regex& e) const;

private:
    explicit QuotientAutomaton(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    Alphabet alphabet_;
    std::vector<CanonicalForm> states_;
    std::unordered_map<CanonicalForm, StateId, CanonicalFormHash> index_;
    Dfa dfa_;
    std::vector<StateId> roots_;

    friend QuotientAutomaton build(const std::vector<Regex>&, const Alphabet&, BuildOptions);
};

/// Breadth-first closure of the roots under a -> canonicalize(step(., a)).
/// StateIds follow discovery order; roots() keeps the input order.
/// Throws StateLimitExceeded past options.max_states and
/// std::invalid_argument if a root uses a letter outside the alphabet.
QuotientAutomaton build(const std::vector<Regex>& roots, const Alphabet& alphabet, BuildOptions options = {});

/// Unordered pairs reachable from {s,t} under synchronized transitions,
/// in breadth-first order starting with {s,t}. Diagonal pairs are included.
std::vector<StatePair> product_pairs(const Dfa& dfa, StateId s, StateId t);
std::vector<StatePair> product_pairs(const QuotientAutomaton& aut, StateId s, StateId t);

/// Graphviz rendering; accepting states are double circles.
std::string to_dot(const QuotientAutomaton& aut);

} // namespace qreg
