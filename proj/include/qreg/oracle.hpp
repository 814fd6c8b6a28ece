#pragma once

#include "qreg/derivatives.hpp"
#include "qreg/metric.hpp"
#include "qreg/rational.hpp"
#include "qreg/regex.hpp"

#include <cstddef>
#include <optional>
#include <set>

namespace qreg {

/// Words of a language up to a length bound.
struct LanguageSlice {
    std::size_t max_len = 0;
    std::set<Word> words;

    friend bool operator==(const LanguageSlice&, const LanguageSlice&) = default;
};

/// Set semantics truncated at max_len. Exponential; for small bounds only.
LanguageSlice denote(const Regex& e, std::size_t max_len);

/// Length-then-lexicographic least word of length <= max_len in exactly one
/// of the two languages. Letters are those of e and f.
std::optional<Word> brute_witness(const Regex& e, const Regex& f, std::size_t max_len);

/// lambda^|w| for the brute_witness w, or 0 when there is none.
Rational brute_distance(const Regex& e, const Regex& f, std::size_t max_len, const Config& cfg);

/// Same answer computed from denote slices.
Rational brute_distance_naive(const Regex& e, const Regex& f, std::size_t max_len, const Config& cfg);

/// Membership by a position automaton built directly from the syntax tree.
bool accepts(const Regex& e, std::string_view word);

} // namespace qreg
