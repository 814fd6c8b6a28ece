#pragma once

#include "qreg/regex.hpp"

#include <string>
#include <string_view>

namespace qreg {

/// A word over the letters [a-z]; the empty string is the empty word.
using Word = std::string;

/// Output derivative: 1 iff the empty word is in the language of e.
bool output(const Regex& e);

/// The expression 0 or 1 for an output bit.
Regex bit(bool b);

/// Transition derivative (e)_a. No simplification beyond what the clauses
/// themselves produce; the Seq clause adds the f_a summand only when
/// output(e) holds.
Regex step(const Regex& e, char a);

Regex word_derivative(const Regex& e, std::string_view w);

bool member(const Regex& e, std::string_view w);

/// Sum over the alphabet of a;(e)_a, left-nested in alphabet order, plus
/// the output bit as the last summand.
Regex fundamental_decomposition(const Regex& e, const Alphabet& alphabet);

} // namespace qreg
