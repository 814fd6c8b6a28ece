#pragma once

#include "qreg/proof.hpp"

#include <unordered_map>

namespace qreg::detail {

/// Memoizing prover for e ==_0 canonicalize(e).embed().
class AciProver {
public:
    Derivation normalize(const Regex& e);
    /// x ==_0 y for ACI-equivalent x and y.
    Derivation between(const Regex& x, const Regex& y);

private:
    Derivation compute(const Regex& e);

    std::unordered_map<Regex, Derivation, RegexHash> cache_;
};

/// Memoizing prover for e ==_0 fundamental_decomposition(e, alphabet).
class NormalFormProver {
public:
    explicit NormalFormProver(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    Derivation prove(const Regex& e);
    const Alphabet& alphabet() const noexcept { return alphabet_; }

private:
    Derivation glue(const Regex& x, const Regex& y);
    Derivation atom(const Regex& e);
    Derivation sum(const Regex& e);
    Derivation seq(const Regex& e);
    Derivation star(const Regex& e);
    Derivation compute(const Regex& e);

    Alphabet alphabet_;
    AciProver aci_;
    std::unordered_map<Regex, Derivation, RegexHash> cache_;
};

} // namespace qreg::detail
