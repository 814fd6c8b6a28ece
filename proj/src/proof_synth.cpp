#include "qreg/proof.hpp"

#include "proof_internal.hpp"

#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace qreg {

namespace {

struct ExponentKey {
    Regex left;
    Regex right;
    unsigned n;

    friend bool operator==(const ExponentKey&, const ExponentKey&) = default;
};

struct ExponentKeyHash {
    std::size_t operator()(const ExponentKey& k) const noexcept
    {
        return (k.left.hash() * 1000003u) ^ (k.right.hash() * 7919u) ^ k.n;
    }
};

// Follows the completeness construction on canonical representatives.
class Synthesizer {
public:
    Synthesizer(const Config& cfg, Alphabet alphabet) : cfg_(cfg), nf_(alphabet), alphabet_(std::move(alphabet)) {}

    // g ==_{lambda^n} h for canonical g, h at distance at most lambda^n.
    Derivation at_exponent(const Regex& g, const Regex& h, unsigned n)
    {
        ExponentKey key{g, h, n};
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Derivation d = compute(g, h, n);
        memo_.emplace(std::move(key), d);
        return d;
    }

    // e ==_{lambda^n} f for arbitrary e, f.
    Derivation wrapped(const Regex& e, const Regex& f, unsigned n)
    {
        Derivation to_e = aci_.normalize(e);
        Derivation to_f = aci_.normalize(f);
        return chain({to_e, at_exponent(to_e.conclusion().right, to_f.conclusion().right, n), symm(to_f)});
    }

    detail::AciProver& aci() { return aci_; }

private:
    Derivation compute(const Regex& g, const Regex& h, unsigned n)
    {
        const Rational eps = power(cfg_.lambda(), n);
        if (g == h)
            return refl_at(g, eps);
        if (n == 0)
            return top(g, h);
        if (output(g) != output(h))
            throw std::logic_error("synthesis: outputs of " + print(g) + " and " + print(h) + " differ at exponent " +
                                   std::to_string(n));

        std::optional<Derivation> folded;
        for (char a : alphabet_) {
            const Regex ga = step(g, a);
            const Regex ha = step(h, a);
            Derivation to_g = aci_.normalize(ga);
            Derivation to_h = aci_.normalize(ha);
            Derivation inner = at_exponent(to_g.conclusion().right, to_h.conclusion().right, n - 1);
            Derivation raw = chain({to_g, inner, symm(to_h)});
            Derivation prefixed = npref(a, raw, eps);
            folded = folded ? sl5(*folded, prefixed) : prefixed;
        }
        const Regex b = bit(output(g));
        Derivation outputs = refl_at(b, eps);
        Derivation middle = sl5(*folded, outputs);
        return chain({nf_.prove(g), middle, symm(nf_.prove(h))});
    }

    const Config& cfg_;
    detail::NormalFormProver nf_;
    detail::AciProver aci_;
    Alphabet alphabet_;
    std::unordered_map<ExponentKey, Derivation, ExponentKeyHash> memo_;
};

// Smallest n with lambda^n <= eps, for 0 < eps.
unsigned exponent_below(const Rational& eps, const Config& cfg)
{
    unsigned n = 0;
    Rational v = 1;
    while (v > eps) {
        v *= cfg.lambda();
        ++n;
    }
    return n;
}

Regex param(const TemplateSpec& spec, const std::string& name)
{
    auto it = spec.params.find(name);
    if (it == spec.params.end())
        throw std::invalid_argument("template " + spec.schema + " is missing parameter '" + name + "'");
    return parse(it->second);
}

} // namespace

Derivation prove_at_exponent(const Regex& e, const Regex& f, unsigned n, const Config& cfg)
{
    Synthesizer synth(cfg, infer_alphabet(e, f));
    return synth.wrapped(e, f, n);
}

Derivation instantiate(const TemplateSpec& spec, unsigned n, const Config& cfg)
{
    if (spec.schema == "star_unroll") {
        const Regex g = param(spec, "g");
        const Regex e = param(spec, "e");
        const Regex f = param(spec, "f");
        Judgement hyp{g, Regex::sum(Regex::seq(e, g), f), Rational(0)};
        return star_unroll_proof(hyp, n, cfg);
    }
    if (spec.schema == "provability")
        return prove_at_exponent(param(spec, "left"), param(spec, "right"), n, cfg);
    throw std::invalid_argument("unknown template schema '" + spec.schema + "'");
}

SynthesisResult synthesize(const Regex& e, const Regex& f, const Rational& eps, const Config& cfg)
{
    if (eps < 0)
        throw std::invalid_argument("synthesize: negative epsilon");
    if (e == f)
        return refl_at(e, eps);

    const Alphabet alphabet = infer_alphabet(e, f);
    const DistanceResult dist = distance(e, f, alphabet, cfg);
    if (eps < dist.rational)
        return Refusal{dist.rational, dist.witness};

    Synthesizer synth(cfg, alphabet);
    if (dist.value.is_zero()) {
        if (canonicalize(e) == canonicalize(f))
            return max_to(synth.aci().between(e, f), eps);
        if (eps == 0) {
            TemplateSpec spec;
            spec.schema = "provability";
            spec.params = {{"left", print(e)}, {"right", print(f)}};
            return cont_template(Judgement{e, f, Rational(0)}, std::move(spec));
        }
    }

    unsigned n = exponent_below(eps, cfg);
    if (!dist.value.is_zero())
        n = std::min<unsigned>(n, dist.value.exponent());
    return max_to(synth.wrapped(e, f, n), eps);
}

std::variant<Certificate, Refusal> prove(const Regex& e, const Regex& f, const Rational& eps, const Config& cfg)
{
    SynthesisResult r = synthesize(e, f, eps, cfg);
    if (auto* refusal = std::get_if<Refusal>(&r))
        return *refusal;
    return Certificate{cfg.lambda(), {}, std::get<Derivation>(r)};
}

// ---------------------------------------------------------------------------

namespace {

using FormPair = std::pair<CanonicalForm, CanonicalForm>;

struct FormPairHash {
    std::size_t operator()(const FormPair& p) const noexcept { return p.first.hash() * 31 + p.second.hash(); }
};

FormPair ordered(CanonicalForm a, CanonicalForm b)
{
    if (b.embed() < a.embed())
        std::swap(a, b);
    return {std::move(a), std::move(b)};
}

} // namespace

bool check_bisim(const BisimCertificate& cert, const Regex& e, const Regex& f, const Config&)
{
    std::unordered_set<FormPair, FormPairHash> related;
    for (const auto& [x, y] : cert.relation)
        related.insert(ordered(x, y));
    auto in_relation = [&related](const CanonicalForm& x, const CanonicalForm& y) {
        return x == y || related.contains(ordered(x, y));
    };

    if (!in_relation(canonicalize(e), canonicalize(f)))
        return false;
    const Alphabet alphabet = infer_alphabet(e, f);
    for (const auto& [x, y] : related) {
        const Regex& ex = x.embed();
        const Regex& ey = y.embed();
        if (output(ex) != output(ey))
            return false;
        for (char a : alphabet)
            if (!in_relation(canonicalize(step(ex, a)), canonicalize(step(ey, a))))
                return false;
    }
    return true;
}

BisimCertificate derivative_closure(const Regex& e, const Regex& f)
{
    const QuotientAutomaton aut = build({e, f}, infer_alphabet(e, f));
    BisimCertificate cert;
    for (const StatePair& p : product_pairs(aut, aut.roots()[0], aut.roots()[1]))
        if (!p.diagonal())
            cert.relation.emplace_back(aut.state(p.first), aut.state(p.second));
    return cert;
}

} // namespace qreg
