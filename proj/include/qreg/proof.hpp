#pragma once

#include "qreg/automaton.hpp"
#include "qreg/derivatives.hpp"
#include "qreg/metric.hpp"
#include "qreg/rational.hpp"
#include "qreg/regex.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qreg {

/// left ==_eps right
struct Judgement {
    Regex left;
    Regex right;
    Rational eps;

    friend bool operator==(const Judgement&, const Judgement&) = default;
};

std::string to_string(const Judgement& j);

enum class Rule : std::uint8_t {
    Refl,
    Symm,
    Triang,
    Max,
    NExp,
    Top,
    NPref,
    SL1,
    SL2,
    SL3,
    SL4,
    SL5,
    OneS,
    S,
    S1,
    ZeroS,
    S0,
    D1,
    D2,
    Unroll,
    Tight,
    Hypothesis,
    ContTemplate,
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
/// Every rule tag in declaration order.
const std::vector<Rule>& all_rules();

/// Finite description of an index-parameterized family of derivations.
struct TemplateSpec {
    std::string schema;
    std::map<std::string, std::string> params;
    /// Indices checked in addition to 0..k_spot.
    std::vector<unsigned> spot_indices;

    friend bool operator==(const TemplateSpec&, const TemplateSpec&) = default;
};

struct Meta {
    /// Triang
    std::optional<Regex> midpoint;
    /// NPref
    std::optional<char> letter;
    /// ContTemplate
    std::optional<TemplateSpec> templ;

    friend bool operator==(const Meta&, const Meta&) = default;
};

/// Immutable proof node. Subproofs may be shared between parents.
class Derivation {
public:
    Derivation(Judgement conclusion, Rule rule, std::vector<Derivation> premises = {}, Meta meta = {});

    const Judgement& conclusion() const noexcept;
    Rule rule() const noexcept;
    const std::vector<Derivation>& premises() const noexcept;
    const Meta& meta() const noexcept;

    /// Identity of the shared node.
    const void* id() const noexcept { return node_.get(); }

private:
    struct Node;
    std::shared_ptr<const Node> node_;
};

/// Structural equality, linear in the number of distinct nodes.
bool same_tree(const Derivation& a, const Derivation& b);
/// Number of distinct nodes.
std::size_t node_count(const Derivation& d);

struct Certificate {
    Rational lambda;
    std::vector<Judgement> hypotheses;
    Derivation root;
};

// ---------------------------------------------------------------------------
// Node constructors. These do not validate; check() does.

Derivation refl(const Regex& e);
/// Refl, followed by Max when eps > 0.
Derivation refl_at(const Regex& e, const Rational& eps);
Derivation symm(const Derivation& d);
Derivation triang(const Derivation& first, const Derivation& second);
/// Max up to eps; returns d unchanged when eps equals its epsilon.
Derivation max_to(const Derivation& d, const Rational& eps);
Derivation top(const Regex& left, const Regex& right);
Derivation npref(char letter, const Derivation& premise, const Rational& eps);
Derivation nexp_atom(const Regex& e, const Rational& eps = 0);
Derivation nexp_sum(const Derivation& l, const Derivation& r);
Derivation nexp_seq(const Derivation& l, const Derivation& r);
Derivation nexp_star(const Derivation& body);
Derivation sl5(const Derivation& l, const Derivation& r);
Derivation hypothesis(const Judgement& j);
Derivation cont_template(const Judgement& j, TemplateSpec spec);

Derivation sl1(const Regex& e);
Derivation sl2(const Regex& e, const Regex& f);
Derivation sl3(const Regex& e, const Regex& f, const Regex& g);
Derivation sl4(const Regex& e);
Derivation one_s(const Regex& e);
Derivation s_assoc(const Regex& e, const Regex& f, const Regex& g);
Derivation s1(const Regex& e);
Derivation zero_s(const Regex& e);
Derivation s0(const Regex& e);
Derivation d1(const Regex& e, const Regex& f, const Regex& g);
Derivation d2(const Regex& e, const Regex& f, const Regex& g);
Derivation unroll(const Regex& e);
Derivation tight(const Regex& e);

/// Triang-folds consecutive steps, dropping identity steps at distance 0.
/// Each step's left side must be the previous step's right side.
Derivation chain(const std::vector<Derivation>& steps);

// ---------------------------------------------------------------------------
// Checking

struct CheckOptions {
    /// ContTemplate instances 0..k_spot are generated and checked.
    unsigned k_spot = 8;
};

struct CheckResult {
    bool ok = true;
    /// Premise indices from the root, e.g. "root/1/0".
    std::string path;
    std::optional<Rule> rule;
    std::string message;

    explicit operator bool() const noexcept { return ok; }
};

CheckResult check(const Derivation& d, const Config& cfg, const std::vector<Judgement>& hypotheses = {},
                  const CheckOptions& options = {});
CheckResult check(const Certificate& cert, const CheckOptions& options = {});

// ---------------------------------------------------------------------------
// Construction of derivations

/// e ==_0 fundamental_decomposition(e, alphabet).
Derivation normal_form_proof(const Regex& e, const Alphabet& alphabet);

/// e ==_0 canonicalize(e).embed(), using SL1-SL3 and congruence only.
Derivation aci_proof(const Regex& e);
/// e ==_0 f for ACI-equivalent e and f. Throws std::invalid_argument otherwise.
Derivation aci_proof(const Regex& e, const Regex& f);

/// From a derivation of f ==_eps g, a derivation of e;f ==_{eps_out} e;g.
/// Requires output(e) = 0 and eps_out >= lambda * eps.
Derivation generalized_prefix(const Derivation& premise, const Regex& e, const Rational& eps_out, const Config& cfg);

/// Splits a hypothesis g ==_0 e;g + f into (g, e, f). Throws
/// std::invalid_argument if it does not have that shape or output(e) = 1.
std::tuple<Regex, Regex, Regex> unroll_hypothesis_parts(const Judgement& hyp);

/// g ==_{lambda^n} e*;f from the hypothesis g ==_0 e;g + f.
Derivation star_unroll_proof(const Judgement& hyp, unsigned n, const Config& cfg);

/// ContTemplate concluding g ==_0 e*;f whose n-th instance is star_unroll_proof.
Derivation salomaa_rule(const Judgement& hyp, const Config& cfg);

/// n-th instance of a ContTemplate schema ("star_unroll" or "provability").
Derivation instantiate(const TemplateSpec& spec, unsigned n, const Config& cfg);

struct Refusal {
    Rational distance;
    std::optional<Word> witness;
};

using SynthesisResult = std::variant<Derivation, Refusal>;

/// Derivation of e ==_eps f, or a refusal when eps is below the distance.
SynthesisResult synthesize(const Regex& e, const Regex& f, const Rational& eps, const Config& cfg);
/// Convenience: synthesize and wrap in a certificate.
std::variant<Certificate, Refusal> prove(const Regex& e, const Regex& f, const Rational& eps, const Config& cfg);

/// Finite derivation of e ==_{lambda^n} f, assuming distance(e, f) <= lambda^n.
Derivation prove_at_exponent(const Regex& e, const Regex& f, unsigned n, const Config& cfg);

// ---------------------------------------------------------------------------
// Bisimulation certificates

struct BisimCertificate {
    std::vector<std::pair<CanonicalForm, CanonicalForm>> relation;
};

/// True iff the pair of e and f is related (or equal), every related pair
/// has equal outputs, and the relation is closed under derivatives over the
/// letters of e and f. Equal pairs count as related.
bool check_bisim(const BisimCertificate& cert, const Regex& e, const Regex& f, const Config& cfg);

/// All non-diagonal pairs reachable from (e, f) in the quotient automaton.
BisimCertificate derivative_closure(const Regex& e, const Regex& f);

} // namespace qreg
