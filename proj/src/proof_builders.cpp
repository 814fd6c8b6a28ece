#include "qreg/proof.hpp"

#include "proof_internal.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace qreg {

struct Derivation::Node {
    Judgement conclusion;
    Rule rule;
    std::vector<Derivation> premises;
    Meta meta;
};

Derivation::Derivation(Judgement conclusion, Rule rule, std::vector<Derivation> premises, Meta meta)
    : node_(std::make_shared<const Node>(Node{std::move(conclusion), rule, std::move(premises), std::move(meta)}))
{
}

const Judgement& Derivation::conclusion() const noexcept { return node_->conclusion; }
Rule Derivation::rule() const noexcept { return node_->rule; }
const std::vector<Derivation>& Derivation::premises() const noexcept { return node_->premises; }
const Meta& Derivation::meta() const noexcept { return node_->meta; }

std::string to_string(const Judgement& j)
{
    return print(j.left) + " ==_" + to_string(j.eps) + " " + print(j.right);
}

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 23> kRuleNames{{
    {Rule::Refl, "Refl"},
    {Rule::Symm, "Symm"},
    {Rule::Triang, "Triang"},
    {Rule::Max, "Max"},
    {Rule::NExp, "NExp"},
    {Rule::Top, "Top"},
    {Rule::NPref, "NPref"},
    {Rule::SL1, "SL1"},
    {Rule::SL2, "SL2"},
    {Rule::SL3, "SL3"},
    {Rule::SL4, "SL4"},
    {Rule::SL5, "SL5"},
    {Rule::OneS, "1S"},
    {Rule::S, "S"},
    {Rule::S1, "S1"},
    {Rule::ZeroS, "0S"},
    {Rule::S0, "S0"},
    {Rule::D1, "D1"},
    {Rule::D2, "D2"},
    {Rule::Unroll, "Unroll"},
    {Rule::Tight, "Tight"},
    {Rule::Hypothesis, "Hypothesis"},
    {Rule::ContTemplate, "ContTemplate"},
}};

} // namespace

std::string_view rule_name(Rule r)
{
    for (const auto& [rule, name] : kRuleNames)
        if (rule == r)
            return name;
    return "?";
}

std::optional<Rule> rule_from_name(std::string_view name)
{
    for (const auto& [rule, n] : kRuleNames)
        if (n == name)
            return rule;
    return std::nullopt;
}

const std::vector<Rule>& all_rules()
{
    static const std::vector<Rule> rules = [] {
        std::vector<Rule> out;
        for (const auto& entry : kRuleNames)
            out.push_back(entry.first);
        return out;
    }();
    return rules;
}

bool same_tree(const Derivation& a, const Derivation& b)
{
    struct PairHash {
        std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept
        {
            return std::hash<const void*>()(p.first) * 31 + std::hash<const void*>()(p.second);
        }
    };
    std::unordered_set<std::pair<const void*, const void*>, PairHash> done;
    std::function<bool(const Derivation&, const Derivation&)> eq = [&](const Derivation& x, const Derivation& y) {
        if (x.id() == y.id())
            return true;
        if (done.contains({x.id(), y.id()}))
            return true;
        if (x.rule() != y.rule() || !(x.conclusion() == y.conclusion()) || !(x.meta() == y.meta()) ||
            x.premises().size() != y.premises().size())
            return false;
        for (std::size_t i = 0; i < x.premises().size(); ++i)
            if (!eq(x.premises()[i], y.premises()[i]))
                return false;
        done.insert({x.id(), y.id()});
        return true;
    };
    return eq(a, b);
}

std::size_t node_count(const Derivation& d)
{
    std::unordered_set<const void*> seen;
    std::vector<Derivation> stack{d};
    while (!stack.empty()) {
        Derivation cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur.id()).second)
            continue;
        for (const auto& p : cur.premises())
            stack.push_back(p);
    }
    return seen.size();
}

// ---------------------------------------------------------------------------

namespace {

Derivation axiom(Rule r, Regex left, Regex right)
{
    return Derivation(Judgement{std::move(left), std::move(right), Rational(0)}, r);
}

bool is_identity(const Derivation& d)
{
    const auto& c = d.conclusion();
    return c.eps == 0 && c.left == c.right;
}

} // namespace

Derivation refl(const Regex& e)
{
    return axiom(Rule::Refl, e, e);
}

Derivation refl_at(const Regex& e, const Rational& eps)
{
    return max_to(refl(e), eps);
}

Derivation symm(const Derivation& d)
{
    const auto& c = d.conclusion();
    return Derivation(Judgement{c.right, c.left, c.eps}, Rule::Symm, {d});
}

Derivation triang(const Derivation& first, const Derivation& second)
{
    const auto& a = first.conclusion();
    const auto& b = second.conclusion();
    Meta meta;
    meta.midpoint = a.right;
    return Derivation(Judgement{a.left, b.right, a.eps + b.eps}, Rule::Triang, {first, second}, std::move(meta));
}

Derivation max_to(const Derivation& d, const Rational& eps)
{
    const auto& c = d.conclusion();
    if (c.eps == eps)
        return d;
    return Derivation(Judgement{c.left, c.right, eps}, Rule::Max, {d});
}

Derivation top(const Regex& left, const Regex& right)
{
    return Derivation(Judgement{left, right, Rational(1)}, Rule::Top);
}

Derivation npref(char letter, const Derivation& premise, const Rational& eps)
{
    const auto& c = premise.conclusion();
    const Regex a = Regex::letter(letter);
    Meta meta;
    meta.letter = letter;
    return Derivation(Judgement{Regex::seq(a, c.left), Regex::seq(a, c.right), eps}, Rule::NPref, {premise},
                      std::move(meta));
}

Derivation nexp_atom(const Regex& e, const Rational& eps)
{
    return Derivation(Judgement{e, e, eps}, Rule::NExp);
}

Derivation nexp_sum(const Derivation& l, const Derivation& r)
{
    const auto& a = l.conclusion();
    const auto& b = r.conclusion();
    return Derivation(Judgement{Regex::sum(a.left, b.left), Regex::sum(a.right, b.right), a.eps}, Rule::NExp, {l, r});
}

Derivation nexp_seq(const Derivation& l, const Derivation& r)
{
    const auto& a = l.conclusion();
    const auto& b = r.conclusion();
    return Derivation(Judgement{Regex::seq(a.left, b.left), Regex::seq(a.right, b.right), a.eps}, Rule::NExp, {l, r});
}

Derivation nexp_star(const Derivation& body)
{
    const auto& a = body.conclusion();
    return Derivation(Judgement{Regex::star(a.left), Regex::star(a.right), a.eps}, Rule::NExp, {body});
}

Derivation sl5(const Derivation& l, const Derivation& r)
{
    const auto& a = l.conclusion();
    const auto& b = r.conclusion();
    return Derivation(Judgement{Regex::sum(a.left, b.left), Regex::sum(a.right, b.right), std::max(a.eps, b.eps)},
                      Rule::SL5, {l, r});
}

Derivation hypothesis(const Judgement& j)
{
    return Derivation(j, Rule::Hypothesis);
}

Derivation cont_template(const Judgement& j, TemplateSpec spec)
{
    Meta meta;
    meta.templ = std::move(spec);
    return Derivation(j, Rule::ContTemplate, {}, std::move(meta));
}

Derivation sl1(const Regex& e) { return axiom(Rule::SL1, Regex::sum(e, e), e); }
Derivation sl2(const Regex& e, const Regex& f) { return axiom(Rule::SL2, Regex::sum(e, f), Regex::sum(f, e)); }
Derivation sl3(const Regex& e, const Regex& f, const Regex& g)
{
    return axiom(Rule::SL3, Regex::sum(Regex::sum(e, f), g), Regex::sum(e, Regex::sum(f, g)));
}
Derivation sl4(const Regex& e) { return axiom(Rule::SL4, Regex::sum(e, Regex::zero()), e); }
Derivation one_s(const Regex& e) { return axiom(Rule::OneS, Regex::seq(Regex::one(), e), e); }
Derivation s_assoc(const Regex& e, const Regex& f, const Regex& g)
{
    return axiom(Rule::S, Regex::seq(e, Regex::seq(f, g)), Regex::seq(Regex::seq(e, f), g));
}
Derivation s1(const Regex& e) { return axiom(Rule::S1, Regex::seq(e, Regex::one()), e); }
Derivation zero_s(const Regex& e) { return axiom(Rule::ZeroS, Regex::seq(Regex::zero(), e), Regex::zero()); }
Derivation s0(const Regex& e) { return axiom(Rule::S0, Regex::seq(e, Regex::zero()), Regex::zero()); }
Derivation d1(const Regex& e, const Regex& f, const Regex& g)
{
    return axiom(Rule::D1, Regex::seq(e, Regex::sum(f, g)), Regex::sum(Regex::seq(e, f), Regex::seq(e, g)));
}
Derivation d2(const Regex& e, const Regex& f, const Regex& g)
{
    return axiom(Rule::D2, Regex::seq(Regex::sum(e, f), g), Regex::sum(Regex::seq(e, g), Regex::seq(f, g)));
}
Derivation unroll(const Regex& e)
{
    return axiom(Rule::Unroll, Regex::star(e), Regex::sum(Regex::seq(e, Regex::star(e)), Regex::one()));
}
Derivation tight(const Regex& e)
{
    return axiom(Rule::Tight, Regex::star(Regex::sum(e, Regex::one())), Regex::star(e));
}

Derivation chain(const std::vector<Derivation>& steps)
{
    if (steps.empty())
        throw std::invalid_argument("chain: no steps");
    std::optional<Derivation> acc;
    Regex end = steps.front().conclusion().left;
    for (const auto& step : steps) {
        if (!(end == step.conclusion().left))
            throw std::logic_error("chain: step does not continue from " + print(end) + " (got " +
                                   print(step.conclusion().left) + ")");
        end = step.conclusion().right;
        if (is_identity(step))
            continue;
        acc = acc ? triang(*acc, step) : step;
    }
    return acc ? *acc : refl(steps.front().conclusion().left);
}

// ---------------------------------------------------------------------------
// ACI reasoning

namespace {

// e ==_0 the right-nested sum of flatten_sum(e).
Derivation reassociate(const Regex& e)
{
    if (!e.is(Kind::Sum))
        return refl(e);
    const Regex& l = e.left();
    const Regex& r = e.right();
    if (l.is(Kind::Sum)) {
        Derivation step = sl3(l.left(), l.right(), r);
        return chain({step, reassociate(step.conclusion().right)});
    }
    return nexp_sum(refl(l), reassociate(r));
}

// x + list ==_0 sorted insertion of x, where list is a sorted, duplicate-free
// right-nested sum.
Derivation insert_sorted(const Regex& x, const Regex& list)
{
    if (!list.is(Kind::Sum)) {
        if (x == list)
            return sl1(x);
        if (list < x)
            return sl2(x, list);
        return refl(Regex::sum(x, list));
    }
    const Regex& y = list.left();
    const Regex& rest = list.right();
    if (x == y) {
        // x + (x + rest) -> (x + x) + rest -> x + rest
        return chain({symm(sl3(x, x, rest)), nexp_sum(sl1(x), refl(rest))});
    }
    if (x < y)
        return refl(Regex::sum(x, list));
    // x + (y + rest) -> (x + y) + rest -> (y + x) + rest -> y + (x + rest)
    Derivation swap = chain({symm(sl3(x, y, rest)), nexp_sum(sl2(x, y), refl(rest)), sl3(y, x, rest)});
    return chain({swap, nexp_sum(refl(y), insert_sorted(x, rest))});
}

// Right-nested sum of non-Sum terms ==_0 its sorted, deduplicated version.
Derivation sort_summands(const Regex& list)
{
    if (!list.is(Kind::Sum))
        return refl(list);
    Derivation tail = nexp_sum(refl(list.left()), sort_summands(list.right()));
    const Regex& sorted_tail = tail.conclusion().right.right();
    return chain({tail, insert_sorted(list.left(), sorted_tail)});
}

} // namespace

namespace detail {

Derivation AciProver::normalize(const Regex& e)
{
    if (auto it = cache_.find(e); it != cache_.end())
        return it->second;
    Derivation d = compute(e);
    cache_.emplace(e, d);
    return d;
}

Derivation AciProver::between(const Regex& x, const Regex& y)
{
    Derivation dx = normalize(x);
    Derivation dy = normalize(y);
    if (!(dx.conclusion().right == dy.conclusion().right))
        throw std::invalid_argument("aci_proof: " + print(x) + " and " + print(y) + " are not ACI-equivalent");
    return chain({dx, symm(dy)});
}

Derivation AciProver::compute(const Regex& e)
{
    switch (e.kind()) {
    case Kind::Zero:
    case Kind::One:
    case Kind::Letter:
        return refl(e);
    case Kind::Seq:
        return nexp_seq(normalize(e.left()), normalize(e.right()));
    case Kind::Star:
        return nexp_star(normalize(e.body()));
    case Kind::Sum:
        break;
    }
    Derivation flat = reassociate(e);
    // normalize each summand in place, then sort
    std::vector<Regex> terms = flatten_sum(e);
    std::vector<Derivation> parts;
    parts.reserve(terms.size());
    for (const auto& t : terms)
        parts.push_back(normalize(t));
    Derivation inner = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
        inner = nexp_sum(parts[i], inner);
    Derivation sorted = sort_summands(inner.conclusion().right);
    Derivation out = chain({flat, inner, sorted});
    if (!(out.conclusion().right == canonicalize(e).embed()))
        throw std::logic_error("aci_proof: normal form mismatch for " + print(e));
    return out;
}

} // namespace detail

Derivation aci_proof(const Regex& e)
{
    detail::AciProver prover;
    return prover.normalize(e);
}

Derivation aci_proof(const Regex& e, const Regex& f)
{
    detail::AciProver prover;
    return prover.between(e, f);
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

using Rewrite = std::function<std::optional<Derivation>(const Regex&)>;

// Applies `rw` to each top-level summand of e; e ==_0 result.
Derivation map_summands(const Regex& e, const Rewrite& rw)
{
    if (e.is(Kind::Sum))
        return nexp_sum(map_summands(e.left(), rw), map_summands(e.right(), rw));
    if (auto d = rw(e))
        return *d;
    return refl(e);
}

// (sum);g ==_0 the sum of t;g over the summands t, keeping the nesting.
Derivation distribute_right(const Regex& sum, const Regex& g)
{
    if (!sum.is(Kind::Sum))
        return refl(Regex::seq(sum, g));
    Derivation step = d2(sum.left(), sum.right(), g);
    return chain({step, nexp_sum(distribute_right(sum.left(), g), distribute_right(sum.right(), g))});
}

} // namespace

namespace detail {

Derivation NormalFormProver::prove(const Regex& e)
{
    if (auto it = cache_.find(e); it != cache_.end())
        return it->second;
    Derivation d = compute(e);
    if (!(d.conclusion().left == e) || !(d.conclusion().right == fundamental_decomposition(e, alphabet_)))
        throw std::logic_error("normal_form_proof: wrong conclusion for " + print(e));
    cache_.emplace(e, d);
    return d;
}

// x ==_0 y where x and y agree up to ACI and 0 summands.
Derivation NormalFormProver::glue(const Regex& x, const Regex& y)
{
    auto strip = [this](const Regex& z) {
        Derivation to_canon = aci_.normalize(z);
        const Regex& c = to_canon.conclusion().right;
        if (c.is(Kind::Sum) && c.left().is(Kind::Zero)) {
            const Regex& rest = c.right();
            return chain({to_canon, sl2(Regex::zero(), rest), sl4(rest)});
        }
        return to_canon;
    };
    Derivation dx = strip(x);
    Derivation dy = strip(y);
    if (!(dx.conclusion().right == dy.conclusion().right))
        throw std::logic_error("normal_form_proof: cannot glue " + print(x) + " to " + print(y));
    return chain({dx, symm(dy)});
}

Derivation NormalFormProver::atom(const Regex& e)
{
    const Regex fd = fundamental_decomposition(e, alphabet_);
    Derivation rewritten = map_summands(fd, [](const Regex& t) -> std::optional<Derivation> {
        if (t.is(Kind::Seq) && t.right().is(Kind::One))
            return s1(t.left());
        if (t.is(Kind::Seq) && t.right().is(Kind::Zero))
            return s0(t.left());
        return std::nullopt;
    });
    return symm(chain({rewritten, glue(rewritten.conclusion().right, e)}));
}

Derivation NormalFormProver::sum(const Regex& e)
{
    const Regex fd = fundamental_decomposition(e, alphabet_);
    Derivation both = nexp_sum(prove(e.left()), prove(e.right()));
    Derivation target = map_summands(fd, [](const Regex& t) -> std::optional<Derivation> {
        if (t.is(Kind::Seq) && t.right().is(Kind::Sum))
            return d1(t.left(), t.right().left(), t.right().right());
        return std::nullopt;
    });
    return chain({both, glue(both.conclusion().right, target.conclusion().right), symm(target)});
}

Derivation NormalFormProver::seq(const Regex& e)
{
    const Regex& f = e.left();
    const Regex& g = e.right();
    const Regex fd = fundamental_decomposition(e, alphabet_);
    Derivation head = nexp_seq(prove(f), refl(g));
    Derivation spread = distribute_right(head.conclusion().right.left(), g);
    Derivation regroup = map_summands(spread.conclusion().right, [this](const Regex& t) -> std::optional<Derivation> {
        if (!t.is(Kind::Seq))
            return std::nullopt;
        const Regex& l = t.left();
        if (l.is(Kind::Seq))
            return symm(s_assoc(l.left(), l.right(), t.right()));
        if (l.is(Kind::Zero))
            return zero_s(t.right());
        if (l.is(Kind::One))
            return chain({one_s(t.right()), prove(t.right())});
        return std::nullopt;
    });
    Derivation target = map_summands(fd, [&](const Regex& t) -> std::optional<Derivation> {
        if (output(f) && t.is(Kind::Seq) && t.right().is(Kind::Sum))
            return d1(t.left(), t.right().left(), t.right().right());
        return std::nullopt;
    });
    return chain({head, spread, regroup, glue(regroup.conclusion().right, target.conclusion().right), symm(target)});
}

Derivation NormalFormProver::star(const Regex& e)
{
    const Regex& f = e.body();
    Derivation into = nexp_star(prove(f));
    const Regex& fd_f = into.conclusion().right.body();
    const Regex& s = fd_f.left();
    Derivation tightened = output(f) ? tight(s) : nexp_star(sl4(s));
    Derivation to_s = chain({into, tightened});
    Derivation unrolled = unroll(s);
    Derivation refold = nexp_sum(nexp_seq(refl(s), symm(to_s)), refl(Regex::one()));
    Derivation spread = nexp_sum(distribute_right(s, e), refl(Regex::one()));
    Derivation regroup = map_summands(spread.conclusion().right, [](const Regex& t) -> std::optional<Derivation> {
        if (t.is(Kind::Seq) && t.left().is(Kind::Seq))
            return symm(s_assoc(t.left().left(), t.left().right(), t.right()));
        return std::nullopt;
    });
    const Regex fd = fundamental_decomposition(e, alphabet_);
    return chain({to_s, unrolled, refold, spread, regroup, glue(regroup.conclusion().right, fd)});
}

Derivation NormalFormProver::compute(const Regex& e)
{
    switch (e.kind()) {
    case Kind::Zero:
    case Kind::One:
    case Kind::Letter:
        return atom(e);
    case Kind::Sum:
        return sum(e);
    case Kind::Seq:
        return seq(e);
    case Kind::Star:
        return star(e);
    }
    throw std::logic_error("normal_form_proof: unknown node");
}

} // namespace detail

Derivation normal_form_proof(const Regex& e, const Alphabet& alphabet)
{
    for (char c : letters(e))
        if (!alphabet.contains(c))
            throw std::invalid_argument(std::string("normal_form_proof: letter '") + c + "' is not in the alphabet");
    detail::NormalFormProver prover(alphabet);
    return prover.prove(e);
}

// ---------------------------------------------------------------------------
// Prefixing and loops

Derivation generalized_prefix(const Derivation& premise, const Regex& e, const Rational& eps_out, const Config& cfg)
{
    const Judgement& p = premise.conclusion();
    if (output(e))
        throw std::invalid_argument("generalized_prefix: " + print(e) + " accepts the empty word");
    if (eps_out < cfg.lambda() * p.eps)
        throw std::invalid_argument("generalized_prefix: epsilon " + to_string(eps_out) + " is below lambda * " +
                                    to_string(p.eps));
    const Regex& f = p.left;
    const Regex& g = p.right;

    switch (e.kind()) {
    case Kind::Zero: {
        Derivation zero = chain({zero_s(f), symm(zero_s(g))});
        return max_to(zero, eps_out);
    }
    case Kind::Letter:
        return npref(e.symbol(), premise, eps_out);
    case Kind::Sum: {
        Derivation both = sl5(generalized_prefix(premise, e.left(), eps_out, cfg),
                              generalized_prefix(premise, e.right(), eps_out, cfg));
        return chain({d2(e.left(), e.right(), f), both, symm(d2(e.left(), e.right(), g))});
    }
    case Kind::Seq: {
        const Regex& e1 = e.left();
        const Regex& e2 = e.right();
        Derivation inner = [&] {
            if (!output(e1) && !output(e2)) {
                Derivation mid = generalized_prefix(premise, e2, eps_out, cfg);
                return generalized_prefix(mid, e1, eps_out, cfg);
            }
            if (!output(e1)) {
                Derivation mid = nexp_seq(refl_at(e2, p.eps), premise);
                return generalized_prefix(mid, e1, eps_out, cfg);
            }
            Derivation mid = generalized_prefix(premise, e2, eps_out, cfg);
            return nexp_seq(refl_at(e1, eps_out), mid);
        }();
        return chain({symm(s_assoc(e1, e2, f)), inner, s_assoc(e1, e2, g)});
    }
    case Kind::One:
    case Kind::Star:
        break;
    }
    throw std::logic_error("generalized_prefix: unreachable");
}

std::tuple<Regex, Regex, Regex> unroll_hypothesis_parts(const Judgement& hyp)
{
    if (hyp.eps != 0)
        throw std::invalid_argument("hypothesis must be at distance 0");
    const Regex& g = hyp.left;
    const Regex& r = hyp.right;
    if (!r.is(Kind::Sum) || !r.left().is(Kind::Seq) || !(r.left().right() == g))
        throw std::invalid_argument("hypothesis must have the shape g ==_0 e;g + f");
    const Regex& e = r.left().left();
    if (output(e))
        throw std::invalid_argument("hypothesis loop body " + print(e) + " accepts the empty word");
    return {g, e, r.right()};
}

Derivation star_unroll_proof(const Judgement& hyp, unsigned n, const Config& cfg)
{
    auto [g, e, f] = unroll_hypothesis_parts(hyp);
    const Regex es = Regex::star(e);
    const Regex target = Regex::seq(es, f);

    Derivation current = top(g, target);
    const Derivation assumption = hypothesis(hyp);
    // e;(e*;f) + f ==_0 e*;f
    const Derivation fold = chain({
        nexp_sum(refl(Regex::seq(e, target)), symm(one_s(f))),
        nexp_sum(s_assoc(e, es, f), refl(Regex::seq(Regex::one(), f))),
        symm(d2(Regex::seq(e, es), Regex::one(), f)),
        nexp_seq(symm(unroll(e)), refl(f)),
    });
    for (unsigned i = 1; i <= n; ++i) {
        const Rational eps = power(cfg.lambda(), i);
        Derivation pref = generalized_prefix(current, e, eps, cfg);
        Derivation both = sl5(pref, refl(f));
        current = chain({assumption, both, fold});
    }
    return current;
}

Derivation salomaa_rule(const Judgement& hyp, const Config&)
{
    auto [g, e, f] = unroll_hypothesis_parts(hyp);
    TemplateSpec spec;
    spec.schema = "star_unroll";
    spec.params = {{"g", print(g)}, {"e", print(e)}, {"f", print(f)}};
    return cont_template(Judgement{g, Regex::seq(Regex::star(e), f), Rational(0)}, std::move(spec));
}

} // namespace qreg
