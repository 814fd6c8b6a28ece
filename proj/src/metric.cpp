#include "qreg/metric.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qreg {

Config::Config(Rational lambda) : lambda_(std::move(lambda))
{
    if (lambda_ <= 0 || lambda_ >= 1)
        throw std::invalid_argument("lambda must lie strictly between 0 and 1, got " + to_string(lambda_));
}

Rational ExponentValue::value(const Config& cfg) const
{
    if (is_zero())
        return Rational(0);
    return qreg::power(cfg.lambda(), exponent_);
}

MetricTable top(std::size_t n)
{
    return MetricTable(n, ExponentValue::one(), ExponentValue::zero());
}

RationalTable zero_table(std::size_t n)
{
    return RationalTable(n, Rational(0), Rational(0));
}

MetricTable phi(const Dfa& dfa, const MetricTable& d)
{
    const std::size_t n = dfa.size();
    MetricTable out(n, ExponentValue::one(), ExponentValue::zero());
    for (std::size_t t = 1; t < n; ++t) {
        for (std::size_t s = 0; s < t; ++s) {
            if (dfa.outputs[s] != dfa.outputs[t])
                continue; // stays at 1
            ExponentValue worst = ExponentValue::zero();
            for (std::size_t a = 0; a < dfa.num_symbols; ++a)
                worst = max(worst, d.get(dfa.next(s, a), dfa.next(t, a)));
            out.set(s, t, worst.discounted());
        }
    }
    return out;
}

RationalTable phi(const Dfa& dfa, const RationalTable& d, const Config& cfg)
{
    const std::size_t n = dfa.size();
    RationalTable out(n, Rational(1), Rational(0));
    for (std::size_t t = 1; t < n; ++t) {
        for (std::size_t s = 0; s < t; ++s) {
            if (dfa.outputs[s] != dfa.outputs[t])
                continue;
            Rational worst = 0;
            for (std::size_t a = 0; a < dfa.num_symbols; ++a)
                worst = std::max(worst, d.get(dfa.next(s, a), dfa.next(t, a)));
            out.set(s, t, cfg.lambda() * worst);
        }
    }
    return out;
}

RationalTable to_rational(const MetricTable& d, const Config& cfg)
{
    RationalTable out = zero_table(d.size());
    for (std::size_t t = 1; t < d.size(); ++t)
        for (std::size_t s = 0; s < t; ++s)
            out.set(s, t, d.get(s, t).value(cfg));
    return out;
}

Rational sup_distance(const RationalTable& a, const RationalTable& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("sup_distance: tables over different state sets");
    Rational best = 0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        best = std::max<Rational>(best, abs(a.entries()[i] - b.entries()[i]));
    return best;
}

bool below(const RationalTable& a, const RationalTable& b)
{
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        if (a.entries()[i] > b.entries()[i])
            return false;
    return true;
}

bool below(const MetricTable& a, const MetricTable& b)
{
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        if (a.entries()[i] > b.entries()[i])
            return false;
    return true;
}

bool satisfies_triangle(const RationalTable& d)
{
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (d.get(x, z) > d.get(x, y) + d.get(y, z))
                    return false;
    return true;
}

namespace {

// Pairs from which some output disagreement is reachable, by backward search.
std::vector<bool> distinguishable_pairs(const Dfa& dfa)
{
    const std::size_t n = dfa.size();
    const std::size_t pairs = n * (n ? n - 1 : 0) / 2;
    std::vector<std::vector<std::uint32_t>> preds(pairs);
    std::vector<bool> marked(pairs, false);
    std::deque<std::uint32_t> queue;
    for (std::size_t t = 1; t < n; ++t) {
        for (std::size_t s = 0; s < t; ++s) {
            const auto idx = static_cast<std::uint32_t>(MetricTable::index(s, t));
            for (std::size_t a = 0; a < dfa.num_symbols; ++a) {
                StateId u = dfa.next(s, a), v = dfa.next(t, a);
                if (u != v)
                    preds[MetricTable::index(u, v)].push_back(idx);
            }
            if (dfa.outputs[s] != dfa.outputs[t]) {
                marked[idx] = true;
                queue.push_back(idx);
            }
        }
    }
    while (!queue.empty()) {
        auto idx = queue.front();
        queue.pop_front();
        for (auto p : preds[idx]) {
            if (!marked[p]) {
                marked[p] = true;
                queue.push_back(p);
            }
        }
    }
    return marked;
}

bool has_exponent(const MetricTable& d, std::uint32_t k)
{
    return std::any_of(d.entries().begin(), d.entries().end(),
                       [k](ExponentValue v) { return !v.is_zero() && v.exponent() == k; });
}

} // namespace

Descent kleene_descent(const Dfa& dfa, bool keep_trace)
{
    const std::size_t n = dfa.size();
    const std::size_t limit = n * (n ? n - 1 : 0) / 2;

    Descent out;
    MetricTable d = top(n);
    if (keep_trace)
        out.trace.push_back(d);

    std::size_t i = 0;
    bool stable = false;
    while (i < limit) {
        MetricTable next = phi(dfa, d);
        ++i;
        if (keep_trace)
            out.trace.push_back(next);
        if (next == d) {
            stable = true;
            break;
        }
        const bool previous_level_present = has_exponent(next, static_cast<std::uint32_t>(i - 1));
        d = std::move(next);
        if (!previous_level_present)
            break;
    }
    out.iterations = i;

    if (!stable && has_exponent(d, static_cast<std::uint32_t>(i))) {
        const auto reachable = distinguishable_pairs(dfa);
        for (std::size_t t = 1; t < n; ++t) {
            for (std::size_t s = 0; s < t; ++s) {
                ExponentValue v = d.get(s, t);
                if (v.is_zero() || v.exponent() != i)
                    continue;
                if (reachable[MetricTable::index(s, t)])
                    throw std::logic_error("kleene_descent: pair with reachable disagreement left undecided");
                d.set(s, t, ExponentValue::zero());
            }
        }
    }
    out.fixpoint = std::move(d);
    return out;
}

Descent kleene_descent(const QuotientAutomaton& aut, bool keep_trace)
{
    return kleene_descent(aut.dfa(), keep_trace);
}

MetricTable ascend_from_bottom(const Dfa& dfa)
{
    const std::size_t n = dfa.size();
    MetricTable d(n, ExponentValue::zero(), ExponentValue::zero());
    for (;;) {
        MetricTable next = phi(dfa, d);
        if (next == d)
            return d;
        d = std::move(next);
    }
}

std::optional<Word> distinguishing_word(const QuotientAutomaton& aut, StateId s, StateId t)
{
    const Dfa& dfa = aut.dfa();
    struct Entry {
        StatePair pair;
        std::size_t parent;
        char letter;
    };
    std::vector<Entry> order{{StatePair(s, t), 0, 0}};
    std::vector<bool> seen(dfa.size() * dfa.size(), false);
    auto mark = [&](StatePair p) {
        auto idx = static_cast<std::size_t>(p.first) * dfa.size() + p.second;
        if (seen[idx])
            return false;
        seen[idx] = true;
        return true;
    };
    mark(order.front().pair);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StatePair p = order[i].pair;
        if (dfa.output(p.first) != dfa.output(p.second)) {
            Word w;
            for (std::size_t j = i; j != 0; j = order[j].parent)
                w.push_back(order[j].letter);
            std::reverse(w.begin(), w.end());
            return w;
        }
        if (p.diagonal())
            continue;
        for (std::size_t a = 0; a < dfa.num_symbols; ++a) {
            StatePair q(dfa.next(p.first, a), dfa.next(p.second, a));
            if (mark(q))
                order.push_back({q, i, aut.alphabet()[a]});
        }
    }
    return std::nullopt;
}

DistanceResult distance(const Regex& e, const Regex& f, const Alphabet& alphabet, const Config& cfg)
{
    const QuotientAutomaton aut = build({e, f}, alphabet);
    const StateId r0 = aut.roots()[0], r1 = aut.roots()[1];
    const Descent descent = kleene_descent(aut, false);

    DistanceResult out;
    out.value = descent.fixpoint.get(r0, r1);
    out.rational = out.value.value(cfg);
    out.witness = distinguishing_word(aut, r0, r1);
    out.states = aut.size();
    out.product_pairs = product_pairs(aut, r0, r1).size();
    out.iterations = descent.iterations;

    const bool agree = out.witness ? (!out.value.is_zero() && out.value.exponent() == out.witness->size())
                                   : out.value.is_zero();
    if (!agree)
        throw std::logic_error("distance: fixpoint and shortest distinguishing word disagree for " + print(e) +
                               " vs " + print(f));
    return out;
}

DistanceResult distance(const Regex& e, const Regex& f, const Config& cfg)
{
    return distance(e, f, infer_alphabet(e, f), cfg);
}

std::optional<Word> witness(const Regex& e, const Regex& f, const Config& cfg)
{
    return distance(e, f, cfg).witness;
}

} // namespace qreg
