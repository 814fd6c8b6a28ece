#include "qreg/proof.hpp"

#include <set>
#include <unordered_map>

namespace qreg {

namespace {

class Checker {
public:
    Checker(const Config& cfg, const std::vector<Judgement>& hypotheses, const CheckOptions& options)
        : cfg_(cfg), hypotheses_(hypotheses), options_(options)
    {
    }

    CheckResult run(const Derivation& d, const std::string& path)
    {
        if (auto it = verified_.find(d.id()); it != verified_.end())
            return {};
        CheckResult r = node(d, path);
        if (!r.ok)
            return r;
        for (std::size_t i = 0; i < d.premises().size(); ++i) {
            CheckResult sub = run(d.premises()[i], path + "/" + std::to_string(i));
            if (!sub.ok)
                return sub;
        }
        verified_.emplace(d.id(), d);
        return {};
    }

private:
    CheckResult fail(const Derivation& d, const std::string& path, std::string message) const
    {
        CheckResult r;
        r.ok = false;
        r.path = path;
        r.rule = d.rule();
        r.message = std::move(message);
        return r;
    }

    static bool is(const Regex& e, Kind k) { return e.kind() == k; }

    // Conclusion shape for each distance-0 axiom.
    static bool axiom_matches(Rule rule, const Regex& l, const Regex& r)
    {
        switch (rule) {
        case Rule::SL1:
            return is(l, Kind::Sum) && l.left() == l.right() && l.left() == r;
        case Rule::SL2:
            return is(l, Kind::Sum) && is(r, Kind::Sum) && l.left() == r.right() && l.right() == r.left();
        case Rule::SL3:
            return is(l, Kind::Sum) && is(l.left(), Kind::Sum) && is(r, Kind::Sum) && is(r.right(), Kind::Sum) &&
                   l.left().left() == r.left() && l.left().right() == r.right().left() &&
                   l.right() == r.right().right();
        case Rule::SL4:
            return is(l, Kind::Sum) && is(l.right(), Kind::Zero) && l.left() == r;
        case Rule::OneS:
            return is(l, Kind::Seq) && is(l.left(), Kind::One) && l.right() == r;
        case Rule::S:
            return is(l, Kind::Seq) && is(l.right(), Kind::Seq) && is(r, Kind::Seq) && is(r.left(), Kind::Seq) &&
                   l.left() == r.left().left() && l.right().left() == r.left().right() &&
                   l.right().right() == r.right();
        case Rule::S1:
            return is(l, Kind::Seq) && is(l.right(), Kind::One) && l.left() == r;
        case Rule::ZeroS:
            return is(l, Kind::Seq) && is(l.left(), Kind::Zero) && is(r, Kind::Zero);
        case Rule::S0:
            return is(l, Kind::Seq) && is(l.right(), Kind::Zero) && is(r, Kind::Zero);
        case Rule::D1:
            return is(l, Kind::Seq) && is(l.right(), Kind::Sum) && is(r, Kind::Sum) && is(r.left(), Kind::Seq) &&
                   is(r.right(), Kind::Seq) && r.left().left() == l.left() && r.right().left() == l.left() &&
                   r.left().right() == l.right().left() && r.right().right() == l.right().right();
        case Rule::D2:
            return is(l, Kind::Seq) && is(l.left(), Kind::Sum) && is(r, Kind::Sum) && is(r.left(), Kind::Seq) &&
                   is(r.right(), Kind::Seq) && r.left().left() == l.left().left() &&
                   r.right().left() == l.left().right() && r.left().right() == l.right() &&
                   r.right().right() == l.right();
        case Rule::Unroll:
            return is(l, Kind::Star) && is(r, Kind::Sum) && is(r.right(), Kind::One) && is(r.left(), Kind::Seq) &&
                   r.left().left() == l.body() && r.left().right() == l;
        case Rule::Tight:
            return is(l, Kind::Star) && is(l.body(), Kind::Sum) && is(l.body().right(), Kind::One) &&
                   is(r, Kind::Star) && l.body().left() == r.body();
        default:
            return false;
        }
    }

    CheckResult node(const Derivation& d, const std::string& path)
    {
        const Judgement& c = d.conclusion();
        const auto& ps = d.premises();
        auto arity = [&](std::size_t n) { return ps.size() == n; };

        if (c.eps < 0)
            return fail(d, path, "negative epsilon");

        switch (d.rule()) {
        case Rule::Refl:
            if (!arity(0))
                return fail(d, path, "Refl takes no premises");
            if (!(c.left == c.right))
                return fail(d, path, "sides differ");
            if (c.eps != 0)
                return fail(d, path, "epsilon must be 0");
            return {};

        case Rule::Symm: {
            if (!arity(1))
                return fail(d, path, "Symm takes one premise");
            const Judgement& p = ps[0].conclusion();
            if (!(p.left == c.right) || !(p.right == c.left) || p.eps != c.eps)
                return fail(d, path, "premise is not the mirrored judgement");
            return {};
        }

        case Rule::Triang: {
            if (!arity(2))
                return fail(d, path, "Triang takes two premises");
            const Judgement& p = ps[0].conclusion();
            const Judgement& q = ps[1].conclusion();
            if (!d.meta().midpoint)
                return fail(d, path, "missing midpoint");
            const Regex& m = *d.meta().midpoint;
            if (!(p.left == c.left) || !(p.right == m) || !(q.left == m) || !(q.right == c.right))
                return fail(d, path, "premises do not pass through the midpoint");
            if (c.eps != p.eps + q.eps)
                return fail(d, path, "epsilon is not " + to_string(p.eps + q.eps));
            return {};
        }

        case Rule::Max: {
            if (!arity(1))
                return fail(d, path, "Max takes one premise");
            const Judgement& p = ps[0].conclusion();
            if (!(p.left == c.left) || !(p.right == c.right))
                return fail(d, path, "premise has different sides");
            if (!(p.eps < c.eps))
                return fail(d, path, "premise epsilon " + to_string(p.eps) + " is not below " + to_string(c.eps));
            return {};
        }

        case Rule::NExp: {
            if (c.left.kind() != c.right.kind())
                return fail(d, path, "sides use different operations");
            switch (c.left.kind()) {
            case Kind::Zero:
            case Kind::One:
            case Kind::Letter:
                if (!arity(0) || !(c.left == c.right))
                    return fail(d, path, "nullary congruence needs identical sides and no premises");
                return {};
            case Kind::Star: {
                if (!arity(1))
                    return fail(d, path, "star congruence takes one premise");
                const Judgement& p = ps[0].conclusion();
                if (!(p.left == c.left.body()) || !(p.right == c.right.body()) || p.eps != c.eps)
                    return fail(d, path, "premise does not relate the loop bodies at the same epsilon");
                return {};
            }
            case Kind::Sum:
            case Kind::Seq: {
                if (!arity(2))
                    return fail(d, path, "binary congruence takes two premises");
                const Judgement& p = ps[0].conclusion();
                const Judgement& q = ps[1].conclusion();
                if (!(p.left == c.left.left()) || !(p.right == c.right.left()) || !(q.left == c.left.right()) ||
                    !(q.right == c.right.right()))
                    return fail(d, path, "premises do not relate the arguments");
                if (p.eps != c.eps || q.eps != c.eps)
                    return fail(d, path, "premise epsilons differ from the conclusion");
                return {};
            }
            }
            return fail(d, path, "unknown operation");
        }

        case Rule::Top:
            if (!arity(0))
                return fail(d, path, "Top takes no premises");
            if (c.eps != 1)
                return fail(d, path, "epsilon must be 1");
            return {};

        case Rule::NPref: {
            if (!arity(1))
                return fail(d, path, "NPref takes one premise");
            const Judgement& p = ps[0].conclusion();
            if (!is(c.left, Kind::Seq) || !is(c.right, Kind::Seq) || !is(c.left.left(), Kind::Letter) ||
                !(c.left.left() == c.right.left()))
                return fail(d, path, "conclusion is not a;e == a;f");
            if (d.meta().letter && *d.meta().letter != c.left.left().symbol())
                return fail(d, path, "letter does not match the conclusion");
            if (!(p.left == c.left.right()) || !(p.right == c.right.right()))
                return fail(d, path, "premise does not relate the suffixes");
            if (c.eps < cfg_.lambda() * p.eps)
                return fail(d, path,
                            "epsilon " + to_string(c.eps) + " is below lambda * " + to_string(p.eps) + " = " +
                                to_string(cfg_.lambda() * p.eps));
            return {};
        }

        case Rule::SL5: {
            if (!arity(2))
                return fail(d, path, "SL5 takes two premises");
            const Judgement& p = ps[0].conclusion();
            const Judgement& q = ps[1].conclusion();
            if (!is(c.left, Kind::Sum) || !is(c.right, Kind::Sum))
                return fail(d, path, "conclusion is not a sum on both sides");
            if (!(p.left == c.left.left()) || !(p.right == c.right.left()) || !(q.left == c.left.right()) ||
                !(q.right == c.right.right()))
                return fail(d, path, "premises do not relate the summands");
            if (c.eps != std::max(p.eps, q.eps))
                return fail(d, path, "epsilon is not the maximum of the premises");
            return {};
        }

        case Rule::Hypothesis:
            if (!arity(0))
                return fail(d, path, "Hypothesis takes no premises");
            for (const auto& h : hypotheses_)
                if (h == c)
                    return {};
            return fail(d, path, "judgement is not a declared hypothesis");

        case Rule::ContTemplate:
            return cont(d, path);

        default:
            if (!arity(0))
                return fail(d, path, std::string(rule_name(d.rule())) + " takes no premises");
            if (c.eps != 0)
                return fail(d, path, "epsilon must be 0");
            if (!axiom_matches(d.rule(), c.left, c.right))
                return fail(d, path, "conclusion does not match the axiom");
            return {};
        }
    }

    CheckResult cont(const Derivation& d, const std::string& path)
    {
        const Judgement& c = d.conclusion();
        if (!d.premises().empty())
            return fail(d, path, "ContTemplate carries no explicit premises");
        if (!d.meta().templ)
            return fail(d, path, "missing template");
        if (c.eps != 0)
            return fail(d, path, "epsilon must be 0");
        const TemplateSpec& spec = *d.meta().templ;

        std::set<unsigned> indices(spec.spot_indices.begin(), spec.spot_indices.end());
        for (unsigned i = 0; i <= options_.k_spot; ++i)
            indices.insert(i);

        for (unsigned i : indices) {
            std::optional<Derivation> instance;
            try {
                instance = instantiate(spec, i, cfg_);
            } catch (const std::exception& ex) {
                return fail(d, path, "instance " + std::to_string(i) + " could not be generated: " + ex.what());
            }
            const Judgement& ic = instance->conclusion();
            if (!(ic.left == c.left) || !(ic.right == c.right) || ic.eps != power(cfg_.lambda(), i))
                return fail(d, path, "instance " + std::to_string(i) + " concludes " + to_string(ic));
            // Instances are checked in a fresh context; their nodes are not
            // part of the certificate.
            Checker sub(cfg_, hypotheses_, options_);
            CheckResult r = sub.run(*instance, path + "/instance" + std::to_string(i));
            if (!r.ok)
                return r;
        }

        if (spec.schema == "provability") {
            // The spot checks alone bound the distance by lambda^k_spot; the
            // derivative closure settles it.
            if (!check_bisim(derivative_closure(c.left, c.right), c.left, c.right, cfg_))
                return fail(d, path, "sides are not language-equivalent");
        }
        return {};
    }

    const Config& cfg_;
    const std::vector<Judgement>& hypotheses_;
    const CheckOptions& options_;
    // Keeps checked nodes alive so their addresses stay unique.
    std::unordered_map<const void*, Derivation> verified_;
};

} // namespace

CheckResult check(const Derivation& d, const Config& cfg, const std::vector<Judgement>& hypotheses,
                  const CheckOptions& options)
{
    Checker checker(cfg, hypotheses, options);
    return checker.run(d, "root");
}

CheckResult check(const Certificate& cert, const CheckOptions& options)
{
    return check(cert.root, Config(cert.lambda), cert.hypotheses, options);
}

} // namespace qreg
