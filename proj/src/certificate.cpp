#include "qreg/certificate.hpp"

#include <unordered_map>

namespace qreg {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg)
{
    throw CertificateFormatError(msg);
}

const json& field(const json& obj, const char* name)
{
    if (!obj.is_object())
        bad(std::string("expected an object holding '") + name + "'");
    auto it = obj.find(name);
    if (it == obj.end())
        bad(std::string("missing field '") + name + "'");
    return *it;
}

std::string text(const json& v, const char* what)
{
    if (!v.is_string())
        bad(std::string(what) + " must be a string");
    return v.get<std::string>();
}

Regex expr(const json& v, const char* what)
{
    try {
        return parse(text(v, what));
    } catch (const ParseError& ex) {
        bad(std::string(what) + ": " + ex.what());
    }
}

Rational rational(const json& v, const char* what)
{
    try {
        return parse_rational(text(v, what));
    } catch (const RationalFormatError& ex) {
        bad(std::string(what) + ": " + ex.what());
    }
}

json meta_json(const Meta& m)
{
    json out = json::object();
    if (m.midpoint)
        out["midpoint"] = print(*m.midpoint);
    if (m.letter)
        out["letter"] = std::string(1, *m.letter);
    if (m.templ) {
        out["schema"] = m.templ->schema;
        out["params"] = m.templ->params;
        out["spot_indices"] = m.templ->spot_indices;
    }
    return out;
}

Meta meta_from(const json& m)
{
    Meta out;
    if (!m.is_object())
        bad("meta must be an object");
    if (auto it = m.find("midpoint"); it != m.end())
        out.midpoint = expr(*it, "midpoint");
    if (auto it = m.find("letter"); it != m.end()) {
        std::string s = text(*it, "letter");
        if (s.size() != 1)
            bad("letter must be a single character");
        out.letter = s[0];
    }
    if (auto it = m.find("schema"); it != m.end()) {
        TemplateSpec spec;
        spec.schema = text(*it, "schema");
        if (auto p = m.find("params"); p != m.end()) {
            if (!p->is_object())
                bad("params must be an object");
            for (auto& [k, v] : p->items())
                spec.params[k] = text(v, "template parameter");
        }
        if (auto s = m.find("spot_indices"); s != m.end()) {
            if (!s->is_array())
                bad("spot_indices must be an array");
            for (const auto& i : *s) {
                if (!i.is_number_unsigned())
                    bad("spot index must be a nonnegative integer");
                spec.spot_indices.push_back(i.get<unsigned>());
            }
        }
        out.templ = std::move(spec);
    }
    return out;
}

class Writer {
public:
    explicit Writer(const Derivation& root) { count(root); }

    json write(const Derivation& d)
    {
        if (auto it = ids_.find(d.id()); it != ids_.end())
            return json{{"ref", it->second}};
        json node;
        if (refs_[d.id()] > 1) {
            const auto id = ids_.size();
            ids_.emplace(d.id(), id);
            node["id"] = id;
        }
        node["rule"] = std::string(rule_name(d.rule()));
        node["conclusion"] = to_json(d.conclusion());
        json premises = json::array();
        for (const auto& p : d.premises())
            premises.push_back(write(p));
        node["premises"] = std::move(premises);
        node["meta"] = meta_json(d.meta());
        return node;
    }

private:
    void count(const Derivation& root)
    {
        std::vector<Derivation> stack{root};
        while (!stack.empty()) {
            Derivation d = stack.back();
            stack.pop_back();
            if (refs_[d.id()]++ > 0)
                continue;
            for (const auto& p : d.premises())
                stack.push_back(p);
        }
    }

    std::unordered_map<const void*, std::size_t> refs_;
    std::unordered_map<const void*, std::size_t> ids_;
};

class Reader {
public:
    Derivation read(const json& node)
    {
        if (!node.is_object())
            bad("derivation node must be an object");
        if (auto r = node.find("ref"); r != node.end()) {
            if (!r->is_number_unsigned())
                bad("ref must be a nonnegative integer");
            auto it = nodes_.find(r->get<std::size_t>());
            if (it == nodes_.end())
                bad("ref " + r->dump() + " does not name an earlier node");
            return it->second;
        }
        const std::string tag = text(field(node, "rule"), "rule");
        auto rule = rule_from_name(tag);
        if (!rule)
            bad("unknown rule '" + tag + "'");
        Judgement c = judgement_from_json(field(node, "conclusion"));
        std::vector<Derivation> premises;
        if (auto p = node.find("premises"); p != node.end()) {
            if (!p->is_array())
                bad("premises must be an array");
            for (const auto& child : *p)
                premises.push_back(read(child));
        }
        Meta meta;
        if (auto m = node.find("meta"); m != node.end())
            meta = meta_from(*m);
        Derivation d(std::move(c), *rule, std::move(premises), std::move(meta));
        if (auto id = node.find("id"); id != node.end()) {
            if (!id->is_number_unsigned())
                bad("id must be a nonnegative integer");
            if (!nodes_.emplace(id->get<std::size_t>(), d).second)
                bad("duplicate id " + id->dump());
        }
        return d;
    }

private:
    std::unordered_map<std::size_t, Derivation> nodes_;
};

} // namespace

json to_json(const Judgement& j)
{
    return json{{"left", print(j.left)}, {"right", print(j.right)}, {"eps", to_string(j.eps)}};
}

json to_json(const Derivation& d)
{
    Writer w(d);
    return w.write(d);
}

json to_json(const Certificate& cert)
{
    json hyps = json::array();
    for (const auto& h : cert.hypotheses)
        hyps.push_back(to_json(h));
    return json{{"version", kCertificateVersion},
                {"lambda", to_string(cert.lambda)},
                {"hypotheses", std::move(hyps)},
                {"root", to_json(cert.root)}};
}

Judgement judgement_from_json(const json& j)
{
    Judgement out{expr(field(j, "left"), "left"), expr(field(j, "right"), "right"),
                  rational(field(j, "eps"), "eps")};
    if (out.eps < 0)
        bad("eps must be nonnegative");
    return out;
}

Derivation derivation_from_json(const json& node)
{
    Reader r;
    return r.read(node);
}

Certificate certificate_from_json(const json& doc)
{
    if (!doc.is_object())
        bad("certificate must be a JSON object");
    const json& version = field(doc, "version");
    if (!version.is_number_integer() || version.get<int>() != kCertificateVersion)
        bad("unsupported certificate version " + version.dump());
    Rational lambda = rational(field(doc, "lambda"), "lambda");
    if (lambda <= 0 || lambda >= 1)
        bad("lambda must lie strictly between 0 and 1");
    std::vector<Judgement> hyps;
    if (auto h = doc.find("hypotheses"); h != doc.end()) {
        if (!h->is_array())
            bad("hypotheses must be an array");
        for (const auto& j : *h)
            hyps.push_back(judgement_from_json(j));
    }
    return Certificate{std::move(lambda), std::move(hyps), derivation_from_json(field(doc, "root"))};
}

std::string serialize(const Certificate& cert, int indent)
{
    return to_json(cert).dump(indent);
}

Certificate deserialize(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        bad(std::string("invalid JSON: ") + ex.what());
    }
    return certificate_from_json(doc);
}

} // namespace qreg
