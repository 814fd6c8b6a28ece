#include "qreg/regex.hpp"

#include <algorithm>
#include <cctype>

namespace qreg {

struct RegexNode {
    Kind kind;
    char symbol;
    Regex left;
    Regex right;
    std::size_t hash;
    std::size_t size;
    bool canonical;

    static Regex null() { return Regex(std::shared_ptr<const RegexNode>{}); }

    static Regex make(Kind kind, char symbol, Regex left, Regex right, bool canonical)
    {
        std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL + static_cast<unsigned char>(symbol);
        std::size_t size = 1;
        if (left.node_) {
            h ^= left.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            size += left.size();
        }
        if (right.node_) {
            h ^= right.hash() + 0x517cc1b727220a95ULL + (h << 7) + (h >> 3);
            size += right.size();
        }
        return Regex(std::make_shared<const RegexNode>(
            RegexNode{kind, symbol, std::move(left), std::move(right), h, size, canonical}));
    }
};

Regex::Regex() : Regex(zero()) {}

Regex Regex::zero()
{
    static const Regex z = RegexNode::make(Kind::Zero, 0, RegexNode::null(), RegexNode::null(), true);
    return z;
}

Regex Regex::one()
{
    static const Regex o = RegexNode::make(Kind::One, 0, RegexNode::null(), RegexNode::null(), true);
    return o;
}

Regex Regex::letter(char symbol)
{
    if (symbol < 'a' || symbol > 'z')
        throw std::invalid_argument(std::string("letter outside [a-z]: '") + symbol + "'");
    return RegexNode::make(Kind::Letter, symbol, RegexNode::null(), RegexNode::null(), true);
}

Regex Regex::sum(Regex left, Regex right)
{
    return make_sum(std::move(left), std::move(right), false);
}

Regex Regex::make_sum(Regex left, Regex right, bool canonical)
{
    return RegexNode::make(Kind::Sum, 0, std::move(left), std::move(right), canonical);
}

Regex Regex::seq(Regex left, Regex right)
{
    const bool canonical = left.is_canonical() && right.is_canonical();
    return RegexNode::make(Kind::Seq, 0, std::move(left), std::move(right), canonical);
}

Regex Regex::star(Regex body)
{
    const bool canonical = body.is_canonical();
    return RegexNode::make(Kind::Star, 0, std::move(body), RegexNode::null(), canonical);
}

Kind Regex::kind() const noexcept { return node_->kind; }
char Regex::symbol() const noexcept { return node_->symbol; }
const Regex& Regex::left() const noexcept { return node_->left; }
const Regex& Regex::right() const noexcept { return node_->right; }
std::size_t Regex::size() const noexcept { return node_->size; }
std::size_t Regex::hash() const noexcept { return node_->hash; }
bool Regex::is_canonical() const noexcept { return node_->canonical; }

std::strong_ordering operator<=>(const Regex& a, const Regex& b) noexcept
{
    if (a.node_ == b.node_)
        return std::strong_ordering::equal;
    if (a.kind() != b.kind())
        return a.kind() <=> b.kind();
    switch (a.kind()) {
    case Kind::Zero:
    case Kind::One:
        return std::strong_ordering::equal;
    case Kind::Letter:
        return a.symbol() <=> b.symbol();
    case Kind::Star:
        return a.body() <=> b.body();
    case Kind::Seq:
    case Kind::Sum:
        if (auto c = a.left() <=> b.left(); c != 0)
            return c;
        return a.right() <=> b.right();
    }
    return std::strong_ordering::equal;
}

bool operator==(const Regex& a, const Regex& b) noexcept
{
    if (a.node_ == b.node_)
        return true;
    if (a.hash() != b.hash() || a.size() != b.size())
        return false;
    return (a <=> b) == 0;
}

// Alphabet

Alphabet::Alphabet(std::string_view letters)
{
    for (char c : letters) {
        if (c < 'a' || c > 'z')
            throw std::invalid_argument(std::string("alphabet letters must be in [a-z], got '") + c + "'");
        symbols_.push_back(c);
    }
    std::sort(symbols_.begin(), symbols_.end());
    symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
    if (symbols_.empty())
        throw std::invalid_argument("alphabet must be nonempty");
}

Alphabet Alphabet::full()
{
    return Alphabet("abcdefghijklmnopqrstuvwxyz");
}

bool Alphabet::contains(char c) const noexcept
{
    return std::binary_search(symbols_.begin(), symbols_.end(), c);
}

std::size_t Alphabet::index_of(char c) const
{
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), c);
    if (it == symbols_.end() || *it != c)
        throw std::out_of_range(std::string("letter not in alphabet: '") + c + "'");
    return static_cast<std::size_t>(it - symbols_.begin());
}

// Parsing

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message)
    , position_(position)
{
}

namespace {

class Parser {
public:
    Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    Regex run()
    {
        skip_ws();
        if (at_end())
            throw ParseError("empty expression", pos_);
        Regex e = expr();
        skip_ws();
        if (!at_end())
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_ws();
        return at_end() ? '\0' : text_[pos_];
    }

    static bool starts_atom(char c) { return c == '0' || c == '1' || c == '(' || (c >= 'a' && c <= 'z'); }

    Regex expr()
    {
        Regex e = term();
        while (peek() == '+') {
            ++pos_;
            e = Regex::sum(std::move(e), term());
        }
        return e;
    }

    Regex term()
    {
        Regex e = factor();
        for (;;) {
            char c = peek();
            if (c == ';') {
                ++pos_;
                e = Regex::seq(std::move(e), factor());
            } else if (starts_atom(c)) {
                e = Regex::seq(std::move(e), factor());
            } else {
                return e;
            }
        }
    }

    Regex factor()
    {
        Regex e = atom();
        while (peek() == '*') {
            ++pos_;
            e = Regex::star(std::move(e));
        }
        return e;
    }

    Regex atom()
    {
        char c = peek();
        const std::size_t at = pos_;
        if (at_end())
            throw ParseError("unexpected end of input", at);
        if (c == '0') {
            ++pos_;
            return Regex::zero();
        }
        if (c == '1') {
            ++pos_;
            return Regex::one();
        }
        if (c == '(') {
            ++pos_;
            Regex e = expr();
            if (peek() != ')')
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (c >= 'a' && c <= 'z') {
            if (!alphabet_.contains(c))
                throw ParseError(std::string("letter '") + c + "' is not in the alphabet", at);
            ++pos_;
            return Regex::letter(c);
        }
        throw ParseError(std::string("unexpected '") + c + "'", at);
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

void print_to(const Regex& e, std::string& out)
{
    auto wrapped = [&out](const Regex& sub, bool parens) {
        if (parens)
            out.push_back('(');
        print_to(sub, out);
        if (parens)
            out.push_back(')');
    };
    switch (e.kind()) {
    case Kind::Zero:
        out.push_back('0');
        break;
    case Kind::One:
        out.push_back('1');
        break;
    case Kind::Letter:
        out.push_back(e.symbol());
        break;
    case Kind::Sum:
        print_to(e.left(), out);
        out += " + ";
        wrapped(e.right(), e.right().is(Kind::Sum));
        break;
    case Kind::Seq:
        wrapped(e.left(), e.left().is(Kind::Sum));
        out.push_back(';');
        wrapped(e.right(), e.right().is(Kind::Sum) || e.right().is(Kind::Seq));
        break;
    case Kind::Star:
        wrapped(e.body(), e.body().is(Kind::Sum) || e.body().is(Kind::Seq));
        out.push_back('*');
        break;
    }
}

void collect_letters(const Regex& e, std::set<char>& out)
{
    switch (e.kind()) {
    case Kind::Letter:
        out.insert(e.symbol());
        break;
    case Kind::Sum:
    case Kind::Seq:
        collect_letters(e.left(), out);
        collect_letters(e.right(), out);
        break;
    case Kind::Star:
        collect_letters(e.body(), out);
        break;
    default:
        break;
    }
}

void flatten_into(const Regex& e, std::vector<Regex>& out)
{
    if (e.is(Kind::Sum)) {
        flatten_into(e.left(), out);
        flatten_into(e.right(), out);
    } else {
        out.push_back(e);
    }
}

Regex canonical_summand(const Regex& s)
{
    if (s.is_canonical())
        return s;
    switch (s.kind()) {
    case Kind::Seq:
        return Regex::seq(canonicalize(s.left()).embed(), canonicalize(s.right()).embed());
    case Kind::Star:
        return Regex::star(canonicalize(s.body()).embed());
    default:
        return s;
    }
}

} // namespace

Regex parse(std::string_view text, const Alphabet& alphabet)
{
    return Parser(text, alphabet).run();
}

Regex parse(std::string_view text)
{
    static const Alphabet all = Alphabet::full();
    return parse(text, all);
}

std::string print(const Regex& e)
{
    std::string out;
    print_to(e, out);
    return out;
}

std::set<char> letters(const Regex& e)
{
    std::set<char> out;
    collect_letters(e, out);
    return out;
}

Alphabet infer_alphabet(const std::vector<Regex>& es)
{
    std::set<char> all;
    for (const auto& e : es)
        collect_letters(e, all);
    if (all.empty())
        return Alphabet("a");
    return Alphabet(std::string(all.begin(), all.end()));
}

Alphabet infer_alphabet(const Regex& e, const Regex& f)
{
    return infer_alphabet(std::vector<Regex>{e, f});
}

std::vector<Regex> flatten_sum(const Regex& e)
{
    std::vector<Regex> out;
    flatten_into(e, out);
    return out;
}

Regex sum_of(const std::vector<Regex>& terms)
{
    if (terms.empty())
        throw std::invalid_argument("sum_of: empty term list");
    Regex acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i)
        acc = Regex::sum(acc, terms[i]);
    return acc;
}

CanonicalForm canonicalize(const Regex& e)
{
    CanonicalForm out;
    if (e.is_canonical()) {
        if (!e.is(Kind::Zero))
            out.summands_ = flatten_sum(e);
        out.expr_ = e;
        return out;
    }

    std::vector<Regex> terms;
    flatten_into(e, terms);
    for (auto& t : terms)
        t = canonical_summand(t);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.size() == 1 && terms.front().is(Kind::Zero))
        terms.clear();

    Regex expr = Regex::zero();
    if (!terms.empty()) {
        expr = terms.back();
        for (std::size_t i = terms.size() - 1; i-- > 0;)
            expr = Regex::make_sum(terms[i], expr, true);
    }
    out.summands_ = std::move(terms);
    out.expr_ = std::move(expr);
    return out;
}

} // namespace qreg
