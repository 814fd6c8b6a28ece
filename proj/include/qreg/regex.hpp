#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qreg {

/// Constructor tags, declared in the order used by the structural order.
enum class Kind : std::uint8_t { Zero, One, Letter, Seq, Star, Sum };

struct RegexNode;
class CanonicalForm;

/// Immutable regular expression over single-character letters [a-z].
/// Cheap to copy; subtrees are shared.
class Regex {
public:
    /// Defaults to 0.
    Regex();

    static Regex zero();
    static Regex one();
    static Regex letter(char symbol);
    static Regex sum(Regex left, Regex right);
    static Regex seq(Regex left, Regex right);
    static Regex star(Regex body);

    Kind kind() const noexcept;
    char symbol() const noexcept;
    /// Children of Sum and Seq. Star stores its body in left().
    const Regex& left() const noexcept;
    const Regex& right() const noexcept;
    const Regex& body() const noexcept { return left(); }

    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;

    /// True when this tree is already its own ACI-canonical representative.
    bool is_canonical() const noexcept;

    bool is(Kind k) const noexcept { return kind() == k; }

    friend bool operator==(const Regex& a, const Regex& b) noexcept;
    /// Total structural order: tag first, then children left to right.
    friend std::strong_ordering operator<=>(const Regex& a, const Regex& b) noexcept;

private:
    explicit Regex(std::shared_ptr<const RegexNode> node) : node_(std::move(node)) {}
    static Regex make_sum(Regex left, Regex right, bool canonical);

    std::shared_ptr<const RegexNode> node_;

    friend struct RegexNode;
    friend class CanonicalForm;
    friend CanonicalForm canonicalize(const Regex& e);
};

struct RegexHash {
    std::size_t operator()(const Regex& e) const noexcept { return e.hash(); }
};

/// Nonempty ordered set of letters.
class Alphabet {
public:
    /// Builds from the distinct characters of `letters`; each must be in [a-z].
    explicit Alphabet(std::string_view letters);
    /// Every letter in [a-z].
    static Alphabet full();

    const std::string& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool contains(char c) const noexcept;
    std::size_t index_of(char c) const;
    char operator[](std::size_t i) const { return symbols_[i]; }

    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::string symbols_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// expr := term ('+' term)* ; term := factor (';'? factor)* ;
/// factor := atom '*'* ; atom := '0' | '1' | letter | '(' expr ')'.
/// + and ; associate to the left. Whitespace is ignored.
Regex parse(std::string_view text, const Alphabet& alphabet);
/// Parses over the full [a-z] alphabet.
Regex parse(std::string_view text);

/// Minimal parenthesization; `;` always written, ` + ` spaced.
std::string print(const Regex& e);

/// Letters occurring in e.
std::set<char> letters(const Regex& e);

/// Union of the letters of e and f, or {a} when both are letter-free.
Alphabet infer_alphabet(const Regex& e, const Regex& f);
Alphabet infer_alphabet(const std::vector<Regex>& es);

/// Representative of an ACI class: strictly increasing non-Sum summands.
/// The empty list stands for 0.
class CanonicalForm {
public:
    CanonicalForm() = default;

    const std::vector<Regex>& summands() const noexcept { return summands_; }
    /// Right-nested sum of the summands (0 when empty).
    const Regex& embed() const noexcept { return expr_; }
    std::size_t hash() const noexcept { return expr_.hash(); }

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) noexcept
    {
        return a.expr_ == b.expr_;
    }

private:
    std::vector<Regex> summands_;
    Regex expr_;

    friend CanonicalForm canonicalize(const Regex& e);
};

struct CanonicalFormHash {
    std::size_t operator()(const CanonicalForm& c) const noexcept { return c.hash(); }
};

/// Flattens sums, sorts and deduplicates summands, and recurses under ; and *.
CanonicalForm canonicalize(const Regex& e);

/// Summands of the top-level sum tree of e, left to right.
std::vector<Regex> flatten_sum(const Regex& e);
/// Left-nested sum of a nonempty list.
Regex sum_of(const std::vector<Regex>& terms);

} // namespace qreg

template <>
struct std::hash<qreg::Regex> {
    std::size_t operator()(const qreg::Regex& e) const noexcept { return e.hash(); }
};
