#pragma once

#include "qreg/automaton.hpp"
#include "qreg/derivatives.hpp"
#include "qreg/rational.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace qreg {

/// Discount factor holder. lambda must lie strictly between 0 and 1.
class Config {
public:
    Config() : lambda_(1, 2) {}
    explicit Config(Rational lambda);

    const Rational& lambda() const noexcept { return lambda_; }

private:
    Rational lambda_;
};

/// A value in {lambda^n : n >= 0} together with 0, stored as its exponent
/// (0 is the infinite exponent). Comparisons are by value.
class ExponentValue {
public:
    static constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();

    constexpr ExponentValue() noexcept : exponent_(kInfinite) {}

    static constexpr ExponentValue zero() noexcept { return ExponentValue(); }
    static constexpr ExponentValue one() noexcept { return power(0); }
    static constexpr ExponentValue power(std::uint32_t n) noexcept
    {
        ExponentValue v;
        v.exponent_ = n;
        return v;
    }

    constexpr bool is_zero() const noexcept { return exponent_ == kInfinite; }
    /// Only meaningful when !is_zero().
    constexpr std::uint32_t exponent() const noexcept { return exponent_; }

    /// lambda * value.
    constexpr ExponentValue discounted() const noexcept
    {
        return is_zero() ? *this : power(exponent_ + 1);
    }

    Rational value(const Config& cfg) const;

    friend constexpr bool operator==(ExponentValue, ExponentValue) noexcept = default;
    friend constexpr std::strong_ordering operator<=>(ExponentValue a, ExponentValue b) noexcept
    {
        return b.exponent_ <=> a.exponent_;
    }

private:
    std::uint32_t exponent_;
};

inline constexpr ExponentValue max(ExponentValue a, ExponentValue b) noexcept
{
    return a < b ? b : a;
}

/// Symmetric table over unordered state pairs with an implicit diagonal.
template <class T>
class PairTable {
public:
    PairTable() = default;
    PairTable(std::size_t n, T fill, T diagonal)
        : n_(n), entries_(n * (n ? n - 1 : 0) / 2, fill), diagonal_(diagonal)
    {
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t num_pairs() const noexcept { return entries_.size(); }

    const T& get(std::size_t s, std::size_t t) const { return s == t ? diagonal_ : entries_[index(s, t)]; }
    void set(std::size_t s, std::size_t t, T v) { entries_[index(s, t)] = std::move(v); }

    const std::vector<T>& entries() const noexcept { return entries_; }

    friend bool operator==(const PairTable&, const PairTable&) = default;

    static std::size_t index(std::size_t s, std::size_t t)
    {
        if (s > t)
            std::swap(s, t);
        return t * (t - 1) / 2 + s;
    }

private:
    std::size_t n_ = 0;
    std::vector<T> entries_;
    T diagonal_{};
};

using MetricTable = PairTable<ExponentValue>;
/// General 1-bounded tables with exact rational entries.
using RationalTable = PairTable<Rational>;

/// Discrete metric: every off-diagonal pair at distance 1.
MetricTable top(std::size_t n);
RationalTable zero_table(std::size_t n);

/// One application of the lifting operator. The exponent encoding does not
/// depend on lambda.
MetricTable phi(const Dfa& dfa, const MetricTable& d);
RationalTable phi(const Dfa& dfa, const RationalTable& d, const Config& cfg);

RationalTable to_rational(const MetricTable& d, const Config& cfg);
Rational sup_distance(const RationalTable& a, const RationalTable& b);
/// Pointwise a <= b.
bool below(const RationalTable& a, const RationalTable& b);
bool below(const MetricTable& a, const MetricTable& b);
bool satisfies_triangle(const RationalTable& d);

struct Descent {
    MetricTable fixpoint;
    /// Phi^i(top) for i = 0 .. iterations.
    std::vector<MetricTable> trace;
    std::size_t iterations = 0;
};

/// Iterates phi from top. Stops when the table is stable, when no pair sits
/// at the previous iteration's exponent, or after as many steps as there are
/// off-diagonal pairs; pairs still at the current exponent are then at
/// distance 0.
Descent kleene_descent(const Dfa& dfa, bool keep_trace = true);
Descent kleene_descent(const QuotientAutomaton& aut, bool keep_trace = true);

/// Least fixpoint by iterating phi from the all-zero table.
MetricTable ascend_from_bottom(const Dfa& dfa);

/// Shortest, then lexicographically least, word on which s and t disagree.
std::optional<Word> distinguishing_word(const QuotientAutomaton& aut, StateId s, StateId t);

struct DistanceResult {
    ExponentValue value;
    Rational rational;
    std::optional<Word> witness;
    std::size_t states = 0;
    /// Pairs reachable from the root pair, diagonal included.
    std::size_t product_pairs = 0;
    std::size_t iterations = 0;
};

DistanceResult distance(const Regex& e, const Regex& f, const Alphabet& alphabet, const Config& cfg);
/// Alphabet inferred from e and f.
DistanceResult distance(const Regex& e, const Regex& f, const Config& cfg);

std::optional<Word> witness(const Regex& e, const Regex& f, const Config& cfg);

} // namespace qreg
