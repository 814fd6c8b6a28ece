#include "qreg/oracle.hpp"

#include <deque>
#include <unordered_set>
#include <vector>

namespace qreg {

namespace {

std::set<Word> concat(const std::set<Word>& a, const std::set<Word>& b, std::size_t max_len)
{
    std::set<Word> out;
    for (const auto& x : a)
        for (const auto& y : b)
            if (x.size() + y.size() <= max_len)
                out.insert(x + y);
    return out;
}

std::set<Word> eval(const Regex& e, std::size_t max_len)
{
    switch (e.kind()) {
    case Kind::Zero:
        return {};
    case Kind::One:
        return {Word()};
    case Kind::Letter:
        if (max_len == 0)
            return {};
        return {Word(1, e.symbol())};
    case Kind::Sum: {
        std::set<Word> out = eval(e.left(), max_len);
        out.merge(eval(e.right(), max_len));
        return out;
    }
    case Kind::Seq:
        return concat(eval(e.left(), max_len), eval(e.right(), max_len), max_len);
    case Kind::Star: {
        const std::set<Word> body = eval(e.body(), max_len);
        std::set<Word> out{Word()};
        std::set<Word> frontier = out;
        while (!frontier.empty()) {
            std::set<Word> next;
            for (const auto& w : concat(body, frontier, max_len))
                if (out.insert(w).second)
                    next.insert(w);
            frontier = std::move(next);
        }
        return out;
    }
    }
    return {};
}

// Position (Glushkov) automaton. Position 0 is the start state.
class PositionAutomaton {
public:
    explicit PositionAutomaton(const Regex& e)
    {
        letters_.push_back(0);
        Info info = analyse(e);
        nullable_ = info.nullable;
        first_ = info.first;
        last_.assign(letters_.size(), false);
        for (auto p : info.last)
            last_[p] = true;
        follow_.resize(letters_.size());
        for (auto& [p, q] : edges_)
            follow_[p].push_back(q);
    }

    using State = std::vector<bool>;

    State start() const
    {
        State s(letters_.size(), false);
        s[0] = true;
        return s;
    }

    bool accepting(const State& s) const
    {
        if (s[0] && nullable_)
            return true;
        for (std::size_t p = 1; p < s.size(); ++p)
            if (s[p] && last_[p])
                return true;
        return false;
    }

    State next(const State& s, char a) const
    {
        State out(letters_.size(), false);
        if (s[0])
            for (auto q : first_)
                if (letters_[q] == a)
                    out[q] = true;
        for (std::size_t p = 1; p < s.size(); ++p)
            if (s[p])
                for (auto q : follow_[p])
                    if (letters_[q] == a)
                        out[q] = true;
        return out;
    }

private:
    struct Info {
        bool nullable;
        std::vector<std::size_t> first;
        std::vector<std::size_t> last;
    };

    void connect(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to)
    {
        for (auto p : from)
            for (auto q : to)
                edges_.emplace_back(p, q);
    }

    static std::vector<std::size_t> join(std::vector<std::size_t> a, const std::vector<std::size_t>& b)
    {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    Info analyse(const Regex& e)
    {
        switch (e.kind()) {
        case Kind::Zero:
            return {false, {}, {}};
        case Kind::One:
            return {true, {}, {}};
        case Kind::Letter: {
            std::size_t p = letters_.size();
            letters_.push_back(e.symbol());
            return {false, {p}, {p}};
        }
        case Kind::Sum: {
            Info l = analyse(e.left());
            Info r = analyse(e.right());
            return {l.nullable || r.nullable, join(l.first, r.first), join(l.last, r.last)};
        }
        case Kind::Seq: {
            Info l = analyse(e.left());
            Info r = analyse(e.right());
            connect(l.last, r.first);
            return {l.nullable && r.nullable, l.nullable ? join(l.first, r.first) : l.first,
                    r.nullable ? join(l.last, r.last) : r.last};
        }
        case Kind::Star: {
            Info b = analyse(e.body());
            connect(b.last, b.first);
            return {true, b.first, b.last};
        }
        }
        return {false, {}, {}};
    }

    std::vector<char> letters_;
    bool nullable_ = false;
    std::vector<std::size_t> first_;
    std::vector<bool> last_;
    std::vector<std::vector<std::size_t>> follow_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

struct StatePairHash {
    std::size_t operator()(const std::pair<std::vector<bool>, std::vector<bool>>& p) const noexcept
    {
        std::hash<std::vector<bool>> h;
        return h(p.first) * 31 + h(p.second);
    }
};

} // namespace

LanguageSlice denote(const Regex& e, std::size_t max_len)
{
    return LanguageSlice{max_len, eval(e, max_len)};
}

bool accepts(const Regex& e, std::string_view word)
{
    PositionAutomaton nfa(e);
    auto s = nfa.start();
    for (char a : word)
        s = nfa.next(s, a);
    return nfa.accepting(s);
}

std::optional<Word> brute_witness(const Regex& e, const Regex& f, std::size_t max_len)
{
    const Alphabet alphabet = infer_alphabet(e, f);
    const PositionAutomaton ne(e);
    const PositionAutomaton nf(f);

    struct Item {
        Word word;
        PositionAutomaton::State se;
        PositionAutomaton::State sf;
    };
    std::deque<Item> queue{{Word(), ne.start(), nf.start()}};
    // A word whose pair of state sets was already reached by an earlier word
    // has the same future; its extensions come later in the order.
    std::unordered_set<std::pair<std::vector<bool>, std::vector<bool>>, StatePairHash> seen{
        {queue.front().se, queue.front().sf}};
    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();
        if (ne.accepting(item.se) != nf.accepting(item.sf))
            return item.word;
        if (item.word.size() == max_len)
            continue;
        for (char a : alphabet) {
            auto se = ne.next(item.se, a);
            auto sf = nf.next(item.sf, a);
            if (seen.emplace(se, sf).second)
                queue.push_back({item.word + a, std::move(se), std::move(sf)});
        }
    }
    return std::nullopt;
}

Rational brute_distance(const Regex& e, const Regex& f, std::size_t max_len, const Config& cfg)
{
    auto w = brute_witness(e, f, max_len);
    return w ? power(cfg.lambda(), static_cast<unsigned>(w->size())) : Rational(0);
}

Rational brute_distance_naive(const Regex& e, const Regex& f, std::size_t max_len, const Config& cfg)
{
    const auto a = eval(e, max_len);
    const auto b = eval(f, max_len);
    std::optional<Word> best;
    auto consider = [&best](const Word& w) {
        if (!best || w.size() < best->size() || (w.size() == best->size() && w < *best))
            best = w;
    };
    for (const auto& w : a)
        if (!b.contains(w))
            consider(w);
    for (const auto& w : b)
        if (!a.contains(w))
            consider(w);
    return best ? power(cfg.lambda(), static_cast<unsigned>(best->size())) : Rational(0);
}

} // namespace qreg
