#include "qreg/derivatives.hpp"

#include <vector>

namespace qreg {

bool output(const Regex& e)
{
    switch (e.kind()) {
    case Kind::Zero:
    case Kind::Letter:
        return false;
    case Kind::One:
    case Kind::Star:
        return true;
    case Kind::Sum:
        return output(e.left()) || output(e.right());
    case Kind::Seq:
        return output(e.left()) && output(e.right());
    }
    return false;
}

Regex bit(bool b)
{
    return b ? Regex::one() : Regex::zero();
}

Regex step(const Regex& e, char a)
{
    switch (e.kind()) {
    case Kind::Zero:
    case Kind::One:
        return Regex::zero();
    case Kind::Letter:
        return e.symbol() == a ? Regex::one() : Regex::zero();
    case Kind::Sum:
        return Regex::sum(step(e.left(), a), step(e.right(), a));
    case Kind::Seq: {
        Regex head = Regex::seq(step(e.left(), a), e.right());
        if (!output(e.left()))
            return head;
        return Regex::sum(std::move(head), step(e.right(), a));
    }
    case Kind::Star:
        return Regex::seq(step(e.body(), a), e);
    }
    return Regex::zero();
}

Regex word_derivative(const Regex& e, std::string_view w)
{
    Regex cur = e;
    for (char a : w)
        cur = step(cur, a);
    return cur;
}

bool member(const Regex& e, std::string_view w)
{
    return output(word_derivative(e, w));
}

Regex fundamental_decomposition(const Regex& e, const Alphabet& alphabet)
{
    std::vector<Regex> terms;
    terms.reserve(alphabet.size() + 1);
    for (char a : alphabet)
        terms.push_back(Regex::seq(Regex::letter(a), step(e, a)));
    terms.push_back(bit(output(e)));
    return sum_of(terms);
}

} // namespace qreg
