#pragma once

#include "qreg/proof.hpp"

namespace qreg::testing {

// Seven-step derivation of a* ==_{1/4} a + 1 at lambda = 1/2, written out
// by hand with the primitive rules.
inline Derivation hand_built_example()
{
    const Regex a = Regex::letter('a');
    const Regex as = Regex::star(a);
    const Regex one = Regex::one();
    const Rational half(1, 2);
    const Rational quarter(1, 4);

    Derivation s1_top = top(as, Regex::zero());
    Derivation s2_pref = npref('a', s1_top, half);
    Derivation s3_sum = sl5(s2_pref, refl(one));
    // a;0 + 1 ==_0 0 + 1 ==_0 1 + 0 ==_0 1
    Derivation s4 = chain({unroll(a), s3_sum, nexp_sum(s0(a), refl(one)), sl2(Regex::zero(), one), sl4(one)});
    Derivation s5_pref = npref('a', s4, quarter);
    Derivation s6_sum = sl5(s5_pref, refl(one));
    return chain({unroll(a), s6_sum, nexp_sum(s1(a), refl(one))});
}

} // namespace qreg::testing
