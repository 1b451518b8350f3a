#include "parrondo/rational.hpp"
#include "parrondo/solver.hpp"

namespace parrondo {

// Equilibrium mean profits of the four-player games as explicit rational
// functions of (p0, p1, p2): exact and count-approximated values for game B
// and for the mixture C' at gamma = 1/2. Integer coefficients throughout, so
// the same code serves floating-point and exact-rational evaluation.
template <class S>
S mu_closed_form_N4(const basic_game_params<S>& gp, closed_form_kind which) {
    if (gp.n != 4)
        throw std::invalid_argument("closed-form profits are specific to 4 players");
    if ((which == closed_form_kind::Cprime_exact || which == closed_form_kind::Cprime_approx) &&
        gp.gamma != S(1) / S(2))
        throw std::invalid_argument("the C' closed forms assume gamma = 1/2");

    const S& a = gp.p0;
    const S& b = gp.p1;
    const S& c = gp.p2;
    const S a2 = a * a, b2 = b * b, c2 = c * c;

    S num(0), den(0);
    switch (which) {
        case closed_form_kind::B_exact:
            num = -(S(3) - S(2) * c - S(3) * a2 + S(2) * a * c - c2 + S(2) * a2 * c -
                    S(2) * a * c2) +
                  S(4) * (S(1) + a) * (S(1) - a + c) * (S(1) - c) * b -
                  S(2) * (S(1) - a + c) * (S(1) - a - c) * b2;
            den = S(3) + S(6) * a - S(2) * c - S(3) * a2 - S(2) * a * c - c2 + S(12) * a2 * c -
                  S(4) * a * c2 - S(8) * a2 * c2 -
                  S(4) * (S(1) - a + c + S(2) * a2 + S(2) * a * c) * (S(1) - c) * b +
                  S(2) * (S(1) + S(4) * a - a2 - S(2) * a * c - c2) * b2;
            break;
        case closed_form_kind::B_approx:
            num = -(S(9) + S(6) * a - S(12) * c - S(3) * a2 - S(8) * a * c + S(3) * c2 +
                    S(2) * a2 * c + S(2) * a * c2) +
                  S(2) * (S(6) + S(5) * a - S(7) * c + a2 - S(4) * a * c + c2) * b -
                  S(4) * (S(1) - a - c) * b2;
            den = S(9) + S(24) * a - S(12) * c + S(9) * a2 - S(32) * a * c + S(3) * c2 -
                  S(8) * a2 * c + S(8) * a * c2 -
                  S(2) * (S(6) - a - S(7) * c - a2 + c2) * b + S(4) * (S(1) + a - c) * b2;
            break;
        case closed_form_kind::Cprime_exact:
            num = -S(3) * (S(105) - S(35) * a - S(65) * c - S(22) * a2 + S(8) * a * c +
                           S(2) * c2 + S(6) * a2 * c - S(2) * a * c2) +
                  S(6) *
                      (S(55) + S(2) * a - S(4) * c - S(9) * a2 + S(12) * a * c - S(9) * c2 +
                       S(4) * a2 * c - S(4) * a * c2) *
                      b -
                  S(12) * (S(2) - a + c) * (S(1) - a - c) * b2;
            den = S(2) * (S(315) + S(175) * a - S(125) * c - S(22) * a2 - S(10) * a * c -
                          S(12) * c2 + S(48) * a2 * c - S(32) * a * c2 - S(16) * a2 * c2) -
                  S(4) *
                      (S(25) - S(2) * a + S(8) * c + S(17) * a2 + S(12) * a * c - S(13) * c2 -
                       S(8) * a2 * c - S(8) * a * c2) *
                      b +
                  S(8) * (S(14) + S(7) * a - S(3) * c - a2 - S(2) * a * c - c2) * b2;
            break;
        case closed_form_kind::Cprime_approx:
            num = -S(3) * (S(56) - a - S(45) * c - S(7) * a2 - S(8) * a * c + S(7) * c2 +
                           S(2) * a2 * c + S(2) * a * c2) +
                  S(6) * (S(33) + S(14) * a - S(16) * c + a2 - S(4) * a * c + c2) * b -
                  S(12) * (S(1) - a - c) * b2;
            den = S(2) * (S(168) + S(137) * a - S(107) * c + S(19) * a2 - S(80) * a * c +
                          S(13) * c2 - S(8) * a2 * c + S(8) * a * c2) -
                  S(4) * (S(15) - S(6) * a - S(12) * c - a2 + c2) * b +
                  S(8) * (S(3) + a - c) * b2;
            break;
    }
    if (den == S(0))
        throw numerical_failure_error("degenerate parameters: closed-form denominator is zero");
    return num / den;
}

template double mu_closed_form_N4<double>(const basic_game_params<double>&, closed_form_kind);
template rational mu_closed_form_N4<rational>(const basic_game_params<rational>&,
                                              closed_form_kind);

}  // namespace parrondo
