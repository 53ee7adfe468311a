// Transition functions of v = y + x^n (x z + y (y u + P(z))) for a few P and n,
// with the minimal denominators and the classifier's verdict.

#include <iostream>

#include "bivar/bundles.hpp"
#include "bivar/expr.hpp"
#include "bivar/venereau.hpp"

int main()
{
    using namespace bivar;
    const Vars z = Vars::of({"z"});
    for (const char *p : {"z^2", "z^2 + z", "z^3 + 2*z"}) {
        for (int n = 1; n <= 3; ++n) {
            const FibrationSpec spec(parse(p, z), n);
            const int m = smallest_m(spec);
            const TransitionFunction f = transition_function(spec, m);
            std::cout << "P = " << p << ", n = " << n << ", m = " << m << "\n"
                      << "  f = " << f.f << "\n"
                      << "  denominator a^" << f.m_min << " b^" << f.n_min << ", " << classify(f).str() << "\n";
        }
    }
}
