// Builds a x + b^2 y, extends it on the b side with Q(T) = T^2, then on the
// a side, and prints each certificate with its transition function.

#include <iostream>

#include "bivar/bivariable.hpp"
#include "bivar/expr.hpp"
#include "bivar/io.hpp"

int main()
{
    using namespace bivar;
    const Ring R(bivariable_vars());
    auto show = [](const char *name, const BivariableCert &c) {
        std::cout << name << "\n  omega = " << c.omega << "\n  f     = " << c.f.f << "\n  alpha has " << c.alpha.size()
                  << " generators, beta has " << c.beta.size() << "\n  check: " << verify_cert(c).status() << "\n";
    };
    const BivariableCert lin = linear_bivariable(1, 2);
    show("linear", lin);
    const BivariableCert eb = extend_b(lin, 1, 2, R.var("x").pow(2));
    show("extended on b", eb);
    const BivariableCert ea = extend_a(eb, 3, 2, R.c(1, 2) * R.var("a") * R.var("x"));
    show("extended on a", ea);
    std::cout << "\n" << to_json(eb).dump(2) << "\n";
}
