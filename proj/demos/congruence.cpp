// Searches for Q with g(x + a Q(f)) = f mod a^3 and prints the witnesses.

#include <iostream>

#include "bivar/bundles.hpp"
#include "bivar/expr.hpp"

int main()
{
    using namespace bivar;
    const Ring T(transition_vars());
    const Poly a3 = T.var("a").pow(3);
    const Poly f = a3 * parse("x*a^-1*b^-2 - x^2*a^-3*b^-1", T);
    const Poly g = a3 * parse("x*a^-1*b^-2 - x^2*a^-3*b^-1 - x^3*a^-2*b^-2 - 5/4*x^4*a^-1*b^-3", T);
    std::vector<FieldElem> pool;
    for (const mpq_class &q : {mpq_class(0), mpq_class(1, 2), mpq_class(-1, 2), mpq_class(1), mpq_class(-1)}) {
        pool.emplace_back(T.field, q);
    }
    const Prop45Search s = prop45_search(f, g, 3, 1, pool);
    std::cout << s.candidates << " candidates, survivors by stage:";
    for (auto n : s.survivors) {
        std::cout << " " << n;
    }
    std::cout << "\n";
    if (!s.Q) {
        std::cout << "no Q in the pool\n";
        return 1;
    }
    const VerificationReport r = prop45_check(f, g, 3, *s.Q);
    std::cout << "Q = " << *s.Q << ": " << r.status() << "\n";
    for (const auto &[k, v] : r.witness) {
        std::cout << "  " << k << " = " << v << "\n";
    }
}
