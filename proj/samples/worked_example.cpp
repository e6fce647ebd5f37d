// Walks through P(1,1,3,m): local analysis, certificates for m = 17 and 29,
// and the first excluded values of P(1,1,3,17).

#include <iostream>

#include "polyau/polyau.hpp"

int main()
{
    using namespace polyau;

    for (std::int64_t m : {16, 17, 29}) {
        const FormParams form(1, 1, 3, m);
        const AUCertificate cert = certify(form);
        std::cout << form.to_string() << ": " << to_string(cert.verdict) << "  u=" << cert.u << " s=" << cert.s;
        for (const auto& t : cert.candidates) {
            std::cout << "  t=" << t.t << (t.witness ? " solvable" : " unsolvable");
        }
        std::cout << '\n';
        for (const auto& r : cert.local) {
            if (r.obstruction) {
                std::cout << "  p=" << r.prime << " misses " << r.obstruction->residue << " mod " << r.obstruction->modulus
                          << '\n';
            }
        }
    }

    std::cout << "\nexcluded n for P(1,1,3,17):\n";
    for (std::int64_t l : admissible_ells(0, 100)) {
        const auto rec = witness_record(0, l);
        std::cout << "  l=" << rec->ell << " n=" << rec->n << (rec->verified ? " (sieve confirms)" : " (NOT confirmed)")
                  << '\n';
    }

    std::cout << "\nr_<1,1,3>(5*19^2) = " << count_representations(DiagonalForm(1, 1, 3), 5 * 19 * 19)
              << ", 16 H(15*19^2) = " << 16 * hurwitz_H15(19) << '\n';
    std::cout << "genus coefficient at 5*19^2: " << eisenstein_coefficient_5ell2(19).to_string() << '\n';
    return 0;
}
