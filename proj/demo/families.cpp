// Walks through the three presets: P and Q at weight 3, the vertex-operator
// product Phi_2 Phi_1 1, sigma(z, w) to order 3 and R(h (x) h).

#include <iostream>

#include "symqva/bicharacter/braiding.hpp"
#include "symqva/orthopoly.hpp"
#include "symqva/vertexop.hpp"

using namespace symqva;

int main() {
  for (const VFamily& v : {VFamily::schur(), VFamily::hall_littlewood(), VFamily::macdonald()}) {
    std::cout << "== " << v.name() << "  (v_1 = " << v.v(1).to_string() << ")\n";
    const auto fam = cached_family(v, 3);
    for (const auto& [lam, P] : fam->P) {
      std::cout << "P" << lam << " =";
      for (const auto& [mu, c] : to_monomial_basis(P)) std::cout << "  [" << c.to_string() << "]m" << mu;
      std::cout << '\n';
    }
    std::cout << "Phi_2 Phi_1 1 = " << FockOperators(v).phi_product({2, 1}) << '\n';
    std::cout << "Q(2,1)        = " << fam->Q.at({2, 1}) << '\n';

    const Bicharacter bc(v, 3);
    std::cout << "sigma(z,w) = " << bc.sigma().to_string() << '\n';
    for (const auto& [key, k] : Braiding(bc).apply(VMono::hn(1), VMono::hn(1)))
      std::cout << "R(h (x) h) contains " << key.first << " (x) " << key.second << " * " << k.to_string() << '\n';
    std::cout << '\n';
  }
}
