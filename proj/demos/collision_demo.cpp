// Builds a few collisions, hides their parameters behind a shift, recovers
// them, and prints the predicted spectrum for degree 9 over F_9.

#include <iostream>

#include "eqc/eqc.hpp"

using namespace eqc;

int main()
{
  const FieldPtr F9 = Field::create(3, 2);

  // An S collision with the largest possible #T.
  for (code_t i = 2; i < 2 * F9->order(); ++i) {
    const SimplyParams sp{F9, F9->elem(i / 2), F9->one(), static_cast<unsigned>(i % 2), 2, 3};
    if (root_set_T(sp).size() != 4)
      continue;
    const FieldElem w = F9->elem(5);
    const Collision c = shift_collision(decompositions_S(sp), w);
    std::cout << "f = " << to_string(c.f().poly()) << " over " << F9->to_string() << '\n';
    for (const auto& d : c.decompositions())
      std::cout << "  " << to_string(d.g.poly()) << " o " << to_string(d.h.poly()) << '\n';
    std::cout << "  classify: " << to_string(classify(c.f())) << "\n\n";
    break;
  }

  // An M collision over F_5.
  const FieldPtr F5 = Field::create(5, 1);
  const MConstruction m = build_M({F5, F5->elem(2), F5->one(), 2, 5});
  const MonicOriginal f = original_shift(m.f, F5->elem(3));
  std::cout << "f = " << to_string(f.poly()) << " over " << F5->to_string() << '\n';
  const DecompositionListing listing = enumerate_decompositions(f);
  for (const auto& d : listing.collision.decompositions())
    std::cout << "  " << to_string(d.g.poly()) << " o " << to_string(d.h.poly()) << '\n';
  std::cout << "  classify: " << to_string(classify(f)) << "\n\n";

  const Spectrum s = spectrum(3, 9);
  std::cout << "degree 9 over F_9:";
  for (const auto& [k, v] : s.c)
    std::cout << " c" << k << '=' << v;
  std::cout << " #D=" << s.d_total << " nu=" << to_string(nu(3, 9)) << '\n';
}
