#pragma once

#include <cstdint>

namespace lightcone {

enum class Atom : std::uint8_t { A = 0, B = 1 };

inline char atom_name(Atom atom) { return atom == Atom::A ? 'A' : 'B'; }
inline Atom other(Atom atom) { return atom == Atom::A ? Atom::B : Atom::A; }

}  // namespace lightcone
