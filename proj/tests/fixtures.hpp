#pragma once

#include <string_view>

#include "cpz/cpz.hpp"
#include "cpz/report.hpp"

namespace fixtures {

/// b -> f, p -> !f, p -> b over atoms b p f.
inline cpz::DefaultDatabase penguin() {
  return cpz::parse_database("atoms: b p f\nbf: b -> f\npnf: p -> !f\npb: p -> b\n");
}

/// Penguin database plus b -> w.
inline cpz::DefaultDatabase winged_penguin() {
  return cpz::parse_database("atoms: b p f w\nbf: b -> f\npnf: p -> !f\npb: p -> b\nbw: b -> w\n");
}

/// Penguin database plus true -> w with strength 1.
inline cpz::DefaultDatabase winged_creatures() {
  return cpz::parse_database("atoms: b p f w\nbf: b -> f\npnf: p -> !f\npb: p -> b\nw1: true -> w [1]\n");
}

/// b -> f, b -> l over atoms b f l.
inline cpz::DefaultDatabase birds_legs() { return cpz::parse_database("atoms: b f l\nd1: b -> f\nd2: b -> l\n"); }

/// b -> f, b -> !f, true -> b.
inline cpz::DefaultDatabase contradictory() { return cpz::parse_database("bf: b -> f\nbnf: b -> !f\ntb: true -> b\n"); }

inline cpz::World world(const cpz::DefaultDatabase& db, std::string_view literals) {
  return cpz::report::parse_world(literals, db.vocabulary());
}

inline cpz::Formula formula(const cpz::DefaultDatabase& db, std::string_view text) {
  return cpz::parse_formula(text, db.vocabulary());
}

}  // namespace fixtures
