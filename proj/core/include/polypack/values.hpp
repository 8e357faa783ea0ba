#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polypack {

// All geometry runs on exact arithmetic; cpp_rational keeps values reduced
// with positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
inline int rat_sign(const Rat& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

Rat parse_rat(const std::string& s);      // "p/q" or "p"; throws on q == 0
std::string format_rat(const Rat& x);     // reduced "p/q", plain "p" when q == 1

// Fixed-precision decimal rendering (round half away from zero), for the
// --decimal presentation column only.
std::string decimal_string(const Rat& x, int digits);

// ---------------------------------------------------------------------------
// pi-linear values: a + b*pi with exact rational a, b.  Comparisons resolve
// through certified rational enclosures of pi, refined on demand starting
// from 223/71 < pi < 22/7.
// ---------------------------------------------------------------------------
struct PiBounds {
  Rat lo, hi;
};

// Enclosure of pi^power (power >= 1) at refinement `level` (level 0 is the
// seed 223/71 < pi < 22/7; higher levels use a Machin-style series).
PiBounds pi_enclosure(int level, int power = 1);

struct PiLin {
  Rat a;  // rational part
  Rat b;  // coefficient of pi

  PiLin() = default;
  PiLin(Rat ra) : a(std::move(ra)), b(0) {}
  PiLin(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}

  bool is_rational() const { return b == 0; }
  friend PiLin operator+(const PiLin& x, const PiLin& y) { return {x.a + y.a, x.b + y.b}; }
  friend PiLin operator-(const PiLin& x, const PiLin& y) { return {x.a - y.a, x.b - y.b}; }
  friend PiLin operator-(const PiLin& x) { return {-x.a, -x.b}; }
  friend PiLin operator*(const Rat& c, const PiLin& x) { return {c * x.a, c * x.b}; }
  bool operator==(const PiLin& o) const { return a == o.a && b == o.b; }
};

int pilin_sign(const PiLin& v);  // exact sign, refines pi bounds until decided
inline bool pilin_less(const PiLin& x, const PiLin& y) { return pilin_sign(x - y) < 0; }
PiLin pilin_abs(const PiLin& v);
PiLin pilin_min(const PiLin& x, const PiLin& y);
std::string format_pilin(const PiLin& v);  // e.g. "1/2", "1/3*pi", "1/2+2*pi"
PiLin parse_pilin(const std::string& s);   // "a", "b*pi", "a+b*pi", "a-b*pi"
std::string decimal_string(const PiLin& v, int digits);

// Exact sign of q - c*pi^power (used for comparisons against pi powers).
int compare_rat_pi_power(const Rat& q, const Rat& c, int power);

// ---------------------------------------------------------------------------
// Radicals: radicand^(1/root) with exact rational radicand, kept symbolic.
// root == 1 is a plain rational.
// ---------------------------------------------------------------------------
struct Radical {
  Rat radicand;
  int root = 1;

  bool is_infinite = false;  // renders as "+inf"

  static Radical infinite() {
    Radical r;
    r.is_infinite = true;
    return r;
  }
};

std::string format_radical(const Radical& r);  // "sqrt(2)", "(8)^(1/4)", "3/2", "+inf"
std::string decimal_string(const Radical& r, int digits);
// Compares radicand1^(1/root1) with radicand2^(1/root2) exactly (nonnegative
// radicands) by raising both sides to lcm(root1, root2).
int compare_radicals(const Radical& x, const Radical& y);

}  // namespace polypack
