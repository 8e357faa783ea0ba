#include "polypack/values.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace polypack {

Rat parse_rat(const std::string& s) {
  auto bad = [&](const char* why) {
    throw std::invalid_argument("malformed rational '" + s + "': " + why);
  };
  std::string t = s;
  if (t.empty()) bad("empty");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(t));
    }
    Int num(t.substr(0, slash));
    Int den(t.substr(slash + 1));
    if (den == 0) bad("zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    bad("not an integer ratio");
  }
  return Rat(0);  // unreachable
}

std::string format_rat(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

std::string decimal_string(const Rat& x, int digits) {
  if (digits < 0) digits = 0;
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int num = numerator(x) * scale * 2;
  Int den = denominator(x);
  // round half away from zero
  Int q = Int(num >= 0 ? Int(num + den) : Int(num - den)) / Int(2 * den);
  bool neg = q < 0;
  Int a = neg ? Int(-q) : q;
  std::string body = a.str();
  std::string out;
  if (digits == 0) {
    out = body;
  } else {
    while ((Int)body.size() <= digits) body.insert(body.begin(), '0');
    out = body.substr(0, body.size() - digits) + "." + body.substr(body.size() - digits);
  }
  return neg ? "-" + out : out;
}

// ---------------------------------------------------------------------------
// pi enclosures
// ---------------------------------------------------------------------------

namespace {

// arctan(1/x) partial sums; alternating with decreasing terms, so consecutive
// partial sums bracket the limit.
PiBounds atan_inv_bounds(long x, int terms) {
  Rat s = 0;
  Rat xs = Rat(1, x);
  Rat x2 = Rat(1, Int(x) * x);
  Rat term = xs;
  Rat prev = 0;
  for (int k = 0; k < terms; ++k) {
    Rat contrib = term / (2 * k + 1);
    prev = s;
    s += (k % 2 == 0) ? contrib : -contrib;
    term *= x2;
  }
  Rat lo = std::min(prev, s), hi = std::max(prev, s);
  return {lo, hi};
}

PiBounds pi_level(int level) {
  if (level <= 0) return {Rat(223, 71), Rat(22, 7)};
  int terms = 2 * level + 2;
  PiBounds a5 = atan_inv_bounds(5, terms);
  PiBounds a239 = atan_inv_bounds(239, terms);
  // pi = 16 atan(1/5) - 4 atan(1/239)
  return {16 * a5.lo - 4 * a239.hi, 16 * a5.hi - 4 * a239.lo};
}

}  // namespace

PiBounds pi_enclosure(int level, int power) {
  PiBounds b = pi_level(level);
  PiBounds out = b;
  for (int p = 1; p < power; ++p) {
    out.lo = out.lo * b.lo;
    out.hi = out.hi * b.hi;
  }
  return out;
}

int compare_rat_pi_power(const Rat& q, const Rat& c, int power) {
  // sign of q - c*pi^power
  if (c == 0) return rat_sign(q);
  for (int level = 0; level < 64; ++level) {
    PiBounds b = pi_enclosure(level, power);
    Rat lo = c > 0 ? c * b.lo : c * b.hi;
    Rat hi = c > 0 ? c * b.hi : c * b.lo;
    if (q < lo) return -1;
    if (q > hi) return 1;
  }
  // pi^power is irrational, so the enclosure always separates eventually.
  throw std::runtime_error("pi comparison did not resolve");
}

int pilin_sign(const PiLin& v) {
  if (v.b == 0) return rat_sign(v.a);
  // sign of a + b*pi == -(sign of (-a) - b*pi)
  return -compare_rat_pi_power(-v.a, v.b, 1);
}

PiLin pilin_abs(const PiLin& v) { return pilin_sign(v) < 0 ? -v : v; }

PiLin pilin_min(const PiLin& x, const PiLin& y) { return pilin_less(y, x) ? y : x; }

std::string format_pilin(const PiLin& v) {
  if (v.b == 0) return format_rat(v.a);
  std::string pi_part;
  if (v.b == 1) {
    pi_part = "pi";
  } else if (v.b == -1) {
    pi_part = "-pi";
  } else {
    pi_part = format_rat(v.b) + "*pi";
  }
  if (v.a == 0) return pi_part;
  if (v.b < 0) {
    Rat nb = -v.b;
    std::string tail = (nb == 1) ? "pi" : format_rat(nb) + "*pi";
    return format_rat(v.a) + "-" + tail;
  }
  std::string tail = (v.b == 1) ? "pi" : format_rat(v.b) + "*pi";
  return format_rat(v.a) + "+" + tail;
}

PiLin parse_pilin(const std::string& s) {
  // forms: "a", "b*pi", "pi", "-pi", "a+b*pi", "a-b*pi", "a+pi", "a-pi"
  std::string t;
  for (char c : s)
    if (!isspace((unsigned char)c)) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty value");
  auto parse_pi_term = [](const std::string& u) -> Rat {
    if (u == "pi") return Rat(1);
    if (u == "-pi") return Rat(-1);
    auto star = u.find("*pi");
    if (star == std::string::npos || star + 3 != u.size())
      throw std::invalid_argument("malformed pi term '" + u + "'");
    return parse_rat(u.substr(0, star));
  };
  if (t.find("pi") == std::string::npos) return PiLin(parse_rat(t));
  // split at the last '+' or '-' that is not the leading sign and not inside "p/q"
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '*' &&
        t.substr(i).find("pi") != std::string::npos && t.substr(0, i).find("pi") == std::string::npos) {
      Rat a = parse_rat(t.substr(0, i));
      std::string tail = t.substr(i);
      Rat b;
      if (tail == "+pi") b = 1;
      else if (tail == "-pi") b = -1;
      else b = parse_pi_term(tail[0] == '+' ? tail.substr(1) : tail);
      return PiLin(a, b);
    }
  }
  return PiLin(Rat(0), parse_pi_term(t));
}

std::string decimal_string(const PiLin& v, int digits) {
  // midpoint of a tight enclosure, then rounded; presentation only
  PiBounds b = pi_enclosure(8 + digits, 1);
  Rat mid = v.a + v.b * (b.lo + b.hi) / 2;
  return decimal_string(mid, digits);
}

// ---------------------------------------------------------------------------
// radicals
// ---------------------------------------------------------------------------

std::string format_radical(const Radical& r) {
  if (r.is_infinite) return "+inf";
  if (r.root == 1) return format_rat(r.radicand);
  if (r.root == 2) return "sqrt(" + format_rat(r.radicand) + ")";
  return "(" + format_rat(r.radicand) + ")^(1/" + std::to_string(r.root) + ")";
}

namespace {

// k-th root of a nonnegative rational by exact bisection on integers scaled
// to the requested precision.
Rat root_approx(const Rat& x, int k, int digits) {
  if (x == 0) return 0;
  Int scale = 1;
  for (int i = 0; i < digits + 2; ++i) scale *= 10;
  // find integer n with (n/scale)^k <= x < ((n+1)/scale)^k
  Int lo = 0, hi = 1;
  auto pow_over = [&](const Int& n) {
    Rat v(n, scale);
    Rat p = 1;
    for (int i = 0; i < k; ++i) p *= v;
    return p > x;
  };
  while (!pow_over(hi)) hi *= 2;
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (pow_over(mid)) hi = mid;
    else lo = mid;
  }
  return Rat(lo, scale);
}

}  // namespace

std::string decimal_string(const Radical& r, int digits) {
  if (r.is_infinite) return "+inf";
  if (r.root == 1) return decimal_string(r.radicand, digits);
  return decimal_string(root_approx(r.radicand, r.root, digits + 2), digits);
}

int compare_radicals(const Radical& x, const Radical& y) {
  if (x.is_infinite || y.is_infinite) {
    if (x.is_infinite && y.is_infinite) return 0;
    return x.is_infinite ? 1 : -1;
  }
  if (x.radicand < 0 || y.radicand < 0)
    throw std::invalid_argument("compare_radicals: negative radicand");
  long l = std::lcm((long)x.root, (long)y.root);
  Rat xl = 1, yl = 1;
  for (long i = 0; i < l / x.root; ++i) xl *= x.radicand;
  for (long i = 0; i < l / y.root; ++i) yl *= y.radicand;
  return xl < yl ? -1 : (xl > yl ? 1 : 0);
}

}  // namespace polypack
