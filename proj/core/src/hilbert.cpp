#include "obstructor/hilbert.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "obstructor/errors.hpp"
#include "obstructor/residue_ring.hpp"

namespace obstructor {

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "real" || text == "oo") return Place::real();
  std::int64_t p = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad place '" + std::string(text) + "'");
  }
  return Place::finite(Prime(p));
}

Prime Place::prime() const {
  if (is_real()) throw std::logic_error("the real place has no prime");
  return Prime(p_);
}

std::string Place::to_string() const { return is_real() ? "inf" : std::to_string(p_); }

QmodZ hilbert_real(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol of zero");
  return (sgn(a) < 0 && sgn(b) < 0) ? QmodZ::half() : QmodZ();
}

QmodZ hilbert_real(double a, double b) {
  if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol of zero");
  return (a < 0 && b < 0) ? QmodZ::half() : QmodZ();
}

namespace {

// Symbol from valuations and units (units given mod p, or mod 8 for p = 2), as a parity bit.
int symbol_bit(const Prime& p, int alpha, const Integer& u, int beta, const Integer& v) {
  if (p.value() == 2) {
    const long um = mpz_fdiv_ui(u.get_mpz_t(), 8);
    const long vm = mpz_fdiv_ui(v.get_mpz_t(), 8);
    const int eu = static_cast<int>(((um - 1) / 2) & 1);
    const int ev = static_cast<int>(((vm - 1) / 2) & 1);
    const int wu = static_cast<int>(((um * um - 1) / 8) & 1);
    const int wv = static_cast<int>(((vm * vm - 1) / 8) & 1);
    return (eu * ev + (alpha & 1) * wv + (beta & 1) * wu) & 1;
  }
  int bit = 0;
  if ((alpha & 1) && (beta & 1) && (p.value() % 4 == 3)) bit ^= 1;
  if ((beta & 1) && legendre(u, p) < 0) bit ^= 1;
  if ((alpha & 1) && legendre(v, p) < 0) bit ^= 1;
  return bit;
}

Integer unit_of(const Rational& r, const Prime& p, int k) {
  // r = p^v * n/d with n, d prime to p; return n * d^-1 mod p^k.
  Integer n = r.get_num();
  Integer d = r.get_den();
  const Integer pk = prime_power(p, k);
  const Integer pz(p.value());
  while (n % pz == 0) n /= pz;
  while (d % pz == 0) d /= pz;
  Integer dinv;
  mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pk.get_mpz_t());
  Integer u = (n * dinv) % pk;
  if (u < 0) u += pk;
  return u;
}

}  // namespace

QmodZ hilbert_qp(const Rational& a, const Rational& b, const Prime& p) {
  if (a == 0 || b == 0) throw std::invalid_argument("Hilbert symbol of zero");
  const int k = p.value() == 2 ? 3 : 1;
  const int bit = symbol_bit(p, valuation(a, p), unit_of(a, p, k), valuation(b, p), unit_of(b, p, k));
  return bit ? QmodZ::half() : QmodZ();
}

QmodZ hilbert_qp(const PadicNumber& a, const PadicNumber& b) {
  if (!(a.prime() == b.prime())) throw std::invalid_argument("Hilbert symbol across primes");
  if (a.is_zero() || b.is_zero()) throw PrecisionError("Hilbert symbol of an argument zero at precision");
  const Prime& p = a.prime();
  const int k = p.value() == 2 ? 3 : 1;
  if (a.precision() < k || b.precision() < k) {
    throw PrecisionError("Hilbert symbol needs " + std::to_string(k) + " unit digits");
  }
  const int bit = symbol_bit(p, a.valuation(), a.unit(), b.valuation(), b.unit());
  return bit ? QmodZ::half() : QmodZ();
}

QmodZ hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  return v.is_real() ? hilbert_real(a, b) : hilbert_qp(a, b, v.prime());
}

std::string_view to_string(SymbolPath path) {
  switch (path) {
    case SymbolPath::Qp: return "qp";
    case SymbolPath::Square: return "square";
    case SymbolPath::UnramifiedParity: return "unramified-parity";
    case SymbolPath::ConicSearch: return "conic-search";
  }
  return "?";
}

namespace {

int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

struct Tuple {
  std::array<ResidueRing::Element, 3> t;
  int chart = 0;
};

// z^2 = A u^2 + B w^2 with val(A), val(B) in {0, 1}; residue BFS over the three charts.
SymbolResult conic_search(const LocalFieldElement& A, const LocalFieldElement& B, int max_depth,
                          std::size_t frontier_cap) {
  const LocalField& field = A.field();
  const int known_ab = std::min(A.absolute_precision(), B.absolute_precision());
  ResidueRing ring(field, std::min(2 * max_depth + 4 * field.e() + 4, ResidueRing::max_digits(field)));
  const int known = std::min(ring.precision(), known_ab);
  if (known <= max_depth) throw PrecisionError("conic search needs more certified digits");
  const ResidueRing::Element a = ring.from_element(A, known);
  const ResidueRing::Element b = ring.from_element(B, known);
  const ResidueRing::Element two = ring.from_int(2);
  const std::uint64_t q = ring.residue_size();

  auto capped = [&](const ResidueRing::Element& x) { return std::min(ring.valuation(x), known); };
  auto form = [&](const Tuple& x) {
    const auto z2 = ring.mul(x.t[0], x.t[0]);
    const auto u2 = ring.mul(ring.mul(x.t[1], x.t[1]), a);
    const auto w2 = ring.mul(ring.mul(x.t[2], x.t[2]), b);
    return ring.sub(ring.sub(z2, u2), w2);
  };
  // Returns the variable whose partial derivative certifies a Hensel lift, or -1.
  auto hensel_variable = [&](const Tuple& x, const ResidueRing::Element& value) {
    const std::array<ResidueRing::Element, 3> partial{
        ring.mul(two, x.t[0]), ring.mul(ring.mul(two, a), x.t[1]), ring.mul(ring.mul(two, b), x.t[2])};
    int best = -1;
    int best_val = known;
    for (int i = 0; i < 3; ++i) {
      const int pv = capped(partial[i]);
      if (pv < best_val) {
        best_val = pv;
        best = i;
      }
    }
    if (best < 0) return -1;
    return capped(value) > 2 * best_val ? best : -1;
  };

  std::vector<Tuple> frontier;
  for (int chart = 0; chart < 3; ++chart) {
    // Coordinate `chart` is 1, earlier coordinates are divisible by pi.
    const std::uint64_t free_count = chart == 2 ? 1 : (chart == 1 ? q : q * q);
    for (std::uint64_t idx = 0; idx < free_count; ++idx) {
      Tuple x;
      x.chart = chart;
      x.t[chart] = ring.one();
      std::uint64_t rest = idx;
      for (int i = chart + 1; i < 3; ++i) {
        x.t[i] = ring.digit(rest % q);
        rest /= q;
      }
      if (ring.valuation(form(x)) >= 1) frontier.push_back(x);
    }
  }

  SymbolResult result;
  result.path = SymbolPath::ConicSearch;
  for (int k = 1;; ++k) {
    result.depth = k;
    if (frontier.empty()) {
      result.value = QmodZ::half();
      return result;
    }
    for (const Tuple& x : frontier) {
      const int var = hensel_variable(x, form(x));
      if (var < 0) continue;
      // Lift the chosen coordinate with the others fixed.
      std::array<LocalFieldElement, 3> pt{ring.to_element(x.t[0]), ring.to_element(x.t[1]),
                                          ring.to_element(x.t[2])};
      const std::array<LocalFieldElement, 3> coef{field.one(), -A, -B};
      LocalFieldElement rest = field.zero();
      for (int i = 0; i < 3; ++i) {
        if (i != var) rest = rest + coef[i] * pt[i] * pt[i];
      }
      pt[var] = hensel_lift({rest, field.zero(), coef[var]}, pt[var]);
      result.value = QmodZ();
      result.witness = pt;
      return result;
    }
    if (k >= max_depth) {
      throw InconclusiveError("conic search reached depth " + std::to_string(k) + " with " +
                              std::to_string(frontier.size()) + " residue classes and no Hensel point");
    }
    std::vector<Tuple> next;
    const ResidueRing::Element& pik = ring.pi_power(k);
    for (const Tuple& x : frontier) {
      // The chart coordinate stays 1; the other two run over all digits at position k.
      const int vary[2] = {x.chart == 0 ? 1 : 0, x.chart == 2 ? 1 : 2};
      for (std::uint64_t d0 = 0; d0 < q; ++d0) {
        Tuple y = x;
        y.t[vary[0]] = ring.add(x.t[vary[0]], ring.mul(ring.digit(d0), pik));
        for (std::uint64_t d1 = 0; d1 < q; ++d1) {
          Tuple z = y;
          z.t[vary[1]] = ring.add(y.t[vary[1]], ring.mul(ring.digit(d1), pik));
          if (ring.valuation(form(z)) >= k + 1) next.push_back(z);
        }
      }
      if (next.size() > frontier_cap) throw BudgetExceeded("conic search frontier exceeds cap");
    }
    frontier = std::move(next);
  }
}

}  // namespace

SymbolResult hilbert_ext_detailed(const Rational& a, const LocalFieldElement& x, const ConicOptions& options) {
  if (a == 0) throw std::invalid_argument("Hilbert symbol of zero");
  if (x.is_zero()) throw PrecisionError("Hilbert symbol of an element zero at precision");
  const LocalField& field = x.field();
  SymbolResult result;
  if (!options.force_conic) {
    if (field.degree() == 1) {
      result.path = SymbolPath::Qp;
      result.value = hilbert_qp(PadicNumber::from_rational(a, field.prime(), field.precision()),
                                x.coefficients()[0]);
      return result;
    }
    const LocalFieldElement as = field.from_rational(a);
    if (is_square(as)) {
      result.path = SymbolPath::Square;
      return result;
    }
    if (generates_unramified_quadratic(field, a)) {
      result.path = SymbolPath::UnramifiedParity;
      result.value = is_norm_unramified_quadratic(x, a) ? QmodZ() : QmodZ::half();
      return result;
    }
  }
  const LocalFieldElement as = field.from_rational(a);
  const int ka = floor_div2(as.valuation()), kx = floor_div2(x.valuation());
  const LocalFieldElement A = as.shifted(-2 * ka);
  const LocalFieldElement B = x.shifted(-2 * kx);
  const int depth = options.max_depth > 0 ? options.max_depth : 4 * field.e() + 6;
  SymbolResult r = conic_search(A, B, depth, options.frontier_cap);
  // Back from the reduced conic to z^2 = a u^2 + x w^2.
  if (r.witness) {
    (*r.witness)[1] = (*r.witness)[1].shifted(-ka);
    (*r.witness)[2] = (*r.witness)[2].shifted(-kx);
  }
  return r;
}

QmodZ hilbert_ext(const Rational& a, const LocalFieldElement& x, const ConicOptions& options) {
  return hilbert_ext_detailed(a, x, options).value;
}

std::vector<Prime> relevant_primes(const Rational& a, const Rational& b) {
  std::set<std::int64_t> primes{2};
  auto factor = [&](Integer n) {
    n = abs(n);
    for (std::int64_t d = 2; n > 1; ++d) {
      if (Integer(d) * d > n) {
        if (!n.fits_slong_p()) throw std::invalid_argument("factorization out of range");
        primes.insert(n.get_si());
        break;
      }
      if (d > 100000000) throw std::invalid_argument("factorization out of range");
      if (n % d == 0) {
        primes.insert(d);
        while (n % d == 0) n /= d;
      }
    }
  };
  factor(a.get_num());
  factor(a.get_den());
  factor(b.get_num());
  factor(b.get_den());
  std::vector<Prime> out;
  for (auto p : primes) out.emplace_back(p);
  return out;
}

bool product_formula_check(const Rational& a, const Rational& b) {
  QmodZ total = hilbert_real(a, b);
  for (const Prime& p : relevant_primes(a, b)) total += hilbert_qp(a, b, p);
  return total.is_zero();
}

}  // namespace obstructor
