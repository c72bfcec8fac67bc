#include "obstructor/extensions.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "obstructor/errors.hpp"

namespace obstructor {

namespace {

constexpr std::uint64_t kCandidateCap = 20'000'000;

int vp_or_inf(const Integer& n, const Prime& p) { return n == 0 ? kInfinitePrecision : valuation(n, p); }

ResidueRing::Element eval_poly(const ResidueRing& ring, std::span<const ResidueRing::Element> poly,
                               const ResidueRing::Element& x) {
  ResidueRing::Element acc = ring.zero();
  for (std::size_t i = poly.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), poly[i]);
  return acc;
}

// Element of T given in omega coordinates, mapped through omega -> root.
ResidueRing::Element map_t(const ResidueRing& ring, const std::vector<Integer>& coords,
                           const ResidueRing::Element& root) {
  ResidueRing::Element acc = ring.zero();
  ResidueRing::Element power = ring.one();
  for (const auto& c : coords) {
    if (c != 0) acc = ring.add(acc, ring.mul(ring.from_integer(c), power));
    power = ring.mul(power, root);
  }
  return acc;
}

}  // namespace

int different_exponent(const FieldDescriptor& d) {
  const Prime p(d.p);
  const int e = d.e();
  int delta = kInfinitePrecision;
  for (int i = 1; i <= e; ++i) {
    int v = kInfinitePrecision;
    for (const auto& c : d.eisenstein_poly[i]) v = std::min(v, vp_or_inf(c, p));
    if (v >= kInfinitePrecision) continue;
    v += vp_or_inf(Integer(i), p);
    delta = std::min(delta, e * v + i - 1);
  }
  return delta;
}

namespace {

ResidueField::Element residue_of(const ResidueRing& ring, const ResidueRing::Element& x) {
  ResidueField::Element r(static_cast<std::size_t>(ring.f()));
  for (int j = 0; j < ring.f(); ++j) r[j] = static_cast<std::int64_t>(x.c[j] % ring.p());
  return r;
}

// Residual-polynomial descent: roots of P in O_S reduce to roots of P mod pi; a simple
// residual root lifts by Hensel, a multiple one is refined through P(a + pi X).
bool residual_root_search(const ResidueRing& ring, std::vector<ResidueRing::Element> poly, int known,
                          int depth) {
  if (depth > 4 * ring.precision()) throw InconclusiveError("root search did not terminate");
  int v = known;
  for (const auto& c : poly) v = std::min(v, ring.valuation(c));
  if (v >= known) throw InconclusiveError("polynomial vanishes at the working precision");
  for (int t = 0; t < v; ++t) {
    for (auto& c : poly) c = ring.div_pi(c);
    known = std::min(known + ring.e() - 1, ring.precision()) - ring.e();
    if (known < 1) throw InconclusiveError("precision exhausted in root search");
  }
  const ResidueField& k = ring.field().residue_field();
  std::vector<ResidueField::Element> bar;
  for (const auto& c : poly) bar.push_back(residue_of(ring, c));
  std::size_t deg = 0;
  for (std::size_t i = 0; i < bar.size(); ++i) {
    if (!k.is_zero(bar[i])) deg = i;
  }
  if (deg == 0) return false;
  for (std::uint64_t idx = 0; idx < k.size(); ++idx) {
    const ResidueField::Element a = k.element_at(idx);
    ResidueField::Element value = k.zero();
    ResidueField::Element slope = k.zero();
    for (std::size_t i = bar.size(); i-- > 0;) {
      slope = k.add(k.mul(slope, a), value);
      value = k.add(k.mul(value, a), bar[i]);
    }
    if (!k.is_zero(value)) continue;
    if (!k.is_zero(slope)) return true;
    // Taylor shift P(a + Y), then Y = pi X.
    std::vector<ResidueRing::Element> shifted = poly;
    const ResidueRing::Element ar = ring.digit(idx);
    const std::size_t n = shifted.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j-- > i;) {
        shifted[j] = ring.add(shifted[j], ring.mul(ar, shifted[j + 1]));
      }
    }
    for (std::size_t j = 1; j < n; ++j) shifted[j] = ring.mul(shifted[j], ring.pi_power(static_cast<int>(j)));
    if (residual_root_search(ring, std::move(shifted), known, depth + 1)) return true;
  }
  return false;
}

}  // namespace

bool polynomial_has_root(const ResidueRing& ring, std::span<const ResidueRing::Element> poly) {
  if (poly.size() < 2) throw std::invalid_argument("root search needs degree >= 1");
  return residual_root_search(ring, std::vector<ResidueRing::Element>(poly.begin(), poly.end()),
                              ring.precision(), 0);
}

std::vector<ResidueRing::Element> unramified_roots(const ResidueRing& ring, const FieldDescriptor& t_source) {
  const auto& g = t_source.unramified_poly;
  std::vector<ResidueRing::Element> gpoly;
  for (const auto& c : g) gpoly.push_back(ring.from_integer(c));
  if (gpoly.size() == 2) {
    // Linear: omega = -g_0.
    return {ring.neg(gpoly[0])};
  }
  std::vector<ResidueRing::Element> dg;
  for (std::size_t i = 1; i < gpoly.size(); ++i) {
    dg.push_back(ring.mul(gpoly[i], ring.from_int(static_cast<std::int64_t>(i))));
  }
  std::vector<ResidueRing::Element> roots;
  for (std::uint64_t idx = 0; idx < ring.residue_size(); ++idx) {
    ResidueRing::Element x = ring.digit(idx);
    if (ring.valuation(eval_poly(ring, gpoly, x)) < 1) continue;
    for (int known = 1; known < ring.precision(); known *= 2) {
      x = ring.sub(x, ring.mul(eval_poly(ring, gpoly, x), ring.inverse(eval_poly(ring, dg, x))));
    }
    roots.push_back(x);
  }
  return roots;
}

bool has_root_in(const FieldDescriptor& a, const LocalField& b) {
  const ResidueRing ring(b, ResidueRing::max_digits(b));
  for (const auto& root : unramified_roots(ring, a)) {
    std::vector<ResidueRing::Element> poly;
    for (const auto& coeff : a.eisenstein_poly) poly.push_back(map_t(ring, coeff, root));
    if (polynomial_has_root(ring, poly)) return true;
  }
  return false;
}

bool isomorphic(const LocalField& a, const LocalField& b) {
  if (a.prime() != b.prime() || a.e() != b.e() || a.f() != b.f()) return false;
  if (a.e() == 1) return true;
  if (different_exponent(a.descriptor()) != different_exponent(b.descriptor())) return false;
  return has_root_in(a.descriptor(), b);
}

namespace {

struct Representative {
  LocalField field;
  ResidueRing ring;
  std::vector<ResidueRing::Element> t_roots;
  int delta;
};

std::vector<LocalField> eisenstein_fields(const Prime& p, int f, int e, int precision, bool& complete) {
  const FpPoly gmod = canonical_unramified_polynomial(p.value(), f);
  std::vector<Integer> g;
  for (auto c : gmod) g.emplace_back(static_cast<long>(c));
  if (f == 1) g = {-1, 1};

  const int v_e = valuation(Integer(e), p);
  const int delta_max = e * v_e + e - 1;
  const int bound = 2 * delta_max / e + 1;
  const Integer pb = prime_power(p, bound);

  // Candidate T-coordinates: multiples of p in [0, p^bound).
  std::vector<Integer> multiples;
  for (Integer c = 0; c < pb; c += p.value()) multiples.push_back(c);
  const std::uint64_t per_coeff_count = [&] {
    std::uint64_t n = 1;
    for (int j = 0; j < f; ++j) n *= multiples.size();
    return n;
  }();

  auto t_element = [&](std::uint64_t idx) {
    std::vector<Integer> coords(static_cast<std::size_t>(f));
    for (int j = 0; j < f; ++j) {
      coords[j] = multiples[idx % multiples.size()];
      idx /= multiples.size();
    }
    return coords;
  };

  std::vector<Representative> reps;
  std::vector<std::uint64_t> counter(static_cast<std::size_t>(e), 0);
  std::uint64_t visited = 0;
  while (true) {
    if (++visited > kCandidateCap) {
      complete = false;
      break;
    }
    FieldDescriptor d;
    d.p = p.value();
    d.unramified_poly = g;
    for (int i = 0; i < e; ++i) d.eisenstein_poly.push_back(t_element(counter[i]));
    std::vector<Integer> lead(static_cast<std::size_t>(f), 0);
    lead[0] = 1;
    d.eisenstein_poly.push_back(lead);

    int v0 = kInfinitePrecision;
    for (const auto& c : d.eisenstein_poly[0]) v0 = std::min(v0, vp_or_inf(c, p));
    bool keep = v0 == 1;
    int delta = 0;
    if (keep) {
      delta = different_exponent(d);
      const int m = 2 * delta / e + 1;
      const Integer& pm = prime_power(p, m);
      for (int i = 0; i < e && keep; ++i) {
        for (const auto& c : d.eisenstein_poly[i]) {
          if (c >= pm) {
            keep = false;
            break;
          }
        }
      }
    }
    if (keep) {
      bool known = false;
      for (const auto& rep : reps) {
        if (rep.delta != delta) continue;
        for (const auto& root : rep.t_roots) {
          std::vector<ResidueRing::Element> poly;
          for (const auto& coeff : d.eisenstein_poly) poly.push_back(map_t(rep.ring, coeff, root));
          if (polynomial_has_root(rep.ring, poly)) {
            known = true;
            break;
          }
        }
        if (known) break;
      }
      if (!known) {
        LocalField field = LocalField::build(d, precision);
        ResidueRing ring(field, ResidueRing::max_digits(field));
        auto roots = unramified_roots(ring, d);
        reps.push_back(Representative{field, ring, std::move(roots), delta});
      }
    }
    int i = 0;
    while (i < e && ++counter[i] == per_coeff_count) counter[i++] = 0;
    if (i == e) break;
  }
  std::vector<LocalField> out;
  for (auto& r : reps) out.push_back(r.field);
  return out;
}

}  // namespace

ExtensionCatalog enumerate_extensions(const Prime& p, int degree, int precision, int cap) {
  if (degree < 1) throw std::invalid_argument("extension degree must be positive");
  if (degree > cap) {
    throw std::invalid_argument("extension degree " + std::to_string(degree) + " exceeds cap " +
                                std::to_string(cap));
  }
  static std::mutex mutex;
  static std::map<std::tuple<std::int64_t, int, int>, ExtensionCatalog> memo;
  const auto key = std::make_tuple(p.value(), degree, precision);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  ExtensionCatalog catalog;
  catalog.p = p;
  catalog.degree = degree;
  for (int e = 1; e <= degree; ++e) {
    if (degree % e != 0) continue;
    const int f = degree / e;
    if (e == 1) {
      catalog.entries.push_back(f == 1 ? LocalField::qp(p, precision) : LocalField::unramified(p, f, precision));
      continue;
    }
    auto fields = eisenstein_fields(p, f, e, precision, catalog.complete);
    catalog.entries.insert(catalog.entries.end(), fields.begin(), fields.end());
  }
  std::lock_guard<std::mutex> lock(mutex);
  memo.emplace(key, catalog);
  return catalog;
}

}  // namespace obstructor
