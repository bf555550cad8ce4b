#include "dlcomp/sl2oracle.hpp"

#include <string>

#include "dlcomp/error.hpp"

namespace dlcomp::sl2 {

namespace {

struct FieldShape {
  unsigned q;
  unsigned p;
  unsigned degree;
  // Monic irreducible, coefficients from t^0 up to t^degree.
  std::vector<unsigned> modulus;
};

std::optional<FieldShape> shape_of(unsigned q) {
  switch (q) {
    case 2: case 3: case 5: case 7: case 11: case 13:
      return FieldShape{q, q, 1, {0, 1}};
    case 4: return FieldShape{4, 2, 2, {1, 1, 1}};
    case 8: return FieldShape{8, 2, 3, {1, 1, 0, 1}};
    case 9: return FieldShape{9, 3, 2, {1, 0, 1}};
    case 16: return FieldShape{16, 2, 4, {1, 1, 0, 0, 1}};
    default: return std::nullopt;
  }
}

std::vector<unsigned> digits(unsigned x, unsigned p, unsigned degree) {
  std::vector<unsigned> d(degree);
  for (unsigned i = 0; i < degree; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
  unsigned x = 0;
  for (unsigned i = static_cast<unsigned>(d.size()); i-- > 0;) x = x * p + d[i];
  return x;
}

// Is q a prime power whose order is at most the table bound?
std::optional<unsigned> prime_of(unsigned q) {
  if (q < 2) return std::nullopt;
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned m = q;
  while (m % p == 0) m /= p;
  if (m != 1) return std::nullopt;
  return p;
}

}  // namespace

bool FiniteField::supported(unsigned q) { return shape_of(q).has_value(); }

FiniteField FiniteField::make(unsigned q) {
  const auto shape = shape_of(q);
  if (!shape)
    throw Error(ErrorKind::FieldUnsupported,
                "no field table for q = " + std::to_string(q) + " (supported: prime powers <= " +
                    std::to_string(kMaxFieldOrder) + ")");
  FiniteField f(q, shape->p, shape->degree);
  const unsigned p = shape->p;
  const unsigned deg = shape->degree;
  f.add_.resize(q * q);
  f.mul_.resize(q * q);
  f.neg_.resize(q);
  f.inv_.assign(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    const auto da = digits(a, p, deg);
    std::vector<unsigned> dn(deg);
    for (unsigned i = 0; i < deg; ++i) dn[i] = (p - da[i]) % p;
    f.neg_[a] = static_cast<Element>(from_digits(dn, p));
    for (unsigned b = 0; b < q; ++b) {
      const auto db = digits(b, p, deg);
      std::vector<unsigned> ds(deg);
      for (unsigned i = 0; i < deg; ++i) ds[i] = (da[i] + db[i]) % p;
      f.add_[a * q + b] = static_cast<Element>(from_digits(ds, p));

      // Schoolbook product, then reduce the top coefficients with the modulus.
      std::vector<unsigned> prod(2 * deg - 1, 0);
      for (unsigned i = 0; i < deg; ++i)
        for (unsigned j = 0; j < deg; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (unsigned top = 2 * deg - 1; top-- > deg;) {
        const unsigned c = prod[top];
        if (c == 0) continue;
        for (unsigned i = 0; i <= deg; ++i) {
          const unsigned idx = top - deg + i;
          prod[idx] = (prod[idx] + (p - c) * shape->modulus[i]) % p;
        }
      }
      prod.resize(deg);
      f.mul_[a * q + b] = static_cast<Element>(from_digits(prod, p));
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (f.mul_[a * q + b] == 1) f.inv_[a] = static_cast<Element>(b);
  f.verify_axioms();
  return f;
}

void FiniteField::verify_axioms() const {
  auto fail = [this](const char* what) {
    throw Error(ErrorKind::InvariantViolation,
                std::string("field table for q = ") + std::to_string(q_) + " violates " + what);
  };
  for (unsigned a = 0; a < q_; ++a) {
    const auto ea = static_cast<Element>(a);
    if (add(ea, 0) != ea || mul(ea, 1) != ea) fail("identities");
    if (add(ea, neg(ea)) != 0) fail("additive inverses");
    if (a != 0 && mul(ea, inv_[a]) != 1) fail("multiplicative inverses");
    for (unsigned b = 0; b < q_; ++b) {
      const auto eb = static_cast<Element>(b);
      if (add(ea, eb) != add(eb, ea) || mul(ea, eb) != mul(eb, ea)) fail("commutativity");
      for (unsigned c = 0; c < q_; ++c) {
        const auto ec = static_cast<Element>(c);
        if (add(add(ea, eb), ec) != add(ea, add(eb, ec))) fail("additive associativity");
        if (mul(mul(ea, eb), ec) != mul(ea, mul(eb, ec))) fail("multiplicative associativity");
        if (mul(ea, add(eb, ec)) != add(mul(ea, eb), mul(ea, ec))) fail("distributivity");
      }
    }
  }
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (a == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  return inv_[a];
}

FiniteField::Element FiniteField::pow(Element a, unsigned long e) const {
  Element result = 1;
  Element base = a;
  while (e) {
    if (e & 1ul) result = mul(result, base);
    base = mul(base, base);
    e >>= 1ul;
  }
  return result;
}

std::vector<FiniteField::Element> FiniteField::units() const {
  std::vector<Element> u;
  for (unsigned a = 1; a < q_; ++a) u.push_back(static_cast<Element>(a));
  return u;
}

// ---------------------------------------------------------------------------

SL2Element multiply(const FiniteField& f, const SL2Element& x, const SL2Element& y) {
  return SL2Element{f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
                    f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

bool has_unit_determinant(const FiniteField& f, const SL2Element& g) {
  return f.sub(f.mul(g.a, g.d), f.mul(g.b, g.c)) == FiniteField::one();
}

std::vector<SL2Element> enumerate_sl2(const FiniteField& f) {
  const unsigned q = f.order();
  std::vector<SL2Element> out;
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned c = 0; c < q; ++c)
        for (unsigned d = 0; d < q; ++d) {
          SL2Element g{static_cast<FiniteField::Element>(a), static_cast<FiniteField::Element>(b),
                       static_cast<FiniteField::Element>(c), static_cast<FiniteField::Element>(d)};
          if (has_unit_determinant(f, g)) out.push_back(g);
        }
  return out;
}

PhiReport check_phi_properties(unsigned q) {
  const FiniteField f = FiniteField::make(q);
  using E = FiniteField::Element;
  const E one = FiniteField::one();
  const E zero = FiniteField::zero();
  const E minus_one = f.neg(one);

  const auto group = enumerate_sl2(f);
  PhiReport rep;
  rep.q = q;
  rep.group_order = group.size();

  auto index = [q](const SL2Element& g) {
    return ((std::size_t{g.a} * q + g.b) * q + g.c) * q + g.d;
  };
  const std::size_t table_size = std::size_t{q} * q * q * q;

  std::vector<SL2Element> unipotent;
  for (unsigned x = 0; x < q; ++x) unipotent.push_back({one, static_cast<E>(x), zero, one});
  std::vector<SL2Element> torus;
  for (E z : f.units()) torus.push_back({z, zero, zero, f.inv(z)});
  const SL2Element s{zero, minus_one, one, zero};
  const SL2Element s_inv{zero, one, minus_one, zero};

  std::vector<bool> in_borel(table_size, false);
  for (const auto& t : torus)
    for (const auto& u : unipotent) in_borel[index(multiply(f, t, u))] = true;
  std::vector<bool> in_cell(table_size, false);
  for (const auto& u : unipotent)
    for (const auto& v : unipotent) in_cell[index(multiply(f, multiply(f, u, s), v))] = true;

  std::size_t fail_b = 0, fail_c = 0, fail_d = 0, fail_e = 0, fail_bi = 0;
  for (const auto& g : group) {
    for (E z : f.units()) {
      const SL2Element t{z, zero, zero, f.inv(z)};
      const SL2Element t_inv{f.inv(z), zero, zero, z};
      if (phi(multiply(f, t, g)) != f.mul(f.inv(z), phi(g))) ++fail_b;
      if (phi(multiply(f, g, t)) != f.mul(z, phi(g))) ++fail_b;
      const SL2Element st = multiply(f, multiply(f, s, t), s_inv);
      if (phi(multiply(f, multiply(f, t_inv, g), st)) != phi(g)) ++fail_c;
    }
    if ((phi(g) == zero) != in_borel[index(g)]) ++fail_d;
    if ((phi(g) == one) != in_cell[index(g)]) ++fail_e;
    for (const auto& u : unipotent)
      for (const auto& v : unipotent)
        if (phi(multiply(f, multiply(f, u, g), v)) != phi(g)) ++fail_bi;
  }
  rep.torus_equivariance = fail_b == 0;
  rep.twisted_conjugation = fail_c == 0;
  rep.zero_locus_is_borel = fail_d == 0;
  rep.one_locus_is_cell = fail_e == 0;
  rep.bi_invariance = fail_bi == 0;
  rep.failures = fail_b + fail_c + fail_d + fail_e + fail_bi;
  return rep;
}

DrinfeldReport drinfeld_points(unsigned q, unsigned k) {
  const auto p = prime_of(q);
  if (!p || k == 0)
    throw Error(ErrorKind::FieldUnsupported, "q = " + std::to_string(q) + " is not a prime power");
  unsigned long big = 1;
  for (unsigned i = 0; i < k; ++i) {
    big *= q;
    if (big > kMaxFieldOrder)
      throw Error(ErrorKind::FieldUnsupported,
                  "q^k = " + std::to_string(q) + "^" + std::to_string(k) +
                      " exceeds the field table bound " + std::to_string(kMaxFieldOrder));
  }
  const FiniteField f = FiniteField::make(static_cast<unsigned>(big));
  const unsigned n = f.order();
  using E = FiniteField::Element;

  auto on_curve = [&](E x, E y) {
    return f.sub(f.mul(x, f.pow(y, q)), f.mul(f.pow(x, q), y)) == FiniteField::one();
  };

  DrinfeldReport rep;
  rep.q = q;
  rep.k = k;
  std::vector<bool> point(std::size_t{n} * n, false);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) {
      if (x == 0 && y == 0) continue;
      if (on_curve(static_cast<E>(x), static_cast<E>(y))) {
        point[x * n + y] = true;
        ++rep.count;
      }
    }

  if ((n - 1) % (q + 1) != 0) return rep;
  std::vector<E> mu;
  for (E z : f.units())
    if (f.pow(z, q + 1) == FiniteField::one()) mu.push_back(z);

  bool free = mu.size() == q + 1;
  std::size_t orbits = 0;
  std::vector<bool> seen(point.size(), false);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) {
      const std::size_t idx = x * n + y;
      if (!point[idx] || seen[idx]) continue;
      ++orbits;
      std::size_t orbit_size = 0;
      for (E z : mu) {
        const E zx = f.mul(z, static_cast<E>(x));
        const E zy = f.mul(z, static_cast<E>(y));
        const std::size_t j = std::size_t{zx} * n + zy;
        if (!point[j]) free = false;
        if (!seen[j]) {
          seen[j] = true;
          ++orbit_size;
        }
      }
      if (orbit_size != q + 1) free = false;
    }
  rep.orbits = orbits;
  rep.free_action = free;
  return rep;
}

}  // namespace dlcomp::sl2
