#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "mordell/bigint.hpp"
#include "mordell/cost.hpp"

namespace mordell {

// ---------------------------------------------------------------- Z[sqrt d]

// u + v*sqrt(d); d is supplied per operation so the value stays a plain pair
struct QuadInt {
  Int u, v;

  bool operator==(const QuadInt&) const = default;
};

inline Int quad_norm(const QuadInt& x, const Int& d) { return x.u * x.u - d * x.v * x.v; }

inline QuadInt quad_conj(const QuadInt& x) { return {x.u, -x.v}; }

inline QuadInt quad_mul(const QuadInt& x, const QuadInt& y, const Int& d) {
  return {x.u * y.u + d * x.v * y.v, x.u * y.v + x.v * y.u};
}

// ---------------------------------------------------------------- Z[sqrt d]/m

// element of Z[sqrt d]/mZ[sqrt d]: canonical residues and the reduced d
struct QuadResidue {
  Int u, v;
  Int m;      // modulus >= 2
  Int d_mod;  // d mod m

  bool operator==(const QuadResidue&) const = default;
};

inline QuadResidue quad_residue(const Int& u, const Int& v, const Int& d, const Int& m) {
  if (m < 2) throw std::invalid_argument("quad_residue: modulus must be >= 2");
  return {mod_floor(u, m), mod_floor(v, m), m, mod_floor(d, m)};
}

// full ring law: (u,v)*(u',v') = (uu' + d vv', uv' + vu') mod m
inline QuadResidue quad_mul_mod(const QuadResidue& x, const QuadResidue& y) {
  if (x.m != y.m) throw std::invalid_argument("quad_mul_mod: modulus mismatch");
  if (x.d_mod != y.d_mod) throw std::invalid_argument("quad_mul_mod: discriminant mismatch");
  return {mod_floor(x.u * y.u + x.d_mod * x.v * y.v, x.m),
          mod_floor(x.u * y.v + x.v * y.u, x.m), x.m, x.d_mod};
}

// x^n by the binary ladder; x^0 = (1, 0)
inline QuadResidue quad_pow_mod(const QuadResidue& x, const Int& n) {
  if (n < 0) throw std::invalid_argument("quad_pow_mod: negative exponent");
  QuadResidue acc{mod_floor(1, x.m), 0, x.m, x.d_mod};
  QuadResidue base = x;
  Int e = n;
  while (e != 0) {
    if (boost::multiprecision::bit_test(e, 0)) acc = quad_mul_mod(acc, base);
    base = quad_mul_mod(base, base);
    e >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------- product passes

// One step of the linear pass: the accumulated (u, v) is multiplied by
// a_k + b_k*sqrt(d) working mod d, where sqrt(d)*sqrt(d) = d drops out, so
//   u*a_k           = u_quotient*d + u_residue
//   u*b_k + v*a_k   = v_quotient*d + v_residue
// with canonical residues; quotients may be negative.
struct LinearStep {
  int k = 0;  // 1-based index of the relation multiplied in (k >= 2)
  Int a, b;
  Int u_quotient, u_residue;
  Int v_quotient, v_residue;

  bool operator==(const LinearStep&) const = default;
};

struct LinearPass {
  QuadResidue final_value;
  std::vector<LinearStep> steps;  // k = 2 .. r
  CostTally costs;
};

// prod_i (a_i + b_i*sqrt(d)) mod d, multiplied left-to-right starting from the
// raw first pair, each step reduced by one floor divmod per coordinate.
// Cost model: per step 3 multiplications feed the new coordinates, one
// addition combines the v terms, and each nonzero quotient costs one
// multiplication and one addition to rebuild the identity.
inline LinearPass claim3_linear_pass(const std::vector<QuadInt>& relations, const Int& d) {
  if (relations.empty()) throw std::invalid_argument("claim3_linear_pass: empty relation list");
  if (d < 2) throw std::invalid_argument("claim3_linear_pass: d must be >= 2");
  LinearPass out;
  Int u = relations[0].u, v = relations[0].v;
  for (std::size_t idx = 1; idx < relations.size(); ++idx) {
    const Int& a = relations[idx].u;
    const Int& b = relations[idx].v;
    out.costs.mul(u, a);
    out.costs.mul(v, a);
    out.costs.mul(u, b);
    Int pu = u * a;
    Int va = v * a, ub = u * b;
    out.costs.add(va, ub);
    Int pv = va + ub;
    auto [qu, ru] = divmod_floor(pu, d);
    auto [qv, rv] = divmod_floor(pv, d);
    if (qu != 0) {
      out.costs.mul(qu, d);
      out.costs.add(qu * d, ru);
    }
    if (qv != 0) {
      out.costs.mul(qv, d);
      out.costs.add(qv * d, rv);
    }
    out.steps.push_back({static_cast<int>(idx) + 1, a, b, qu, ru, qv, rv});
    u = ru;
    v = rv;
  }
  out.final_value = quad_residue(u, v, d, d);
  return out;
}

// Independent cross-check route: prod_i (a_i + sqrt(d))^(b_i) mod d by the
// full ring law and the binary ladder. Shares no code path with the linear
// pass beyond the ring definition.
inline QuadResidue claim3_full_product(const std::vector<std::pair<Int, Int>>& relations,
                                       const Int& d) {
  if (relations.empty()) throw std::invalid_argument("claim3_full_product: empty relation list");
  QuadResidue acc = quad_residue(1, 0, d, d);
  for (const auto& [a, b] : relations) {
    if (b < 0) throw std::invalid_argument("claim3_full_product: negative exponent");
    acc = quad_mul_mod(acc, quad_pow_mod(quad_residue(a, 1, d, d), b));
  }
  return acc;
}

struct NonrationalCheck {
  QuadResidue residue;
  bool nonrational = false;  // sqrt(d) coefficient nonzero mod m
};

// prod_i (a_i + sqrt(d))^(b_i) mod m for a small modulus m. A nonzero sqrt(d)
// coefficient certifies the product is not a rational integer, hence not 1.
inline NonrationalCheck claim4_nonrational_check(const std::vector<std::pair<Int, Int>>& relations,
                                                 const Int& m, const Int& d) {
  if (m < 2) throw std::invalid_argument("claim4_nonrational_check: modulus must be >= 2");
  QuadResidue acc = quad_residue(1, 0, d, m);
  for (const auto& [a, b] : relations) {
    if (b < 0) throw std::invalid_argument("claim4_nonrational_check: negative exponent");
    acc = quad_mul_mod(acc, quad_pow_mod(quad_residue(a, 1, d, m), b));
  }
  return {acc, acc.v != 0};
}

}  // namespace mordell
