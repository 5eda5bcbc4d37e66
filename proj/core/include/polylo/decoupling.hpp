#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "polylo/matrix.hpp"
#include "polylo/polynomial.hpp"

namespace polylo {

struct DecouplingReport {
  mpq_class lhs = 0;  // sup_z Pr[f = z], or Pr[ℰ] for the Jensen form
  mpq_class rhs = 0;
  unsigned power = 1;  // holds iff lhs^power ≤ rhs
  bool holds = false;
};

/// Finite outcome spaces for E and F with weights, and ℰ as a table [e][f].
struct EventTable {
  std::vector<mpq_class> e_weights;
  std::vector<mpq_class> f_weights;
  std::vector<std::vector<bool>> event;
};

/// Pr[ℰ(E,F)]^{k+1} ≤ Pr[ℰ(E₀,F) ∩ … ∩ ℰ(E_k,F)]. DomainError on a malformed table.
DecouplingReport verify_jensen_decoupling(const EventTable& table, unsigned k);

/// f(x) = xᵀAx + bᵀx + c with A symmetric. DomainError if deg f > 2.
struct QuadraticForm {
  Matrix a;
  std::vector<Scalar> b;
  Scalar c;
};
QuadraticForm quadratic_form(const PolynomialSpec& f);

/// Multi-copy decoupling with the proof's ψ: rhs is the maximum over shifts
/// x ∈ {−1,1}^X of Pr[(ξ⁽ⁱ⁾[X] − x)ᵀA[X,Y]ξ[Y] + ψ₀(x, ξ⁽ⁱ⁾[X]) = 0 for i ≤ k].
DecouplingReport verify_quadratic_decoupling(const PolynomialSpec& f, const IndexSet& x, const IndexSet& y,
                                             unsigned k, std::uint64_t cap = 10'000'000);

/// Three-part decoupling with the proof's φ, ψ and maximizing conditioning.
/// Here α = ξ[X] − ξ′[X] and β = ξ[Y] − ξ′[Y] take values in {−2, 0, 2};
/// halving them gives lazy Rademacher vectors and the same event after
/// rescaling φ and ψ, so the probability is unchanged.
DecouplingReport verify_triple_decoupling(const PolynomialSpec& f, const IndexSet& x, const IndexSet& y,
                                          const IndexSet& z, std::uint64_t cap = 10'000'000);

}  // namespace polylo
