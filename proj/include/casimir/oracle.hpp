#pragma once

#include <cstdint>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/scalar.hpp"

namespace casimir {

// One decomposition of the 2r-cycle of alternating sphere visits into k
// colored blocks, together with how many edge cut-sets realize it (cyclic
// rotations of the same block pattern are aggregated).
struct PartitionBlock {
  int size = 0;         // number of nodes in the block, >= 1
  int start_color = 0;  // sphere index (1 or 2) of the block's first node
};

struct PartitionTerm {
  std::vector<PartitionBlock> blocks;  // in cyclic order
  int k = 0;                           // number of blocks
  std::int64_t multiplicity = 0;       // cut-sets mapping to this pattern
};

// Polynomial in the block-counting variable t. coefficients[j] multiplies
// t^j; the constant coefficient is always zero.
struct TPolynomial {
  std::vector<double> coefficients;

  int degree() const {
    int d = static_cast<int>(coefficients.size()) - 1;
    while (d > 0 && coefficients[static_cast<std::size_t>(d)] == 0.0) --d;
    return d;
  }
};

// Determinant of the n x n symmetric tridiagonal block with unit diagonal
// and off-diagonal entries signs[i] * w_i, where the weights alternate
// w_0 = rho_{start_color}, w_1 = rho_{other}, ... Evaluated by the
// three-term continuant recurrence D_k = D_{k-1} - e_{k-1}^2 D_{k-2};
// the signs enter only squared, which is why the value is independent of
// the sign pattern. `signs` must have length n-1 (empty for n = 1).
double block_determinant_direct(int n, int start_color,
                                const std::vector<int>& signs,
                                const GeometryDerived& geom);

// Dense LU determinant of the explicitly assembled 2r x 2r cyclic
// tridiagonal-plus-corner matrix with unit diagonal and alternating
// couplings rho1, rho2 around the cycle. The representative sign
// assignment is all-plus for the plus class and a single flipped coupling
// for the minus class; any assignment with the same parity of minus signs
// gives the same determinant. Capped at r <= 8.
double cyclic_matrix_determinant(int r, SignClass sign_class,
                                 const GeometryDerived& geom);

// Same dense determinant with an explicit sign per coupling (2r entries,
// entry i on the edge between nodes i and i+1 mod 2r). Used by tests to
// verify that only the parity of minus signs matters.
double cyclic_matrix_determinant_signed(int r, const std::vector<int>& signs,
                                        const GeometryDerived& geom);

// r-th round-trip monopole correction by brute force: enumerates all
// 2^{2r} - 1 non-empty cut-sets S of the cycle's edges, splits the cycle
// into |S| tridiagonal blocks, and accumulates
//   Delta_r = (rho1 rho2)^r sum_S (-1)^{|S|} / prod(block determinants).
// Requires 1 <= r <= 6 and a geometry with two finite spheres (u > 0).
double delta_r_enumeration(int r, const GeometryDerived& geom);

// The same Delta_r through the coupled block-polynomial recursions: builds
// h_n^{(1,2)}(t) with coefficients a_n, b_n equal to the reciprocal block
// determinants, then integrates the t-polynomial exactly,
//   Delta_r = -(rho1 rho2)^r * r * sum_k c_k / k,
// where c_k is the t^k coefficient of h_{2r}^{(1)} + h_{2r}^{(2)}.
// No cap on r (cost is polynomial).
double delta_r_recursion(int r, const GeometryDerived& geom);

// h_{2r}^{(1)}(t) + h_{2r}^{(2)}(t) as an explicit polynomial, exposed for
// structural tests (degree 2r, t^1 coefficient a_{2r} + b_{2r}).
TPolynomial h_polynomial_sum(int r, const GeometryDerived& geom);

// All block decompositions of the 2r-cycle with their multiplicities,
// aggregated over cyclic rotations. sum over k of the multiplicities of
// k-block terms equals C(2r, k).
std::vector<PartitionTerm> partition_terms(int r);

// Per-(r,k) cross-check table: the enumeration aggregate
// E_k = sum_{|S|=k} 1/det and its recursion-side equivalent
// (-1)^{k+1} r c_k / k, for k = 1..2r.
struct RKAggregate {
  int r = 0;
  int k = 0;
  std::int64_t count = 0;          // number of cut-sets of size k = C(2r,k)
  double enumeration_sum = 0.0;    // E_k
  double recursion_equivalent = 0.0;
};

std::vector<RKAggregate> per_k_aggregates(int r, const GeometryDerived& geom);

// Confirms numerically that the assembled rational expression for the
// block generating functions equals d/dt log[(1+t Ae)(1+t Be) - t^2 Ao Bo]
// at t in {0.25, 0.5, 1.0}. The derivative is taken by the complex-step
// method (imaginary perturbation 1e-100), which has no subtractive
// cancellation and resolves the identity to machine precision. Returns
// true when the maximum relative deviation is <= tol.
bool generating_function_check(const GeometryDerived& geom, double tol);

// The maximum relative deviation underlying generating_function_check,
// exposed for diagnostic reporting.
double generating_function_max_residual(const GeometryDerived& geom);

}  // namespace casimir
